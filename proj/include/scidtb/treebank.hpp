// Corpus directory discovery: partitions, gold copies, and second annotations.
//
// Layout: <root>/{train,dev,test}/ each holding a gold/ directory and any
// number of sibling annotation directories. A partition without gold/ is read
// as gold directly. Files ending in .dep or .json are documents.

#ifndef SCIDTB_TREEBANK_HPP_
#define SCIDTB_TREEBANK_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "scidtb/corpus.hpp"

namespace scidtb {

struct AnnotatedCopy {
  DiscourseTree tree;
  std::filesystem::path path;
  std::string partition;   // "train", "dev", "test"
  std::string annotation;  // subdirectory name, "gold" for the gold copy source
  bool is_gold = false;    // the designated gold copy of its abstract
};

struct LoadFailure {
  std::filesystem::path path;
  std::string message;
};

struct DiscoveryRule {
  std::vector<std::string> partitions = {"train", "dev", "test"};
  std::string gold_dir = "gold";
  std::vector<std::string> extensions = {".dep", ".json"};
  FileSchema schema;
};

struct Treebank {
  std::vector<AnnotatedCopy> copies;
  std::vector<LoadFailure> failures;
  int files_seen = 0;

  // Gold copies only, one per abstract, in partition then path order.
  std::vector<DiscourseTree> unique() const;
  std::vector<DiscourseTree> all_copies() const;
  std::vector<DiscourseTree> partition(const std::string& name) const;
  CorpusSplit split() const;

  // (gold, other) pairs for every non-gold copy whose abstract has a gold copy.
  struct Pair {
    std::string annotation;
    const DiscourseTree* gold;
    const DiscourseTree* other;
  };
  std::vector<Pair> double_annotations() const;
};

// Loads every document under `root`. Documents failing to load are recorded
// in `failures`; the rest are kept. The first copy (by sorted path) of each
// abstract inside a gold directory is the designated gold.
Treebank load_treebank(const std::filesystem::path& root, const DiscoveryRule& rule = {});

// Attachments including ROOT; unique_only restricts to designated gold copies.
long count_relations(const Treebank& bank, bool unique_only);

}  // namespace scidtb

#endif  // SCIDTB_TREEBANK_HPP_
