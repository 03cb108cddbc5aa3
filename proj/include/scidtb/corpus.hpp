// Discourse dependency trees: domain types, validation, and corpus file I/O.
//
// A document is a sequence of EDUs in reading order, each attached to exactly
// one head. Head 0 is the virtual root; exactly one EDU attaches to it with the
// ROOT relation.

#ifndef SCIDTB_CORPUS_HPP_
#define SCIDTB_CORPUS_HPP_

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "scidtb/relation.hpp"

namespace scidtb {

using EduId = int;
inline constexpr EduId kVirtualRoot = 0;

class CorpusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public CorpusError {
 public:
  using CorpusError::CorpusError;
};

class SchemaError : public CorpusError {
 public:
  using CorpusError::CorpusError;
};

class IoError : public CorpusError {
 public:
  using CorpusError::CorpusError;
};

// A violated tree invariant. `node` is the offending EDU id, or -1 when the
// violation is not tied to one node (e.g. no root at all).
class InvariantError : public CorpusError {
 public:
  enum class Kind { kSelfAttachment, kCycle, kMultipleRoots, kNoRoot, kIdRange, kHeadRange, kRootLabel };

  InvariantError(Kind kind, std::string doc_id, int node, const std::string& detail);

  Kind kind() const { return kind_; }
  const std::string& doc_id() const { return doc_id_; }
  int node() const { return node_; }

 private:
  Kind kind_;
  std::string doc_id_;
  int node_;
};

struct EduNode {
  EduId id = 0;
  std::string text;
  EduId head = kVirtualRoot;
  RelationLabel relation;

  friend bool operator==(const EduNode&, const EduNode&) = default;
};

// Nodes are stored in id order, so edus[i].id == i + 1 on every valid tree.
struct DiscourseTree {
  std::string doc_id;
  std::vector<EduNode> edus;

  int size() const { return static_cast<int>(edus.size()); }
  const EduNode& edu(EduId id) const { return edus[id - 1]; }
  EduNode& edu(EduId id) { return edus[id - 1]; }
  EduId root() const;

  friend bool operator==(const DiscourseTree&, const DiscourseTree&) = default;
};

struct CorpusSplit {
  std::vector<DiscourseTree> train;
  std::vector<DiscourseTree> dev;
  std::vector<DiscourseTree> test;
};

// Throws InvariantError on the first violation found. Checks, in order: id
// range, head range, self-attachment, ROOT label iff head 0, root count,
// acyclicity.
void validate(const DiscourseTree& tree);

// Throws InvariantError if any doc_id occurs in two partitions.
void validate_disjoint(const CorpusSplit& split);

// Field names of the on-disk record. The defaults match the released files.
struct FileSchema {
  std::string root_key = "root";
  std::string id = "id";
  std::string parent = "parent";
  std::string text = "text";
  std::string relation = "relation";
};

DiscourseTree parse_document(const std::string& content, const std::string& doc_id,
                             const FileSchema& schema = {});
std::string serialize_document(const DiscourseTree& tree, const FileSchema& schema = {});

// Doc id defaults to the file name up to its first '.'.
DiscourseTree load_document(const std::filesystem::path& path, const FileSchema& schema = {});
void save_document(const DiscourseTree& tree, const std::filesystem::path& path,
                   const FileSchema& schema = {});

std::string doc_id_from_path(const std::filesystem::path& path);

DiscourseTree map_to_coarse(const DiscourseTree& tree);

// Attachments (including the ROOT one) summed over the given documents.
long count_relations(const std::vector<DiscourseTree>& corpus);

// Depth of every node indexed by id: 0 for the virtual root, 1 for the root EDU.
std::vector<int> node_depths(const DiscourseTree& tree);

// Root EDU first, each node followed by its subtrees, children in document
// order.
std::vector<EduId> preorder(const DiscourseTree& tree);

// Removes structure and labels, keeping ids and text: the parser input.
DiscourseTree strip_structure(const DiscourseTree& tree);

}  // namespace scidtb

#endif  // SCIDTB_CORPUS_HPP_
