#include "scidtb/treebank.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace scidtb {
namespace fs = std::filesystem;
namespace {

bool has_extension(const fs::path& p, const std::vector<std::string>& exts) {
  const std::string name = p.filename().string();
  return std::any_of(exts.begin(), exts.end(), [&](const std::string& ext) {
    return name.size() > ext.size() && name.compare(name.size() - ext.size(), ext.size(), ext) == 0;
  });
}

std::vector<fs::path> list_documents(const fs::path& dir, const DiscoveryRule& rule) {
  std::vector<fs::path> out;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (entry.is_regular_file() && has_extension(entry.path(), rule.extensions)) {
      out.push_back(entry.path());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<fs::path> list_subdirs(const fs::path& dir) {
  std::vector<fs::path> out;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (entry.is_directory()) out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Treebank load_treebank(const fs::path& root, const DiscoveryRule& rule) {
  Treebank bank;
  std::set<std::string> gold_ids;

  auto load_dir = [&](const fs::path& dir, const std::string& partition,
                      const std::string& annotation, bool gold_source) {
    for (const auto& path : list_documents(dir, rule)) {
      ++bank.files_seen;
      try {
        AnnotatedCopy copy{load_document(path, rule.schema), path, partition, annotation, false};
        if (gold_source) copy.is_gold = gold_ids.insert(copy.tree.doc_id).second;
        bank.copies.push_back(std::move(copy));
      } catch (const CorpusError& e) {
        bank.failures.push_back({path, e.what()});
      }
    }
  };

  for (const auto& partition : rule.partitions) {
    const fs::path pdir = root / partition;
    if (!fs::is_directory(pdir)) continue;
    const fs::path gold = pdir / rule.gold_dir;
    if (fs::is_directory(gold)) {
      load_dir(gold, partition, rule.gold_dir, true);
      for (const auto& sub : list_subdirs(pdir)) {
        if (sub.filename() != rule.gold_dir) load_dir(sub, partition, sub.filename().string(), false);
      }
      // Files placed next to gold/ are extra copies.
      load_dir(pdir, partition, partition, false);
    } else {
      load_dir(pdir, partition, rule.gold_dir, true);
      for (const auto& sub : list_subdirs(pdir)) {
        load_dir(sub, partition, sub.filename().string(), false);
      }
    }
  }
  // A bare directory of documents is a single unpartitioned gold set.
  if (bank.files_seen == 0) load_dir(root, "", rule.gold_dir, true);
  return bank;
}

std::vector<DiscourseTree> Treebank::unique() const {
  std::vector<DiscourseTree> out;
  for (const auto& c : copies) {
    if (c.is_gold) out.push_back(c.tree);
  }
  return out;
}

std::vector<DiscourseTree> Treebank::all_copies() const {
  std::vector<DiscourseTree> out;
  out.reserve(copies.size());
  for (const auto& c : copies) out.push_back(c.tree);
  return out;
}

std::vector<DiscourseTree> Treebank::partition(const std::string& name) const {
  std::vector<DiscourseTree> out;
  for (const auto& c : copies) {
    if (c.is_gold && c.partition == name) out.push_back(c.tree);
  }
  return out;
}

CorpusSplit Treebank::split() const {
  return CorpusSplit{partition("train"), partition("dev"), partition("test")};
}

std::vector<Treebank::Pair> Treebank::double_annotations() const {
  std::map<std::string, const DiscourseTree*> gold;
  for (const auto& c : copies) {
    if (c.is_gold) gold.emplace(c.tree.doc_id, &c.tree);
  }
  std::vector<Pair> out;
  for (const auto& c : copies) {
    if (c.is_gold) continue;
    auto it = gold.find(c.tree.doc_id);
    if (it != gold.end()) out.push_back(Pair{c.annotation, it->second, &c.tree});
  }
  return out;
}

long count_relations(const Treebank& bank, bool unique_only) {
  long total = 0;
  for (const auto& c : bank.copies) {
    if (!unique_only || c.is_gold) total += c.tree.size();
  }
  return total;
}

}  // namespace scidtb
