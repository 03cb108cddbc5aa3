// Shared fixtures for the test suites: the worked example abstract, random
// tree generators, and a small synthetic treebank written to disk.

#ifndef SCIDTB_TESTS_SUPPORT_TREES_HPP_
#define SCIDTB_TESTS_SUPPORT_TREES_HPP_

#include <algorithm>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "scidtb/corpus.hpp"

namespace scidtb::testing {

inline EduNode edu(EduId id, EduId head, Fine rel, std::string text) {
  return EduNode{id, std::move(text), head, RelationLabel{rel, false}};
}

inline DiscourseTree example_abstract() {
  DiscourseTree t;
  t.doc_id = "example";
  t.edus = {
      edu(1, 4, Fine::kGoal, "There is rich knowledge"),
      edu(2, 1, Fine::kAddition, "encoded in online web data."),
      edu(3, 1, Fine::kExample, "For example, entity tags in Wikipedia data define some word boundaries."),
      edu(4, 0, Fine::kRoot, "In this paper we adopt partial-label learning with conditional random fields"),
      edu(5, 4, Fine::kEnablement, "to make use of this knowledge for semi-supervised Chinese word segmentation."),
      edu(6, 4, Fine::kAspect, "The basic idea of partial-label learning is to optimize a cost function"),
      edu(7, 6, Fine::kAddition, "that marginalizes the probability mass in the constrained space"),
      edu(8, 7, Fine::kAddition, "that encodes this knowledge."),
      edu(9, 10, Fine::kMannerMeans, "By integrating some domain adaptation techniques, such as EasyAdapt,"),
      edu(10, 4, Fine::kEvaluation, "our result reaches an F-measure of 95.98 % on the CTB-6 corpus."),
  };
  return t;
}

inline Fine random_non_root(std::mt19937_64& rng) {
  return fine_from_index(std::uniform_int_distribution<int>(1, kNumFine - 1)(rng));
}

// Arcs drawn above the line, virtual root at position 0.
inline bool crossing_free(const DiscourseTree& t) {
  std::vector<std::pair<int, int>> arcs;
  for (const auto& e : t.edus) arcs.emplace_back(std::min(e.head, e.id), std::max(e.head, e.id));
  for (const auto& [a, b] : arcs) {
    for (const auto& [c, d] : arcs) {
      if (a < c && c < b && b < d) return false;
    }
  }
  return true;
}

inline DiscourseTree blank_doc(int n, const std::string& id = "doc") {
  DiscourseTree t;
  t.doc_id = id;
  for (int i = 1; i <= n; ++i) t.edus.push_back(edu(i, 0, Fine::kRoot, "unit " + std::to_string(i)));
  return t;
}

namespace detail {
inline void build_span(std::mt19937_64& rng, DiscourseTree& t, int lo, int hi, int parent) {
  if (lo > hi) return;
  const int h = std::uniform_int_distribution<int>(lo, hi)(rng);
  auto& node = t.edu(h);
  node.head = parent;
  node.relation = RelationLabel{parent == 0 ? Fine::kRoot : random_non_root(rng), false};
  auto split_side = [&](int a, int b) {
    while (a <= b) {
      const int end = std::uniform_int_distribution<int>(a, b)(rng);
      build_span(rng, t, a, end, h);
      a = end + 1;
    }
  };
  split_side(lo, h - 1);
  split_side(h + 1, hi);
}
}  // namespace detail

// Projective by construction: every subtree covers a contiguous span.
inline DiscourseTree random_projective_tree(std::mt19937_64& rng, int n, const std::string& id = "doc") {
  DiscourseTree t = blank_doc(n, id);
  detail::build_span(rng, t, 1, n, 0);
  return t;
}

// Any single-rooted tree.
inline DiscourseTree random_tree(std::mt19937_64& rng, int n, const std::string& id = "doc") {
  DiscourseTree t = blank_doc(n, id);
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i + 1;
  std::shuffle(order.begin(), order.end(), rng);
  for (int k = 0; k < n; ++k) {
    auto& node = t.edu(order[k]);
    if (k == 0) {
      node.head = 0;
      node.relation = RelationLabel{Fine::kRoot, false};
    } else {
      node.head = order[std::uniform_int_distribution<int>(0, k - 1)(rng)];
      node.relation = RelationLabel{random_non_root(rng), false};
    }
  }
  return t;
}

// Learnable toy abstracts. The cue opening each dependent fixes both its
// relation and whether it attaches to its neighbour or to the root unit.
inline DiscourseTree synthetic_abstract(std::mt19937_64& rng, int n, const std::string& id) {
  struct Cue {
    Fine rel;
    const char* opener;
    bool to_root;
  };
  static const Cue kLeft[] = {{Fine::kReason, "because", false},
                              {Fine::kCondition, "if", false},
                              {Fine::kGoal, "recently ,", true},
                              {Fine::kRelated, "previous work", true}};
  static const Cue kRight[] = {{Fine::kEnablement, "to", false},  {Fine::kAddition, "which", false},
                               {Fine::kMannerMeans, "by", false}, {Fine::kContrast, "however ,", true},
                               {Fine::kEvaluation, "results show", true}, {Fine::kExample, "for example ,", true}};
  static const char* kWords[] = {"model", "data", "parsing", "tree", "corpus", "method",
                                 "feature", "score", "task", "system", "word", "graph"};
  DiscourseTree t = blank_doc(n, id);
  const int root = std::uniform_int_distribution<int>(1, n)(rng);
  std::uniform_int_distribution<int> left_pick(0, static_cast<int>(std::size(kLeft)) - 1);
  std::uniform_int_distribution<int> right_pick(0, static_cast<int>(std::size(kRight)) - 1);
  std::uniform_int_distribution<int> word_pick(0, static_cast<int>(std::size(kWords)) - 1);
  std::uniform_int_distribution<int> len_pick(2, 7);
  for (auto& e : t.edus) {
    std::string text;
    if (e.id == root) {
      e.head = 0;
      e.relation = RelationLabel{Fine::kRoot, false};
      text = "we propose";
    } else {
      const Cue& c = e.id < root ? kLeft[left_pick(rng)] : kRight[right_pick(rng)];
      e.head = c.to_root ? root : (e.id < root ? e.id + 1 : e.id - 1);
      e.relation = RelationLabel{c.rel, false};
      text = c.opener;
    }
    const int len = len_pick(rng);
    for (int i = 0; i < len; ++i) text += std::string(" ") + kWords[word_pick(rng)];
    e.text = text + ".";
  }
  return t;
}

struct SyntheticCorpusSpec {
  int train = 40;
  int dev = 10;
  int test = 10;
  int double_annotated = 4;  // per dev/test partition, copied into a second annotation dir
  std::uint64_t seed = 7;
};

// Writes root/{train,dev,test}/gold/*.dep and root/{dev,test}/second/*.dep.
inline void write_synthetic_corpus(const std::filesystem::path& root, const SyntheticCorpusSpec& spec = {}) {
  std::mt19937_64 rng(spec.seed);
  std::filesystem::remove_all(root);
  auto emit = [&](const std::string& part, int count) {
    const auto gold = root / part / "gold";
    std::filesystem::create_directories(gold);
    for (int i = 0; i < count; ++i) {
      const std::string id = part + std::to_string(i);
      const int n = std::uniform_int_distribution<int>(1, 12)(rng);
      const auto tree = synthetic_abstract(rng, n, id);
      save_document(tree, gold / (id + ".edu.txt.dep"));
      if (part != "train" && i < spec.double_annotated) {
        auto other = tree;
        // Second annotator disagrees on the last relation.
        if (other.size() > 1) {
          auto& e = other.edus.back();
          if (!e.relation.is_root()) e.relation.fine = Fine::kJoint;
        }
        const auto second = root / part / "second";
        std::filesystem::create_directories(second);
        save_document(other, second / (id + ".edu.txt.dep"));
      }
    }
  };
  emit("train", spec.train);
  emit("dev", spec.dev);
  emit("test", spec.test);
}

}  // namespace scidtb::testing

#endif  // SCIDTB_TESTS_SUPPORT_TREES_HPP_
