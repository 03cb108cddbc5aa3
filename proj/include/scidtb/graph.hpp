// First-order graph-based discourse parser: label-factored arc scores,
// single-root maximum spanning arborescence decoding, and structured
// averaged-perceptron training.

#ifndef SCIDTB_GRAPH_HPP_
#define SCIDTB_GRAPH_HPP_

#include <functional>
#include <span>
#include <vector>

#include "scidtb/features.hpp"
#include "scidtb/learners.hpp"

namespace scidtb {

// Candidate arc scores with the best label already chosen per arc.
struct ArcScoreMatrix {
  int n = 0;
  std::vector<double> best_score;  // (n+1) x (n+1), row = head
  std::vector<Fine> best_label;

  explicit ArcScoreMatrix(int num_edus = 0)
      : n(num_edus),
        best_score(static_cast<std::size_t>(num_edus + 1) * (num_edus + 1), 0.0),
        best_label(best_score.size(), Fine::kRoot) {}

  double score(EduId head, EduId dep) const { return best_score[index(head, dep)]; }
  Fine label(EduId head, EduId dep) const { return best_label[index(head, dep)]; }
  void set(EduId head, EduId dep, double s, Fine l) {
    best_score[index(head, dep)] = s;
    best_label[index(head, dep)] = l;
  }
  std::size_t index(EduId head, EduId dep) const {
    return static_cast<std::size_t>(head) * (n + 1) + dep;
  }
};

// Relations a non-root arc may take. Root arcs always take ROOT.
std::vector<Fine> fine_arc_labels();
std::vector<Fine> coarse_arc_labels();

// Base feature ids for every candidate arc of one document.
class ArcFeatureCache {
 public:
  // With grow = false the dictionary is only read (unseen strings -> OOV).
  ArcFeatureCache(const DiscourseTree& doc, FeatureDictionary& dict, bool grow);

  int size() const { return n_; }
  std::span<const FeatureId> base(EduId head, EduId dep) const;

 private:
  int n_;
  std::vector<std::vector<FeatureId>> ids_;
};

// best_score(h, d) = max over allowed labels of w . arc_features(h, d, label),
// ties to the lowest label index.
ArcScoreMatrix score_arcs(const ArcFeatureCache& cache, std::span<const double> weights,
                          const std::vector<Fine>& labels);
ArcScoreMatrix score_arcs(const DiscourseTree& doc, const AveragedPerceptronModel& model,
                          FeatureDictionary& dict, const std::vector<Fine>& labels = fine_arc_labels());

// Heads (index = dependent id, entry 0 unused) of the maximum spanning
// arborescence rooted at 0 with exactly one root child.
std::vector<EduId> decode_heads(const ArcScoreMatrix& scores);

// decode_heads with relations taken from best_label; text copied from doc.
DiscourseTree decode_mst(const ArcScoreMatrix& scores, const DiscourseTree& doc);

double tree_score(const ArcScoreMatrix& scores, std::span<const EduId> heads);

// Label-factored feature sum of a complete tree.
FeatureVector tree_features(const ArcFeatureCache& cache, const DiscourseTree& tree);

struct GraphTrainOptions {
  int epochs = 10;
  double learning_rate = 1.0;
  std::vector<Fine> labels = fine_arc_labels();
  // Called after each epoch with the epoch number (1-based) and the current
  // averaged model.
  std::function<void(int, const AveragedPerceptronModel&)> on_epoch;
};

// Documents are visited in corpus order; every visit is one perceptron step.
// Returns the averaged model.
AveragedPerceptronModel train_graph(const std::vector<DiscourseTree>& train, FeatureDictionary& dict,
                                    const GraphTrainOptions& options);

DiscourseTree parse_graph(const DiscourseTree& doc, const AveragedPerceptronModel& model,
                          FeatureDictionary& dict, const std::vector<Fine>& labels = fine_arc_labels());

}  // namespace scidtb

#endif  // SCIDTB_GRAPH_HPP_
