// Linear learners: a one-vs-rest hinge-loss classifier and an averaged
// perceptron.

#ifndef SCIDTB_LEARNERS_HPP_
#define SCIDTB_LEARNERS_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "scidtb/features.hpp"
#include "scidtb/metrics.hpp"

namespace scidtb {

struct LabeledExample {
  FeatureVector features;
  int label = 0;
};

// Per-class linear scorer: score_k(x) = w_k . x + b_k. The bias behaves as a
// feature with constant value 1 and is regularized with the weights.
class LinearMulticlassModel {
 public:
  LinearMulticlassModel() = default;
  LinearMulticlassModel(std::vector<int> classes, int dim, double c);

  const std::vector<int>& classes() const { return classes_; }
  int num_classes() const { return static_cast<int>(classes_.size()); }
  int dim() const { return dim_; }
  double c() const { return c_; }
  // Position of a class label, or -1.
  int class_index(int label) const;

  std::span<const double> weights(int k) const { return weights_[k]; }
  std::vector<double>& mutable_weights(int k) { return weights_[k]; }
  double bias(int k) const { return bias_[k]; }
  void set_bias(int k, double b) { bias_[k] = b; }

  double score(int k, const FeatureVector& fv) const { return fv.dot(weights_[k]) + bias_[k]; }
  std::vector<double> scores(const FeatureVector& fv) const;

  nlohmann::ordered_json to_json() const;
  static LinearMulticlassModel from_json(const nlohmann::ordered_json& j);

  friend bool operator==(const LinearMulticlassModel&, const LinearMulticlassModel&) = default;

 private:
  std::vector<int> classes_;
  int dim_ = 0;
  double c_ = 1.0;
  std::vector<std::vector<double>> weights_;
  std::vector<double> bias_;
};

struct Prediction {
  int label = 0;        // class label (not position)
  int class_pos = 0;    // position in model.classes()
  double margin = 0.0;  // best minus runner-up score; 0 with one class
  std::vector<double> scores;  // per class position
};

// Argmax with ties to the lowest class position.
Prediction predict_multiclass(const LinearMulticlassModel& model, const FeatureVector& fv);

// Index of the best allowed class position, ties to the lowest position; -1
// if nothing is allowed.
int best_allowed(std::span<const double> scores, const std::vector<bool>& allowed);

struct MulticlassOptions {
  double c = 1.5;
  int epochs = 20;
  std::uint64_t seed = 0;
};

// One-vs-rest primal hinge-loss training. For each class k the objective is
//   lambda/2 (|w|^2 + b^2) + 1/N sum_i max(0, 1 - y_ik (w.x_i + b)),
// lambda = 1/(C N), minimized by stochastic subgradient steps of size
// 1/(lambda t) over a seeded per-epoch permutation. `dim` is the feature
// space size (ids >= dim are ignored). Throws DegenerateError with fewer than
// two distinct labels.
LinearMulticlassModel train_multiclass(const std::vector<LabeledExample>& examples, int dim,
                                       const MulticlassOptions& options);

// Binary objective and one of its subgradients, weights laid out as
// [w_0 .. w_{dim-1}, b] and labels in {-1, +1}.
struct BinaryExample {
  FeatureVector features;
  int sign = 1;
};
double hinge_objective(std::span<const double> params, const std::vector<BinaryExample>& data,
                       double lambda);
std::vector<double> hinge_subgradient(std::span<const double> params,
                                      const std::vector<BinaryExample>& data, double lambda);

// Deterministic permutation of [0, n) from a 64-bit seed.
std::vector<int> seeded_permutation(int n, std::uint64_t seed);

// Perceptron with lazily maintained weight averaging. Each update call is
// one step; the averaged weights are the mean of the weight vectors observed
// after every step.
class AveragedPerceptronModel {
 public:
  std::span<const double> weights() const { return weights_; }
  long update_count() const { return steps_; }
  double weight(FeatureId id) const;

  // weights += rate * (gold - predicted); advances the step count even when
  // the difference is empty.
  void update(const FeatureVector& gold, const FeatureVector& predicted, double rate);

  std::vector<double> averaged_weights() const;

  // Replaces the weights with their average; the result is a final model
  // with update_count preserved.
  AveragedPerceptronModel finalized() const;

  nlohmann::ordered_json to_json() const;
  static AveragedPerceptronModel from_json(const nlohmann::ordered_json& j);

  // Direct weight access for constructing scoring fixtures.
  void set_weight(FeatureId id, double w);

 private:
  void grow(std::size_t size);
  std::vector<double> weights_;
  std::vector<double> stamped_;  // sum of (step index before change) * delta
  long steps_ = 0;
};

void perceptron_update(AveragedPerceptronModel& model, const FeatureVector& gold,
                       const FeatureVector& predicted, double learning_rate);

}  // namespace scidtb

#endif  // SCIDTB_LEARNERS_HPP_
