#include "scidtb/learners.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <thread>

namespace scidtb {
namespace {

using json = nlohmann::ordered_json;

json sparse_to_json(std::span<const double> w) {
  json out = json::array();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] != 0.0) out.push_back(json::array({i, w[i]}));
  }
  return out;
}

std::vector<double> sparse_from_json(const json& j, std::size_t dim) {
  std::vector<double> w(dim, 0.0);
  for (const auto& e : j) {
    const auto id = e.at(0).get<std::size_t>();
    if (id >= w.size()) w.resize(id + 1, 0.0);
    w[id] = e.at(1).get<double>();
  }
  return w;
}

// Trains the binary scorer for one class.
void train_one_class(const std::vector<LabeledExample>& examples, int target,
                     const std::vector<std::vector<int>>& orders, double lambda,
                     std::vector<double>& w_out, double& b_out) {
  const std::size_t dim = w_out.size();
  std::vector<double> v(dim, 0.0);
  double vb = 0.0;
  double scale = 1.0;
  long t = 0;
  for (const auto& order : orders) {
    for (int i : order) {
      ++t;
      const auto& ex = examples[i];
      const double y = ex.label == target ? 1.0 : -1.0;
      const double margin = y * scale * (ex.features.dot(v) + vb);
      const double eta = 1.0 / (lambda * static_cast<double>(t));
      const double shrink = 1.0 - 1.0 / static_cast<double>(t);
      if (shrink == 0.0) {
        std::fill(v.begin(), v.end(), 0.0);
        vb = 0.0;
        scale = 1.0;
      } else {
        scale *= shrink;
      }
      if (margin < 1.0) {
        const double step = eta * y / scale;
        for (const auto& [id, x] : ex.features.entries()) {
          if (id >= 0 && static_cast<std::size_t>(id) < dim) v[id] += step * x;
        }
        vb += step;
      }
      if (scale < 1e-9) {
        for (auto& x : v) x *= scale;
        vb *= scale;
        scale = 1.0;
      }
    }
  }
  for (std::size_t j = 0; j < dim; ++j) w_out[j] = scale * v[j];
  b_out = scale * vb;
}

}  // namespace

LinearMulticlassModel::LinearMulticlassModel(std::vector<int> classes, int dim, double c)
    : classes_(std::move(classes)),
      dim_(dim),
      c_(c),
      weights_(classes_.size(), std::vector<double>(dim, 0.0)),
      bias_(classes_.size(), 0.0) {}

int LinearMulticlassModel::class_index(int label) const {
  auto it = std::lower_bound(classes_.begin(), classes_.end(), label);
  return it != classes_.end() && *it == label ? static_cast<int>(it - classes_.begin()) : -1;
}

std::vector<double> LinearMulticlassModel::scores(const FeatureVector& fv) const {
  std::vector<double> out(classes_.size());
  for (std::size_t k = 0; k < classes_.size(); ++k) out[k] = score(static_cast<int>(k), fv);
  return out;
}

json LinearMulticlassModel::to_json() const {
  json j;
  j["classes"] = classes_;
  j["dim"] = dim_;
  j["c"] = c_;
  j["bias"] = bias_;
  json w = json::array();
  for (const auto& wk : weights_) w.push_back(sparse_to_json(wk));
  j["weights"] = std::move(w);
  return j;
}

LinearMulticlassModel LinearMulticlassModel::from_json(const json& j) {
  LinearMulticlassModel m(j.at("classes").get<std::vector<int>>(), j.at("dim").get<int>(),
                          j.at("c").get<double>());
  m.bias_ = j.at("bias").get<std::vector<double>>();
  const auto& w = j.at("weights");
  for (std::size_t k = 0; k < m.classes_.size(); ++k) {
    m.weights_[k] = sparse_from_json(w.at(k), static_cast<std::size_t>(m.dim_));
  }
  return m;
}

int best_allowed(std::span<const double> scores, const std::vector<bool>& allowed) {
  int best = -1;
  for (std::size_t k = 0; k < scores.size(); ++k) {
    if (!allowed[k]) continue;
    if (best < 0 || scores[k] > scores[best]) best = static_cast<int>(k);
  }
  return best;
}

Prediction predict_multiclass(const LinearMulticlassModel& model, const FeatureVector& fv) {
  Prediction p;
  p.scores = model.scores(fv);
  if (p.scores.empty()) return p;
  int best = 0;
  for (std::size_t k = 1; k < p.scores.size(); ++k) {
    if (p.scores[k] > p.scores[best]) best = static_cast<int>(k);
  }
  double runner = 0.0;
  bool has_runner = false;
  for (std::size_t k = 0; k < p.scores.size(); ++k) {
    if (static_cast<int>(k) == best) continue;
    if (!has_runner || p.scores[k] > runner) runner = p.scores[k];
    has_runner = true;
  }
  p.class_pos = best;
  p.label = model.classes()[best];
  p.margin = has_runner ? p.scores[best] - runner : 0.0;
  return p;
}

std::vector<int> seeded_permutation(int n, std::uint64_t seed) {
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::mt19937_64 rng(seed);
  for (int i = n - 1; i > 0; --i) {
    const auto j = static_cast<int>(rng() % static_cast<std::uint64_t>(i + 1));
    std::swap(perm[i], perm[j]);
  }
  return perm;
}

LinearMulticlassModel train_multiclass(const std::vector<LabeledExample>& examples, int dim,
                                       const MulticlassOptions& options) {
  std::set<int> labels;
  for (const auto& ex : examples) labels.insert(ex.label);
  if (labels.size() < 2) {
    throw DegenerateError("multiclass training needs at least two distinct labels");
  }
  const double n = static_cast<double>(examples.size());
  const double lambda = 1.0 / (options.c * n);

  std::vector<std::vector<int>> orders;
  for (int e = 0; e < options.epochs; ++e) {
    orders.push_back(seeded_permutation(static_cast<int>(examples.size()),
                                        options.seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(e)));
  }

  LinearMulticlassModel model(std::vector<int>(labels.begin(), labels.end()), dim, options.c);
  const int k_total = model.num_classes();
  std::vector<double> biases(k_total, 0.0);

  // Classes are independent; each thread owns a disjoint set of them.
  const int workers = std::max(1, std::min<int>(k_total, static_cast<int>(std::thread::hardware_concurrency())));
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (int k = w; k < k_total; k += workers) {
        train_one_class(examples, model.classes()[k], orders, lambda, model.mutable_weights(k), biases[k]);
      }
    });
  }
  for (auto& th : pool) th.join();
  for (int k = 0; k < k_total; ++k) model.set_bias(k, biases[k]);
  return model;
}

double hinge_objective(std::span<const double> params, const std::vector<BinaryExample>& data,
                       double lambda) {
  double reg = 0.0;
  for (double p : params) reg += p * p;
  const auto w = params.first(params.size() - 1);
  const double b = params.back();
  double loss = 0.0;
  for (const auto& ex : data) {
    loss += std::max(0.0, 1.0 - ex.sign * (ex.features.dot(w) + b));
  }
  return 0.5 * lambda * reg + loss / static_cast<double>(data.size());
}

std::vector<double> hinge_subgradient(std::span<const double> params,
                                      const std::vector<BinaryExample>& data, double lambda) {
  std::vector<double> g(params.begin(), params.end());
  for (auto& x : g) x *= lambda;
  const auto w = params.first(params.size() - 1);
  const double b = params.back();
  const double inv_n = 1.0 / static_cast<double>(data.size());
  for (const auto& ex : data) {
    if (ex.sign * (ex.features.dot(w) + b) >= 1.0) continue;
    for (const auto& [id, x] : ex.features.entries()) {
      if (static_cast<std::size_t>(id) < w.size()) g[id] -= inv_n * ex.sign * x;
    }
    g.back() -= inv_n * ex.sign;
  }
  return g;
}

double AveragedPerceptronModel::weight(FeatureId id) const {
  return static_cast<std::size_t>(id) < weights_.size() ? weights_[id] : 0.0;
}

void AveragedPerceptronModel::grow(std::size_t size) {
  if (size > weights_.size()) {
    weights_.resize(size, 0.0);
    stamped_.resize(size, 0.0);
  }
}

void AveragedPerceptronModel::update(const FeatureVector& gold, const FeatureVector& predicted,
                                     double rate) {
  const double before = static_cast<double>(steps_);
  ++steps_;
  const FeatureVector delta = gold - predicted;
  if (delta.empty()) return;
  grow(static_cast<std::size_t>(delta.entries().back().first) + 1);
  for (const auto& [id, v] : delta.entries()) {
    weights_[id] += rate * v;
    stamped_[id] += before * rate * v;
  }
}

std::vector<double> AveragedPerceptronModel::averaged_weights() const {
  std::vector<double> avg(weights_.size(), 0.0);
  if (steps_ == 0) return avg;
  const double t = static_cast<double>(steps_);
  for (std::size_t i = 0; i < weights_.size(); ++i) avg[i] = weights_[i] - stamped_[i] / t;
  return avg;
}

AveragedPerceptronModel AveragedPerceptronModel::finalized() const {
  AveragedPerceptronModel out;
  out.weights_ = averaged_weights();
  out.stamped_.assign(out.weights_.size(), 0.0);
  out.steps_ = steps_;
  return out;
}

void AveragedPerceptronModel::set_weight(FeatureId id, double w) {
  grow(static_cast<std::size_t>(id) + 1);
  weights_[id] = w;
}

json AveragedPerceptronModel::to_json() const {
  json j;
  j["update_count"] = steps_;
  j["weights"] = sparse_to_json(weights_);
  return j;
}

AveragedPerceptronModel AveragedPerceptronModel::from_json(const json& j) {
  AveragedPerceptronModel m;
  m.steps_ = j.at("update_count").get<long>();
  m.weights_ = sparse_from_json(j.at("weights"), 0);
  m.stamped_.assign(m.weights_.size(), 0.0);
  return m;
}

void perceptron_update(AveragedPerceptronModel& model, const FeatureVector& gold,
                       const FeatureVector& predicted, double learning_rate) {
  model.update(gold, predicted, learning_rate);
}

}  // namespace scidtb
