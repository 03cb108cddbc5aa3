#include <cmath>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "scidtb/learners.hpp"
#include "scidtb/metrics.hpp"

namespace scidtb {
namespace {

FeatureVector fv(std::vector<FeatureVector::Entry> e) { return FeatureVector::from_entries(std::move(e)); }

// Three well separated classes over features 1..6 with shared noise 7..9.
std::vector<LabeledExample> toy_examples(std::mt19937_64& rng, int count) {
  std::vector<LabeledExample> out;
  std::uniform_int_distribution<int> label(0, 2), noise(7, 9);
  for (int i = 0; i < count; ++i) {
    const int y = label(rng) * 5 + 3;  // labels 3, 8, 13
    const int base = 1 + 2 * ((y - 3) / 5);
    out.push_back({fv({{base, 1.0}, {base + 1, 1.0}, {noise(rng), 1.0}}), y});
  }
  return out;
}

TEST(Multiclass, LearnsSeparableData) {
  std::mt19937_64 rng(1);
  const auto train = toy_examples(rng, 300);
  const auto model = train_multiclass(train, 10, {1.5, 10, 0});
  EXPECT_EQ(model.classes(), (std::vector<int>{3, 8, 13}));
  const auto test = toy_examples(rng, 100);
  int correct = 0;
  for (const auto& ex : test) correct += predict_multiclass(model, ex.features).label == ex.label;
  EXPECT_EQ(correct, 100);
}

TEST(Multiclass, DeterministicAndSeedSensitive) {
  std::mt19937_64 rng(2);
  const auto train = toy_examples(rng, 200);
  const auto a = train_multiclass(train, 10, {1.0, 5, 4});
  const auto b = train_multiclass(train, 10, {1.0, 5, 4});
  EXPECT_TRUE(a == b);
  const auto c = train_multiclass(train, 10, {1.0, 5, 5});
  EXPECT_FALSE(a == c);
}

TEST(Multiclass, DecreasesObjective) {
  std::mt19937_64 rng(3);
  const auto train = toy_examples(rng, 200);
  const double c = 1.5;
  const auto model = train_multiclass(train, 10, {c, 20, 0});
  const double lambda = 1.0 / (c * static_cast<double>(train.size()));
  for (int k = 0; k < model.num_classes(); ++k) {
    std::vector<BinaryExample> data;
    for (const auto& ex : train) data.push_back({ex.features, ex.label == model.classes()[k] ? 1 : -1});
    std::vector<double> params(model.weights(k).begin(), model.weights(k).end());
    params.push_back(model.bias(k));
    const std::vector<double> zero(params.size(), 0.0);
    EXPECT_LT(hinge_objective(params, data, lambda), 0.5 * hinge_objective(zero, data, lambda));
  }
}

TEST(Multiclass, NeedsTwoLabels) {
  std::vector<LabeledExample> one = {{fv({{1, 1.0}}), 4}, {fv({{2, 1.0}}), 4}};
  EXPECT_THROW(train_multiclass(one, 3, {}), DegenerateError);
}

TEST(Multiclass, TiesGoToLowestPosition) {
  LinearMulticlassModel m({2, 5, 9}, 4, 1.0);
  const auto p = predict_multiclass(m, fv({{1, 1.0}}));
  EXPECT_EQ(p.class_pos, 0);
  EXPECT_EQ(p.label, 2);
  EXPECT_DOUBLE_EQ(p.margin, 0.0);
  EXPECT_EQ(best_allowed(p.scores, {false, true, true}), 1);
}

TEST(Multiclass, JsonRoundTrip) {
  std::mt19937_64 rng(4);
  const auto model = train_multiclass(toy_examples(rng, 50), 10, {1.5, 3, 0});
  EXPECT_TRUE(LinearMulticlassModel::from_json(model.to_json()) == model);
}

TEST(Hinge, SubgradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> gauss(0.0, 1.0);
  int checked = 0;
  while (checked < 50) {
    const int dim = 3 + checked % 4;
    const int n = 4 + checked % 5;
    std::vector<BinaryExample> data;
    for (int i = 0; i < n; ++i) {
      std::vector<FeatureVector::Entry> e;
      for (int d = 0; d < dim; ++d) e.emplace_back(d, gauss(rng));
      data.push_back({fv(e), i % 2 ? 1 : -1});
    }
    std::vector<double> params(dim + 1);
    for (auto& p : params) p = gauss(rng);
    bool near_kink = false;
    for (const auto& ex : data) {
      const double m = ex.sign * (ex.features.dot(std::span<const double>(params).first(dim)) + params.back());
      near_kink |= std::abs(1.0 - m) < 1e-3;
    }
    if (near_kink) continue;
    const double lambda = 0.1 + 0.05 * checked;
    const auto g = hinge_subgradient(params, data, lambda);
    const double h = 1e-6;
    for (int i = 0; i <= dim; ++i) {
      auto up = params, down = params;
      up[i] += h;
      down[i] -= h;
      const double numeric = (hinge_objective(up, data, lambda) - hinge_objective(down, data, lambda)) / (2 * h);
      EXPECT_LE(std::abs(g[i] - numeric), 1e-4 * std::max(1.0, std::abs(numeric))) << "coordinate " << i;
    }
    ++checked;
  }
}

TEST(Permutation, SeededAndComplete) {
  const auto a = seeded_permutation(50, 9);
  EXPECT_EQ(a, seeded_permutation(50, 9));
  EXPECT_NE(a, seeded_permutation(50, 10));
  EXPECT_EQ(std::set<int>(a.begin(), a.end()).size(), 50u);
}

TEST(Perceptron, ScriptedAveraging) {
  AveragedPerceptronModel m;
  const auto f1 = fv({{1, 1.0}});
  const auto f2 = fv({{2, 1.0}});
  std::vector<std::vector<double>> snapshots;
  auto snap = [&] {
    std::vector<double> w(3, 0.0);
    for (int i = 0; i < 3; ++i) w[i] = m.weight(i);
    snapshots.push_back(w);
  };
  perceptron_update(m, f1, f2, 1.0);
  snap();
  perceptron_update(m, f1, f1, 1.0);  // correct prediction, no change
  snap();
  perceptron_update(m, f2, f1, 1.0);
  snap();
  EXPECT_EQ(m.update_count(), 3);
  EXPECT_DOUBLE_EQ(m.weight(1), 0.0);
  const auto avg = m.averaged_weights();
  for (int i = 0; i < 3; ++i) {
    double mean = 0;
    for (const auto& s : snapshots) mean += s[i] / 3.0;
    EXPECT_NEAR(i < static_cast<int>(avg.size()) ? avg[i] : 0.0, mean, 1e-12);
  }
  EXPECT_NEAR(avg[1], 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(avg[2], -2.0 / 3.0, 1e-12);
  const auto fin = m.finalized();
  EXPECT_NEAR(fin.weight(1), 2.0 / 3.0, 1e-12);
  EXPECT_EQ(fin.update_count(), 3);
}

TEST(Perceptron, LearningRateScales) {
  AveragedPerceptronModel m;
  perceptron_update(m, fv({{1, 1.0}}), fv({{2, 1.0}}), 0.5);
  EXPECT_DOUBLE_EQ(m.weight(1), 0.5);
  EXPECT_DOUBLE_EQ(m.weight(2), -0.5);
}

TEST(Perceptron, JsonRoundTrip) {
  AveragedPerceptronModel m;
  perceptron_update(m, fv({{1, 1.0}, {4, 2.0}}), fv({{2, 1.0}}), 1.0);
  const auto back = AveragedPerceptronModel::from_json(m.to_json());
  EXPECT_EQ(back.update_count(), 1);
  for (int i = 0; i < 5; ++i) EXPECT_DOUBLE_EQ(back.weight(i), m.weight(i));
}

}  // namespace
}  // namespace scidtb
