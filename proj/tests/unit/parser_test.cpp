#include <filesystem>
#include <random>

#include <gtest/gtest.h>

#include "scidtb/analysis.hpp"
#include "scidtb/bundle.hpp"
#include "scidtb/pipeline.hpp"
#include "scidtb/transition_parser.hpp"
#include "support/trees.hpp"

namespace scidtb {
namespace {

std::vector<DiscourseTree> synthetic_docs(std::uint64_t seed, int count, const std::string& prefix) {
  std::mt19937_64 rng(seed);
  std::vector<DiscourseTree> out;
  for (int i = 0; i < count; ++i) {
    out.push_back(testing::synthetic_abstract(rng, 1 + i % 10, prefix + std::to_string(i)));
  }
  return out;
}

TEST(OracleExamples, SkipsNonProjective) {
  std::mt19937_64 rng(41);
  std::vector<DiscourseTree> trees = {testing::example_abstract()};
  DiscourseTree bad = testing::blank_doc(3);
  bad.edu(2).head = 0;
  bad.edu(3).head = 2;
  bad.edu(3).relation = {Fine::kAddition, false};
  bad.edu(1).head = 3;
  bad.edu(1).relation = {Fine::kAddition, false};
  trees.push_back(bad);
  FeatureDictionary dict;
  int skipped = 0;
  const auto labeled = oracle_examples(trees, dict, true, &skipped);
  EXPECT_EQ(skipped, 1);
  EXPECT_EQ(labeled.size(), 20u);
  const auto unlabeled = oracle_examples(trees, dict, false, &skipped);
  for (const auto& ex : unlabeled) EXPECT_LT(ex.label, 3);
  const auto labels = labeler_examples(trees, dict);
  EXPECT_EQ(labels.size(), 9u + 2u);  // root arcs carry no labeler example
}

class PipelineTest : public ::testing::TestWithParam<ParserKind> {};

TEST_P(PipelineTest, LearnsSyntheticTreebank) {
  const auto train = synthetic_docs(43, 80, "tr");
  const auto dev = synthetic_docs(44, 25, "dv");
  TrainOptions options;
  options.kind = GetParam();
  options.svm_epochs = 10;
  options.epochs = 6;
  TrainReport report;
  auto bundle = train_parser(train, options, &report);
  EXPECT_EQ(report.train_docs, 80);
  EXPECT_TRUE(bundle.dictionary.frozen());
  const auto pred = parse_all(bundle, dev);
  ASSERT_EQ(pred.size(), dev.size());
  for (const auto& t : pred) EXPECT_NO_THROW(validate(t));
  if (GetParam() != ParserKind::kGraph) {
    for (const auto& t : pred) EXPECT_TRUE(is_projective(t));
  }
  const auto r = evaluate(pred, dev);
  EXPECT_GT(r.uas, 0.6) << parser_kind_name(GetParam());
  EXPECT_GT(r.las, 0.5) << parser_kind_name(GetParam());
  EXPECT_LE(r.las, r.uas);
}

TEST_P(PipelineTest, BundleRoundTripParsesIdentically) {
  const auto train = synthetic_docs(45, 30, "tr");
  const auto dev = synthetic_docs(46, 10, "dv");
  TrainOptions options;
  options.kind = GetParam();
  options.svm_epochs = 4;
  options.epochs = 3;
  auto bundle = train_parser(train, options);
  const std::string text = serialize_bundle(bundle);
  auto back = deserialize_bundle(text);
  EXPECT_EQ(serialize_bundle(back), text);
  EXPECT_EQ(parse_all(back, dev), parse_all(bundle, dev));
}

TEST_P(PipelineTest, CoarseLabelsOnly) {
  const auto train = synthetic_docs(47, 30, "tr");
  TrainOptions options;
  options.kind = GetParam();
  options.labels = Granularity::kCoarse;
  options.svm_epochs = 4;
  options.epochs = 3;
  auto bundle = train_parser(train, options);
  for (const auto& t : parse_all(bundle, synthetic_docs(48, 10, "dv"))) {
    for (const auto& e : t.edus) {
      if (!e.relation.is_root()) EXPECT_EQ(e.relation.fine, representative_fine(e.relation.coarse()));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(AllParsers, PipelineTest,
                         ::testing::Values(ParserKind::kVanilla, ParserKind::kTwoStage, ParserKind::kGraph),
                         [](const auto& info) {
                           std::string name(parser_kind_name(info.param));
                           std::erase(name, '-');
                           return name;
                         });

TEST(Bundle, RejectsForeignFiles) {
  EXPECT_THROW(deserialize_bundle("{\"format\":\"other\"}"), BundleError);
  EXPECT_THROW(deserialize_bundle("not json"), BundleError);
  EXPECT_THROW(load_bundle("/nonexistent/model.json"), std::exception);
}

TEST(Bundle, KindNames) {
  for (const auto k : {ParserKind::kVanilla, ParserKind::kTwoStage, ParserKind::kGraph}) {
    EXPECT_EQ(parse_parser_kind(parser_kind_name(k)), k);
  }
  EXPECT_FALSE(parse_parser_kind("eisner"));
}

TEST(TwoStage, LabelerNeverPredictsRootBelowRoot) {
  const auto train = synthetic_docs(49, 30, "tr");
  TrainOptions options;
  options.svm_epochs = 4;
  auto bundle = train_parser(train, options);
  for (const auto& t : parse_all(bundle, synthetic_docs(50, 20, "dv"))) {
    for (const auto& e : t.edus) EXPECT_EQ(e.head == 0, e.relation.is_root());
  }
}

TEST(Decoding, UntrainedModelStillYieldsTrees) {
  // A model knowing only Shift forces the legality fallback.
  LinearMulticlassModel shift_only({0, 1}, 1, 1.0);
  shift_only.set_bias(0, 5.0);
  FeatureDictionary dict;
  dict.freeze();
  DecodeTrace trace;
  const auto t = parse_unlabeled(strip_structure(testing::example_abstract()), shift_only, dict, &trace);
  EXPECT_NO_THROW(validate(t));
  EXPECT_EQ(trace.steps, 20);
  EXPECT_GT(trace.fallbacks, 0);
}

}  // namespace
}  // namespace scidtb
