// Acceptance checks. One line per criterion: PASS, FAIL or SKIP.
//   --group properties   corpus-free checks (9-13)
//   --group corpus       checks against the released treebank at $SCIDTB_ROOT (1-8)
// Exit status: 0 all pass, 1 any failure, 77 when the corpus group has no corpus.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "scidtb/analysis.hpp"
#include "scidtb/learners.hpp"
#include "scidtb/metrics.hpp"
#include "scidtb/pipeline.hpp"
#include "scidtb/transition_system.hpp"
#include "scidtb/treebank.hpp"
#include "support/oracles.hpp"
#include "support/trees.hpp"

namespace fs = std::filesystem;
using namespace scidtb;

namespace {

int failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail) {
  if (!ok) ++failures;
  std::cout << (ok ? "PASS" : "FAIL") << "  " << id << "  " << name << ": " << detail << std::endl;
}

void skip(int id, const std::string& name, const std::string& why) {
  std::cout << "SKIP  " << id << "  " << name << ": " << why << std::endl;
}

std::string fmt(double v, int digits = 3) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << v;
  return os.str();
}

std::string sci(double v) {
  std::ostringstream os;
  os.setf(std::ios::scientific);
  os.precision(2);
  os << v;
  return os.str();
}

// ---- properties ----

void oracle_round_trip() {
  std::mt19937_64 rng(2024);
  int ok = 0;
  for (int i = 0; i < 200; ++i) {
    const auto t = testing::random_projective_tree(rng, 1 + i % 12, "r" + std::to_string(i));
    ok += replay(t, oracle_actions(t)) == t;
  }
  report(9, "oracle round-trip", ok == 200, std::to_string(ok) + "/200 random projective trees (n<=12) replayed exactly");
}

void mst_brute_force() {
  std::mt19937_64 rng(2025);
  std::uniform_real_distribution<double> real(-5.0, 5.0);
  std::uniform_int_distribution<int> small(-3, 3);
  int ok = 0;
  for (int i = 0; i < 500; ++i) {
    const int n = 1 + i % 5;
    ArcScoreMatrix m(n);
    for (EduId h = 0; h <= n; ++h) {
      for (EduId d = 1; d <= n; ++d) {
        if (h != d) m.set(h, d, i % 2 ? real(rng) : small(rng), h == 0 ? Fine::kRoot : Fine::kAddition);
      }
    }
    const auto heads = decode_heads(m);
    ok += testing::is_single_root_tree(heads, n) && tree_score(m, heads) == testing::brute_force_best(m);
  }
  report(10, "MST decoder vs brute force", ok == 500, std::to_string(ok) + "/500 score matrices (n<=5) with exact score equality");
}

void metric_suite() {
  std::mt19937_64 rng(2026);
  const std::vector<DiscourseTree> self = {testing::example_abstract()};
  const bool identity = uas(self, self) == 1.0 && las(self, self) == 1.0 && kappa(self, self) == 1.0;
  int ordered = 0;
  for (int i = 0; i < 500; ++i) {
    const int n = 1 + i % 12;
    const std::vector<DiscourseTree> a = {testing::random_tree(rng, n)}, b = {testing::random_tree(rng, n)};
    ordered += las(a, b) <= uas(a, b);
  }
  const double k = cohen_kappa(testing::observations_from({{20, 5}, {10, 15}}), 2);
  const double k_ref = testing::kappa_from_confusion({{20, 5}, {10, 15}});
  const bool worked = std::abs(k - 0.4) <= 1e-9 && std::abs(k_ref - 0.4) <= 1e-9;
  report(11, "metric suite", identity && ordered == 500 && worked,
         std::string("self-agreement ") + (identity ? "1/1/1" : "not 1") + ", las<=uas on " +
             std::to_string(ordered) + "/500 pairs, kappa example " + fmt(k, 12));
}

void hinge_gradient() {
  std::mt19937_64 rng(2027);
  std::normal_distribution<double> gauss(0.0, 1.0);
  int checked = 0, ok = 0;
  double worst = 0.0;
  while (checked < 50) {
    const int dim = 2 + checked % 5;
    std::vector<BinaryExample> data;
    for (int i = 0; i < 3 + checked % 6; ++i) {
      std::vector<FeatureVector::Entry> e;
      for (int d = 0; d < dim; ++d) e.emplace_back(d, gauss(rng));
      data.push_back({FeatureVector::from_entries(e), i % 2 ? 1 : -1});
    }
    std::vector<double> p(dim + 1);
    for (auto& x : p) x = gauss(rng);
    bool near_kink = false;
    for (const auto& ex : data) {
      const double m = ex.sign * (ex.features.dot(std::span<const double>(p).first(dim)) + p.back());
      near_kink |= std::abs(1.0 - m) < 1e-3;
    }
    if (near_kink) continue;
    ++checked;
    const double lambda = 0.05 + 0.02 * checked;
    const auto g = hinge_subgradient(p, data, lambda);
    bool all = true;
    for (int i = 0; i <= dim; ++i) {
      auto up = p, down = p;
      up[i] += 1e-6;
      down[i] -= 1e-6;
      const double fd = (hinge_objective(up, data, lambda) - hinge_objective(down, data, lambda)) / 2e-6;
      const double rel = std::abs(g[i] - fd) / std::max(1.0, std::abs(fd));
      worst = std::max(worst, rel);
      all &= rel <= 1e-4;
    }
    ok += all;
  }
  report(12, "hinge subgradient vs finite differences", ok == 50,
         std::to_string(ok) + "/50 instances, worst relative error " + sci(worst));
}

std::string run_cli(std::vector<std::string> args, int* code) {
  args.insert(args.begin(), "scidtb");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  *code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return out.str();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

void determinism() {
  const fs::path dir = fs::temp_directory_path() / "scidtb_acceptance_determinism";
  testing::write_synthetic_corpus(dir / "corpus");
  bool ok = true;
  std::string detail;
  for (const std::string parser : {"vanilla", "two-stage", "graph"}) {
    std::string models[2], reports[2];
    for (int run = 0; run < 2; ++run) {
      const auto model = dir / (parser + std::to_string(run) + ".json");
      int c1 = 0, c2 = 0;
      const auto train = run_cli({"train", "--corpus", (dir / "corpus").string(), "--parser", parser, "--model",
                                  model.string(), "--epochs", "4", "--svm-epochs", "8", "--seed", "3"},
                                 &c1);
      const auto eval = run_cli({"eval", "--corpus", (dir / "corpus").string(), "--model", model.string()}, &c2);
      ok &= c1 == 0 && c2 == 0;
      models[run] = slurp(model);
      reports[run] = train.substr(0, train.rfind("model written")) + eval;
    }
    const bool same = models[0] == models[1] && reports[0] == reports[1] && !models[0].empty();
    ok &= same;
    detail += parser + (same ? " identical; " : " DIFFERS; ");
  }
  fs::remove_all(dir);
  report(13, "determinism of train+eval", ok, detail + "model files compared byte for byte");
}

int run_properties() {
  oracle_round_trip();
  mst_brute_force();
  metric_suite();
  hinge_gradient();
  determinism();
  return failures ? 1 : 0;
}

// ---- corpus ----

struct ParserScores {
  EvalReport dev, test;
  bool valid = true;
  int invalid_docs = 0;
};

ParserScores train_and_score(const Treebank& bank, ParserKind kind) {
  TrainOptions options;
  options.kind = kind;
  auto bundle = train_parser(bank.partition("train"), options);
  ParserScores s;
  const auto dev_gold = bank.partition("dev");
  const auto test_gold = bank.partition("test");
  const auto dev = parse_all(bundle, dev_gold);
  const auto test = parse_all(bundle, test_gold);
  for (const auto* set : {&dev, &test}) {
    for (const auto& t : *set) {
      try {
        validate(t);
      } catch (const InvariantError&) {
        s.valid = false;
        ++s.invalid_docs;
      }
    }
  }
  s.dev = evaluate(dev, dev_gold);
  s.test = evaluate(test, test_gold);
  return s;
}

int run_corpus() {
  const char* env = std::getenv("SCIDTB_ROOT");
  const char* names[] = {"",
                         "798 unique abstracts pass validation",
                         "18,978 relations",
                         "distance histogram counts",
                         "39 non-projective trees",
                         "annotator agreement",
                         "two-stage LAS >= vanilla LAS",
                         "parser UAS near reported values",
                         "parser outputs are valid trees"};
  if (!env || !fs::is_directory(env)) {
    for (int i = 1; i <= 8; ++i) skip(i, names[i], "set SCIDTB_ROOT to the released treebank directory");
    return 77;
  }
  const Treebank bank = load_treebank(env);
  const auto unique = bank.unique();
  const auto all = bank.all_copies();

  report(1, names[1], unique.size() == 798 && bank.failures.empty(),
         std::to_string(unique.size()) + " unique, " + std::to_string(bank.failures.size()) + " failing files");

  const long rel_all = count_relations(bank, false), rel_unique = count_relations(bank, true);
  report(2, names[2], rel_all == 18978,
         "all copies " + std::to_string(rel_all) + ", unique " + std::to_string(rel_unique) +
             (rel_unique == 18978 ? " (unique selection matches)" : ""));

  const std::array<long, kNumDistanceBuckets> expected = {10576, 2208, 1231, 1626, 1146, 304, 67};
  auto describe = [](const DistanceHistogram& h) {
    std::string s = std::to_string(h.total) + " [";
    for (int b = 0; b < kNumDistanceBuckets; ++b) s += (b ? "/" : "") + std::to_string(h.counts[b]);
    return s + "]";
  };
  const auto hu = distance_histogram(unique), ha = distance_histogram(all);
  const bool u_match = hu.total == 17158 && hu.counts == expected;
  const bool a_match = ha.total == 17158 && ha.counts == expected;
  report(3, names[3], u_match || a_match,
         "unique " + describe(hu) + ", all copies " + describe(ha) +
             (u_match ? ", unique selection matches" : a_match ? ", all-copies selection matches" : ""));

  auto nonproj = [](const std::vector<DiscourseTree>& d) {
    return std::count_if(d.begin(), d.end(), [](const DiscourseTree& t) { return !is_projective(t); });
  };
  const long np_u = nonproj(unique), np_a = nonproj(all);
  report(4, names[4], np_u == 39 || np_a == 39,
         "unique " + std::to_string(np_u) + ", all copies " + std::to_string(np_a));

  AnnotatorPair pooled{"pooled", {}, {}};
  int index = 0;
  for (const auto& p : bank.double_annotations()) {
    pooled.first.push_back(*p.gold);
    pooled.second.push_back(*p.other);
    pooled.first.back().doc_id += "#" + std::to_string(index);
    pooled.second.back().doc_id += "#" + std::to_string(index++);
  }
  if (pooled.first.empty()) {
    report(5, names[5], false, "no double annotations discovered");
  } else {
    const auto row = agreement_report({pooled}).front();
    const double u = row.report ? row.report->uas : -1;
    report(5, names[5], u >= 0.75 && u <= 0.82,
           "pooled over " + std::to_string(pooled.first.size()) + " pairs: UAS " + fmt(u) + " LAS " +
               fmt(row.report ? row.report->las : -1) + " (annotator identities not recoverable)");
  }

  const auto start = std::chrono::steady_clock::now();
  const auto vanilla = train_and_score(bank, ParserKind::kVanilla);
  const auto two = train_and_score(bank, ParserKind::kTwoStage);
  const auto graph = train_and_score(bank, ParserKind::kGraph);
  const double minutes = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() / 60.0;

  report(6, names[6], two.dev.las >= vanilla.dev.las && two.test.las >= vanilla.test.las,
         "dev " + fmt(two.dev.las) + " vs " + fmt(vanilla.dev.las) + ", test " + fmt(two.test.las) + " vs " +
             fmt(vanilla.test.las));
  const bool near = std::abs(vanilla.test.uas - 0.702) <= 0.05 && std::abs(two.test.uas - 0.702) <= 0.05 &&
                    std::abs(graph.test.uas - 0.576) <= 0.06;
  report(7, names[7], near,
         "test UAS vanilla " + fmt(vanilla.test.uas) + ", two-stage " + fmt(two.test.uas) + " (0.702 +/- 0.05), graph " +
             fmt(graph.test.uas) + " (0.576 +/- 0.06); training took " + fmt(minutes, 1) + " min");
  report(8, names[8], vanilla.valid && two.valid && graph.valid,
         std::to_string(vanilla.invalid_docs + two.invalid_docs + graph.invalid_docs) + " invalid outputs");
  return failures ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  std::string group = "properties";
  app.add_option("--group", group, "properties or corpus")->check(CLI::IsMember({"properties", "corpus"}));
  CLI11_PARSE(app, argc, argv);
  return group == "corpus" ? run_corpus() : run_properties();
}
