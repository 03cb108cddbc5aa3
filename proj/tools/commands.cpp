#include "commands.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "scidtb/analysis.hpp"
#include "scidtb/render.hpp"
#include "scidtb/treebank.hpp"

namespace scidtb::cli {
namespace fs = std::filesystem;
namespace {

std::string fixed(double v, int digits = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string percent(double fraction) { return fixed(100.0 * fraction, 2); }

class Table {
 public:
  explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }
  bool empty() const { return rows_.empty(); }

  void print(std::ostream& os, OutputFormat format) const {
    if (format == OutputFormat::kCsv) {
      print_csv_row(os, header_);
      for (const auto& r : rows_) print_csv_row(os, r);
      return;
    }
    std::vector<std::size_t> width(header_.size(), 0);
    auto widen = [&](const std::vector<std::string>& r) {
      for (std::size_t i = 0; i < r.size() && i < width.size(); ++i) width[i] = std::max(width[i], r[i].size());
    };
    widen(header_);
    for (const auto& r : rows_) widen(r);
    auto line = [&](const std::vector<std::string>& r) {
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (i) os << "  ";
        // First column left-aligned, numbers right-aligned.
        if (i == 0) {
          os << r[i] << std::string(width[i] - r[i].size(), ' ');
        } else {
          os << std::string(width[i] - r[i].size(), ' ') << r[i];
        }
      }
      os << '\n';
    };
    line(header_);
    std::size_t total = 0;
    for (auto w : width) total += w;
    os << std::string(total + 2 * (width.size() - 1), '-') << '\n';
    for (const auto& r : rows_) line(r);
  }

 private:
  static void print_csv_row(std::ostream& os, const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) os << ',';
      if (r[i].find_first_of(",\"") != std::string::npos) {
        os << '"';
        for (char c : r[i]) os << (c == '"' ? "\"\"" : std::string(1, c));
        os << '"';
      } else {
        os << r[i];
      }
    }
    os << '\n';
  }

  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

DiscoveryRule discovery(const RunConfig& config) {
  DiscoveryRule rule;
  rule.gold_dir = config.gold_dir;
  return rule;
}

Treebank require_treebank(const RunConfig& config) {
  if (config.corpus_root.empty()) throw std::invalid_argument("--corpus is required");
  if (!fs::is_directory(config.corpus_root)) {
    throw std::invalid_argument("corpus directory not found: " + config.corpus_root.string());
  }
  return load_treebank(config.corpus_root, discovery(config));
}

std::vector<DiscourseTree> require_partition(const Treebank& bank, const std::string& name) {
  auto docs = bank.partition(name);
  if (docs.empty()) throw std::invalid_argument("partition '" + name + "' has no documents");
  return docs;
}

void report_load_failures(const Treebank& bank, std::ostream& err) {
  for (const auto& f : bank.failures) err << "warning: skipped " << f.path.string() << ": " << f.message << '\n';
}

std::string kappa_cell(const EvalReport& r) { return r.kappa ? fixed(*r.kappa) : std::string("n/a"); }

struct HumanCeiling {
  double uas, las;
};

std::optional<HumanCeiling> human_ceiling(const std::string& split) {
  if (split == "dev") return HumanCeiling{0.806, 0.627};
  if (split == "test") return HumanCeiling{0.802, 0.622};
  return std::nullopt;
}

}  // namespace

OutputFormat RunConfig::output_format() const {
  if (format == "csv") return OutputFormat::kCsv;
  if (format == "text") return OutputFormat::kText;
  throw std::invalid_argument("unknown format '" + format + "' (expected text or csv)");
}

Granularity RunConfig::granularity() const {
  if (labels == "fine") return Granularity::kFine;
  if (labels == "coarse") return Granularity::kCoarse;
  throw std::invalid_argument("unknown label granularity '" + labels + "' (expected fine or coarse)");
}

TrainOptions RunConfig::train_options() const {
  TrainOptions o;
  const auto kind = parse_parser_kind(parser);
  if (!kind) throw std::invalid_argument("unknown parser kind '" + parser + "' (expected vanilla, two-stage or graph)");
  o.kind = *kind;
  o.labels = granularity();
  o.c1 = c1;
  o.c2 = c2;
  o.epochs = epochs;
  o.svm_epochs = svm_epochs;
  o.learning_rate = lr;
  o.seed = seed;
  if (c1 <= 0 || c2 <= 0) throw std::invalid_argument("C must be positive");
  if (epochs < 1 || svm_epochs < 1) throw std::invalid_argument("epoch counts must be at least 1");
  return o;
}

void load_config_file(const fs::path& path, RunConfig& config) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file " + path.string());
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string();
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument(path.string() + ":" + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "corpus") config.corpus_root = value;
      else if (key == "split") config.split = value;
      else if (key == "train_split") config.train_split = value;
      else if (key == "dev_split") config.dev_split = value;
      else if (key == "parser") config.parser = value;
      else if (key == "c1") config.c1 = std::stod(value);
      else if (key == "c2") config.c2 = std::stod(value);
      else if (key == "epochs") config.epochs = std::stoi(value);
      else if (key == "svm_epochs") config.svm_epochs = std::stoi(value);
      else if (key == "lr") config.lr = std::stod(value);
      else if (key == "seed") config.seed = std::stoull(value);
      else if (key == "labels") config.labels = value;
      else if (key == "model") config.model = value;
      else if (key == "out") config.out = value;
      else if (key == "format") config.format = value;
      else if (key == "gold_dir") config.gold_dir = value;
      else throw std::invalid_argument("unknown config key '" + key + "'");
    } catch (const std::logic_error& e) {
      if (dynamic_cast<const std::invalid_argument*>(&e) && std::string(e.what()).rfind("unknown", 0) == 0) throw;
      throw std::invalid_argument(path.string() + ":" + std::to_string(lineno) + ": bad value for '" + key + "'");
    }
  }
}

int cmd_validate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const Treebank bank = require_treebank(config);
  const auto format = config.output_format();
  if (bank.files_seen == 0) {
    err << "warning: no documents found under " << config.corpus_root.string() << '\n';
  }
  std::vector<std::pair<std::string, std::string>> results;  // path -> "" or error
  for (const auto& c : bank.copies) results.emplace_back(c.path.string(), "");
  for (const auto& f : bank.failures) results.emplace_back(f.path.string(), f.message);
  std::sort(results.begin(), results.end());

  Table files({"file", "status", "detail"});
  for (const auto& [path, message] : results) files.add({path, message.empty() ? "PASS" : "FAIL", message});
  if (format == OutputFormat::kCsv) {
    files.print(out, format);
  } else {
    for (const auto& [path, message] : results) {
      out << (message.empty() ? "PASS " : "FAIL ") << path;
      if (!message.empty()) out << ": " << message;
      out << '\n';
    }
  }

  const auto split = bank.split();
  std::ostream& summary = format == OutputFormat::kCsv ? err : out;
  summary << "files: " << bank.files_seen << ", passed: " << bank.copies.size()
          << ", failed: " << bank.failures.size() << '\n';
  summary << "unique abstracts: " << bank.unique().size() << " (train " << split.train.size() << ", dev "
          << split.dev.size() << ", test " << split.test.size() << ")\n";
  summary << "annotation copies: " << bank.copies.size() << '\n';
  try {
    validate_disjoint(split);
  } catch (const InvariantError& e) {
    summary << "FAIL partition overlap: " << e.what() << '\n';
    return 1;
  }
  return bank.failures.empty() ? 0 : 1;
}

int cmd_stats(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const Treebank bank = require_treebank(config);
  report_load_failures(bank, err);
  const auto format = config.output_format();
  const auto unique = bank.unique();
  const auto all = bank.all_copies();

  const auto hu = distance_histogram(unique);
  const auto ha = distance_histogram(all);
  auto count_nonprojective = [](const std::vector<DiscourseTree>& docs) {
    return std::count_if(docs.begin(), docs.end(), [](const DiscourseTree& t) { return !is_projective(t); });
  };
  const long np_unique = count_nonprojective(unique);
  const long np_all = count_nonprojective(all);

  Table summary({"statistic", "unique", "all_copies"});
  summary.add({"documents", std::to_string(unique.size()), std::to_string(all.size())});
  summary.add({"relations", std::to_string(count_relations(bank, true)), std::to_string(count_relations(bank, false))});
  summary.add({"non_projective", std::to_string(np_unique), std::to_string(np_all)});
  summary.add({"non_projective_pct",
               percent(unique.empty() ? 0.0 : static_cast<double>(np_unique) / unique.size()),
               percent(all.empty() ? 0.0 : static_cast<double>(np_all) / all.size())});
  summary.add({"distance_gt5_pct", percent(hu.long_range_share()), percent(ha.long_range_share())});
  summary.print(out, format);
  out << '\n';

  Table hist({"distance", "unique", "unique_pct", "all_copies", "all_copies_pct"});
  for (int b = 0; b < kNumDistanceBuckets; ++b) {
    hist.add({std::string(distance_bucket_label(b)), std::to_string(hu.counts[b]), percent(hu.percentage(b)),
              std::to_string(ha.counts[b]), percent(ha.percentage(b))});
  }
  hist.add({"total", std::to_string(hu.total), percent(hu.total ? 1.0 : 0.0), std::to_string(ha.total),
            percent(ha.total ? 1.0 : 0.0)});
  hist.print(out, format);
  out << '\n';

  Table profile({"rank", "relation", "unique", "all_copies"});
  const auto pu = long_range_relation_profile(unique, 5);
  const auto pa = long_range_relation_profile(all, 5);
  for (std::size_t i = 0; i < 5 && (i < pu.size() || i < pa.size()); ++i) {
    std::string rel_u = i < pu.size() ? std::string(fine_name(pu[i].first)) + " (" + std::to_string(pu[i].second) + ")" : "";
    std::string rel_a = i < pa.size() ? std::string(fine_name(pa[i].first)) + " (" + std::to_string(pa[i].second) + ")" : "";
    profile.add({std::to_string(i + 1), "distance>5", rel_u, rel_a});
  }
  profile.print(out, format);
  return 0;
}

int cmd_agreement(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const Treebank bank = require_treebank(config);
  report_load_failures(bank, err);
  const auto format = config.output_format();

  std::vector<AnnotatorPair> pairs;
  if (config.self_pair) {
    const auto gold = bank.unique();
    pairs.push_back({"self", gold, gold});
  } else {
    std::map<std::string, AnnotatorPair> by_annotation;
    AnnotatorPair pooled{"pooled", {}, {}};
    for (const auto& p : bank.double_annotations()) {
      auto& entry = by_annotation[p.annotation];
      entry.name = std::string(config.gold_dir) + " vs " + p.annotation;
      // One copy per abstract per annotation source keeps the pairing unique.
      const auto dup = std::find_if(entry.first.begin(), entry.first.end(),
                                    [&](const DiscourseTree& t) { return t.doc_id == p.gold->doc_id; });
      if (dup != entry.first.end()) continue;
      entry.first.push_back(*p.gold);
      entry.second.push_back(*p.other);
      pooled.first.push_back(*p.gold);
      pooled.second.push_back(*p.other);
    }
    for (auto& [_, pair] : by_annotation) pairs.push_back(std::move(pair));
    if (pairs.size() > 1) {
      // Pooled rows may repeat an abstract across annotation sources.
      for (std::size_t i = 0; i < pooled.first.size(); ++i) pooled.first[i].doc_id += "#" + std::to_string(i);
      for (std::size_t i = 0; i < pooled.second.size(); ++i) pooled.second[i].doc_id += "#" + std::to_string(i);
      pairs.push_back(std::move(pooled));
    }
  }
  if (pairs.empty()) err << "notice: no doubly annotated documents found\n";

  Table table({"pair", "docs", "uas", "las", "kappa"});
  for (const auto& row : agreement_report(pairs, config.granularity())) {
    if (!row.report) {
      err << "notice: pair '" << row.name << "' skipped: " << row.error << '\n';
      continue;
    }
    table.add({row.name, std::to_string(row.report->n_docs), fixed(row.report->uas), fixed(row.report->las),
               kappa_cell(*row.report)});
  }
  table.print(out, format);
  return 0;
}

int cmd_train(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const TrainOptions options = config.train_options();
  if (config.model.empty()) throw std::invalid_argument("--model is required for train");
  const Treebank bank = require_treebank(config);
  report_load_failures(bank, err);
  const auto train = require_partition(bank, config.train_split);
  const auto dev = bank.partition(config.dev_split);
  const Granularity g = config.granularity();

  auto dev_line = [&](const std::string& tag, ParserBundle& b) {
    if (dev.empty()) return;
    const auto pred = parse_all(b, dev);
    const auto r = evaluate(pred, dev, g);
    out << tag << " dev UAS " << fixed(r.uas) << " LAS " << fixed(r.las) << '\n';
  };

  TrainReport report;
  EpochHook hook;
  if (options.kind == ParserKind::kGraph) {
    hook = [&](int epoch, ParserBundle& snap) { dev_line("epoch " + std::to_string(epoch), snap); };
  }
  ParserBundle bundle = train_parser(train, options, &report, hook);
  out << "parser " << parser_kind_name(options.kind) << ": " << report.train_docs << " training documents";
  if (options.kind != ParserKind::kGraph) {
    out << " (" << report.skipped_nonprojective << " non-projective skipped)";
  }
  out << ", " << report.examples << (options.kind == ParserKind::kGraph ? " perceptron steps" : " examples")
      << ", " << report.dictionary_size << " features\n";
  if (options.kind != ParserKind::kGraph) dev_line("final", bundle);
  save_bundle(bundle, config.model);
  out << "model written to " << config.model.string() << '\n';
  return 0;
}

int cmd_parse(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.model.empty()) throw std::invalid_argument("--model is required for parse");
  if (config.out.empty()) throw std::invalid_argument("--out directory is required for parse");
  ParserBundle bundle = load_bundle(config.model);
  std::vector<DiscourseTree> docs;
  for (const auto& input : config.inputs) docs.push_back(load_document(input));
  if (config.inputs.empty()) {
    const Treebank bank = require_treebank(config);
    report_load_failures(bank, err);
    docs = require_partition(bank, config.split);
  }
  fs::create_directories(config.out);
  const auto parsed = parse_all(bundle, docs);
  for (const auto& t : parsed) {
    save_document(t, config.out / (t.doc_id + ".dep"));
  }
  out << "parsed " << parsed.size() << " documents into " << config.out.string() << '\n';
  return 0;
}

int cmd_eval(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.model.empty()) throw std::invalid_argument("--model is required for eval");
  ParserBundle bundle = load_bundle(config.model);
  const Treebank bank = require_treebank(config);
  report_load_failures(bank, err);
  const auto gold = require_partition(bank, config.split);
  const Granularity g = bundle.labels == Granularity::kCoarse ? Granularity::kCoarse : config.granularity();

  bundle.dictionary.reset_counters();
  const auto pred = parse_all(bundle, gold);
  const auto r = evaluate(pred, gold, g);

  Table table({"split", "parser", "docs", "edus", "uas", "las", "kappa"});
  table.add({config.split, std::string(parser_kind_name(bundle.kind)), std::to_string(r.n_docs),
             std::to_string(r.n_edus), fixed(r.uas), fixed(r.las), kappa_cell(r)});
  table.print(out, config.output_format());
  if (config.output_format() == OutputFormat::kText) {
    if (const auto human = human_ceiling(config.split)) {
      out << "human agreement on this split (reference): UAS " << fixed(human->uas) << " LAS "
          << fixed(human->las) << '\n';
    }
    if (bundle.dictionary.frozen_lookups() > 0) {
      out << "feature OOV rate: " << percent(bundle.dictionary.oov_rate()) << "%\n";
    }
  }
  return 0;
}

int cmd_render(const RunConfig& config, std::ostream& out, std::ostream&) {
  if (config.inputs.size() != 1) throw std::invalid_argument("render takes exactly one document file");
  const auto tree = load_document(config.inputs.front());
  const std::string dot = render_dot(tree);
  if (config.out.empty()) {
    out << dot;
    return 0;
  }
  std::ofstream file(config.out, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot write " + config.out.string());
  file << dot;
  return 0;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  RunConfig config;
  // A config file supplies defaults; flags given on the command line win.
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--config") {
      try {
        load_config_file(argv[i + 1], config);
      } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
      }
    }
  }

  CLI::App app{"Discourse dependency treebank toolkit"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "flat key = value file with defaults for any flag");

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--corpus", config.corpus_root, "corpus root with train/ dev/ test/");
    sub->add_option("--format", config.format, "text or csv")->check(CLI::IsMember({"text", "csv"}));
    sub->add_option("--labels", config.labels, "fine or coarse relation labels")
        ->check(CLI::IsMember({"fine", "coarse"}));
    sub->add_option("--gold-dir", config.gold_dir, "name of the gold annotation directory");
  };
  auto add_training = [&](CLI::App* sub) {
    sub->add_option("--parser", config.parser, "vanilla, two-stage or graph");
    sub->add_option("--c1", config.c1, "penalty C of the action classifier");
    sub->add_option("--c2", config.c2, "penalty C of the second-stage labeler");
    sub->add_option("--epochs", config.epochs, "perceptron epochs (graph parser)");
    sub->add_option("--svm-epochs", config.svm_epochs, "hinge-loss trainer passes");
    sub->add_option("--lr", config.lr, "perceptron learning rate");
    sub->add_option("--seed", config.seed, "seed for example order");
    sub->add_option("--train-split", config.train_split, "training partition");
    sub->add_option("--dev-split", config.dev_split, "development partition");
  };

  auto* validate = app.add_subcommand("validate", "check every document against the tree invariants");
  add_common(validate);
  auto* stats = app.add_subcommand("stats", "relation counts, distance histogram, projectivity");
  add_common(stats);
  auto* agreement = app.add_subcommand("agreement", "attachment and label agreement between annotations");
  add_common(agreement);
  agreement->add_flag("--self", config.self_pair, "compare the gold copies with themselves");
  auto* train = app.add_subcommand("train", "train a parser and write a model bundle");
  add_common(train);
  add_training(train);
  train->add_option("--model", config.model, "output model bundle")->required();
  train->add_option("--split", config.train_split, "training partition");
  auto* parse = app.add_subcommand("parse", "parse documents with a model bundle");
  add_common(parse);
  parse->add_option("--model", config.model, "model bundle")->required();
  parse->add_option("--split", config.split, "partition to parse when no files are given");
  parse->add_option("--out", config.out, "output directory")->required();
  parse->add_option("inputs", config.inputs, "document files");
  auto* eval = app.add_subcommand("eval", "parse a partition and score it against gold");
  add_common(eval);
  eval->add_option("--model", config.model, "model bundle")->required();
  eval->add_option("--split", config.split, "partition to evaluate");
  auto* render = app.add_subcommand("render", "draw a document as a Graphviz arc diagram");
  render->add_option("--out", config.out, "output .dot file (stdout if omitted)");
  render->add_option("input", config.inputs, "document file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*validate) return cmd_validate(config, out, err);
    if (*stats) return cmd_stats(config, out, err);
    if (*agreement) return cmd_agreement(config, out, err);
    if (*train) return cmd_train(config, out, err);
    if (*parse) return cmd_parse(config, out, err);
    if (*eval) return cmd_eval(config, out, err);
    if (*render) return cmd_render(config, out, err);
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace scidtb::cli
