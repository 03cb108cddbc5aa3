#include "scidtb/bundle.hpp"

#include <fstream>
#include <sstream>

#include "scidtb/transition_parser.hpp"

namespace scidtb {

using json = nlohmann::ordered_json;

std::string_view parser_kind_name(ParserKind kind) {
  switch (kind) {
    case ParserKind::kVanilla: return "vanilla";
    case ParserKind::kTwoStage: return "two-stage";
    case ParserKind::kGraph: return "graph";
  }
  return "graph";
}

std::optional<ParserKind> parse_parser_kind(std::string_view name) {
  if (name == "vanilla") return ParserKind::kVanilla;
  if (name == "two-stage") return ParserKind::kTwoStage;
  if (name == "graph") return ParserKind::kGraph;
  return std::nullopt;
}

DiscourseTree ParserBundle::parse(const DiscourseTree& doc) {
  switch (kind) {
    case ParserKind::kVanilla: return parse_vanilla(doc, actions, dictionary);
    case ParserKind::kTwoStage: return parse_two_stage(doc, actions, labeler, dictionary);
    case ParserKind::kGraph:
      return parse_graph(doc, arcs, dictionary,
                         labels == Granularity::kFine ? fine_arc_labels() : coarse_arc_labels());
  }
  return doc;
}

std::string serialize_bundle(const ParserBundle& bundle) {
  json j;
  j["format"] = kBundleFormat;
  j["version"] = kBundleVersion;
  j["parser"] = parser_kind_name(bundle.kind);
  j["labels"] = bundle.labels == Granularity::kFine ? "fine" : "coarse";
  j["dictionary"] = bundle.dictionary.names();
  json models = json::object();
  switch (bundle.kind) {
    case ParserKind::kVanilla:
      models["actions"] = bundle.actions.to_json();
      break;
    case ParserKind::kTwoStage:
      models["actions"] = bundle.actions.to_json();
      models["labeler"] = bundle.labeler.to_json();
      break;
    case ParserKind::kGraph:
      models["arcs"] = bundle.arcs.to_json();
      break;
  }
  j["models"] = std::move(models);
  return j.dump(1) + "\n";
}

ParserBundle deserialize_bundle(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw BundleError(std::string("model file is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || j.value("format", "") != kBundleFormat) {
    throw BundleError("not a parser bundle");
  }
  if (j.value("version", -1) != kBundleVersion) {
    throw BundleError("bundle version " + std::to_string(j.value("version", -1)) +
                      " does not match toolkit version " + std::to_string(kBundleVersion));
  }
  ParserBundle b;
  const auto kind = parse_parser_kind(j.value("parser", ""));
  if (!kind) throw BundleError("unknown parser kind in bundle");
  b.kind = *kind;
  b.labels = j.value("labels", "fine") == "coarse" ? Granularity::kCoarse : Granularity::kFine;
  try {
    b.dictionary = FeatureDictionary::from_names(j.at("dictionary").get<std::vector<std::string>>(), true);
    const auto& m = j.at("models");
    switch (b.kind) {
      case ParserKind::kVanilla:
        b.actions = LinearMulticlassModel::from_json(m.at("actions"));
        break;
      case ParserKind::kTwoStage:
        b.actions = LinearMulticlassModel::from_json(m.at("actions"));
        b.labeler = LinearMulticlassModel::from_json(m.at("labeler"));
        break;
      case ParserKind::kGraph:
        b.arcs = AveragedPerceptronModel::from_json(m.at("arcs"));
        break;
    }
  } catch (const json::exception& e) {
    throw BundleError(std::string("malformed bundle: ") + e.what());
  }
  return b;
}

void save_bundle(const ParserBundle& bundle, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << serialize_bundle(bundle);
}

ParserBundle load_bundle(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return deserialize_bundle(buf.str());
}

}  // namespace scidtb
