// Trained parser bundle: one file holding the feature dictionary and every
// model a parser kind needs.
//
// The file is JSON with keys in fixed order:
//   format, version, parser, labels, dictionary, models
// and sparse weights stored as [feature id, weight] pairs, so bundles are
// inspectable with any JSON viewer and byte-identical across identical runs.

#ifndef SCIDTB_BUNDLE_HPP_
#define SCIDTB_BUNDLE_HPP_

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "scidtb/features.hpp"
#include "scidtb/graph.hpp"
#include "scidtb/learners.hpp"
#include "scidtb/metrics.hpp"

namespace scidtb {

inline constexpr std::string_view kBundleFormat = "scidtb-parser-bundle";
inline constexpr int kBundleVersion = 1;

enum class ParserKind { kVanilla, kTwoStage, kGraph };

std::string_view parser_kind_name(ParserKind kind);
std::optional<ParserKind> parse_parser_kind(std::string_view name);

class BundleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ParserBundle {
  ParserKind kind = ParserKind::kGraph;
  Granularity labels = Granularity::kFine;
  FeatureDictionary dictionary;
  // vanilla: actions; two-stage: actions (unlabeled) + labeler.
  LinearMulticlassModel actions;
  LinearMulticlassModel labeler;
  // graph
  AveragedPerceptronModel arcs;

  // Parses one document (structure in `doc` is ignored). The dictionary must
  // be frozen.
  DiscourseTree parse(const DiscourseTree& doc);
};

std::string serialize_bundle(const ParserBundle& bundle);
ParserBundle deserialize_bundle(const std::string& text);
void save_bundle(const ParserBundle& bundle, const std::filesystem::path& path);
// Throws BundleError on a foreign format or a version mismatch.
ParserBundle load_bundle(const std::filesystem::path& path);

}  // namespace scidtb

#endif  // SCIDTB_BUNDLE_HPP_
