// Discourse relation taxonomy: fine-grained labels and their coarse classes.

#ifndef SCIDTB_RELATION_HPP_
#define SCIDTB_RELATION_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace scidtb {

// Fine-grained relations in taxonomy order. The enumerator value is the label
// index used for every deterministic tie-break in the toolkit.
enum class Fine : std::uint8_t {
  kRoot = 0,
  kAttribution,
  kRelated,
  kGoal,
  kGeneral,
  kCause,
  kResult,
  kComparison,
  kCondition,
  kContrast,
  kAddition,
  kAspect,
  kProcessStep,
  kDefinition,
  kEnumerate,
  kExample,
  kEnablement,
  kEvaluation,
  kEvidence,
  kReason,
  kJoint,
  kMannerMeans,
  kProgression,
  kSameUnit,
  kSummary,
  kTemporal,
};

enum class Coarse : std::uint8_t {
  kRoot = 0,
  kAttribution,
  kBackground,
  kCauseEffect,
  kComparison,
  kCondition,
  kContrast,
  kElaboration,
  kEnablement,
  kEvaluation,
  kExplain,
  kJoint,
  kMannerMeans,
  kProgression,
  kSameUnit,
  kSummary,
  kTemporal,
};

inline constexpr int kNumFine = 26;
inline constexpr int kNumCoarse = 17;
// Labels an arc between two real EDUs may carry (everything except ROOT).
inline constexpr int kNumNonRootFine = kNumFine - 1;

constexpr int index_of(Fine f) { return static_cast<int>(f); }
constexpr int index_of(Coarse c) { return static_cast<int>(c); }
constexpr Fine fine_from_index(int i) { return static_cast<Fine>(i); }
constexpr Coarse coarse_from_index(int i) { return static_cast<Coarse>(i); }

constexpr Coarse coarse_of(Fine f) {
  switch (f) {
    case Fine::kRoot: return Coarse::kRoot;
    case Fine::kAttribution: return Coarse::kAttribution;
    case Fine::kRelated:
    case Fine::kGoal:
    case Fine::kGeneral: return Coarse::kBackground;
    case Fine::kCause:
    case Fine::kResult: return Coarse::kCauseEffect;
    case Fine::kComparison: return Coarse::kComparison;
    case Fine::kCondition: return Coarse::kCondition;
    case Fine::kContrast: return Coarse::kContrast;
    case Fine::kAddition:
    case Fine::kAspect:
    case Fine::kProcessStep:
    case Fine::kDefinition:
    case Fine::kEnumerate:
    case Fine::kExample: return Coarse::kElaboration;
    case Fine::kEnablement: return Coarse::kEnablement;
    case Fine::kEvaluation: return Coarse::kEvaluation;
    case Fine::kEvidence:
    case Fine::kReason: return Coarse::kExplain;
    case Fine::kJoint: return Coarse::kJoint;
    case Fine::kMannerMeans: return Coarse::kMannerMeans;
    case Fine::kProgression: return Coarse::kProgression;
    case Fine::kSameUnit: return Coarse::kSameUnit;
    case Fine::kSummary: return Coarse::kSummary;
    case Fine::kTemporal: return Coarse::kTemporal;
  }
  return Coarse::kRoot;
}

// A relation carried by an attachment. A coarse-mapped tree stores the coarse
// class in `coarse` and sets `is_coarse`; fine is then the representative
// fine label of that class (first in taxonomy order).
struct RelationLabel {
  Fine fine = Fine::kRoot;
  bool is_coarse = false;

  Coarse coarse() const { return coarse_of(fine); }
  bool is_root() const { return fine == Fine::kRoot; }

  friend bool operator==(const RelationLabel&, const RelationLabel&) = default;
};

// Display name, e.g. "Process-step".
std::string_view fine_name(Fine f);
std::string_view coarse_name(Coarse c);

// Name written to corpus files, e.g. "elab-process_step".
std::string_view fine_file_name(Fine f);
std::string_view coarse_file_name(Coarse c);

// Parses a relation string from a corpus file. Case, '_' versus '-' and the
// release prefixes (bg-, elab-, exp-) are tolerated; both fine and coarse
// class names are accepted (a coarse name yields a coarse label).
std::optional<RelationLabel> parse_relation(std::string_view text);

// Representative fine label of a coarse class.
Fine representative_fine(Coarse c);

// Label used for file output.
std::string relation_file_name(const RelationLabel& label);
std::string relation_display_name(const RelationLabel& label);

// Index of the label at its own granularity.
inline int label_index(const RelationLabel& label) {
  return label.is_coarse ? index_of(label.coarse()) : index_of(label.fine);
}

inline RelationLabel to_coarse(RelationLabel label) {
  return RelationLabel{representative_fine(label.coarse()), true};
}

}  // namespace scidtb

#endif  // SCIDTB_RELATION_HPP_
