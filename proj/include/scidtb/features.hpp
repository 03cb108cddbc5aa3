// Sparse features for transition configurations and candidate arcs.
//
// Templates produce readable strings ("s0.first=for"); a FeatureDictionary
// interns them into dense ids. Arc features are factored by relation: the id
// of (base feature b, label l) is b * kNumFine + l, so different labels never
// share an id.

#ifndef SCIDTB_FEATURES_HPP_
#define SCIDTB_FEATURES_HPP_

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "scidtb/corpus.hpp"
#include "scidtb/transition_system.hpp"

namespace scidtb {

using FeatureId = int;

// Whitespace split, ASCII lower-casing, leading and trailing ASCII punctuation
// split off one character per token. The sentence marker "<S>" of the
// released files becomes the single token "<s>".
std::vector<std::string> tokenize(std::string_view text);

class FeatureVector {
 public:
  using Entry = std::pair<FeatureId, double>;

  FeatureVector() = default;
  // Sums duplicates and drops zeros.
  static FeatureVector from_entries(std::vector<Entry> entries);
  static FeatureVector from_ids(std::span<const FeatureId> ids);

  const std::vector<Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  bool contains(FeatureId id) const;
  double value(FeatureId id) const;

  // Ids beyond the weight vector contribute nothing.
  double dot(std::span<const double> weights) const;

  FeatureVector& operator+=(const FeatureVector& other);
  FeatureVector& operator-=(const FeatureVector& other);
  friend FeatureVector operator-(FeatureVector a, const FeatureVector& b) { return a -= b; }

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;

 private:
  std::vector<Entry> entries_;  // sorted by id, unique, non-zero
};

class FeatureDictionary {
 public:
  static constexpr FeatureId kOov = 0;

  FeatureDictionary();

  // Interns `feature` unless frozen; a frozen dictionary answers kOov for
  // unseen strings and never grows.
  FeatureId lookup(std::string_view feature);
  // Never grows, never counts.
  FeatureId find(std::string_view feature) const;

  void freeze() { frozen_ = true; }
  bool frozen() const { return frozen_; }
  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(FeatureId id) const { return names_[id]; }
  const std::vector<std::string>& names() const { return names_; }

  // Counters over frozen lookups.
  long frozen_lookups() const { return frozen_lookups_; }
  long oov_hits() const { return oov_hits_; }
  double oov_rate() const;
  void reset_counters() { frozen_lookups_ = oov_hits_ = 0; }

  static FeatureDictionary from_names(std::vector<std::string> names, bool frozen);

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const { return std::hash<std::string_view>{}(s); }
  };
  std::vector<std::string> names_;
  std::unordered_map<std::string, FeatureId, Hash, std::equal_to<>> ids_;
  bool frozen_ = false;
  long frozen_lookups_ = 0;
  long oov_hits_ = 0;
};

// Leading discourse cues, matched on the first tokens of an EDU (longest
// match wins).
class CueList {
 public:
  static const CueList& builtin();
  // One cue per line; blank lines and '#' comments ignored.
  static CueList load(const std::filesystem::path& path);
  explicit CueList(std::vector<std::string> cues);

  std::optional<std::string> leading_cue(const std::vector<std::string>& tokens) const;
  const std::vector<std::string>& cues() const { return cues_; }

 private:
  std::vector<std::string> cues_;
  std::vector<std::vector<std::string>> tokenized_;  // longest first
};

// Per-document cache of tokens and cues.
class DocumentContext {
 public:
  explicit DocumentContext(const DiscourseTree& doc, const CueList& cues = CueList::builtin());

  const DiscourseTree& doc() const { return *doc_; }
  int size() const { return doc_->size(); }
  const std::vector<std::string>& tokens(EduId id) const { return tokens_[id - 1]; }
  const std::optional<std::string>& cue(EduId id) const { return cues_[id - 1]; }

 private:
  const DiscourseTree* doc_;
  std::vector<std::vector<std::string>> tokens_;
  std::vector<std::optional<std::string>> cues_;
};

std::string_view token_count_bucket(int count);
std::string_view position_bucket(EduId id, int num_edus);
// Quarter of the document the EDU falls in, 0..3.
int position_quarter(EduId id, int num_edus);

// Feature strings of one EDU, each prefixed by `prefix` and '.'.
std::vector<std::string> edu_templates(const DocumentContext& ctx, EduId id, std::string_view prefix);

// Feature strings describing a transition configuration.
std::vector<std::string> config_templates(const DocumentContext& ctx, const Configuration& config);

// Label-independent strings of a candidate arc (head 0 = virtual root).
std::vector<std::string> arc_base_templates(const DocumentContext& ctx, EduId head, EduId dep);

// The readable form of the label-factored arc features.
std::vector<std::string> arc_templates(const DocumentContext& ctx, EduId head, EduId dep, Fine label);

// Arc features plus tree-position features for relation labeling: depth of
// head and dependent, and the relation already assigned to the head.
std::vector<std::string> labeler_templates(const DocumentContext& ctx, EduId head, EduId dep,
                                           int head_depth, int dep_depth,
                                           std::optional<Fine> head_relation);

// Interned versions. A frozen dictionary maps unseen strings to kOov.
FeatureVector intern(std::span<const std::string> strings, FeatureDictionary& dict);
FeatureVector edu_features(const DocumentContext& ctx, EduId id, std::string_view prefix,
                           FeatureDictionary& dict);
FeatureVector config_features(const DocumentContext& ctx, const Configuration& config,
                              FeatureDictionary& dict);

inline FeatureId conjoin(FeatureId base, Fine label) { return base * kNumFine + index_of(label); }

std::vector<FeatureId> arc_base_ids(const DocumentContext& ctx, EduId head, EduId dep,
                                    FeatureDictionary& dict);
FeatureVector arc_features(const DocumentContext& ctx, EduId head, EduId dep, Fine label,
                           FeatureDictionary& dict);

}  // namespace scidtb

#endif  // SCIDTB_FEATURES_HPP_
