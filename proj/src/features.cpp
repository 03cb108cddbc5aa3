#include "scidtb/features.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace scidtb {
namespace {

// Keep in sync with data/cues.txt.
const char* const kBuiltinCues[] = {
    "for example", "for instance", "such as",      "because",       "because of",
    "since",       "despite",      "although",     "though",        "however",
    "while",       "whereas",      "but",          "unlike",        "by",
    "through",     "to",           "in order to",  "so that",       "which",
    "that",        "when",         "if",           "after",         "we propose",
    "we present",  "we show",      "we find",      "in this paper", "this paper",
    "results show", "experiments show", "compared with", "compared to", "in addition",
    "moreover",    "furthermore",  "finally",      "first",         "then",
    "thus",        "therefore",    "as a result",  "specifically",  "in particular",
    "based on",    "using",
};

bool is_punct(char c) { return std::ispunct(static_cast<unsigned char>(c)) != 0; }

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string rel_name(std::optional<Fine> r) {
  return r ? std::string(fine_name(*r)) : std::string("NONE");
}

std::string first_token(const std::vector<std::string>& toks) {
  return toks.empty() ? std::string("<none>") : toks.front();
}

std::string distance_label(EduId a, EduId b) {
  const int d = std::abs(a - b) - 1;
  if (d <= 2) return std::to_string(d);
  if (d <= 5) return "3-5";
  if (d <= 10) return "6-10";
  if (d <= 15) return "11-15";
  return ">15";
}

// Role description of a stack or buffer position.
void add_slot(std::vector<std::string>& out, const DocumentContext& ctx,
              std::optional<EduId> id, std::string_view role) {
  const std::string r(role);
  if (!id) {
    out.push_back(r + "=EMPTY");
  } else if (*id == kVirtualRoot) {
    out.push_back(r + "=ROOT");
  } else {
    auto f = edu_templates(ctx, *id, role);
    out.insert(out.end(), f.begin(), f.end());
  }
}

std::string slot_first(const DocumentContext& ctx, std::optional<EduId> id) {
  if (!id) return "EMPTY";
  if (*id == kVirtualRoot) return "ROOT";
  return first_token(ctx.tokens(*id));
}

void add_dependency(std::vector<std::string>& out, const Configuration& config,
                    std::optional<EduId> id, std::string_view role) {
  if (!id) return;
  const std::string r(role);
  const int nl = config.left_children(*id);
  const int nr = config.right_children(*id);
  out.push_back(r + ".nleft=" + std::to_string(nl));
  out.push_back(r + ".nright=" + std::to_string(nr));
  out.push_back(r + ".nchildren=" + std::to_string(nl + nr));
  out.push_back(r + ".lastrel=" + rel_name(config.last_child_relation(*id)));
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j == i) break;
    std::string_view word = text.substr(i, j - i);
    i = j;
    if (word == "<S>" || word == "<s>") {
      out.emplace_back("<s>");
      continue;
    }
    std::size_t b = 0, e = word.size();
    while (b < e && is_punct(word[b])) out.emplace_back(1, word[b++]);
    std::vector<std::string> tail;
    while (e > b && is_punct(word[e - 1])) tail.emplace_back(1, word[--e]);
    if (e > b) out.push_back(lower(word.substr(b, e - b)));
    out.insert(out.end(), tail.rbegin(), tail.rend());
  }
  return out;
}

FeatureVector FeatureVector::from_entries(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  FeatureVector fv;
  for (const auto& [id, v] : entries) {
    if (!fv.entries_.empty() && fv.entries_.back().first == id) {
      fv.entries_.back().second += v;
    } else {
      fv.entries_.emplace_back(id, v);
    }
  }
  std::erase_if(fv.entries_, [](const Entry& e) { return e.second == 0.0; });
  return fv;
}

FeatureVector FeatureVector::from_ids(std::span<const FeatureId> ids) {
  std::vector<Entry> entries;
  entries.reserve(ids.size());
  for (FeatureId id : ids) entries.emplace_back(id, 1.0);
  return from_entries(std::move(entries));
}

bool FeatureVector::contains(FeatureId id) const { return value(id) != 0.0; }

double FeatureVector::value(FeatureId id) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), id,
                             [](const Entry& e, FeatureId x) { return e.first < x; });
  return it != entries_.end() && it->first == id ? it->second : 0.0;
}

double FeatureVector::dot(std::span<const double> weights) const {
  double s = 0.0;
  for (const auto& [id, v] : entries_) {
    if (id >= 0 && static_cast<std::size_t>(id) < weights.size()) s += weights[id] * v;
  }
  return s;
}

FeatureVector& FeatureVector::operator+=(const FeatureVector& other) {
  std::vector<Entry> merged = entries_;
  merged.insert(merged.end(), other.entries_.begin(), other.entries_.end());
  *this = from_entries(std::move(merged));
  return *this;
}

FeatureVector& FeatureVector::operator-=(const FeatureVector& other) {
  std::vector<Entry> merged = entries_;
  for (const auto& [id, v] : other.entries_) merged.emplace_back(id, -v);
  *this = from_entries(std::move(merged));
  return *this;
}

FeatureDictionary::FeatureDictionary() {
  names_.push_back("<oov>");
  ids_.emplace("<oov>", kOov);
}

FeatureId FeatureDictionary::lookup(std::string_view feature) {
  auto it = ids_.find(feature);
  if (frozen_) {
    ++frozen_lookups_;
    if (it == ids_.end()) {
      ++oov_hits_;
      return kOov;
    }
    return it->second;
  }
  if (it != ids_.end()) return it->second;
  const FeatureId id = static_cast<FeatureId>(names_.size());
  names_.emplace_back(feature);
  ids_.emplace(names_.back(), id);
  return id;
}

FeatureId FeatureDictionary::find(std::string_view feature) const {
  auto it = ids_.find(feature);
  return it == ids_.end() ? kOov : it->second;
}

double FeatureDictionary::oov_rate() const {
  return frozen_lookups_ == 0 ? 0.0
                              : static_cast<double>(oov_hits_) / static_cast<double>(frozen_lookups_);
}

FeatureDictionary FeatureDictionary::from_names(std::vector<std::string> names, bool frozen) {
  FeatureDictionary dict;
  for (std::size_t i = 1; i < names.size(); ++i) dict.lookup(names[i]);
  dict.frozen_ = frozen;
  return dict;
}

const CueList& CueList::builtin() {
  static const CueList cues(std::vector<std::string>(std::begin(kBuiltinCues), std::end(kBuiltinCues)));
  return cues;
}

CueList CueList::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open cue list " + path.string());
  std::vector<std::string> cues;
  std::string line;
  while (std::getline(in, line)) {
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    const auto e = line.find_last_not_of(" \t\r");
    cues.push_back(line.substr(b, e - b + 1));
  }
  return CueList(std::move(cues));
}

CueList::CueList(std::vector<std::string> cues) : cues_(std::move(cues)) {
  for (const auto& c : cues_) tokenized_.push_back(tokenize(c));
  std::stable_sort(tokenized_.begin(), tokenized_.end(),
                   [](const auto& a, const auto& b) { return a.size() > b.size(); });
}

std::optional<std::string> CueList::leading_cue(const std::vector<std::string>& tokens) const {
  for (const auto& cue : tokenized_) {
    if (cue.empty() || cue.size() > tokens.size()) continue;
    if (std::equal(cue.begin(), cue.end(), tokens.begin())) {
      std::string joined = cue.front();
      for (std::size_t i = 1; i < cue.size(); ++i) joined += " " + cue[i];
      return joined;
    }
  }
  return std::nullopt;
}

DocumentContext::DocumentContext(const DiscourseTree& doc, const CueList& cues) : doc_(&doc) {
  tokens_.reserve(doc.edus.size());
  for (const auto& e : doc.edus) {
    tokens_.push_back(tokenize(e.text));
    cues_.push_back(cues.leading_cue(tokens_.back()));
  }
}

std::string_view token_count_bucket(int count) {
  if (count <= 0) return "0";
  if (count <= 2) return "1-2";
  if (count <= 5) return "3-5";
  if (count <= 10) return "6-10";
  return ">10";
}

std::string_view position_bucket(EduId id, int num_edus) {
  if (id == 1) return "first";
  if (id == num_edus) return "last";
  return "body";
}

int position_quarter(EduId id, int num_edus) {
  if (num_edus <= 0) return 0;
  return std::min(3, 4 * (id - 1) / num_edus);
}

std::vector<std::string> edu_templates(const DocumentContext& ctx, EduId id, std::string_view prefix) {
  const auto& toks = ctx.tokens(id);
  const std::string p = std::string(prefix) + ".";
  const std::string first = first_token(toks);
  const std::string last = toks.empty() ? first : toks.back();
  const std::string second = toks.size() > 1 ? toks[1] : std::string("</e>");
  const auto& cue = ctx.cue(id);
  return {
      p + "first=" + first,
      p + "last=" + last,
      p + "bigram=" + first + "_" + second,
      p + "len=" + std::string(token_count_bucket(static_cast<int>(toks.size()))),
      p + "pos=" + std::string(position_bucket(id, ctx.size())),
      p + "quarter=" + std::to_string(position_quarter(id, ctx.size())),
      p + "cue=" + (cue ? *cue : std::string("NONE")),
  };
}

std::vector<std::string> config_templates(const DocumentContext& ctx, const Configuration& config) {
  const auto s0 = config.stack_at(0);
  const auto s1 = config.stack_at(1);
  const auto b0 = config.buffer_front();
  std::vector<std::string> out;
  out.reserve(40);
  add_slot(out, ctx, s0, "s0");
  add_slot(out, ctx, s1, "s1");
  add_slot(out, ctx, b0, "b0");

  auto real = [](std::optional<EduId> v) { return v && *v != kVirtualRoot; };
  if (real(s0) && real(s1)) out.push_back("s0s1.dist=" + distance_label(*s0, *s1));
  if (real(s0) && b0) out.push_back("s0b0.dist=" + distance_label(*s0, *b0));

  add_dependency(out, config, s0, "s0");
  add_dependency(out, config, s1, "s1");

  out.push_back("s0s1.first=" + slot_first(ctx, s0) + "|" + slot_first(ctx, s1));
  out.push_back("s0b0.first=" + slot_first(ctx, s0) + "|" + slot_first(ctx, b0));
  out.push_back("stack=" + std::to_string(std::min<std::size_t>(config.stack().size(), 4)) +
                (b0 ? "|buf" : "|nobuf"));
  return out;
}

std::vector<std::string> arc_base_templates(const DocumentContext& ctx, EduId head, EduId dep) {
  if (head == dep) throw std::invalid_argument("arc features need head != dependent");
  std::vector<std::string> out;
  out.reserve(24);
  out.push_back("bias");
  if (head == kVirtualRoot) {
    out.push_back("h=ROOT");
  } else {
    auto h = edu_templates(ctx, head, "h");
    out.insert(out.end(), h.begin(), h.end());
  }
  auto d = edu_templates(ctx, dep, "d");
  out.insert(out.end(), d.begin(), d.end());
  const std::string dir = head < dep ? "right" : "left";
  const std::string dist = head == kVirtualRoot ? std::string("ROOT") : distance_label(head, dep);
  out.push_back("dir=" + dir);
  out.push_back("dist=" + dist);
  out.push_back("dir_dist=" + dir + "|" + dist);
  out.push_back("hd.first=" + slot_first(ctx, head) + "|" + first_token(ctx.tokens(dep)));
  return out;
}

std::vector<std::string> arc_templates(const DocumentContext& ctx, EduId head, EduId dep, Fine label) {
  auto out = arc_base_templates(ctx, head, dep);
  const std::string suffix = "|rel=" + std::string(fine_name(label));
  for (auto& f : out) f += suffix;
  return out;
}

std::vector<std::string> labeler_templates(const DocumentContext& ctx, EduId head, EduId dep,
                                           int head_depth, int dep_depth,
                                           std::optional<Fine> head_relation) {
  auto out = arc_base_templates(ctx, head, dep);
  const std::string hrel = rel_name(head_relation);
  out.push_back("hdepth=" + std::to_string(std::min(head_depth, 6)));
  out.push_back("ddepth=" + std::to_string(std::min(dep_depth, 6)));
  out.push_back("hrel=" + hrel);
  out.push_back("hrel_dir=" + hrel + "|" + (head < dep ? "right" : "left"));
  return out;
}

FeatureVector intern(std::span<const std::string> strings, FeatureDictionary& dict) {
  std::vector<FeatureId> ids;
  ids.reserve(strings.size());
  for (const auto& s : strings) ids.push_back(dict.lookup(s));
  return FeatureVector::from_ids(ids);
}

FeatureVector edu_features(const DocumentContext& ctx, EduId id, std::string_view prefix,
                           FeatureDictionary& dict) {
  return intern(edu_templates(ctx, id, prefix), dict);
}

FeatureVector config_features(const DocumentContext& ctx, const Configuration& config,
                              FeatureDictionary& dict) {
  return intern(config_templates(ctx, config), dict);
}

std::vector<FeatureId> arc_base_ids(const DocumentContext& ctx, EduId head, EduId dep,
                                    FeatureDictionary& dict) {
  const auto strings = arc_base_templates(ctx, head, dep);
  std::vector<FeatureId> ids;
  ids.reserve(strings.size());
  for (const auto& s : strings) ids.push_back(dict.lookup(s));
  return ids;
}

FeatureVector arc_features(const DocumentContext& ctx, EduId head, EduId dep, Fine label,
                           FeatureDictionary& dict) {
  std::vector<FeatureId> ids;
  for (FeatureId b : arc_base_ids(ctx, head, dep, dict)) ids.push_back(conjoin(b, label));
  return FeatureVector::from_ids(ids);
}

}  // namespace scidtb
