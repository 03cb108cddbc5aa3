#include "scidtb/relation.hpp"

#include <algorithm>
#include <cctype>
#include <string>
#include <unordered_map>

namespace scidtb {
namespace {

constexpr std::array<std::string_view, kNumFine> kFineNames = {
    "ROOT",       "Attribution", "Related",      "Goal",       "General",
    "Cause",      "Result",      "Comparison",   "Condition",  "Contrast",
    "Addition",   "Aspect",      "Process-step", "Definition", "Enumerate",
    "Example",    "Enablement",  "Evaluation",   "Evidence",   "Reason",
    "Joint",      "Manner-means", "Progression", "Same-unit",  "Summary",
    "Temporal",
};

// Spelling used by the released treebank files.
constexpr std::array<std::string_view, kNumFine> kFineFileNames = {
    "ROOT",           "attribution",    "bg-compare",        "bg-goal",
    "bg-general",     "cause",          "result",            "comparison",
    "condition",      "contrast",       "elab-addition",     "elab-aspect",
    "elab-process_step", "elab-definition", "elab-enum_member", "elab-example",
    "enablement",     "evaluation",     "exp-evidence",      "exp-reason",
    "joint",          "manner-means",   "progression",       "same-unit",
    "summary",        "temporal",
};

constexpr std::array<std::string_view, kNumCoarse> kCoarseNames = {
    "ROOT",       "Attribution",  "Background", "Cause-effect", "Comparison",
    "Condition",  "Contrast",     "Elaboration", "Enablement",  "Evaluation",
    "Explain",    "Joint",        "Manner-means", "Progression", "Same-unit",
    "Summary",    "Temporal",
};

std::string normalize(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    if (c == '_' || c == ' ') {
      out.push_back('-');
    } else {
      out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  return out;
}

const std::unordered_map<std::string, RelationLabel>& alias_table() {
  static const auto* table = [] {
    auto* t = new std::unordered_map<std::string, RelationLabel>();
    // Coarse names first so fine names sharing the spelling win.
    for (int i = 0; i < kNumCoarse; ++i) {
      const Coarse c = coarse_from_index(i);
      (*t)[normalize(kCoarseNames[i])] = RelationLabel{representative_fine(c), true};
    }
    for (int i = 0; i < kNumFine; ++i) {
      const RelationLabel fine{fine_from_index(i), false};
      (*t)[normalize(kFineNames[i])] = fine;
      (*t)[normalize(kFineFileNames[i])] = fine;
    }
    const std::pair<const char*, Fine> extra[] = {
        {"bg-related", Fine::kRelated},     {"elab-enumerate", Fine::kEnumerate},
        {"enum-member", Fine::kEnumerate},  {"elab-enum-member", Fine::kEnumerate},
        {"process-step", Fine::kProcessStep},
    };
    for (const auto& [name, fine] : extra) (*t)[normalize(name)] = RelationLabel{fine, false};
    return t;
  }();
  return *table;
}

}  // namespace

std::string_view fine_name(Fine f) { return kFineNames[index_of(f)]; }
std::string_view coarse_name(Coarse c) { return kCoarseNames[index_of(c)]; }
std::string_view fine_file_name(Fine f) { return kFineFileNames[index_of(f)]; }

std::string_view coarse_file_name(Coarse c) {
  static const auto names = [] {
    std::array<std::string, kNumCoarse> out;
    for (int i = 0; i < kNumCoarse; ++i) {
      out[i] = i == 0 ? std::string("ROOT") : normalize(kCoarseNames[i]);
    }
    return out;
  }();
  return names[index_of(c)];
}

Fine representative_fine(Coarse c) {
  for (int i = 0; i < kNumFine; ++i) {
    if (coarse_of(fine_from_index(i)) == c) return fine_from_index(i);
  }
  return Fine::kRoot;
}

std::optional<RelationLabel> parse_relation(std::string_view text) {
  const auto& table = alias_table();
  auto it = table.find(normalize(text));
  if (it == table.end()) return std::nullopt;
  return it->second;
}

std::string relation_file_name(const RelationLabel& label) {
  return std::string(label.is_coarse ? coarse_file_name(label.coarse())
                                     : fine_file_name(label.fine));
}

std::string relation_display_name(const RelationLabel& label) {
  return std::string(label.is_coarse ? coarse_name(label.coarse()) : fine_name(label.fine));
}

}  // namespace scidtb
