#include "scidtb/transition_system.hpp"

namespace scidtb {

std::string to_string(const Action& a) {
  std::string out;
  switch (a.kind) {
    case ActionKind::kShift: return "Shift";
    case ActionKind::kLeftArc: out = "LeftArc"; break;
    case ActionKind::kRightArc: out = "RightArc"; break;
  }
  if (a.relation) out += "(" + std::string(fine_name(*a.relation)) + ")";
  return out;
}

int labeled_code(const Action& a) {
  if (a.kind == ActionKind::kShift) return 0;
  const int label = a.relation ? index_of(*a.relation) : 0;
  return (a.kind == ActionKind::kLeftArc ? 1 : 1 + kNumFine) + label;
}

Action labeled_action(int code) {
  if (code == 0) return Action::shift();
  if (code <= kNumFine) return Action::left(fine_from_index(code - 1));
  return Action::right(fine_from_index(code - 1 - kNumFine));
}

int unlabeled_code(const Action& a) { return static_cast<int>(a.kind); }

Action unlabeled_action(int code) { return Action{static_cast<ActionKind>(code), std::nullopt}; }

Configuration::Configuration(int num_edus)
    : n_(num_edus),
      stack_{kVirtualRoot},
      heads_(num_edus + 1, -1),
      relations_(num_edus + 1),
      left_(num_edus + 1, 0),
      right_(num_edus + 1, 0),
      last_child_(num_edus + 1, -1) {}

std::optional<EduId> Configuration::buffer_front() const {
  if (next_ > n_) return std::nullopt;
  return next_;
}

std::optional<EduId> Configuration::stack_at(int depth) const {
  if (depth >= static_cast<int>(stack_.size())) return std::nullopt;
  return stack_[stack_.size() - 1 - depth];
}

std::optional<Fine> Configuration::last_child_relation(EduId id) const {
  if (last_child_[id] < 0) return std::nullopt;
  return relations_[last_child_[id]];
}

std::string Configuration::illegal_reason(const Action& a) const {
  if (a.kind == ActionKind::kShift) {
    return next_ > n_ ? "Shift requires a non-empty buffer" : "";
  }
  if (stack_.size() < 2) return "arc actions require two stack items";
  const EduId s1 = stack_[stack_.size() - 2];
  const bool root_label = a.relation && *a.relation == Fine::kRoot;
  if (a.kind == ActionKind::kLeftArc) {
    if (s1 == kVirtualRoot) return "LeftArc cannot take the virtual root as dependent";
    if (root_label) return "ROOT label is reserved for the virtual root's arc";
    return "";
  }
  if (s1 == kVirtualRoot) {
    if (a.relation && !root_label) return "an arc from the virtual root must be labeled ROOT";
    if (next_ <= n_) return "the root arc must be the final transition";
    return "";
  }
  if (root_label) return "ROOT label is reserved for the virtual root's arc";
  return "";
}

void Configuration::apply(const Action& a) {
  if (auto why = illegal_reason(a); !why.empty()) {
    throw IllegalActionError(to_string(a) + ": " + why);
  }
  if (a.kind == ActionKind::kShift) {
    stack_.push_back(next_++);
    return;
  }
  const EduId s0 = stack_.back();
  const EduId s1 = stack_[stack_.size() - 2];
  EduId head, dep;
  if (a.kind == ActionKind::kLeftArc) {
    head = s0;
    dep = s1;
    stack_.erase(stack_.end() - 2);
    ++left_[head];
  } else {
    head = s1;
    dep = s0;
    stack_.pop_back();
    ++right_[head];
  }
  heads_[dep] = head;
  relations_[dep] = head == kVirtualRoot ? std::optional<Fine>(Fine::kRoot) : a.relation;
  last_child_[head] = dep;
}

DiscourseTree Configuration::to_tree(const DiscourseTree& doc, Fine placeholder) const {
  DiscourseTree out;
  out.doc_id = doc.doc_id;
  for (const auto& e : doc.edus) {
    EduNode node{e.id, e.text, std::max(heads_[e.id], 0), {}};
    if (node.head == kVirtualRoot) {
      node.relation = RelationLabel{Fine::kRoot, false};
    } else {
      node.relation = RelationLabel{relations_[e.id].value_or(placeholder), false};
    }
    out.edus.push_back(std::move(node));
  }
  return out;
}

Configuration apply(Configuration config, const Action& action) {
  config.apply(action);
  return config;
}

std::vector<Action> oracle_actions(const DiscourseTree& gold, bool labeled) {
  const int n = gold.size();
  std::vector<int> pending(n + 1, 0);  // gold dependents not yet attached
  for (const auto& e : gold.edus) ++pending[e.head];

  auto gold_head = [&](EduId v) { return v == kVirtualRoot ? -1 : gold.edu(v).head; };
  auto arc_label = [&](EduId dep) -> std::optional<Fine> {
    if (!labeled) return std::nullopt;
    return gold.edu(dep).relation.fine;
  };

  Configuration config(n);
  std::vector<Action> actions;
  actions.reserve(2 * n);
  while (!config.terminal()) {
    const auto s0 = config.stack_at(0);
    const auto s1 = config.stack_at(1);
    Action next = Action::shift();
    if (s0 && s1 && *s1 != kVirtualRoot && gold_head(*s1) == *s0 && pending[*s1] == 0) {
      next = Action::left(arc_label(*s1));
    } else if (s0 && s1 && gold_head(*s0) == *s1 && pending[*s0] == 0) {
      next = Action::right(arc_label(*s0));
    }
    if (!config.legal(next)) {
      throw NonProjectiveError(gold.doc_id + ": no arc-standard derivation (non-projective tree)");
    }
    if (next.kind == ActionKind::kLeftArc) --pending[*s0];
    if (next.kind == ActionKind::kRightArc) --pending[*s1];
    config.apply(next);
    actions.push_back(next);
  }
  return actions;
}

DiscourseTree replay(const DiscourseTree& doc, const std::vector<Action>& actions) {
  Configuration config(doc.size());
  for (const auto& a : actions) config.apply(a);
  return config.to_tree(doc);
}

}  // namespace scidtb
