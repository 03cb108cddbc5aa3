// Arc-standard transition system over EDUs with a single-root guard.
//
// The stack starts as [0] (the virtual root) and the buffer holds EDUs
// 1..n. An arc from the virtual root can only be built by the final
// RightArc, so every derivation yields exactly one root attachment and
// takes exactly 2n transitions.

#ifndef SCIDTB_TRANSITION_SYSTEM_HPP_
#define SCIDTB_TRANSITION_SYSTEM_HPP_

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "scidtb/corpus.hpp"

namespace scidtb {

class IllegalActionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class NonProjectiveError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class ActionKind { kShift = 0, kLeftArc = 1, kRightArc = 2 };

// relation is empty for Shift and for unlabeled arcs.
struct Action {
  ActionKind kind = ActionKind::kShift;
  std::optional<Fine> relation;

  static Action shift() { return {ActionKind::kShift, std::nullopt}; }
  static Action left(std::optional<Fine> r = std::nullopt) { return {ActionKind::kLeftArc, r}; }
  static Action right(std::optional<Fine> r = std::nullopt) { return {ActionKind::kRightArc, r}; }

  friend bool operator==(const Action&, const Action&) = default;
};

std::string to_string(const Action& a);

// Dense action codes, ordered by decoding priority: Shift, then LeftArc by
// label index, then RightArc by label index. Unlabeled arcs use codes 1 and 2.
inline constexpr int kNumLabeledActions = 1 + 2 * kNumFine;
int labeled_code(const Action& a);
Action labeled_action(int code);
int unlabeled_code(const Action& a);
Action unlabeled_action(int code);

class Configuration {
 public:
  explicit Configuration(int num_edus);

  int num_edus() const { return n_; }
  const std::vector<EduId>& stack() const { return stack_; }
  // Buffer front, or nullopt when empty.
  std::optional<EduId> buffer_front() const;
  int buffer_size() const { return n_ - next_ + 1; }
  bool terminal() const { return next_ > n_ && stack_.size() == 1; }

  // Stack position from the top: 0 = s0, 1 = s1.
  std::optional<EduId> stack_at(int depth) const;

  // -1 when unattached.
  EduId head(EduId id) const { return heads_[id]; }
  std::optional<Fine> relation(EduId id) const { return relations_[id]; }
  int left_children(EduId id) const { return left_[id]; }
  int right_children(EduId id) const { return right_[id]; }
  // Relation of the most recently attached child, if any.
  std::optional<Fine> last_child_relation(EduId id) const;
  bool has_last_child(EduId id) const { return last_child_[id] >= 0; }

  // Empty string when legal, else the violated rule.
  std::string illegal_reason(const Action& a) const;
  bool legal(const Action& a) const { return illegal_reason(a).empty(); }

  // Throws IllegalActionError.
  void apply(const Action& a);

  // Arcs built so far as a tree over the document's EDUs. Unlabeled root arcs
  // get ROOT; other unlabeled arcs get `placeholder`.
  DiscourseTree to_tree(const DiscourseTree& doc, Fine placeholder = Fine::kAttribution) const;

 private:
  int n_;
  int next_ = 1;
  std::vector<EduId> stack_;
  std::vector<EduId> heads_;
  std::vector<std::optional<Fine>> relations_;
  std::vector<int> left_;
  std::vector<int> right_;
  std::vector<EduId> last_child_;
};

// Functional form of Configuration::apply.
Configuration apply(Configuration config, const Action& action);

// Static oracle. With labeled = false the arc actions carry no relation.
// Throws NonProjectiveError when the tree has no arc-standard derivation.
std::vector<Action> oracle_actions(const DiscourseTree& gold, bool labeled = true);

// Runs the actions from the initial configuration and returns the tree.
DiscourseTree replay(const DiscourseTree& doc, const std::vector<Action>& actions);

}  // namespace scidtb

#endif  // SCIDTB_TRANSITION_SYSTEM_HPP_
