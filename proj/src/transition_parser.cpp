#include "scidtb/transition_parser.hpp"

namespace scidtb {
namespace {

// Highest-priority legal action, used when the model knows no legal class.
Action fallback_action(const Configuration& config, bool labeled) {
  if (config.legal(Action::shift())) return Action::shift();
  const auto s1 = config.stack_at(1);
  if (!labeled) return Action::right();
  if (s1 && *s1 == kVirtualRoot) return Action::right(Fine::kRoot);
  return Action::left(Fine::kAttribution);
}

Configuration run_decoder(const DiscourseTree& doc, const LinearMulticlassModel& model,
                          FeatureDictionary& dict, bool labeled, DecodeTrace* trace) {
  const DocumentContext ctx(doc);
  Configuration config(doc.size());
  std::vector<Action> class_actions;
  for (int code : model.classes()) {
    class_actions.push_back(labeled ? labeled_action(code) : unlabeled_action(code));
  }
  std::vector<bool> allowed(class_actions.size());
  DecodeTrace local;
  while (!config.terminal()) {
    for (std::size_t k = 0; k < class_actions.size(); ++k) allowed[k] = config.legal(class_actions[k]);
    const auto scores = model.scores(config_features(ctx, config, dict));
    const int best = best_allowed(scores, allowed);
    if (best >= 0) {
      config.apply(class_actions[best]);
    } else {
      config.apply(fallback_action(config, labeled));
      ++local.fallbacks;
    }
    ++local.steps;
  }
  if (trace) *trace = local;
  return config;
}

std::vector<LabeledExample> labeler_examples_for(const DiscourseTree& tree, FeatureDictionary& dict) {
  const DocumentContext ctx(tree);
  const auto depth = node_depths(tree);
  std::vector<LabeledExample> out;
  for (const auto& e : tree.edus) {
    if (e.head == kVirtualRoot) continue;
    const auto head_rel = tree.edu(e.head).relation.fine;
    const auto f = labeler_templates(ctx, e.head, e.id, depth[e.head], depth[e.id], head_rel);
    out.push_back(LabeledExample{intern(f, dict), index_of(e.relation.fine)});
  }
  return out;
}

}  // namespace

std::vector<LabeledExample> oracle_examples(const std::vector<DiscourseTree>& trees,
                                            FeatureDictionary& dict, bool labeled, int* skipped) {
  std::vector<LabeledExample> out;
  int skip = 0;
  for (const auto& tree : trees) {
    std::vector<Action> actions;
    try {
      actions = oracle_actions(tree, labeled);
    } catch (const NonProjectiveError&) {
      ++skip;
      continue;
    }
    const DocumentContext ctx(tree);
    Configuration config(tree.size());
    for (const auto& a : actions) {
      const int code = labeled ? labeled_code(a) : unlabeled_code(a);
      out.push_back(LabeledExample{config_features(ctx, config, dict), code});
      config.apply(a);
    }
  }
  if (skipped) *skipped = skip;
  return out;
}

std::vector<LabeledExample> labeler_examples(const std::vector<DiscourseTree>& trees,
                                             FeatureDictionary& dict) {
  std::vector<LabeledExample> out;
  for (const auto& tree : trees) {
    auto ex = labeler_examples_for(tree, dict);
    out.insert(out.end(), std::make_move_iterator(ex.begin()), std::make_move_iterator(ex.end()));
  }
  return out;
}

DiscourseTree parse_vanilla(const DiscourseTree& doc, const LinearMulticlassModel& model,
                            FeatureDictionary& dict, DecodeTrace* trace) {
  return run_decoder(doc, model, dict, true, trace).to_tree(doc);
}

DiscourseTree parse_unlabeled(const DiscourseTree& doc, const LinearMulticlassModel& model,
                              FeatureDictionary& dict, DecodeTrace* trace) {
  return run_decoder(doc, model, dict, false, trace).to_tree(doc);
}

DiscourseTree label_tree(const DiscourseTree& structure, const LinearMulticlassModel& labeler,
                         FeatureDictionary& dict) {
  DiscourseTree out = structure;
  const DocumentContext ctx(out);
  const auto depth = node_depths(out);
  std::vector<bool> allowed(labeler.classes().size());
  for (std::size_t k = 0; k < allowed.size(); ++k) allowed[k] = labeler.classes()[k] != index_of(Fine::kRoot);

  for (EduId v : preorder(out)) {
    auto& node = out.edu(v);
    if (node.head == kVirtualRoot) {
      node.relation = RelationLabel{Fine::kRoot, false};
      continue;
    }
    const Fine head_rel = out.edu(node.head).relation.fine;
    const auto f = labeler_templates(ctx, node.head, v, depth[node.head], depth[v], head_rel);
    const auto scores = labeler.scores(intern(f, dict));
    const int best = best_allowed(scores, allowed);
    const Fine label = best >= 0 ? fine_from_index(labeler.classes()[best]) : Fine::kAttribution;
    node.relation = RelationLabel{label, false};
  }
  return out;
}

DiscourseTree parse_two_stage(const DiscourseTree& doc, const LinearMulticlassModel& unlabeled_model,
                              const LinearMulticlassModel& labeler, FeatureDictionary& dict,
                              DecodeTrace* trace) {
  return label_tree(parse_unlabeled(doc, unlabeled_model, dict, trace), labeler, dict);
}

}  // namespace scidtb
