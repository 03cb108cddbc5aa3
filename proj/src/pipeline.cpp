#include "scidtb/pipeline.hpp"

#include "scidtb/transition_parser.hpp"

namespace scidtb {

ParserBundle train_parser(const std::vector<DiscourseTree>& train, const TrainOptions& options,
                          TrainReport* report, const EpochHook& on_epoch) {
  std::vector<DiscourseTree> trees;
  trees.reserve(train.size());
  for (const auto& t : train) {
    trees.push_back(options.labels == Granularity::kCoarse ? map_to_coarse(t) : t);
  }

  ParserBundle bundle;
  bundle.kind = options.kind;
  bundle.labels = options.labels;
  TrainReport r;
  r.train_docs = static_cast<int>(trees.size());

  switch (options.kind) {
    case ParserKind::kVanilla:
    case ParserKind::kTwoStage: {
      const bool labeled = options.kind == ParserKind::kVanilla;
      auto actions = oracle_examples(trees, bundle.dictionary, labeled, &r.skipped_nonprojective);
      std::vector<LabeledExample> labels;
      if (!labeled) labels = labeler_examples(trees, bundle.dictionary);
      const int dim = bundle.dictionary.size();
      bundle.actions = train_multiclass(actions, dim, {options.c1, options.svm_epochs, options.seed});
      if (!labeled) {
        bundle.labeler = train_multiclass(labels, dim, {options.c2, options.svm_epochs, options.seed});
      }
      r.examples = static_cast<long>(actions.size() + labels.size());
      break;
    }
    case ParserKind::kGraph: {
      GraphTrainOptions g;
      g.epochs = options.epochs;
      g.learning_rate = options.learning_rate;
      g.labels = options.labels == Granularity::kFine ? fine_arc_labels() : coarse_arc_labels();
      if (on_epoch) {
        g.on_epoch = [&](int epoch, const AveragedPerceptronModel& avg) {
          ParserBundle snap;
          snap.kind = bundle.kind;
          snap.labels = bundle.labels;
          snap.dictionary = FeatureDictionary::from_names(bundle.dictionary.names(), true);
          snap.arcs = avg;
          on_epoch(epoch, snap);
        };
      }
      bundle.arcs = train_graph(trees, bundle.dictionary, g);
      r.examples = bundle.arcs.update_count();
      break;
    }
  }
  bundle.dictionary.freeze();
  r.dictionary_size = bundle.dictionary.size();
  if (report) *report = r;
  return bundle;
}

std::vector<DiscourseTree> parse_all(ParserBundle& bundle, const std::vector<DiscourseTree>& docs) {
  std::vector<DiscourseTree> out;
  out.reserve(docs.size());
  for (const auto& d : docs) out.push_back(bundle.parse(strip_structure(d)));
  return out;
}

}  // namespace scidtb
