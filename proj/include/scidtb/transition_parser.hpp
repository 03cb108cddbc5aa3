// Greedy transition-based discourse parsers.
//
// The vanilla parser predicts labeled arc-standard actions in one pass. The
// two-stage parser predicts unlabeled actions, then labels the resulting
// tree in pre-order with a separate classifier that also sees tree depth and
// the relation already given to the head.

#ifndef SCIDTB_TRANSITION_PARSER_HPP_
#define SCIDTB_TRANSITION_PARSER_HPP_

#include <vector>

#include "scidtb/features.hpp"
#include "scidtb/learners.hpp"
#include "scidtb/transition_system.hpp"

namespace scidtb {

// Oracle-derived (configuration features, action code) pairs. Trees without
// an arc-standard derivation are skipped and counted in `skipped`.
std::vector<LabeledExample> oracle_examples(const std::vector<DiscourseTree>& trees,
                                            FeatureDictionary& dict, bool labeled,
                                            int* skipped = nullptr);

// (labeler features, fine label index) for every non-root EDU, using the gold
// structure and gold head relations.
std::vector<LabeledExample> labeler_examples(const std::vector<DiscourseTree>& trees,
                                             FeatureDictionary& dict);

struct DecodeTrace {
  int steps = 0;
  int fallbacks = 0;  // steps where no model class was legal
};

// Greedy decoding with illegal actions masked. Structure and labels in `doc`
// are ignored; only ids and text are read.
DiscourseTree parse_vanilla(const DiscourseTree& doc, const LinearMulticlassModel& model,
                            FeatureDictionary& dict, DecodeTrace* trace = nullptr);

// Stage one only: the unlabeled tree, non-root arcs carrying a placeholder.
DiscourseTree parse_unlabeled(const DiscourseTree& doc, const LinearMulticlassModel& model,
                              FeatureDictionary& dict, DecodeTrace* trace = nullptr);

// Assigns relations to a fixed structure in pre-order.
DiscourseTree label_tree(const DiscourseTree& structure, const LinearMulticlassModel& labeler,
                         FeatureDictionary& dict);

DiscourseTree parse_two_stage(const DiscourseTree& doc, const LinearMulticlassModel& unlabeled_model,
                              const LinearMulticlassModel& labeler, FeatureDictionary& dict,
                              DecodeTrace* trace = nullptr);

}  // namespace scidtb

#endif  // SCIDTB_TRANSITION_PARSER_HPP_
