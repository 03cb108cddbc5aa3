// Attachment scores and chance-corrected label agreement.
//
// All scores are micro-averaged: every EDU of every paired document is one
// attachment decision, the ROOT attachment included.

#ifndef SCIDTB_METRICS_HPP_
#define SCIDTB_METRICS_HPP_

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "scidtb/corpus.hpp"

namespace scidtb {

class AlignmentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DegenerateError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class Granularity { kFine, kCoarse };

struct TreePair {
  const DiscourseTree* a;
  const DiscourseTree* b;
};

// Pairs documents by doc_id. Throws AlignmentError when an id is missing on
// either side, duplicated, or the EDU counts differ.
std::vector<TreePair> align(const std::vector<DiscourseTree>& pred,
                            const std::vector<DiscourseTree>& gold);

// Raw agreement counts; merging is addition.
struct AttachmentCounts {
  long edus = 0;
  long head_matches = 0;
  long label_matches = 0;  // head and label both match
  int docs = 0;

  AttachmentCounts& operator+=(const AttachmentCounts& o);
};

AttachmentCounts count_attachments(const std::vector<TreePair>& pairs,
                                   Granularity granularity = Granularity::kFine);

double uas(const std::vector<DiscourseTree>& pred, const std::vector<DiscourseTree>& gold);
double las(const std::vector<DiscourseTree>& pred, const std::vector<DiscourseTree>& gold,
           Granularity granularity = Granularity::kFine);

// Cohen's kappa over (label of annotator a, label of annotator b) observations,
// labels given as indices in [0, num_labels). Expected agreement uses each
// annotator's own marginal distribution. Returns 1 when expected agreement is
// 1 (both annotators used one identical label). Throws DegenerateError on an
// empty observation list.
double cohen_kappa(const std::vector<std::pair<int, int>>& observations, int num_labels);

// Kappa on relation labels of the EDUs whose heads agree.
double kappa(const std::vector<DiscourseTree>& pred, const std::vector<DiscourseTree>& gold,
             Granularity granularity = Granularity::kFine);

struct EvalReport {
  double uas = 0.0;
  double las = 0.0;
  std::optional<double> kappa;  // empty when undefined (no head agreement)
  long n_edus = 0;
  int n_docs = 0;
};

EvalReport evaluate(const std::vector<DiscourseTree>& pred, const std::vector<DiscourseTree>& gold,
                    Granularity granularity = Granularity::kFine);
EvalReport evaluate_pairs(const std::vector<TreePair>& pairs,
                          Granularity granularity = Granularity::kFine);

struct AnnotatorPair {
  std::string name;
  std::vector<DiscourseTree> first;
  std::vector<DiscourseTree> second;
};

struct AgreementRow {
  std::string name;
  std::optional<EvalReport> report;
  std::string error;  // set when the pair failed to align
};

// One row per pair; an alignment failure is recorded on its own row only.
std::vector<AgreementRow> agreement_report(const std::vector<AnnotatorPair>& pairs,
                                           Granularity granularity = Granularity::kFine);

}  // namespace scidtb

#endif  // SCIDTB_METRICS_HPP_
