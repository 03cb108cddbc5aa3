#include "scidtb/metrics.hpp"

#include <map>

namespace scidtb {
namespace {

int label_for(const RelationLabel& r, Granularity g) {
  return g == Granularity::kFine ? index_of(r.fine) : index_of(r.coarse());
}

int num_labels(Granularity g) { return g == Granularity::kFine ? kNumFine : kNumCoarse; }

double ratio(long num, long den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

std::vector<std::pair<int, int>> head_matched_labels(const std::vector<TreePair>& pairs,
                                                     Granularity g) {
  std::vector<std::pair<int, int>> obs;
  for (const auto& p : pairs) {
    for (int i = 0; i < p.a->size(); ++i) {
      const auto& x = p.a->edus[i];
      const auto& y = p.b->edus[i];
      if (x.head == y.head) obs.emplace_back(label_for(x.relation, g), label_for(y.relation, g));
    }
  }
  return obs;
}

}  // namespace

std::vector<TreePair> align(const std::vector<DiscourseTree>& pred,
                            const std::vector<DiscourseTree>& gold) {
  std::map<std::string, const DiscourseTree*> by_id;
  for (const auto& g : gold) {
    if (!by_id.emplace(g.doc_id, &g).second) {
      throw AlignmentError("duplicate gold document " + g.doc_id);
    }
  }
  if (pred.size() != gold.size()) {
    throw AlignmentError("document counts differ: " + std::to_string(pred.size()) + " vs " +
                         std::to_string(gold.size()));
  }
  std::vector<TreePair> out;
  out.reserve(pred.size());
  for (const auto& p : pred) {
    auto it = by_id.find(p.doc_id);
    if (it == by_id.end()) throw AlignmentError("no counterpart for document " + p.doc_id);
    if (it->second->size() != p.size()) {
      throw AlignmentError("EDU counts differ for document " + p.doc_id);
    }
    out.push_back(TreePair{&p, it->second});
    by_id.erase(it);
  }
  return out;
}

AttachmentCounts& AttachmentCounts::operator+=(const AttachmentCounts& o) {
  edus += o.edus;
  head_matches += o.head_matches;
  label_matches += o.label_matches;
  docs += o.docs;
  return *this;
}

AttachmentCounts count_attachments(const std::vector<TreePair>& pairs, Granularity granularity) {
  AttachmentCounts c;
  for (const auto& p : pairs) {
    ++c.docs;
    for (int i = 0; i < p.a->size(); ++i) {
      const auto& x = p.a->edus[i];
      const auto& y = p.b->edus[i];
      ++c.edus;
      if (x.head != y.head) continue;
      ++c.head_matches;
      if (label_for(x.relation, granularity) == label_for(y.relation, granularity)) {
        ++c.label_matches;
      }
    }
  }
  return c;
}

double uas(const std::vector<DiscourseTree>& pred, const std::vector<DiscourseTree>& gold) {
  const auto c = count_attachments(align(pred, gold));
  return ratio(c.head_matches, c.edus);
}

double las(const std::vector<DiscourseTree>& pred, const std::vector<DiscourseTree>& gold,
           Granularity granularity) {
  const auto c = count_attachments(align(pred, gold), granularity);
  return ratio(c.label_matches, c.edus);
}

double cohen_kappa(const std::vector<std::pair<int, int>>& observations, int num_labels) {
  if (observations.empty()) throw DegenerateError("kappa undefined on zero observations");
  std::vector<long> row(num_labels, 0), col(num_labels, 0);
  long agree = 0;
  for (const auto& [a, b] : observations) {
    ++row[a];
    ++col[b];
    if (a == b) ++agree;
  }
  const double n = static_cast<double>(observations.size());
  const double p_o = agree / n;
  double p_e = 0.0;
  for (int k = 0; k < num_labels; ++k) p_e += (row[k] / n) * (col[k] / n);
  if (p_e >= 1.0) return 1.0;
  return (p_o - p_e) / (1.0 - p_e);
}

double kappa(const std::vector<DiscourseTree>& pred, const std::vector<DiscourseTree>& gold,
             Granularity granularity) {
  return cohen_kappa(head_matched_labels(align(pred, gold), granularity), num_labels(granularity));
}

EvalReport evaluate_pairs(const std::vector<TreePair>& pairs, Granularity granularity) {
  const auto c = count_attachments(pairs, granularity);
  EvalReport r;
  r.uas = ratio(c.head_matches, c.edus);
  r.las = ratio(c.label_matches, c.edus);
  r.n_edus = c.edus;
  r.n_docs = c.docs;
  const auto obs = head_matched_labels(pairs, granularity);
  if (!obs.empty()) r.kappa = cohen_kappa(obs, num_labels(granularity));
  return r;
}

EvalReport evaluate(const std::vector<DiscourseTree>& pred, const std::vector<DiscourseTree>& gold,
                    Granularity granularity) {
  return evaluate_pairs(align(pred, gold), granularity);
}

std::vector<AgreementRow> agreement_report(const std::vector<AnnotatorPair>& pairs,
                                           Granularity granularity) {
  std::vector<AgreementRow> rows;
  rows.reserve(pairs.size());
  for (const auto& p : pairs) {
    AgreementRow row{p.name, std::nullopt, {}};
    try {
      row.report = evaluate(p.first, p.second, granularity);
    } catch (const AlignmentError& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace scidtb
