// Training and batch parsing for the three baseline parsers.

#ifndef SCIDTB_PIPELINE_HPP_
#define SCIDTB_PIPELINE_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "scidtb/bundle.hpp"

namespace scidtb {

struct TrainOptions {
  ParserKind kind = ParserKind::kTwoStage;
  Granularity labels = Granularity::kFine;
  double c1 = 1.5;       // action classifier
  double c2 = 0.5;       // second-stage labeler
  int svm_epochs = 20;   // passes of the hinge-loss trainer
  int epochs = 10;       // perceptron epochs
  double learning_rate = 1.0;
  std::uint64_t seed = 0;
};

struct TrainReport {
  int train_docs = 0;
  int skipped_nonprojective = 0;  // transition parsers only
  long examples = 0;
  int dictionary_size = 0;
};

// Progress lines (epoch reports, counts).
using TrainLog = std::function<void(const std::string&)>;
// Called by the graph trainer after each epoch with a frozen bundle snapshot.
using EpochHook = std::function<void(int epoch, ParserBundle& snapshot)>;

ParserBundle train_parser(const std::vector<DiscourseTree>& train, const TrainOptions& options,
                          TrainReport* report = nullptr, const EpochHook& on_epoch = {});

// Parses stripped copies of the documents; gold structure is never read.
std::vector<DiscourseTree> parse_all(ParserBundle& bundle, const std::vector<DiscourseTree>& docs);

}  // namespace scidtb

#endif  // SCIDTB_PIPELINE_HPP_
