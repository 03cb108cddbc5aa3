// Subcommands of the scidtb command-line tool. Each writes its report to
// `out`, diagnostics to `err`, and returns the process exit status.

#ifndef SCIDTB_TOOLS_COMMANDS_HPP_
#define SCIDTB_TOOLS_COMMANDS_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "scidtb/metrics.hpp"
#include "scidtb/pipeline.hpp"

namespace scidtb::cli {

enum class OutputFormat { kText, kCsv };

struct RunConfig {
  std::filesystem::path corpus_root;
  std::string split = "test";
  std::string train_split = "train";
  std::string dev_split = "dev";
  std::string parser = "two-stage";
  double c1 = 1.5;
  double c2 = 0.5;
  int epochs = 10;
  int svm_epochs = 20;
  double lr = 1.0;
  std::uint64_t seed = 0;
  std::string labels = "fine";
  std::filesystem::path model;
  std::filesystem::path out;
  std::string format = "text";
  std::string gold_dir = "gold";
  std::vector<std::string> inputs;
  bool self_pair = false;

  OutputFormat output_format() const;
  Granularity granularity() const;
  TrainOptions train_options() const;  // throws std::invalid_argument on a bad parser kind
};

// Flat "key = value" lines; '#' starts a comment. Unknown keys throw
// std::invalid_argument naming the key.
void load_config_file(const std::filesystem::path& path, RunConfig& config);

int cmd_validate(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_stats(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_agreement(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_train(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_parse(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_eval(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_render(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv and dispatches.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace scidtb::cli

#endif  // SCIDTB_TOOLS_COMMANDS_HPP_
