#ifndef DISSENT_CLI_H_
#define DISSENT_CLI_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dissent/error.h"
#include "dissent/learn.h"

namespace dissent::cli {

namespace fs = std::filesystem;

// Raised for invalid configuration; the CLI exits with status 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitRunFailure = 1;
inline constexpr int kExitConfig = 2;

// Settings of an experiment run. Every field has a config-file key of the
// same name (dots for nested learner parameters).
struct RunConfig {
  std::optional<fs::path> corpus;
  std::optional<fs::path> synthetic_spec;
  std::uint64_t synthetic_seed = 7;
  fs::path lexicon_dir;
  std::optional<fs::path> mpqa;
  fs::path output_dir = "results";

  std::vector<std::string> train_topics;
  std::vector<std::string> test_topics;  // empty: every other topic
  double threshold_lo = -1.0;
  double threshold_hi = 1.0;

  std::string mode = "compare";  // compare, ablate, individual, sweep
  // Feature sets for compare; TM groups for ablate and individual.
  std::vector<std::string> groups;
  std::vector<std::string> learners = {"forest", "tree"};
  std::string sweep_base = "unigram";
  std::vector<std::size_t> sweep_ks = {50, 100, 200, 500, 1000};
  std::string sweep_reference = "all-tm";  // empty: none

  bool fit_on_test = false;
  bool per_topic = false;
  bool include_prior = false;
  bool binary_ngrams = false;
  std::string polarity = "sum";        // sum, mean
  std::string ngram_scope = "words";   // words, with-punct
  bool ngram_sentence_scoped = true;
  std::size_t ngram_min_count = 1;
  std::size_t negation_window = 3;

  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::size_t folds = 10;

  learn::TreeParams tree;
  learn::ForestParams forest;
};

// Built-in defaults for the lexicon directory and MPQA file.
RunConfig default_run_config();

// Sets one key from its textual value. Throws ConfigError.
void set_config_value(RunConfig* config, const std::string& key, const std::string& value);

// "key = value" lines, '#' comments. Throws ConfigError naming the line.
RunConfig parse_run_config(std::istream& in, RunConfig base = default_run_config());
RunConfig load_run_config(const fs::path& path, RunConfig base = default_run_config());

// Checks paths and value ranges. Throws ConfigError.
void validate_run_config(const RunConfig& config);
// The learner, seed and thread settings only.
void validate_learner_config(const RunConfig& config);

// Every key with its value, in a fixed order, loadable by parse_run_config.
std::string resolved_config(const RunConfig& config);

// Runs the command line (args excludes the program name). Returns the exit
// status.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dissent::cli

#endif  // DISSENT_CLI_H_
