#ifndef DISSENT_EVAL_H_
#define DISSENT_EVAL_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dissent/corpus.h"
#include "dissent/features.h"
#include "dissent/learn.h"
#include "dissent/lexicons.h"
#include "dissent/types.h"

namespace dissent::eval {

using features::Dataset;
using features::Group;

// --- metrics ---------------------------------------------------------------

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  std::size_t support = 0;
};

struct EvalReport {
  double accuracy = 0.0;
  std::array<ClassMetrics, 2> per_class;  // indexed by label_index
  // Support-weighted averages over both classes.
  double precision = 0.0;
  double recall = 0.0;
  // confusion[actual][predicted]
  std::array<std::array<std::size_t, 2>, 2> confusion{};
  std::vector<int> correct;  // aligned with the test rows
  std::string fingerprint;

  std::size_t size() const { return correct.size(); }
};

// Metrics from aligned label lists. Throws EmptyTestError on empty input
// and ArgumentError on a length mismatch.
EvalReport score_predictions(const std::vector<Label>& actual,
                             const std::vector<Label>& predicted);

// Throws SpaceMismatchError or EmptyTestError.
EvalReport evaluate(const learn::Model& model, const Dataset& test);

// --- statistics ------------------------------------------------------------

// Regularized incomplete beta I_x(a, b), by continued fraction.
double incomplete_beta(double a, double b, double x);

// Two-sided tail probability of Student's t with df degrees of freedom.
double student_t_two_sided(double t, double df);

struct TTestResult {
  double t = 0.0;
  double p = 1.0;
  std::size_t df = 0;
  // Every difference equal and nonzero: t is infinite and p is reported as 0.
  bool degenerate = false;
};

// Paired t-test on d = a - b. Throws ArgumentError unless |a| = |b| >= 2.
TTestResult paired_t_test(const std::vector<double>& a, const std::vector<double>& b);

struct McNemarResult {
  std::size_t only_a = 0;  // a correct, b wrong
  std::size_t only_b = 0;
  double chi2 = 0.0;  // continuity-corrected
  double p = 1.0;
};

McNemarResult mcnemar(const std::vector<int>& a_correct, const std::vector<int>& b_correct);

// Accuracy of each of `folds` deterministic folds; instance i is in fold
// i % folds.
std::vector<double> fold_accuracies(const std::vector<int>& correct, std::size_t folds = 10);

// 16 hex digits of the 64-bit FNV-1a hash.
std::string fnv1a_hex(std::string_view data);

// --- experiments -----------------------------------------------------------

// A named feature set: some TM groups plus, optionally, ngrams of orders
// 1..ngram_order.
struct FeatureSet {
  std::string name;
  std::set<Group> groups;
  int ngram_order = 0;
  bool operator==(const FeatureSet&) const = default;
};

// "all-tm", "unigram", "bigram" (unigrams plus bigrams), a group name, or
// several of those joined with '+'. Throws ArgumentError.
FeatureSet parse_feature_set(std::string_view text);
FeatureSet all_tm();

enum class LearnerKind { kForest, kTree };

struct LearnerConfig {
  LearnerKind kind = LearnerKind::kTree;
  learn::TreeParams tree;
  learn::ForestParams forest;
  std::string name() const { return kind == LearnerKind::kTree ? "tree" : "forest"; }
};

LearnerKind parse_learner(std::string_view text);

struct ExperimentConfig {
  FeatureSet features;
  LearnerConfig learner;
  // Keep only the k best attributes by gain ratio.
  std::optional<std::size_t> k;
  // Rank attributes on the test set instead of train.
  bool fit_on_test = false;
};

// Everything shared by the runs of one experiment.
struct ExperimentContext {
  std::vector<corpus::LabeledPair> train;
  std::vector<corpus::LabeledPair> test;
  lexicon::LexiconSet lexicons;
  features::FeatureOptions options;
  std::size_t ngram_min_count = 1;
  std::size_t folds = 10;
  unsigned threads = 1;
  bool per_topic = false;
  std::uint64_t seed = 1;
};

struct RunResult {
  std::string feature_set;
  std::string learner;
  std::size_t attributes = 0;
  std::optional<std::size_t> k;
  EvalReport report;
  std::vector<double> fold_accuracy;
  std::vector<std::string> selected;  // top-ranked attribute names, best first
  std::map<std::string, EvalReport> per_topic;
};

// Featurizes each distinct space once and reuses it across runs.
class Experiment {
 public:
  explicit Experiment(ExperimentContext context);

  const ExperimentContext& context() const { return context_; }

  // Space and datasets for a feature set. Throws ArgumentError for an empty
  // set and SpaceMismatchError when a lexicon is missing.
  features::SpacePtr space_for(const FeatureSet& set);
  std::pair<Dataset, Dataset> datasets_for(const FeatureSet& set);

  RunResult run(const ExperimentConfig& config);

  // Trains on the train split with the given configuration and returns the
  // model (no evaluation).
  learn::Model train(const ExperimentConfig& config);

  // Gain-ratio ranking of a feature set, on train or test.
  const learn::FeatureRanking& ranking_for(const FeatureSet& set, bool fit_on_test);

 private:
  // Featurizes every available TM group plus ngrams up to ngram_order once;
  // feature sets are projections of it.
  void ensure_universe(int ngram_order);

  ExperimentContext context_;
  int universe_order_ = -1;
  Dataset universe_train_;
  Dataset universe_test_;
  std::map<std::string, std::pair<Dataset, Dataset>> cache_;
  std::map<int, features::NgramVocabulary> vocabularies_;
  std::map<std::string, learn::FeatureRanking> rankings_;
};

struct SignificanceRow {
  std::string learner;
  std::string a;
  std::string b;
  TTestResult t;
  McNemarResult mcnemar;
};

struct ModeResult {
  std::string mode;  // compare, ablate, individual, sweep
  std::vector<std::string> learners;
  std::vector<RunResult> runs;
  std::vector<SignificanceRow> tests;
  std::vector<std::string> warnings;
};

// One run per (feature set, learner), with fold-paired t-tests between
// every two feature sets under the same learner.
ModeResult run_comparison(Experiment& experiment, const std::vector<FeatureSet>& sets,
                          const std::vector<LearnerConfig>& learners);

// The full set plus one run per group with that group removed; each
// ablation is tested against the full run. Throws ArgumentError if a group
// is not in the full set.
ModeResult run_ablation(Experiment& experiment, const FeatureSet& full,
                        const std::vector<Group>& groups,
                        const std::vector<LearnerConfig>& learners);

// One single-group run per group.
ModeResult run_individual(Experiment& experiment, const std::vector<Group>& groups,
                          const std::vector<LearnerConfig>& learners);

// One run per k on `base`, ranked on train (or test with fit_on_test).
// When `reference` is given it is run too and every k is tested against it.
ModeResult run_sweep(Experiment& experiment, const FeatureSet& base,
                     const std::vector<std::size_t>& ks,
                     const std::vector<LearnerConfig>& learners, bool fit_on_test,
                     const std::optional<FeatureSet>& reference);

// --- reports ---------------------------------------------------------------

struct Table {
  std::string name;  // file stem, e.g. "compare"
  std::string title;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

struct Report {
  std::vector<std::pair<std::string, std::string>> meta;  // printed in order
  std::vector<Table> tables;
};

// Tables for a mode result; meta carries the fingerprint and lexicon
// versions.
Report make_report(const ModeResult& result,
                   const std::vector<std::pair<std::string, std::string>>& meta);

enum class Format { kTsv, kHuman };

std::string emit_table(const Report& report, const Table& table, Format format);
std::string emit_report(const Report& report, Format format);

// Fixed-precision formatting used in every report.
std::string fixed(double value, int digits);

}  // namespace dissent::eval

#endif  // DISSENT_EVAL_H_
