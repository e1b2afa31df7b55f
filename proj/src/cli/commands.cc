#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "dissent/cli.h"
#include "dissent/corpus.h"
#include "dissent/eval.h"
#include "dissent/features.h"
#include "dissent/learn.h"
#include "dissent/lexicons.h"
#include "dissent/synthetic.h"
#include "dissent/tsv.h"

#ifndef DISSENT_DATA_DIR
#define DISSENT_DATA_DIR "data"
#endif

namespace dissent::cli {

namespace {

using eval::Table;

// --- config flags ----------------------------------------------------------

struct Flag {
  const char* name;
  const char* key;
  const char* help;
  const char* value = nullptr;  // set for switches: the value they assign
};

const std::vector<Flag>& data_flags() {
  static const std::vector<Flag> flags = {
      {"--corpus", "corpus", "Corpus TSV (pair_id, topic, prior_text, response_text, mean_agreement)"},
      {"--synthetic-spec", "synthetic_spec", "Generate the corpus from this synthetic spec instead"},
      {"--synthetic-seed", "synthetic_seed", "Seed for the synthetic generator"},
      {"--lexicon-dir", "lexicon_dir", "Directory holding the .lex files"},
      {"--mpqa", "mpqa", "MPQA subjectivity clue file"},
      {"--output-dir", "output_dir", "Directory for reports and the resolved config"},
      {"--train-topics", "train_topics", "Comma-separated training topics"},
      {"--test-topics", "test_topics", "Comma-separated test topics (default: all other topics)"},
      {"--threshold-lo", "threshold_lo", "Mean agreement at or below this is DISAGREEMENT"},
      {"--threshold-hi", "threshold_hi", "Mean agreement at or above this is AGREEMENT"},
      {"--include-prior", "include_prior", "Also featurize the prior post", "true"},
      {"--binary-ngrams", "binary_ngrams", "Ngram features are presence flags", "true"},
      {"--polarity", "polarity", "Polarity aggregation: sum or mean"},
      {"--ngram-scope", "ngram_scope", "Ngram tokens: words or with-punct"},
      {"--ngram-min-count", "ngram_min_count", "Minimum training frequency of an ngram"},
      {"--negation-window", "negation_window", "Tokens before an agreement keyword checked for negation"},
      {"--seed", "seed", "Seed for every randomized learner"},
      {"--threads", "threads", "Worker threads (results do not depend on it)"},
  };
  return flags;
}

const std::vector<Flag>& run_flags() {
  static const std::vector<Flag> flags = {
      {"--mode", "mode", "compare, ablate, individual or sweep"},
      {"--groups", "groups",
       "Comma-separated feature sets for compare (all-tm, unigram, bigram, group names joined "
       "with +), or TM groups for ablate and individual"},
      {"--learners", "learners", "Comma-separated learners: forest, tree"},
      {"--sweep-base", "sweep_base", "Feature set ranked in sweep mode"},
      {"--sweep-ks", "sweep_ks", "Comma-separated numbers of top features for sweep mode"},
      {"--sweep-reference", "sweep_reference", "Feature set every sweep run is tested against"},
      {"--fit-on-test", "fit_on_test",
       "Rank features on the TEST set in sweep mode (optimistic upper bound)", "true"},
      {"--per-topic", "per_topic", "Also report accuracy per test topic", "true"},
      {"--folds", "folds", "Test folds for the paired t-test"},
      {"--tree-confidence", "tree.confidence", "Pruning confidence factor"},
      {"--tree-min-leaf", "tree.min_leaf", "Minimum instances per tree leaf"},
      {"--no-prune", "tree.prune", "Do not prune decision trees", "false"},
      {"--no-mdl", "tree.mdl_correction", "Disable the MDL correction of split gains", "false"},
      {"--no-average-gain-filter", "tree.average_gain_filter",
       "Let attributes with below-average gain compete for splits", "false"},
      {"--trees", "forest.num_trees", "Trees per forest"},
      {"--features-per-split", "forest.features_per_split",
       "Attributes drawn per forest split (0: log2 M + 1)"},
      {"--no-bootstrap", "forest.bootstrap", "Grow forest trees on the full training set", "false"},
  };
  return flags;
}

class ConfigFlags {
 public:
  void add(CLI::App* app, const std::vector<Flag>& flags) {
    for (const auto& f : flags) {
      if (f.value) {
        bound_.push_back({f, app->add_flag(f.name, f.help), nullptr});
      } else {
        auto store = std::make_unique<std::string>();
        CLI::Option* opt = app->add_option(f.name, *store, f.help);
        bound_.push_back({f, opt, std::move(store)});
      }
    }
  }

  void add_config(CLI::App* app) {
    app->add_option("--config", config_path_, "Run config file (key = value lines)");
  }

  // Defaults, then the config file, then explicit flags.
  RunConfig resolve() const {
    RunConfig config = default_run_config();
    if (!config_path_.empty()) config = load_run_config(config_path_, config);
    for (const auto& b : bound_) {
      if (b.option->count() == 0) continue;
      set_config_value(&config, b.flag.key, b.flag.value ? b.flag.value : *b.store);
    }
    return config;
  }

 private:
  struct Bound {
    Flag flag;
    CLI::Option* option;
    std::unique_ptr<std::string> store;
  };
  std::vector<Bound> bound_;
  std::string config_path_;
};

// --- helpers ---------------------------------------------------------------

std::ifstream open_in(const fs::path& path, const std::string& what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + what + ": " + path.string(), 0);
  return in;
}

void write_file(const fs::path& path, const std::string& contents) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << contents;
  if (!out) throw Error("cannot write " + path.string());
}

template <typename Fn>
void write_with(const fs::path& path, Fn&& fn) {
  std::ostringstream out;
  fn(out);
  write_file(path, out.str());
}

std::vector<corpus::AnnotatedPair> load_corpus_file(const fs::path& path) {
  auto in = open_in(path, "corpus file");
  try {
    return corpus::load_pairs(in);
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what(), 0);
  }
}

lexicon::LexiconSet load_lexicons(const RunConfig& config) {
  return lexicon::load_lexicon_set(config.lexicon_dir, config.mpqa);
}

std::vector<corpus::AnnotatedPair> synthesize(const fs::path& spec_path, std::uint64_t seed,
                                              const lexicon::LexiconSet& lexicons,
                                              corpus::SyntheticSpec* spec_out) {
  corpus::SyntheticSpec spec;
  try {
    spec = corpus::load_synthetic_spec(spec_path);
  } catch (const InputError& e) {
    throw InputError(spec_path.string() + ": " + e.what(), 0);
  }
  if (spec_out) *spec_out = spec;
  try {
    return corpus::generate_synthetic(seed, spec, lexicons);
  } catch (const ArgumentError& e) {
    throw ConfigError(spec_path.string() + ": " + e.what());
  }
}

std::string join(const std::set<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : ",") + s;
  return out;
}

Table distribution_table(const std::vector<corpus::LabeledPair>& pairs) {
  Table t;
  t.name = "distribution";
  t.title = "Distribution of (dis)agreement by topic";
  t.columns = {"topic", "agree", "disagree", "total"};
  corpus::TopicCounts total;
  for (const auto& [topic, c] : corpus::corpus_stats(pairs)) {
    t.rows.push_back({topic, std::to_string(c.agree), std::to_string(c.disagree),
                      std::to_string(c.total())});
    total.agree += c.agree;
    total.disagree += c.disagree;
  }
  t.rows.push_back({"total", std::to_string(total.agree), std::to_string(total.disagree),
                    std::to_string(total.total())});
  return t;
}

features::FeatureOptions feature_options(const RunConfig& config) {
  features::FeatureOptions o;
  o.polarity = config.polarity == "mean" ? features::PolarityMode::kMean
                                         : features::PolarityMode::kSum;
  o.include_prior = config.include_prior;
  o.binary_ngrams = config.binary_ngrams;
  o.negation_window = config.negation_window;
  o.ngram.scope = config.ngram_scope == "with-punct" ? text::NgramScope::kWithPunct
                                                     : text::NgramScope::kWordsOnly;
  o.ngram.sentence_scoped = config.ngram_sentence_scoped;
  return o;
}

// Identifies the settings that can change a report; thread count and
// output location are left out.
std::string config_fingerprint(RunConfig config) {
  config.threads = 1;
  config.output_dir.clear();
  return eval::fnv1a_hex(resolved_config(config));
}

struct Prepared {
  eval::ExperimentContext context;
  std::vector<std::pair<std::string, std::string>> meta;
};

Prepared prepare(const RunConfig& config) {
  validate_run_config(config);
  Prepared p;
  auto& ctx = p.context;
  ctx.lexicons = load_lexicons(config);

  std::vector<corpus::AnnotatedPair> pairs;
  std::set<std::string> train_topics(config.train_topics.begin(), config.train_topics.end());
  std::set<std::string> test_topics(config.test_topics.begin(), config.test_topics.end());
  if (config.synthetic_spec) {
    corpus::SyntheticSpec spec;
    pairs = synthesize(*config.synthetic_spec, config.synthetic_seed, ctx.lexicons, &spec);
    if (train_topics.empty()) {
      for (const auto& t : spec.topics) {
        if (t.train) train_topics.insert(t.name);
      }
    }
  } else {
    pairs = load_corpus_file(*config.corpus);
  }
  const auto filtered = corpus::filter_by_threshold(pairs, config.threshold_lo, config.threshold_hi);
  if (test_topics.empty()) {
    for (const auto& lp : filtered.labeled) {
      if (!train_topics.count(lp.pair.topic)) test_topics.insert(lp.pair.topic);
    }
  }
  corpus::DatasetSplit split;
  try {
    split = corpus::split_by_topic(filtered.labeled, train_topics, test_topics);
  } catch (const ArgumentError& e) {
    throw ConfigError(e.what());
  }
  if (split.train.empty()) {
    throw ConfigError("no labeled training pairs in topics: " + join(train_topics));
  }
  if (split.test.empty()) {
    throw ConfigError("no labeled test pairs in topics: " + join(test_topics));
  }
  ctx.train = std::move(split.train);
  ctx.test = std::move(split.test);
  ctx.options = feature_options(config);
  ctx.ngram_min_count = config.ngram_min_count;
  ctx.folds = config.folds;
  ctx.threads = config.threads;
  ctx.per_topic = config.per_topic;
  ctx.seed = config.seed;

  p.meta = {
      {"config_fingerprint", config_fingerprint(config)},
      {"lexicons", ctx.lexicons.versions()},
      {"seed", std::to_string(config.seed)},
      {"train", join(train_topics) + " (" + std::to_string(ctx.train.size()) + " pairs)"},
      {"test", join(test_topics) + " (" + std::to_string(ctx.test.size()) + " pairs)"},
      {"dropped", std::to_string(filtered.dropped)},
  };
  return p;
}

std::vector<eval::LearnerConfig> learner_configs(const RunConfig& config) {
  std::vector<eval::LearnerConfig> out;
  for (const auto& name : config.learners) {
    eval::LearnerConfig l;
    l.kind = eval::parse_learner(name);
    l.tree = config.tree;
    l.forest = config.forest;
    l.forest.seed = config.seed;
    l.forest.threads = config.threads;
    out.push_back(l);
  }
  return out;
}

std::vector<features::Group> tm_groups(const std::vector<std::string>& names) {
  if (names.empty()) return {features::kTmGroups.begin(), features::kTmGroups.end()};
  std::vector<features::Group> out;
  for (const auto& n : names) out.push_back(*features::parse_group(n));
  return out;
}

void write_report(const fs::path& dir, const eval::Report& report) {
  for (const auto& table : report.tables) {
    write_file(dir / (table.name + ".tsv"), eval::emit_table(report, table, eval::Format::kTsv));
  }
}

void print_table(std::ostream& out, const Table& table) {
  eval::Report r;
  out << eval::emit_table(r, table, eval::Format::kHuman);
}

// --- commands --------------------------------------------------------------

struct IngestArgs {
  std::string corpus;
  double lo = -1.0;
  double hi = 1.0;
  std::string out;
};

int cmd_ingest(const IngestArgs& a, std::ostream& out) {
  const auto pairs = load_corpus_file(a.corpus);
  if (!(a.lo < a.hi)) throw ConfigError("--threshold-lo must be below --threshold-hi");
  const auto filtered = corpus::filter_by_threshold(pairs, a.lo, a.hi);
  const Table table = distribution_table(filtered.labeled);
  print_table(out, table);
  out << "pairs: " << pairs.size() << "  kept: " << filtered.labeled.size()
      << "  dropped: " << filtered.dropped << '\n';
  if (!a.out.empty()) {
    eval::Report r;
    r.meta = {{"corpus", a.corpus}, {"dropped", std::to_string(filtered.dropped)}};
    write_file(a.out, eval::emit_table(r, table, eval::Format::kTsv));
  }
  return kExitOk;
}

struct SynthArgs {
  std::string spec = (fs::path(DISSENT_DATA_DIR) / "synthetic" / "default.spec").string();
  std::uint64_t seed = 7;
  std::string out;
};

int cmd_synth(const SynthArgs& a, const RunConfig& config, std::ostream& out) {
  const auto lexicons = load_lexicons(config);
  const auto pairs = synthesize(a.spec, a.seed, lexicons, nullptr);
  write_with(a.out, [&](std::ostream& o) { corpus::write_pairs(o, pairs); });
  print_table(out, distribution_table(corpus::filter_by_threshold(pairs).labeled));
  out << "wrote " << pairs.size() << " pairs to " << a.out << '\n';
  return kExitOk;
}

int cmd_featurize(const RunConfig& config, const std::string& feature_set, std::ostream& out) {
  eval::FeatureSet set;
  try {
    set = eval::parse_feature_set(feature_set);
  } catch (const ArgumentError& e) {
    throw ConfigError(std::string("--features: ") + e.what());
  }
  Prepared p = prepare(config);
  eval::Experiment experiment(std::move(p.context));
  const auto [train, test] = experiment.datasets_for(set);
  const fs::path dir = config.output_dir;
  write_with(dir / "train.tsv", [&](std::ostream& o) { features::write_matrix(o, train); });
  write_with(dir / "test.tsv", [&](std::ostream& o) { features::write_matrix(o, test); });
  write_with(dir / "space.txt", [&](std::ostream& o) { features::write_space(o, *train.space); });
  write_file(dir / "resolved_config.txt", resolved_config(config));
  out << "feature set " << set.name << ": " << train.space->size() << " attributes\n"
      << "train: " << train.size() << " rows, test: " << test.size() << " rows\n"
      << "wrote " << (dir / "train.tsv").string() << ", " << (dir / "test.tsv").string() << ", "
      << (dir / "space.txt").string() << '\n';
  return kExitOk;
}

features::Dataset load_matrix(const fs::path& path) {
  auto in = open_in(path, "feature matrix");
  try {
    return features::read_matrix(in);
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what(), 0);
  }
}

struct SelectArgs {
  std::string matrix;
  std::size_t k = 0;
  std::size_t top = 20;
  std::string out;
  std::string ranking;
};

int cmd_select(const SelectArgs& a, std::ostream& out) {
  const auto data = load_matrix(a.matrix);
  learn::SplitOptions options;
  options.lenient = true;
  const auto ranking = learn::rank_features(data, options);
  Table t;
  t.name = "ranking";
  t.title = "Attributes by gain ratio";
  t.columns = {"rank", "attribute", "gain_ratio", "threshold"};
  for (std::size_t i = 0; i < ranking.features.size(); ++i) {
    const auto& f = ranking.features[i];
    t.rows.push_back({std::to_string(i + 1), f.name, eval::fixed(f.score, 6),
                      tsv::format_double(f.threshold)});
  }
  Table shown = t;
  if (shown.rows.size() > a.top) shown.rows.resize(a.top);
  print_table(out, shown);
  for (const auto& d : ranking.diagnostics) out << "note: " << d << '\n';
  if (!a.ranking.empty()) write_file(a.ranking, eval::emit_table({}, t, eval::Format::kTsv));
  if (a.k > 0) {
    const features::FeatureSpace selected = [&] {
      try {
        return learn::select_top_k(ranking, a.k);
      } catch (const ArgumentError& e) {
        throw ConfigError(std::string("--k: ") + e.what());
      }
    }();
    if (a.out.empty()) throw ConfigError("--k needs --out for the projected matrix");
    const auto projected =
        features::project(data, std::make_shared<const features::FeatureSpace>(selected));
    write_with(a.out, [&](std::ostream& o) { features::write_matrix(o, projected); });
    out << "wrote top " << a.k << " attributes to " << a.out << '\n';
  }
  return kExitOk;
}

struct TrainArgs {
  std::string matrix;
  std::string space;
  std::string learner = "tree";
  std::string model;
};

int cmd_train(const TrainArgs& a, const RunConfig& config, std::ostream& out) {
  validate_learner_config(config);
  features::Dataset data = load_matrix(a.matrix);
  if (!a.space.empty()) {
    auto in = open_in(a.space, "space file");
    auto space = std::make_shared<const features::FeatureSpace>(features::read_space(in));
    if (!space->same_attributes(*data.space)) {
      data = features::project(data, space);
    } else {
      data.space = space;
      for (auto& row : data.rows) row.space = space;
    }
  }
  eval::LearnerConfig learner;
  try {
    learner.kind = eval::parse_learner(a.learner);
  } catch (const ArgumentError& e) {
    throw ConfigError(std::string("--learner: ") + e.what());
  }
  learn::Model model;
  if (learner.kind == eval::LearnerKind::kTree) {
    model = learn::train_tree(data, config.tree);
  } else {
    learn::ForestParams params = config.forest;
    params.seed = config.seed;
    params.threads = config.threads;
    model = learn::train_forest(data, params);
  }
  write_with(a.model, [&](std::ostream& o) { learn::write_model(o, model); });
  out << learn::describe(model) << "\nwrote " << a.model << '\n';
  return kExitOk;
}

struct EvaluateArgs {
  std::string model;
  std::string matrix;
  std::string predictions;
};

int cmd_evaluate(const EvaluateArgs& a, std::ostream& out) {
  auto in = open_in(a.model, "model file");
  const learn::Model model = learn::read_model(in);
  const auto data = features::project(load_matrix(a.matrix), learn::model_space(model));
  const auto report = eval::evaluate(model, data);
  Table t;
  t.name = "evaluation";
  t.title = "Evaluation of " + a.model;
  t.columns = {"class", "precision", "recall", "support"};
  for (Label l : kLabels) {
    const auto& c = report.per_class[label_index(l)];
    t.rows.push_back({std::string(label_name(l)), eval::fixed(c.precision, 4),
                      eval::fixed(c.recall, 4), std::to_string(c.support)});
  }
  t.rows.push_back({"weighted", eval::fixed(report.precision, 4), eval::fixed(report.recall, 4),
                    std::to_string(report.size())});
  print_table(out, t);
  out << "accuracy: " << eval::fixed(100.0 * report.accuracy, 2) << "%\n"
      << "model fingerprint: " << report.fingerprint << '\n';
  if (!a.predictions.empty()) {
    write_with(a.predictions, [&](std::ostream& o) {
      o << "pair_id\tactual\tpredicted\n";
      for (const auto& row : data.rows) {
        o << tsv::escape(row.id) << '\t' << label_name(*row.label) << '\t'
          << label_name(learn::predict(model, row)) << '\n';
      }
    });
  }
  return kExitOk;
}

int cmd_run(const RunConfig& config, std::ostream& out) {
  Prepared p = prepare(config);
  const auto learners = learner_configs(config);
  eval::Experiment experiment(std::move(p.context));
  eval::ModeResult result;
  if (config.mode == "compare") {
    std::vector<eval::FeatureSet> sets;
    const std::vector<std::string> names =
        config.groups.empty() ? std::vector<std::string>{"all-tm", "unigram", "bigram"}
                              : config.groups;
    for (const auto& n : names) sets.push_back(eval::parse_feature_set(n));
    result = eval::run_comparison(experiment, sets, learners);
  } else if (config.mode == "ablate") {
    result = eval::run_ablation(experiment, eval::all_tm(), tm_groups(config.groups), learners);
  } else if (config.mode == "individual") {
    result = eval::run_individual(experiment, tm_groups(config.groups), learners);
  } else {
    std::optional<eval::FeatureSet> reference;
    if (!config.sweep_reference.empty()) {
      reference = eval::parse_feature_set(config.sweep_reference);
    }
    result = eval::run_sweep(experiment, eval::parse_feature_set(config.sweep_base),
                             config.sweep_ks, learners, config.fit_on_test, reference);
  }
  const eval::Report report = eval::make_report(result, p.meta);
  const fs::path dir = config.output_dir;
  fs::create_directories(dir);
  write_file(dir / "resolved_config.txt", resolved_config(config));
  write_report(dir, report);
  out << eval::emit_report(report, eval::Format::kHuman) << "\nwrote reports to "
      << dir.string() << '\n';
  return kExitOk;
}

// Reads the TSV tables of a run directory back into a report.
eval::Report read_report_dir(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw InputError("no such directory: " + dir.string(), 0);
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".tsv") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw InputError("no report tables in " + dir.string(), 0);
  eval::Report report;
  for (std::size_t f = 0; f < files.size(); ++f) {
    auto in = open_in(files[f], "report table");
    Table table;
    table.name = files[f].stem().string();
    table.title = table.name;
    std::string line;
    bool header = false;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.rfind("# ", 0) == 0) {
        const std::size_t colon = line.find(": ");
        if (colon == std::string::npos) continue;
        const std::string key = line.substr(2, colon - 2);
        const std::string value = line.substr(colon + 2);
        if (key == "table") {
          table.title = value;
        } else if (f == 0) {
          report.meta.emplace_back(key, value);
        }
        continue;
      }
      std::vector<std::string> cells;
      for (auto cell : tsv::split(line)) cells.push_back(tsv::unescape(cell));
      if (!header) {
        table.columns = std::move(cells);
        header = true;
      } else {
        table.rows.push_back(std::move(cells));
      }
    }
    report.tables.push_back(std::move(table));
  }
  return report;
}

int cmd_report(const std::string& dir, const std::string& format, std::ostream& out) {
  const eval::Report report = read_report_dir(dir);
  if (format == "tsv") {
    out << eval::emit_report(report, eval::Format::kTsv);
  } else if (format == "human") {
    out << eval::emit_report(report, eval::Format::kHuman);
  } else {
    throw ConfigError("--format must be human or tsv");
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Classifies responses in online dialogue as agreement or disagreement.",
               "dissent"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Print help for every subcommand");

  IngestArgs ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "Validate a corpus and print its distribution");
  ingest_cmd->add_option("--corpus", ingest.corpus, "Corpus TSV file")->required();
  ingest_cmd->add_option("--threshold-lo", ingest.lo, "Mean agreement at or below this is DISAGREEMENT");
  ingest_cmd->add_option("--threshold-hi", ingest.hi, "Mean agreement at or above this is AGREEMENT");
  ingest_cmd->add_option("--out", ingest.out, "Also write the distribution as TSV");

  SynthArgs synth;
  ConfigFlags synth_flags;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic corpus from a spec");
  synth_cmd->add_option("--spec", synth.spec, "Synthetic spec file")->capture_default_str();
  synth_cmd->add_option("--seed", synth.seed, "Generator seed")->capture_default_str();
  synth_cmd->add_option("--out", synth.out, "Corpus TSV to write")->required();
  synth_flags.add(synth_cmd, {data_flags()[3], data_flags()[4]});

  std::string feature_set = "all-tm";
  ConfigFlags featurize_flags;
  auto* featurize_cmd =
      app.add_subcommand("featurize", "Write train and test feature matrices for a feature set");
  featurize_flags.add_config(featurize_cmd);
  featurize_flags.add(featurize_cmd, data_flags());
  featurize_cmd->add_option("--features", feature_set,
                            "Feature set: all-tm, unigram, bigram, or groups joined with +")
      ->capture_default_str();

  SelectArgs select;
  auto* select_cmd = app.add_subcommand("select-features", "Rank matrix attributes by gain ratio");
  select_cmd->add_option("--matrix", select.matrix, "Feature matrix TSV")->required();
  select_cmd->add_option("--k", select.k, "Keep the k best attributes (needs --out)");
  select_cmd->add_option("--top", select.top, "Attributes shown")->capture_default_str();
  select_cmd->add_option("--out", select.out, "Projected matrix TSV");
  select_cmd->add_option("--ranking", select.ranking, "Write the full ranking as TSV");

  TrainArgs train;
  ConfigFlags train_flags;
  auto* train_cmd = app.add_subcommand("train", "Train a tree or forest on a feature matrix");
  train_cmd->add_option("--matrix", train.matrix, "Training matrix TSV")->required();
  train_cmd->add_option("--space", train.space, "Space file written by featurize");
  train_cmd->add_option("--learner", train.learner, "tree or forest")->capture_default_str();
  train_cmd->add_option("--model", train.model, "Model file to write")->required();
  train_flags.add_config(train_cmd);
  {
    std::vector<Flag> flags = {data_flags()[16], data_flags()[17]};
    for (const auto& f : run_flags()) {
      if (std::string_view(f.key).find('.') != std::string_view::npos) flags.push_back(f);
    }
    train_flags.add(train_cmd, flags);
  }

  EvaluateArgs evaluate;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Score a model on a labeled matrix");
  evaluate_cmd->add_option("--model", evaluate.model, "Model file")->required();
  evaluate_cmd->add_option("--matrix", evaluate.matrix, "Test matrix TSV")->required();
  evaluate_cmd->add_option("--predictions", evaluate.predictions, "Write per-pair predictions");

  ConfigFlags run_config_flags;
  auto* run_cmd = app.add_subcommand("run", "Run an experiment and write its reports");
  run_config_flags.add_config(run_cmd);
  run_config_flags.add(run_cmd, data_flags());
  run_config_flags.add(run_cmd, run_flags());

  std::string report_dir = "results";
  std::string report_format = "human";
  auto* report_cmd = app.add_subcommand("report", "Print the report tables of a run directory");
  report_cmd->add_option("--input-dir", report_dir, "Directory written by run")
      ->capture_default_str();
  report_cmd->add_option("--format", report_format, "human or tsv")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    const auto selected = app.get_subcommands();
    out << (selected.empty() ? app.help("", CLI::AppFormatMode::All) : selected.back()->help());
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\nRun with --help for usage.\n";
    return kExitConfig;
  }

  try {
    if (*ingest_cmd) return cmd_ingest(ingest, out);
    if (*synth_cmd) return cmd_synth(synth, synth_flags.resolve(), out);
    if (*featurize_cmd) return cmd_featurize(featurize_flags.resolve(), feature_set, out);
    if (*select_cmd) return cmd_select(select, out);
    if (*train_cmd) return cmd_train(train, train_flags.resolve(), out);
    if (*evaluate_cmd) return cmd_evaluate(evaluate, out);
    if (*run_cmd) return cmd_run(run_config_flags.resolve(), out);
    if (*report_cmd) return cmd_report(report_dir, report_format, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRunFailure;
  }
  return kExitConfig;
}

}  // namespace dissent::cli
