// Acceptance checks. Prints one PASS, FAIL or SKIP line per criterion and
// exits nonzero if any criterion fails.
//
//   acceptance [--original-corpus PATH] [--train-topic NAME]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>
#include <sys/wait.h>

#include "dissent/corpus.h"
#include "dissent/eval.h"
#include "dissent/features.h"
#include "dissent/learn.h"
#include "dissent/lexicons.h"
#include "dissent/synthetic.h"
#include "oracle/brute_force.h"
#include "oracle/check.h"
#include "properties/extractor.h"

using namespace dissent;
namespace fs = std::filesystem;

namespace {

// Tolerances and budgets.
constexpr double kScoreTolerance = 1e-9;
constexpr std::size_t kOracleDatasets = 1000;
constexpr double kOracleSeconds = 30.0;
constexpr std::size_t kPropertyTexts = 10000;
constexpr double kPropertySeconds = 60.0;
constexpr double kSyntheticMinAccuracy = 0.85;
constexpr double kSyntheticMinMargin = 0.05;
constexpr double kSyntheticMaxP = 0.05;
constexpr double kSyntheticSeconds = 120.0;
constexpr std::uint64_t kSyntheticSeed = 7;
constexpr double kOriginalTarget = 66.0;
constexpr double kOriginalBand = 3.0;
constexpr double kTTestTolerance = 1e-4;

const fs::path kDataDir = DISSENT_TEST_DATA_DIR;
const fs::path kLexDir = kDataDir / "lexicons";

struct Outcome {
  enum class Status { kPass, kFail, kSkip };
  Status status = Status::kPass;
  std::string detail;
};

Outcome pass(std::string detail) { return {Outcome::Status::kPass, std::move(detail)}; }
Outcome fail(std::string detail) { return {Outcome::Status::kFail, std::move(detail)}; }
Outcome skip(std::string detail) { return {Outcome::Status::kSkip, std::move(detail)}; }

std::string seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1fs", s);
  return buf;
}

std::string num(double v, int digits = 4) { return eval::fixed(v, digits); }

const lexicon::LexiconSet& shipped() {
  static const lexicon::LexiconSet set =
      lexicon::load_lexicon_set(kLexDir, kLexDir / "mpqa_approx.tff");
  return set;
}

double elapsed(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// --- 1. oracle equivalence --------------------------------------------------

Outcome oracle_equivalence() {
  const auto start = std::chrono::steady_clock::now();
  struct EntropyCase {
    std::vector<double> counts;
    double bits;
  };
  const std::vector<EntropyCase> cases = {
      {{5, 5}, 1.0}, {{10, 0}, 0.0}, {{3, 1}, 0.8112781244591328},
      {{1, 1, 1, 1}, 2.0}};
  for (const auto& c : cases) {
    const double got = learn::entropy(c.counts);
    if (std::abs(got - c.bits) > kScoreTolerance) {
      return fail("entropy " + num(got, 12) + " != " + num(c.bits, 12));
    }
    if (c.counts.size() == 2 &&
        std::abs(got - oracle::entropy(c.counts[0], c.counts[1])) > kScoreTolerance) {
      return fail("entropy disagrees with the oracle");
    }
  }

  try {
    (void)learn::entropy(std::vector<double>{0, 0});
    return fail("entropy of no instances did not throw");
  } catch (const std::exception&) {
  }

  std::mt19937_64 rng(2024);
  std::size_t mismatches = 0;
  std::string first;
  for (std::size_t i = 0; i < kOracleDatasets; ++i) {
    const auto data = oracle::random_data(rng);
    const std::string why = oracle::check_dataset(data, kScoreTolerance);
    if (!why.empty()) {
      if (first.empty()) first = "dataset " + std::to_string(i) + ": " + why;
      ++mismatches;
    }
  }
  const double took = elapsed(start);
  const std::string detail = std::to_string(kOracleDatasets) + " datasets, " +
                             std::to_string(mismatches) + " mismatches, " + seconds(took);
  if (mismatches) return fail(detail + "; " + first);
  if (took > kOracleSeconds) return fail(detail + " over budget");
  return pass(detail);
}

// --- 2. extractor invariants ------------------------------------------------

Outcome extractor_invariants() {
  const auto start = std::chrono::steady_clock::now();
  const auto& lex = shipped();
  using namespace features;
  auto tok = [](const std::string& s) { return text::tokenize(s); };

  // Boundary examples.
  const CompiledLexicon denial(*lex.denial);
  const CompiledLexicon hedge(*lex.hedge);
  const CompiledLexicon cogmech(*lex.cogmech);
  const CompiledCues cues(*lex.cue);
  std::vector<std::string> broken;
  auto expect = [&](bool ok, const std::string& what) {
    if (!ok) broken.push_back(what);
  };
  expect(extract_agreement(tok("Quite right. My mistake."), *lex.agreement) == 1,
         "agreement: quite right");
  expect(extract_agreement(tok("You may be correct however I do not agree"), *lex.agreement) == 0,
         "agreement: guarded");
  expect(extract_agreement(tok(""), *lex.agreement) == 0, "agreement: empty");
  expect(extract_denial(tok("I don't see why this matters."), denial) >= 1, "denial: i don't see");
  expect(extract_denial(tok(""), denial) == 0, "denial: empty");
  expect(extract_hedges(tok("Perhaps not in this particular thread ... essentially the same."),
                        hedge) == 2,
         "hedge: perhaps, essentially");
  expect(extract_hedges(tok(""), hedge) == 0, "hedge: empty");
  expect(extract_duration(tok("Quite right. My mistake.")) == Duration{24, 4, 2}, "duration");
  expect(extract_duration(tok("")) == Duration{0, 0, 0}, "duration: empty");
  expect(extract_punctuation(tok("What in Vishnu's name does this have ANYTHING to do with "
                                 "evolution vs creation???")) == PunctuationCounts{3, 0},
         "punctuation: ???");
  expect(extract_punctuation(tok("!!")) == PunctuationCounts{0, 2}, "punctuation: !!");
  expect(extract_cues(tok(""), cues, &cogmech) == std::vector<std::size_t>(18, 0), "cue: empty");

  const auto space = std::make_shared<FeatureSpace>(
      make_space({kTmGroups.begin(), kTmGroups.end()}, lex, std::nullopt));
  const Featurizer f(space, lex);
  const properties::Vocabulary vocab(lex);
  const auto outcome = properties::check_extractors(f, vocab, kPropertyTexts, 13);
  const double took = elapsed(start);

  std::string detail = std::to_string(kPropertyTexts) + " texts, " +
                       std::to_string(outcome.scrambled) + " scrambled, " +
                       std::to_string(outcome.failed) + " property failures, " +
                       std::to_string(broken.size()) + " boundary failures, " + seconds(took);
  if (!broken.empty()) return fail(detail + "; " + broken.front());
  if (outcome.failed) return fail(detail + "; " + outcome.failures.front());
  // Most texts must contain a replaceable word or the invariance is vacuous.
  if (outcome.scrambled * 2 < kPropertyTexts) return fail(detail + "; too few scrambled");
  if (took > kPropertySeconds) return fail(detail + " over budget");
  return pass(detail);
}

// --- 3. lexicon gates -------------------------------------------------------

enum class Target { kDenial, kHedge, kCue, kAgreement, kContrast };

struct Quote {
  std::string ngram;
  Target target;
  std::string context;
};

// Quoted ngrams with the sentence they appear in. Ngrams quoted without a
// surrounding post are checked against the quote itself.
const std::vector<Quote> kQuotes = {
    {"I don't see", Target::kDenial, "I don't see why this matters."},
    {"I don't", Target::kDenial, "I don't see why this matters."},
    {"does not", Target::kDenial,
     "What do we call someone who debates feverishly on scientific theories, yet admittedly "
     "does not understand the concepts they are arguing against?"},
    {"you don't understand", Target::kDenial,
     "Is it productive to debate something that you don't understand the concepts of when it's "
     "a fairly involved theory based on scientific evidence?"},
    {"you don't know", Target::kDenial,
     "To say 'you don't know all the answers' is just the logical fallacy known as 'argument "
     "from ignorance'."},
    {"I do not agree", Target::kDenial, "You may be correct however I do not agree"},
    {"liar", Target::kDenial, "liar"},
    {"How can", Target::kDenial, "How can"},
    {"how can you", Target::kDenial, "how can you"},
    {"If I", Target::kDenial, "If I"},
    {"how could", Target::kDenial, "how could"},
    {"show me", Target::kDenial, "show me"},
    {"point is that", Target::kDenial, "point is that"},
    {"I do not understand", Target::kDenial, "I do not understand"},
    {"I'm wondering", Target::kHedge, "I'm wondering."},
    {"Perhaps", Target::kHedge,
     "Perhaps not in this particular thread, but the arguments are essentially the same."},
    {"essentially", Target::kHedge,
     "Perhaps not in this particular thread, but the arguments are essentially the same."},
    {"I mean", Target::kHedge,
     "I mean if we are going to put things into categories and call the category \"kind\", we "
     "should do this by common appearances."},
    {"I think", Target::kHedge, "I think you are entirely correct."},
    {"well", Target::kCue,
     "Well, many have argued that if you don't except a literal Genesis, you're damned."},
    {"so", Target::kCue, "So we can't base our definition of \"kind\" on mere appearances?"},
    {"don't", Target::kCue,
     "Well, many have argued that if you don't except a literal Genesis, you're damned."},
    {"no", Target::kCue,
     "No I didn't miss it, I was hoping you'd actually put forward an argument against what I "
     "said, not what you think I said."},
    {"yeah", Target::kCue,
     "yeah, this is clearly the best thread on these forums in probably the past year."},
    {"i think", Target::kCue, "I think you are entirely correct."},
    {"right", Target::kAgreement, "Quite right. My mistake."},
    {"correct", Target::kAgreement, "I think you are entirely correct."},
    {"but", Target::kContrast,
     "A penguin is in the same kind as a hummingbird, but is a lobster in the same kind as an "
     "oyster?"},
    {"I agree but", Target::kContrast, "I agree but that is not the point."},
};

// Lexicon rows (seed indexes) matching somewhere in `text`.
std::set<std::size_t> rows_matching(const std::string& text,
                                    const features::CompiledLexicon& compiled,
                                    std::size_t seeds) {
  const auto counts = features::denial_matches_by_seed(text::tokenize(text), compiled, seeds);
  std::set<std::size_t> rows;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i]) rows.insert(i);
  }
  return rows;
}

// Cue entries firing in `text`, the COGMECH category excluded.
std::set<std::size_t> cue_entries(const std::string& text, const features::CompiledCues& cues,
                                  const features::CompiledLexicon& cogmech) {
  const auto counts = features::extract_cues(text::tokenize(text), cues, &cogmech);
  std::set<std::size_t> entries;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] && i != cues.category_entry) entries.insert(i);
  }
  return entries;
}

std::string matched_quote(const Quote& q) {
  const auto& lex = shipped();
  auto overlap = [](const std::set<std::size_t>& a, const std::set<std::size_t>& b) {
    return std::any_of(a.begin(), a.end(), [&](std::size_t x) { return b.count(x) > 0; });
  };
  switch (q.target) {
    case Target::kDenial:
    case Target::kHedge: {
      const auto& lexicon = q.target == Target::kDenial ? *lex.denial : *lex.hedge;
      const features::CompiledLexicon compiled(lexicon);
      const std::size_t seeds = lexicon.patterns.size();
      // Some row that matches the quote alone must also fire in its context.
      if (!overlap(rows_matching(q.ngram, compiled, seeds),
                   rows_matching(q.context, compiled, seeds))) {
        return std::string(lexicon::lexicon_name(lexicon.name));
      }
      return "";
    }
    case Target::kCue: {
      const features::CompiledCues cues(*lex.cue);
      const features::CompiledLexicon cogmech(*lex.cogmech);
      if (!overlap(cue_entries(q.ngram, cues, cogmech), cue_entries(q.context, cues, cogmech))) {
        return "CUE";
      }
      return "";
    }
    case Target::kAgreement:
      if (features::extract_agreement(text::tokenize(q.context), *lex.agreement) == 0) {
        return "AGREEMENT";
      }
      return "";
    case Target::kContrast: {
      // The guard words that cancel an agreement keyword.
      const auto* contrast = lex.agreement->find_class("contrast");
      if (!contrast) return "AGREEMENT contrast class";
      const auto tokens = text::tokenize(q.context);
      const auto quote = text::tokenize(q.ngram);
      for (const auto& word : *contrast) {
        const bool in_quote = std::any_of(quote.tokens.begin(), quote.tokens.end(),
                                          [&](const auto& t) { return lexicon::literal_matches(word, t); });
        const bool in_context = std::any_of(tokens.tokens.begin(), tokens.tokens.end(),
                                            [&](const auto& t) { return lexicon::literal_matches(word, t); });
        if (in_quote && in_context) return "";
      }
      return "AGREEMENT contrast class";
    }
  }
  return "unknown target";
}

Outcome lexicon_gates() {
  const auto& lex = shipped();
  std::size_t denial_expansions = lexicon::expand_generalizations(*lex.denial).size();
  const features::CompiledCues cues(*lex.cue);
  const std::size_t cue_entries_count = cues.entry_names.size();

  std::vector<std::string> problems;
  for (const auto* lexicon : {&*lex.agreement, &*lex.denial, &*lex.cue, &*lex.hedge}) {
    const auto report = lexicon::validate_lexicon(*lexicon);
    if (!report.ok()) {
      problems.push_back(std::string(lexicon::lexicon_name(lexicon->name)) + " invalid");
    }
  }
  if (denial_expansions < lexicon::kMinDenialExpansions) {
    problems.push_back("denial expands to " + std::to_string(denial_expansions));
  }
  if (cue_entries_count != lexicon::kCueEntries) {
    problems.push_back("cue has " + std::to_string(cue_entries_count) + " entries");
  }
  std::size_t matched = 0;
  for (const auto& q : kQuotes) {
    const std::string missed = matched_quote(q);
    if (missed.empty()) {
      ++matched;
    } else {
      problems.push_back("\"" + q.ngram + "\" not matched by " + missed);
    }
  }
  const std::string detail = "denial expansions " + std::to_string(denial_expansions) +
                             ", cue entries " + std::to_string(cue_entries_count) + ", quotes " +
                             std::to_string(matched) + "/" + std::to_string(kQuotes.size());
  if (!problems.empty()) return fail(detail + "; " + problems.front());
  return pass(detail);
}

// --- 4. synthetic cross-topic experiment -------------------------------------

const eval::RunResult* find_run(const eval::ModeResult& result, const std::string& features,
                                const std::string& learner) {
  for (const auto& r : result.runs) {
    if (r.feature_set == features && r.learner == learner) return &r;
  }
  return nullptr;
}

const eval::SignificanceRow* find_test(const eval::ModeResult& result, const std::string& a,
                                       const std::string& b, const std::string& learner) {
  for (const auto& t : result.tests) {
    if (t.learner != learner) continue;
    if ((t.a == a && t.b == b) || (t.a == b && t.b == a)) return &t;
  }
  return nullptr;
}

eval::LearnerConfig tree_learner() { return eval::LearnerConfig{}; }

Outcome synthetic_experiment() {
  const auto start = std::chrono::steady_clock::now();
  const auto spec = corpus::load_synthetic_spec(kDataDir / "synthetic" / "default.spec");
  const auto pairs = corpus::generate_synthetic(kSyntheticSeed, spec, shipped());
  const auto labeled = corpus::filter_by_threshold(pairs).labeled;
  std::set<std::string> train_topics, test_topics;
  for (const auto& t : spec.topics) (t.train ? train_topics : test_topics).insert(t.name);
  auto split = corpus::split_by_topic(labeled, train_topics, test_topics);

  eval::ExperimentContext context;
  context.train = std::move(split.train);
  context.test = std::move(split.test);
  context.lexicons = shipped();
  eval::Experiment experiment(std::move(context));
  const auto result = eval::run_comparison(
      experiment, {eval::all_tm(), eval::parse_feature_set("unigram")}, {tree_learner()});
  const double took = elapsed(start);

  const auto* tm = find_run(result, "all-tm", "tree");
  const auto* uni = find_run(result, "unigram", "tree");
  const auto* test = find_test(result, "all-tm", "unigram", "tree");
  if (!tm || !uni || !test) return fail("missing run or test");
  const double acc = tm->report.accuracy;
  const double margin = acc - uni->report.accuracy;
  const std::string detail = "all-tm tree " + num(acc) + ", unigram " +
                             num(uni->report.accuracy) + ", margin " + num(margin) + ", p " +
                             num(test->t.p, 6) + ", " + seconds(took);
  if (acc < kSyntheticMinAccuracy) return fail(detail + "; accuracy below " + num(kSyntheticMinAccuracy, 2));
  if (margin < kSyntheticMinMargin) return fail(detail + "; margin below " + num(kSyntheticMinMargin, 2));
  if (!(test->t.p < kSyntheticMaxP)) return fail(detail + "; not significant");
  if (took > kSyntheticSeconds) return fail(detail + " over budget");
  return pass(detail);
}

// --- 5. original corpus (not gating) -----------------------------------------

// The two entries with the largest values.
std::set<std::string> top_two(std::vector<std::pair<std::string, double>> values) {
  std::stable_sort(values.begin(), values.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  std::set<std::string> out;
  for (std::size_t i = 0; i < values.size() && i < 2; ++i) out.insert(values[i].first);
  return out;
}

Outcome original_corpus(const std::optional<fs::path>& path, const std::string& train_topic) {
  if (!path) return skip("no original corpus given (--original-corpus PATH)");
  const auto start = std::chrono::steady_clock::now();
  std::ifstream in(*path, std::ios::binary);
  if (!in) return fail("cannot open " + path->string());
  const auto labeled = corpus::filter_by_threshold(corpus::load_pairs(in)).labeled;
  std::set<std::string> test_topics;
  for (const auto& p : labeled) {
    if (p.pair.topic != train_topic) test_topics.insert(p.pair.topic);
  }
  auto split = corpus::split_by_topic(labeled, {train_topic}, test_topics);
  if (split.train.empty() || split.test.empty()) return fail("empty train or test split");

  eval::ExperimentContext context;
  context.train = std::move(split.train);
  context.test = std::move(split.test);
  context.lexicons = shipped();
  eval::Experiment experiment(std::move(context));
  const std::vector<eval::LearnerConfig> learners = {tree_learner()};

  const auto compare = eval::run_comparison(
      experiment,
      {eval::all_tm(), eval::parse_feature_set("bigram"), eval::parse_feature_set("unigram")},
      learners);
  const double tm = 100.0 * find_run(compare, "all-tm", "tree")->report.accuracy;
  const double bi = 100.0 * find_run(compare, "bigram", "tree")->report.accuracy;
  const double uni = 100.0 * find_run(compare, "unigram", "tree")->report.accuracy;

  const std::vector<features::Group> groups(features::kTmGroups.begin(),
                                            features::kTmGroups.end());
  const auto ablate = eval::run_ablation(experiment, eval::all_tm(), groups, learners);
  std::vector<std::pair<std::string, double>> drops;
  for (const auto g : groups) {
    const std::string name(features::group_name(g));
    for (const auto& r : ablate.runs) {
      if (r.feature_set == "no-" + name) drops.emplace_back(name, tm / 100.0 - r.report.accuracy);
    }
  }
  const auto individual = eval::run_individual(experiment, groups, learners);
  std::vector<std::pair<std::string, double>> singles;
  for (const auto& r : individual.runs) singles.emplace_back(r.feature_set, r.report.accuracy);

  const std::set<std::string> expected = {"cue", "punctuation"};
  std::vector<std::string> misses;
  if (!(tm > bi && bi > uni)) misses.push_back("ordering");
  if (std::abs(tm - kOriginalTarget) > kOriginalBand) misses.push_back("all-tm accuracy");
  if (top_two(drops) != expected) misses.push_back("ablation drops");
  if (top_two(singles) != expected) misses.push_back("individual groups");

  std::string detail = "all-tm " + num(tm, 2) + ", bigram " + num(bi, 2) + ", unigram " +
                       num(uni, 2) + ", " + seconds(elapsed(start));
  if (!misses.empty()) {
    detail += "; missed:";
    for (const auto& m : misses) detail += " " + m;
    return fail(detail);
  }
  return pass(detail);
}

// --- 6. determinism -----------------------------------------------------------

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// The resolved config without the keys that name the run's output
// directory and thread count.
std::string portable_config(const fs::path& p) {
  std::istringstream in(slurp(p));
  std::string out;
  for (std::string line; std::getline(in, line);) {
    if (line.rfind("output_dir", 0) == 0 || line.rfind("threads", 0) == 0) continue;
    out += line + "\n";
  }
  return out;
}

int run_binary(const std::vector<std::string>& args) {
  std::string cmd = DISSENT_CLI_BINARY;
  for (const auto& a : args) cmd += " '" + a + "'";
  cmd += " >/dev/null 2>&1";
  const int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

Outcome determinism() {
  const auto start = std::chrono::steady_clock::now();
  const fs::path root =
      fs::temp_directory_path() / ("dissent_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(root);
  fs::create_directories(root);
  const std::string spec = (kDataDir / "synthetic" / "default.spec").string();

  std::size_t compared = 0;
  std::string problem;
  for (const std::string mode : {"compare", "ablate"}) {
    std::vector<fs::path> dirs;
    for (const std::string threads : {"1", "1", "4"}) {
      const fs::path out = root / (mode + "_" + std::to_string(dirs.size()) + "_t" + threads);
      const int code = run_binary({"run", "--synthetic-spec", spec, "--mode", mode,
                                   "--threads", threads, "--output-dir", out.string()});
      if (code != 0) {
        problem = mode + " exited with " + std::to_string(code);
        break;
      }
      dirs.push_back(out);
    }
    if (!problem.empty()) break;
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dirs[0])) files.push_back(e.path().filename());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      const bool report = f.extension() == ".tsv";
      auto read = [&](const fs::path& p) { return report ? slurp(p) : portable_config(p); };
      const std::string first = read(dirs[0] / f);
      for (std::size_t i = 1; i < dirs.size(); ++i) {
        if (!fs::exists(dirs[i] / f) || read(dirs[i] / f) != first) {
          if (problem.empty()) problem = f.string() + " differs in " + dirs[i].filename().string();
        }
        ++compared;
      }
    }
  }
  fs::remove_all(root);
  const std::string detail =
      std::to_string(compared) + " file comparisons, " + seconds(elapsed(start));
  if (!problem.empty()) return fail(detail + "; " + problem);
  if (compared == 0) return fail("nothing compared");
  return pass(detail);
}

// --- 7. statistics ------------------------------------------------------------

struct TCase {
  std::vector<double> a;
  std::vector<double> b;
  double t;
  double p;
  std::size_t df;
};

const std::vector<TCase> kTCases = {
#include "ttest_cases.inc"
};

Outcome statistics() {
  double worst = 0.0;
  std::size_t bad = 0;
  for (const auto& c : kTCases) {
    const auto r = eval::paired_t_test(c.a, c.b);
    const double dp = std::abs(r.p - c.p);
    worst = std::max(worst, dp);
    if (dp > kTTestTolerance || r.df != c.df) ++bad;
  }
  const std::string detail = std::to_string(kTCases.size()) + " cases, max |dp| " +
                             num(worst, 8) + ", " + std::to_string(bad) + " outside tolerance";
  if (kTCases.size() < 50) return fail(detail + "; fewer than 50 cases");
  if (bad) return fail(detail);
  return pass(detail);
}

}  // namespace

int main(int argc, char** argv) {
  std::optional<fs::path> original;
  std::string train_topic = "evolution";
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--original-corpus" && i + 1 < argc) {
      original = argv[++i];
    } else if (arg == "--train-topic" && i + 1 < argc) {
      train_topic = argv[++i];
    } else {
      std::cerr << "usage: acceptance [--original-corpus PATH] [--train-topic NAME]\n";
      return 2;
    }
  }

  struct Criterion {
    const char* name;
    std::function<Outcome()> check;
    bool gating;
  };
  const std::vector<Criterion> criteria = {
      {"1 oracle equivalence", oracle_equivalence, true},
      {"2 extractor invariants", extractor_invariants, true},
      {"3 lexicon gates", lexicon_gates, true},
      {"4 synthetic cross-topic experiment", synthetic_experiment, true},
      {"5 original corpus reproduction (not gating)",
       [&] { return original_corpus(original, train_topic); }, false},
      {"6 determinism", determinism, true},
      {"7 t-test correctness", statistics, true},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = fail(std::string("exception: ") + e.what());
    }
    const char* status = o.status == Outcome::Status::kPass   ? "PASS"
                         : o.status == Outcome::Status::kFail ? "FAIL"
                                                              : "SKIP";
    std::cout << status << " " << c.name << ": " << o.detail << std::endl;
    if (o.status == Outcome::Status::kFail && c.gating) ++failures;
  }
  return failures ? 1 : 0;
}
