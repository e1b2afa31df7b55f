#include <cmath>
#include <sstream>

#include "doctest.h"
#include "dissent/error.h"
#include "dissent/eval.h"
#include "dissent/synthetic.h"

using namespace dissent;
using namespace dissent::eval;

namespace {

struct TCase {
  std::vector<double> a;
  std::vector<double> b;
  double t;
  double p;
  std::size_t df;
};

const std::vector<TCase> kFrozen = {
#include "ttest_cases.inc"
};

const std::filesystem::path kLexDir = std::filesystem::path(DISSENT_TEST_DATA_DIR) / "lexicons";

const char* kSpec =
    "version = 1\n"
    "topic = alpha train 120 120\n"
    "topic = beta test 60 60\n"
    "vocabulary_size = 200\n"
    "decoy_token = zorblat\n"
    "decoy_train_correlation = 0.9\n"
    "decoy_test_correlation = -0.9\n"
    "cue.agreement = 0.85 0.00\n"
    "cue.denial = 0.05 0.85\n"
    "cue.hedge = 0.30 0.30\n"
    "cue.question = 0.10 0.50\n";

ExperimentContext small_context() {
  static const ExperimentContext context = [] {
    ExperimentContext c;
    c.lexicons = lexicon::load_lexicon_set(kLexDir, kLexDir / "mpqa_approx.tff");
    std::istringstream in(kSpec);
    const auto spec = corpus::parse_synthetic_spec(in);
    const auto pairs = corpus::generate_synthetic(3, spec, c.lexicons);
    const auto labeled = corpus::filter_by_threshold(pairs, -1, 1).labeled;
    auto split = corpus::split_by_topic(labeled, {"alpha"}, {"beta"});
    c.train = std::move(split.train);
    c.test = std::move(split.test);
    return c;
  }();
  return context;
}

LearnerConfig tree_learner() { return LearnerConfig{}; }

double mean(const std::vector<int>& v) {
  double s = 0;
  for (int x : v) s += x;
  return s / static_cast<double>(v.size());
}

void check_report_invariants(const EvalReport& r) {
  CHECK(std::fabs(r.accuracy - mean(r.correct)) <= 1e-12);
  std::size_t total = 0;
  for (const auto& row : r.confusion) total += row[0] + row[1];
  CHECK(total == r.size());
}

}  // namespace

TEST_CASE("score_predictions") {
  using L = Label;
  const std::vector<Label> actual = {L::kAgreement, L::kAgreement, L::kDisagreement,
                                     L::kDisagreement};
  const auto constant = score_predictions(actual, std::vector<Label>(4, L::kAgreement));
  CHECK(constant.accuracy == 0.5);
  CHECK(constant.confusion[1][0] == 2);
  CHECK(constant.per_class[0].recall == 1.0);
  CHECK(constant.per_class[0].precision == 0.5);
  CHECK(constant.per_class[1].recall == 0.0);
  check_report_invariants(constant);

  const auto perfect = score_predictions(actual, actual);
  CHECK(perfect.accuracy == 1.0);
  CHECK(perfect.precision == 1.0);
  CHECK(perfect.recall == 1.0);
  CHECK(perfect.correct == std::vector<int>{1, 1, 1, 1});

  CHECK_THROWS_AS(score_predictions({}, {}), EmptyTestError);
  CHECK_THROWS_AS(score_predictions(actual, {L::kAgreement}), ArgumentError);
}

TEST_CASE("evaluate with a constant model") {
  auto space = std::make_shared<features::FeatureSpace>(
      std::vector<features::Attribute>{*features::attribute_from_name("punctuation.question")});
  learn::DecisionTree tree;
  tree.space = space;
  tree.nodes = {learn::Node{}};
  features::Dataset test;
  test.space = space;
  for (int i = 0; i < 10; ++i) {
    features::FeatureVector v;
    v.space = space;
    v.values = {double(i)};
    v.label = i % 2 ? Label::kDisagreement : Label::kAgreement;
    test.rows.push_back(v);
  }
  const auto r = evaluate(tree, test);
  CHECK(r.accuracy == 0.5);
  CHECK(r.correct.size() == 10);
  CHECK(r.correct[0] == 1);
  CHECK(r.correct[1] == 0);
  CHECK(evaluate(tree, test).fingerprint == r.fingerprint);

  features::Dataset empty;
  empty.space = space;
  CHECK_THROWS_AS(evaluate(tree, empty), EmptyTestError);
}

TEST_CASE("paired t-test examples") {
  const auto r = paired_t_test({1, -1, 2, 0, 3}, {0, 0, 0, 0, 0});
  // mean 1, sd sqrt(2.5), so t = sqrt(5 / 2.5) = sqrt(2).
  CHECK(r.t == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(r.p == doctest::Approx(0.2301996410805).epsilon(1e-6));
  CHECK(r.df == 4);
  CHECK_FALSE(r.degenerate);

  const auto same = paired_t_test({0.3, 0.5, 0.9}, {0.3, 0.5, 0.9});
  CHECK(same.t == 0.0);
  CHECK(same.p == 1.0);

  const auto constant = paired_t_test({2, 2, 2, 2}, {1, 1, 1, 1});
  CHECK(constant.degenerate);
  CHECK(constant.p == 0.0);
  CHECK(std::isinf(constant.t));

  CHECK_THROWS_AS(paired_t_test({1}, {1}), ArgumentError);
  CHECK_THROWS_AS(paired_t_test({1, 2}, {1, 2, 3}), ArgumentError);
}

TEST_CASE("paired t-test matches frozen reference values") {
  REQUIRE(kFrozen.size() == 50);
  for (const auto& c : kFrozen) {
    const auto r = paired_t_test(c.a, c.b);
    CHECK(r.df == c.df);
    CHECK(std::fabs(r.p - c.p) <= 1e-4);
    CHECK(r.t == doctest::Approx(c.t).epsilon(1e-9));
  }
}

TEST_CASE("property: t-test symmetry") {
  for (const auto& c : kFrozen) {
    const auto ab = paired_t_test(c.a, c.b);
    const auto ba = paired_t_test(c.b, c.a);
    CHECK(ab.p == doctest::Approx(ba.p).epsilon(1e-12));
    CHECK(ab.t == doctest::Approx(-ba.t));
    CHECK(paired_t_test(c.a, c.a).p == 1.0);
  }
}

TEST_CASE("student t and incomplete beta") {
  CHECK(student_t_two_sided(0.0, 5) == doctest::Approx(1.0));
  CHECK(student_t_two_sided(2.776445, 4) == doctest::Approx(0.05).epsilon(1e-5));
  CHECK(student_t_two_sided(12.7062, 1) == doctest::Approx(0.05).epsilon(1e-4));
  CHECK(incomplete_beta(2, 3, 0.0) == 0.0);
  CHECK(incomplete_beta(2, 3, 1.0) == 1.0);
  CHECK(incomplete_beta(1, 1, 0.3) == doctest::Approx(0.3));
  CHECK(incomplete_beta(2, 2, 0.5) == doctest::Approx(0.5));
}

TEST_CASE("mcnemar") {
  std::vector<int> a, b;
  for (int i = 0; i < 10; ++i) a.push_back(1), b.push_back(0);
  for (int i = 0; i < 2; ++i) a.push_back(0), b.push_back(1);
  for (int i = 0; i < 5; ++i) a.push_back(1), b.push_back(1);
  const auto m = mcnemar(a, b);
  CHECK(m.only_a == 10);
  CHECK(m.only_b == 2);
  CHECK(m.chi2 == doctest::Approx(49.0 / 12.0));
  CHECK(m.p == doctest::Approx(std::erfc(std::sqrt(49.0 / 24.0))));
  const auto same = mcnemar(a, a);
  CHECK(same.chi2 == 0.0);
  CHECK(same.p == 1.0);
}

TEST_CASE("folds and fingerprints") {
  std::vector<int> correct(25, 0);
  for (std::size_t i = 0; i < correct.size(); i += 10) correct[i] = 1;
  const auto folds = fold_accuracies(correct);
  REQUIRE(folds.size() == 10);
  CHECK(folds[0] == 1.0);
  CHECK(folds[1] == 0.0);
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
}

TEST_CASE("feature sets") {
  CHECK(parse_feature_set("all-tm").groups.size() == 7);
  CHECK(parse_feature_set("unigram").ngram_order == 1);
  CHECK(parse_feature_set("bigram").ngram_order == 2);
  const auto mixed = parse_feature_set("denial+punctuation");
  CHECK(mixed.groups == std::set<Group>{Group::kDenial, Group::kPunctuation});
  CHECK_THROWS_AS(parse_feature_set("nonsense"), ArgumentError);
  CHECK_THROWS_AS(parse_learner("svm"), ArgumentError);
}

TEST_CASE("comparison") {
  Experiment experiment(small_context());
  const auto result = run_comparison(
      experiment,
      {parse_feature_set("all-tm"), parse_feature_set("unigram"), parse_feature_set("bigram")},
      {tree_learner()});
  REQUIRE(result.runs.size() == 3);
  for (const auto& run : result.runs) {
    check_report_invariants(run.report);
    CHECK(run.fold_accuracy.size() == 10);
  }
  CHECK(result.runs[0].attributes == 28);
  CHECK(result.runs[0].report.accuracy > result.runs[1].report.accuracy);
  CHECK(result.tests.size() == 3);

  const auto report = make_report(result, {{"seed", "1"}});
  CHECK(report.tables[0].rows.size() == 3);
  CHECK(report.tables[0].columns.back() == "tree");
  CHECK(emit_report(report, Format::kTsv) == emit_report(report, Format::kTsv));
  CHECK(emit_report(report, Format::kHuman).find("seed: 1") != std::string::npos);

  Experiment again(small_context());
  const auto repeat = run_comparison(
      again,
      {parse_feature_set("all-tm"), parse_feature_set("unigram"), parse_feature_set("bigram")},
      {tree_learner()});
  CHECK(emit_report(make_report(repeat, {}), Format::kTsv) ==
        emit_report(make_report(result, {}), Format::kTsv));
}

TEST_CASE("identical configurations are not significantly different") {
  Experiment experiment(small_context());
  ExperimentConfig config;
  config.features = all_tm();
  const auto a = experiment.run(config);
  const auto b = experiment.run(config);
  CHECK(a.report.correct == b.report.correct);
  CHECK(paired_t_test(a.fold_accuracy, b.fold_accuracy).p == 1.0);
}

TEST_CASE("ablation") {
  Experiment experiment(small_context());
  const std::vector<Group> groups(features::kTmGroups.begin(), features::kTmGroups.end());
  const auto result = run_ablation(experiment, all_tm(), groups, {tree_learner()});
  REQUIRE(result.runs.size() == 8);
  const std::size_t full = result.runs[0].attributes;
  CHECK(full == 28);
  const auto space = experiment.space_for(all_tm());
  for (std::size_t i = 0; i < groups.size(); ++i) {
    CHECK(full - result.runs[i + 1].attributes == space->group_arity(groups[i]));
  }
  CHECK(result.runs[7].attributes == 26);  // punctuation

  CHECK_THROWS_AS(run_ablation(experiment, parse_feature_set("denial+punctuation"),
                               {Group::kHedge}, {tree_learner()}),
                  ArgumentError);
}

TEST_CASE("individual groups") {
  Experiment experiment(small_context());
  const auto result = run_individual(experiment, {Group::kPunctuation, Group::kDenial, Group::kHedge},
                                     {tree_learner()});
  REQUIRE(result.runs.size() == 3);
  CHECK(result.runs[0].attributes == 2);
  CHECK(result.runs[1].report.accuracy > 0.7);
  CHECK(std::fabs(result.runs[2].report.accuracy - 0.5) < 0.1);
}

TEST_CASE("sweep") {
  Experiment experiment(small_context());
  const auto result =
      run_sweep(experiment, all_tm(), {1, 3, 10, 28}, {tree_learner()}, false, std::nullopt);
  REQUIRE(result.runs.size() == 4);
  for (std::size_t i = 1; i < result.runs.size(); ++i) {
    const auto& smaller = result.runs[i - 1].selected;
    const auto& larger = result.runs[i].selected;
    REQUIRE(smaller.size() <= larger.size());
    for (std::size_t j = 0; j < smaller.size(); ++j) CHECK(smaller[j] == larger[j]);
  }
  ExperimentConfig plain;
  plain.features = all_tm();
  CHECK(result.runs[3].report.correct == experiment.run(plain).report.correct);

  const auto fitted =
      run_sweep(experiment, all_tm(), {5}, {tree_learner()}, true, all_tm());
  CHECK_FALSE(fitted.warnings.empty());
  CHECK(fitted.tests.size() == 1);
}

TEST_CASE("empty results give header-only tables") {
  ModeResult empty;
  empty.mode = "compare";
  empty.learners = {"tree"};
  const auto report = make_report(empty, {});
  const std::string tsv = emit_table(report, report.tables[0], Format::kTsv);
  std::size_t lines = 0, comments = 0;
  std::istringstream in(tsv);
  for (std::string line; std::getline(in, line);) {
    ++lines;
    comments += line.rfind("#", 0) == 0;
  }
  CHECK(lines - comments == 1);
}
