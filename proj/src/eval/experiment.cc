#include <algorithm>
#include <sstream>

#include "dissent/error.h"
#include "dissent/eval.h"
#include "dissent/tsv.h"
#include "dissent/utf8.h"

namespace dissent::eval {

namespace {

std::set<Group> every_tm_group() {
  return {features::kTmGroups.begin(), features::kTmGroups.end()};
}

// Canonical key of a feature set's contents (names are for display only).
std::string set_key(const FeatureSet& set) {
  std::string key;
  for (Group g : set.groups) {
    key += group_name(g);
    key += ',';
  }
  return key + "ng" + std::to_string(set.ngram_order);
}

// TM groups whose lexicons are loaded.
std::set<Group> available_groups(const lexicon::LexiconSet& lexicons) {
  std::set<Group> out = {Group::kDuration, Group::kPunctuation};
  if (lexicons.agreement) out.insert(Group::kAgreement);
  if (lexicons.cue) out.insert(Group::kCue);
  if (lexicons.denial) out.insert(Group::kDenial);
  if (lexicons.hedge) out.insert(Group::kHedge);
  if (lexicons.mpqa) out.insert(Group::kPolarity);
  return out;
}

constexpr std::size_t kSelectedShown = 12;

}  // namespace

FeatureSet all_tm() { return {"all-tm", every_tm_group(), 0}; }

FeatureSet parse_feature_set(std::string_view text) {
  const std::string lowered = utf8::ascii_lower(utf8::trim(text));
  if (lowered.empty()) throw ArgumentError("empty feature set name");
  FeatureSet set;
  set.name = lowered;
  std::size_t start = 0;
  while (start <= lowered.size()) {
    const std::size_t plus = std::min(lowered.find('+', start), lowered.size());
    const std::string part = lowered.substr(start, plus - start);
    start = plus + 1;
    if (part == "all-tm" || part == "alltm" || part == "tm") {
      const auto all = every_tm_group();
      set.groups.insert(all.begin(), all.end());
    } else if (part == "unigram" || part == "unigrams" || part == "ngram") {
      set.ngram_order = std::max(set.ngram_order, 1);
    } else if (part == "bigram" || part == "bigrams") {
      set.ngram_order = 2;
    } else if (auto g = features::parse_group(part); g && *g != Group::kNgram) {
      set.groups.insert(*g);
    } else {
      throw ArgumentError("unknown feature set '" + part + "'");
    }
  }
  return set;
}

LearnerKind parse_learner(std::string_view text) {
  const std::string lowered = utf8::ascii_lower(utf8::trim(text));
  if (lowered == "tree" || lowered == "j48" || lowered == "c45") return LearnerKind::kTree;
  if (lowered == "forest" || lowered == "random-forest" || lowered == "rf") {
    return LearnerKind::kForest;
  }
  throw ArgumentError("unknown learner '" + std::string(text) + "'");
}

Experiment::Experiment(ExperimentContext context) : context_(std::move(context)) {
  if (context_.train.empty()) throw ArgumentError("experiment has no training pairs");
}

features::SpacePtr Experiment::space_for(const FeatureSet& set) {
  if (set.groups.empty() && set.ngram_order == 0) {
    throw ArgumentError("feature set '" + set.name + "' selects no features");
  }
  std::set<Group> groups = set.groups;
  std::optional<features::NgramVocabulary> vocab;
  if (set.ngram_order > 0) {
    groups.insert(Group::kNgram);
    auto it = vocabularies_.find(set.ngram_order);
    if (it == vocabularies_.end()) {
      it = vocabularies_
               .emplace(set.ngram_order,
                        features::build_vocabulary(context_.train, set.ngram_order,
                                                   context_.ngram_min_count,
                                                   context_.options.ngram))
               .first;
    }
    vocab = it->second;
  }
  return std::make_shared<const features::FeatureSpace>(
      features::make_space(groups, context_.lexicons, vocab, context_.options));
}

void Experiment::ensure_universe(int ngram_order) {
  if (universe_order_ >= ngram_order) return;
  FeatureSet universe{"universe", available_groups(context_.lexicons), ngram_order};
  features::Featurizer featurizer(space_for(universe), context_.lexicons);
  universe_train_ = featurizer.featurize_all(context_.train, context_.threads);
  universe_test_ = featurizer.featurize_all(context_.test, context_.threads);
  universe_order_ = ngram_order;
}

std::pair<Dataset, Dataset> Experiment::datasets_for(const FeatureSet& set) {
  const std::string key = set_key(set);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  const auto target = space_for(set);
  ensure_universe(set.ngram_order);
  auto pair = std::make_pair(features::project(universe_train_, target),
                             features::project(universe_test_, target));
  cache_.emplace(key, pair);
  return pair;
}

const learn::FeatureRanking& Experiment::ranking_for(const FeatureSet& set, bool fit_on_test) {
  const std::string key = set_key(set) + (fit_on_test ? "|test" : "|train");
  if (auto it = rankings_.find(key); it != rankings_.end()) return it->second;
  const auto [train, test] = datasets_for(set);
  learn::SplitOptions options;
  options.lenient = true;
  return rankings_.emplace(key, learn::rank_features(fit_on_test ? test : train, options))
      .first->second;
}

namespace {

learn::Model fit(const LearnerConfig& learner, const Dataset& train, const ExperimentContext& ctx) {
  if (learner.kind == LearnerKind::kTree) return learn::train_tree(train, learner.tree);
  learn::ForestParams params = learner.forest;
  params.seed = ctx.seed;
  params.threads = ctx.threads;
  return learn::train_forest(train, params);
}

}  // namespace

learn::Model Experiment::train(const ExperimentConfig& config) {
  auto [train, test] = datasets_for(config.features);
  if (config.k) {
    const auto& ranking = ranking_for(config.features, config.fit_on_test);
    const auto space =
        std::make_shared<const features::FeatureSpace>(learn::select_top_k(ranking, *config.k));
    train = features::project(train, space);
  }
  return fit(config.learner, train, context_);
}

RunResult Experiment::run(const ExperimentConfig& config) {
  auto [train, test] = datasets_for(config.features);
  RunResult result;
  result.feature_set = config.features.name;
  result.learner = config.learner.name();
  result.k = config.k;
  if (config.k) {
    const auto& ranking = ranking_for(config.features, config.fit_on_test);
    const auto space =
        std::make_shared<const features::FeatureSpace>(learn::select_top_k(ranking, *config.k));
    train = features::project(train, space);
    test = features::project(test, space);
    for (std::size_t i = 0; i < std::min({kSelectedShown, *config.k, ranking.features.size()});
         ++i) {
      result.selected.push_back(ranking.features[i].name);
    }
  }
  result.attributes = train.space->size();

  const learn::Model model = fit(config.learner, train, context_);
  result.report = evaluate(model, test);
  result.fold_accuracy = fold_accuracies(result.report.correct, context_.folds);

  std::ostringstream id;
  id << context_.lexicons.versions() << "|seed=" << context_.seed
     << "|model=" << result.report.fingerprint;
  result.report.fingerprint = fnv1a_hex(id.str());

  if (context_.per_topic) {
    std::map<std::string, std::pair<std::vector<Label>, std::vector<Label>>> by_topic;
    for (std::size_t i = 0; i < context_.test.size(); ++i) {
      auto& [actual, predicted] = by_topic[context_.test[i].pair.topic];
      actual.push_back(context_.test[i].label);
      predicted.push_back(result.report.correct[i] ? context_.test[i].label
                                                   : (context_.test[i].label == Label::kAgreement
                                                          ? Label::kDisagreement
                                                          : Label::kAgreement));
    }
    for (const auto& [topic, lists] : by_topic) {
      result.per_topic.emplace(topic, score_predictions(lists.first, lists.second));
    }
  }
  return result;
}

namespace {

SignificanceRow compare_runs(const RunResult& a, const RunResult& b, const std::string& a_name,
                             const std::string& b_name) {
  SignificanceRow row;
  row.learner = a.learner;
  row.a = a_name;
  row.b = b_name;
  row.t = paired_t_test(a.fold_accuracy, b.fold_accuracy);
  row.mcnemar = mcnemar(a.report.correct, b.report.correct);
  return row;
}

std::vector<std::string> learner_names(const std::vector<LearnerConfig>& learners) {
  if (learners.empty()) throw ArgumentError("no learners configured");
  std::vector<std::string> names;
  for (const auto& l : learners) names.push_back(l.name());
  return names;
}

ExperimentConfig config_for(const FeatureSet& set, const LearnerConfig& learner) {
  ExperimentConfig c;
  c.features = set;
  c.learner = learner;
  return c;
}

}  // namespace

ModeResult run_comparison(Experiment& experiment, const std::vector<FeatureSet>& sets,
                          const std::vector<LearnerConfig>& learners) {
  if (sets.empty()) throw ArgumentError("comparison needs at least one feature set");
  ModeResult result;
  result.mode = "compare";
  result.learners = learner_names(learners);
  for (const auto& set : sets) {
    for (const auto& learner : learners) {
      result.runs.push_back(experiment.run(config_for(set, learner)));
    }
  }
  const std::size_t nl = learners.size();
  for (std::size_t l = 0; l < nl; ++l) {
    for (std::size_t i = 0; i < sets.size(); ++i) {
      for (std::size_t j = i + 1; j < sets.size(); ++j) {
        result.tests.push_back(compare_runs(result.runs[i * nl + l], result.runs[j * nl + l],
                                            sets[i].name, sets[j].name));
      }
    }
  }
  return result;
}

ModeResult run_ablation(Experiment& experiment, const FeatureSet& full,
                        const std::vector<Group>& groups,
                        const std::vector<LearnerConfig>& learners) {
  ModeResult result;
  result.mode = "ablate";
  result.learners = learner_names(learners);
  for (Group g : groups) {
    if (!full.groups.count(g)) {
      throw ArgumentError("cannot ablate " + std::string(group_name(g)) +
                          ": not in feature set '" + full.name + "'");
    }
  }
  const auto full_space = experiment.space_for(full);
  std::vector<FeatureSet> sets = {full};
  for (Group g : groups) {
    FeatureSet ablated = full;
    ablated.groups.erase(g);
    ablated.name = "no-" + std::string(group_name(g));
    const auto space = experiment.space_for(ablated);
    if (full_space->size() - space->size() != full_space->group_arity(g)) {
      throw Error("ablating " + std::string(group_name(g)) + " removed " +
                  std::to_string(full_space->size() - space->size()) + " attributes, expected " +
                  std::to_string(full_space->group_arity(g)));
    }
    sets.push_back(std::move(ablated));
  }
  for (const auto& set : sets) {
    for (const auto& learner : learners) {
      result.runs.push_back(experiment.run(config_for(set, learner)));
    }
  }
  const std::size_t nl = learners.size();
  for (std::size_t l = 0; l < nl; ++l) {
    for (std::size_t i = 1; i < sets.size(); ++i) {
      result.tests.push_back(
          compare_runs(result.runs[l], result.runs[i * nl + l], sets[0].name, sets[i].name));
    }
  }
  return result;
}

ModeResult run_individual(Experiment& experiment, const std::vector<Group>& groups,
                          const std::vector<LearnerConfig>& learners) {
  if (groups.empty()) throw ArgumentError("no groups given");
  ModeResult result;
  result.mode = "individual";
  result.learners = learner_names(learners);
  for (Group g : groups) {
    FeatureSet set{std::string(group_name(g)), {}, 0};
    if (g == Group::kNgram) {
      set.ngram_order = 1;
    } else {
      set.groups.insert(g);
    }
    for (const auto& learner : learners) {
      result.runs.push_back(experiment.run(config_for(set, learner)));
    }
  }
  return result;
}

ModeResult run_sweep(Experiment& experiment, const FeatureSet& base,
                     const std::vector<std::size_t>& ks,
                     const std::vector<LearnerConfig>& learners, bool fit_on_test,
                     const std::optional<FeatureSet>& reference) {
  if (ks.empty()) throw ArgumentError("sweep needs at least one k");
  ModeResult result;
  result.mode = "sweep";
  result.learners = learner_names(learners);
  if (fit_on_test) {
    result.warnings.push_back(
        "WARNING: features ranked on the TEST set (--fit-on-test); accuracies are optimistic "
        "upper bounds, not held-out estimates");
  }
  const std::size_t size = experiment.space_for(base)->size();
  std::vector<std::size_t> resolved;
  for (std::size_t k : ks) {
    if (k == 0) throw ArgumentError("k must be >= 1");
    if (k > size) {
      result.warnings.push_back("k = " + std::to_string(k) + " exceeds the " +
                                std::to_string(size) + " attributes of '" + base.name +
                                "'; using " + std::to_string(size));
      k = size;
    }
    resolved.push_back(k);
  }
  std::vector<RunResult> references;
  if (reference) {
    for (const auto& learner : learners) {
      references.push_back(experiment.run(config_for(*reference, learner)));
    }
  }
  for (std::size_t k : resolved) {
    for (std::size_t l = 0; l < learners.size(); ++l) {
      ExperimentConfig config = config_for(base, learners[l]);
      config.k = k;
      config.fit_on_test = fit_on_test;
      result.runs.push_back(experiment.run(config));
      if (reference) {
        result.tests.push_back(compare_runs(references[l], result.runs.back(), reference->name,
                                            base.name + "@" + std::to_string(k)));
      }
    }
  }
  for (auto& r : references) result.runs.push_back(std::move(r));
  return result;
}

}  // namespace dissent::eval
