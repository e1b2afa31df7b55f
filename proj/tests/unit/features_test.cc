#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "dissent/error.h"
#include "dissent/features.h"
#include "dissent/utf8.h"
#include "properties/extractor.h"

using namespace dissent;
using namespace dissent::features;

namespace {

const std::filesystem::path kLexDir = std::filesystem::path(DISSENT_TEST_DATA_DIR) / "lexicons";

const lexicon::LexiconSet& shipped() {
  static const lexicon::LexiconSet set =
      lexicon::load_lexicon_set(kLexDir, kLexDir / "mpqa_approx.tff");
  return set;
}

text::TokenList tok(const std::string& s) { return text::tokenize(s); }

corpus::LabeledPair labeled(const std::string& id, const std::string& response,
                            Label label = Label::kAgreement) {
  corpus::LabeledPair p;
  p.pair.pair_id = id;
  p.pair.topic = "t";
  p.pair.prior.text = "prior text";
  p.pair.response.text = response;
  p.label = label;
  return p;
}

SpacePtr tm_space() {
  return std::make_shared<FeatureSpace>(make_space(
      {kTmGroups.begin(), kTmGroups.end()}, shipped(), std::nullopt));
}

using properties::random_text;

}  // namespace

TEST_CASE("agreement examples") {
  const auto& lex = *shipped().agreement;
  CHECK(extract_agreement(tok("Quite right. My mistake."), lex) == 1);
  CHECK(extract_agreement(tok("You may be correct however I do not agree"), lex) == 0);
  CHECK(extract_agreement(tok(""), lex) == 0);
  CHECK(extract_agreement(tok("I do not really agree"), lex) == 0);
  CHECK(extract_agreement(tok("Not at all, I really do agree"), lex) == 1);
  CHECK(extract_agreement(tok("I agree. But not here."), lex) == 1);
}

TEST_CASE("denial examples") {
  const CompiledLexicon denial(*shipped().denial);
  CHECK(extract_denial(tok("I don't see why this matters."), denial) >= 1);
  CHECK(extract_denial(tok("Penguins waddle quietly."), denial) == 0);
  CHECK(extract_denial(tok(""), denial) == 0);

  // Only the generalized how-can rows, so the count is exactly the two.
  std::istringstream in("class pron = i you we they he she\nhow can <pron>\n");
  const CompiledLexicon how(lexicon::load_lexicon(in, lexicon::LexiconName::kDenial));
  CHECK(extract_denial(tok("How can you say that? How can we know?"), how) == 2);
}

TEST_CASE("cue examples") {
  const CompiledCues cues(*shipped().cue);
  const CompiledLexicon cogmech(*shipped().cogmech);
  REQUIRE(cues.entry_names.size() == 18);
  REQUIRE(cues.category_entry.has_value());
  auto index = [&](const std::string& name) {
    for (std::size_t i = 0; i < cues.entry_names.size(); ++i) {
      if (cues.entry_names[i] == name) return i;
    }
    FAIL("no cue " << name);
    return std::size_t{0};
  };
  const auto so = extract_cues(tok("so what? so so"), cues, &cogmech);
  CHECK(so[index("so")] == 3);
  const auto well = extract_cues(tok("Well, many have argued that"), cues, &cogmech);
  CHECK(well[index("well")] >= 1);
  const auto empty = extract_cues(tok(""), cues, &cogmech);
  CHECK(empty == std::vector<std::size_t>(18, 0));
  const auto mean = extract_cues(tok("You mean I see it because I think so"), cues, &cogmech);
  CHECK(mean[index("you_mean")] == 1);
  CHECK(mean[index("i_see")] == 1);
  CHECK(mean[index("i_think")] == 1);
  CHECK(mean[*cues.category_entry] >= 2);  // because, think
}

TEST_CASE("hedge examples") {
  const CompiledLexicon hedge(*shipped().hedge);
  CHECK(extract_hedges(tok("Perhaps not in this particular thread ... essentially the same."),
                       hedge) == 2);
  CHECK(extract_hedges(tok("I'm wondering."), hedge) == 1);
  CHECK(extract_hedges(tok(""), hedge) == 0);
}

TEST_CASE("duration examples") {
  CHECK(extract_duration(tok("Quite right. My mistake.")) == Duration{24, 4, 2});
  CHECK(extract_duration(tok("")) == Duration{0, 0, 0});
  const auto d = extract_duration(tok("one two three"));
  CHECK(d.words == 3);
  CHECK(d.sentences == 1);
}

TEST_CASE("polarity examples") {
  lexicon::PolarityLexicon toy;
  using lexicon::Polarity;
  using lexicon::Strength;
  toy.entries["good"] = {Strength::kStrong, Polarity::kPositive};
  toy.entries["great"] = {Strength::kStrong, Polarity::kPositive};
  toy.entries["awful"] = {Strength::kStrong, Polarity::kNegative};
  toy.entries["fine"] = {Strength::kWeak, Polarity::kPositive};
  toy.entries["bad"] = {Strength::kWeak, Polarity::kNegative};
  const auto text = tok("good and great but also awful in a few ways");
  REQUIRE(extract_duration(text).words == 10);
  const auto sum = extract_polarity(text, toy, PolarityMode::kSum);
  CHECK(sum.positive == 2.0);
  CHECK(sum.negative == 1.0);
  const auto mean = extract_polarity(text, toy, PolarityMode::kMean);
  CHECK(mean.positive == doctest::Approx(0.2));
  CHECK(mean.negative == doctest::Approx(0.1));
  const auto weak = extract_polarity(tok("fine but bad"), toy);
  CHECK(weak.positive == 0.0);
  CHECK(weak.negative == 0.0);

  toy.entries["wild"] = {Strength::kStrong, Polarity::kBoth};
  const auto both = extract_polarity(tok("wild"), toy);
  CHECK(both.positive == 1.0);
  CHECK(both.negative == 1.0);
}

TEST_CASE("punctuation examples") {
  CHECK(extract_punctuation(tok("What in Vishnu's name does this have ANYTHING to do with "
                                "evolution vs creation???")) == PunctuationCounts{3, 0});
  CHECK(extract_punctuation(tok("!!")) == PunctuationCounts{0, 2});
  CHECK(extract_punctuation(tok("")) == PunctuationCounts{0, 0});
}

TEST_CASE("vocabulary") {
  const std::vector<corpus::LabeledPair> train = {labeled("a", "the cat sat"),
                                                  labeled("b", "the dog ran")};
  const auto uni = build_vocabulary(train, 1, 1);
  CHECK(uni.terms == std::vector<std::string>{"the", "cat", "dog", "ran", "sat"});
  CHECK(build_vocabulary(train, 1, 3).terms.empty());
  const auto bi = build_vocabulary(train, 2, 1);
  CHECK(bi.terms.size() == 5 + 4);
  CHECK(bi.terms[0] == "the");
  CHECK(build_vocabulary(train, 2, 1).terms == bi.terms);
  CHECK_THROWS_AS(build_vocabulary(train, 3, 1), ArgumentError);
  CHECK_THROWS_AS(build_vocabulary({}, 1, 1), ArgumentError);
}

TEST_CASE("spaces") {
  const auto all = tm_space();
  CHECK(all->size() == 28);
  CHECK(all->group_arity(Group::kCue) == 18);
  CHECK(all->without_group(Group::kPunctuation).size() == 26);
  CHECK(make_space({Group::kPunctuation}, shipped(), std::nullopt).size() == 2);

  lexicon::LexiconSet none;
  CHECK_THROWS_AS(make_space({Group::kDenial}, none, std::nullopt), SpaceMismatchError);
  CHECK(make_space({Group::kDuration}, none, std::nullopt).size() == 3);
  CHECK_THROWS_AS(make_space({Group::kNgram}, none, std::nullopt), SpaceMismatchError);
}

TEST_CASE("featurize") {
  const auto pair = labeled("p1", "Quite right. My mistake.", Label::kDisagreement);
  const auto v = featurize(pair, *tm_space(), shipped());
  REQUIRE(v.values.size() == 28);
  CHECK(v.label == Label::kDisagreement);
  CHECK(v.id == "p1");
  CHECK(v.values[*v.space->index_of("agreement")] == 1.0);
  CHECK(v.values[*v.space->index_of("duration.sentences")] == 2.0);

  const std::vector<corpus::LabeledPair> train = {labeled("a", "the cat sat")};
  const auto vocab = build_vocabulary(train, 1, 1);
  const auto zero = featurize(labeled("z", "Nothing here matches."), make_space({Group::kNgram},
                                                                                 shipped(), vocab),
                              shipped());
  CHECK(zero.values == std::vector<double>(3, 0.0));
  const auto some = featurize(labeled("s", "the cat, the hat"), make_space({Group::kNgram},
                                                                            shipped(), vocab),
                              shipped());
  CHECK(some.values[*some.space->index_of("ng:the")] == 2.0);
}

TEST_CASE("featurize_all does not depend on threads") {
  std::mt19937_64 rng(11);
  std::vector<corpus::LabeledPair> pairs;
  for (int i = 0; i < 300; ++i) pairs.push_back(labeled("p" + std::to_string(i), random_text(rng)));
  const Featurizer f(tm_space(), shipped());
  const auto one = f.featurize_all(pairs, 1);
  const auto four = f.featurize_all(pairs, 4);
  REQUIRE(one.size() == four.size());
  for (std::size_t i = 0; i < one.size(); ++i) CHECK(one.rows[i].values == four.rows[i].values);
}

TEST_CASE("matrix and space round trip") {
  std::mt19937_64 rng(12);
  std::vector<corpus::LabeledPair> pairs;
  for (int i = 0; i < 20; ++i) {
    pairs.push_back(labeled("p" + std::to_string(i), random_text(rng),
                            i % 3 ? Label::kAgreement : Label::kDisagreement));
  }
  FeatureOptions options;
  options.polarity = PolarityMode::kMean;
  const auto vocab = build_vocabulary(pairs, 2, 2);
  auto groups = std::set<Group>(kTmGroups.begin(), kTmGroups.end());
  groups.insert(Group::kNgram);
  const auto space = std::make_shared<FeatureSpace>(make_space(groups, shipped(), vocab, options));
  const auto data = Featurizer(space, shipped()).featurize_all(pairs);

  std::stringstream matrix;
  write_matrix(matrix, data);
  const auto back = read_matrix(matrix);
  REQUIRE(back.size() == data.size());
  CHECK(back.space->attributes() == space->attributes());
  for (std::size_t i = 0; i < data.size(); ++i) {
    CHECK(back.rows[i].id == data.rows[i].id);
    CHECK(back.rows[i].label == data.rows[i].label);
    CHECK(back.rows[i].values == data.rows[i].values);
  }

  std::stringstream text;
  write_space(text, *space);
  const auto again = read_space(text);
  CHECK(again.attributes() == space->attributes());
  CHECK(again.options() == space->options());
  REQUIRE(again.vocabulary().has_value());
  CHECK(again.vocabulary()->terms == vocab.terms);

  std::istringstream bad("not a space\n");
  CHECK_THROWS_AS(read_space(bad), ParseError);
}

TEST_CASE("project keeps the target attributes") {
  const auto full = tm_space();
  const auto data = Featurizer(full, shipped()).featurize_all({labeled("a", "Really?? yes!")});
  const auto only = std::make_shared<FeatureSpace>(full->only_group(Group::kPunctuation));
  const auto projected = project(data, only);
  CHECK(projected.rows[0].values == std::vector<double>{2.0, 1.0});
  const auto other = std::make_shared<FeatureSpace>(
      std::vector<Attribute>{{"missing", Group::kDenial, AttributeKind::kCount}});
  CHECK_THROWS_AS(project(data, other), SpaceMismatchError);
}

TEST_CASE("property: topic independence, monotonicity, determinism") {
  const properties::Vocabulary vocab(shipped());
  const Featurizer f(tm_space(), shipped());
  const auto outcome = properties::check_extractors(f, vocab, 10000, 13);
  for (const auto& why : outcome.failures) MESSAGE(why);
  CHECK(outcome.failed == 0);
  CHECK(outcome.scrambled > 5000);
}
