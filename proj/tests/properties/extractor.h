#ifndef DISSENT_TESTS_PROPERTIES_EXTRACTOR_H_
#define DISSENT_TESTS_PROPERTIES_EXTRACTOR_H_

// Generated-text properties of the TM extractors, shared by the unit tests
// and the acceptance binary.

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dissent/features.h"
#include "dissent/lexicons.h"
#include "dissent/utf8.h"

namespace properties {

using namespace dissent;

// Decides whether some lexicon or MPQA entry mentions a word.
class Vocabulary {
 public:
  explicit Vocabulary(const lexicon::LexiconSet& set)
      : set_(set), denial_(*set.denial), hedge_(*set.hedge), cogmech_(*set.cogmech),
        cues_(*set.cue) {
    const auto& agreement = *set.agreement;
    for (const auto& p : agreement.patterns) {
      for (const auto& s : p.slots) agreement_literals_.push_back(s.value);
    }
    for (const auto& [name, members] : agreement.classes) {
      for (const auto& m : members) agreement_literals_.push_back(m);
    }
  }

  bool mentioned(const text::Token& t) const {
    if (denial_.matcher.mentions(t) || hedge_.matcher.mentions(t) ||
        cogmech_.matcher.mentions(t) || cues_.matcher.mentions(t)) {
      return true;
    }
    for (const auto& lit : agreement_literals_) {
      if (lexicon::literal_matches(lit, t)) return true;
    }
    const auto& mpqa = *set_.mpqa;
    return mpqa.find(t.normalized) || mpqa.find(t.stripped);
  }

 private:
  const lexicon::LexiconSet& set_;
  features::CompiledLexicon denial_, hedge_, cogmech_;
  features::CompiledCues cues_;
  std::vector<std::string> agreement_literals_;
};

inline std::string random_text(std::mt19937_64& rng) {
  static const std::vector<std::string> pieces = {
      "I",        "don't",   "think",   "so",       "you",     "are",     "right",  "but",
      "how",      "can",     "we",      "know",     "agree",   "not",     "perhaps", "well",
      "evolution", "gun",    "control", "abortion", "species", "theory",  "fossil", "the",
      "is",       "a",       "that",    "does",     "mean",    "correct", "really", "oh",
      "yes",      "no",      "maybe",   "actually", "because", "great",   "stupid", "wrong",
      "?",        "!",       ".",       ",",        "...",     "???",     "42",     "Darwin",
      "I'm",      "wondering", "however", "i see",  "you mean", "dont",  "isn't",  "liar"};
  std::uniform_int_distribution<std::size_t> len(0, 30);
  std::uniform_int_distribution<std::size_t> pick(0, pieces.size() - 1);
  std::string text;
  const std::size_t n = len(rng);
  for (std::size_t i = 0; i < n; ++i) {
    if (i) text += ' ';
    text += pieces[pick(rng)];
  }
  return text;
}

// Replaces unmentioned word tokens by letters of the same code point length.
inline std::string scramble(const std::string& text, const Vocabulary& vocab,
                            std::mt19937_64& rng) {
  const auto tokens = text::tokenize(text);
  std::string out;
  std::size_t at = 0;
  std::uniform_int_distribution<int> letter(0, 2);
  for (const auto& t : tokens.tokens) {
    if (t.kind != text::TokenKind::kWord || vocab.mentioned(t)) continue;
    out.append(text, at, t.offset - at);
    const std::size_t n = utf8::length(t.surface);
    for (std::size_t i = 0; i < n; ++i) out += "qxz"[letter(rng)];
    at = t.offset + t.surface.size();
  }
  out.append(text, at, std::string::npos);
  return out;
}

struct Outcome {
  std::vector<std::string> failures;  // at most a few, for the log
  std::size_t failed = 0;
  std::size_t scrambled = 0;
};

// Over `texts` generated texts: values are finite and nonnegative,
// featurization is repeatable, scrambling unmentioned words changes nothing,
// and concatenating two texts never lowers a value.
inline Outcome check_extractors(const features::Featurizer& f, const Vocabulary& vocab,
                                std::size_t texts, std::uint64_t seed) {
  Outcome out;
  auto fail = [&](const std::string& why) {
    if (out.failures.size() < 5) out.failures.push_back(why);
    ++out.failed;
  };
  const auto& space = *f.space();
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < texts; ++i) {
    const std::string a = random_text(rng);
    const auto va = f.featurize_text(a);
    for (double x : va) {
      if (!std::isfinite(x) || x < 0.0) fail("bad value: " + a);
    }
    if (f.featurize_text(a) != va) fail("not repeatable: " + a);

    const std::string scrambled = scramble(a, vocab, rng);
    out.scrambled += scrambled != a;
    if (f.featurize_text(scrambled) != va) fail("topic dependent: " + a + " -> " + scrambled);

    const std::string b = random_text(rng);
    const auto vb = f.featurize_text(b);
    const auto joined = f.featurize_text(a + " . " + b);
    for (std::size_t k = 0; k < joined.size(); ++k) {
      if (joined[k] < std::max(va[k], vb[k])) {
        fail("not monotone in " + space.attribute(k).name + ": " + a + " | " + b);
      }
    }
  }
  return out;
}

}  // namespace properties

#endif  // DISSENT_TESTS_PROPERTIES_EXTRACTOR_H_
