#include <algorithm>

#include "dissent/error.h"
#include "dissent/features.h"

namespace dissent::features {

namespace {

using lexicon::PatternLexicon;

std::vector<std::vector<std::string>> concrete_phrases(
    const std::vector<lexicon::Expansion>& expansions) {
  std::vector<std::vector<std::string>> phrases;
  phrases.reserve(expansions.size());
  for (const auto& e : expansions) phrases.push_back(e.tokens);
  return phrases;
}

std::vector<std::string> class_or(const PatternLexicon& lex, const char* name,
                                  std::vector<std::string> fallback) {
  if (const auto* members = lex.find_class(name)) return *members;
  return fallback;
}

bool any_member_matches(const std::vector<std::string>& members,
                        const text::Token& token) {
  return std::any_of(members.begin(), members.end(), [&](const std::string& m) {
    return lexicon::literal_matches(m, token);
  });
}

std::string entry_name(const lexicon::Pattern& pattern) {
  std::string name;
  for (const auto& slot : pattern.slots) {
    if (!name.empty()) name.push_back('_');
    for (char c : slot.value) {
      if (c != '\'') name.push_back(c);
    }
  }
  return name;
}

}  // namespace

CompiledLexicon::CompiledLexicon(const PatternLexicon& lexicon)
    : expansions(lexicon::expand_generalizations(lexicon)),
      matcher(concrete_phrases(expansions)) {}

CompiledCues::CompiledCues(const PatternLexicon& cue) {
  std::vector<std::vector<std::string>> phrases;
  for (const auto& pattern : cue.patterns) {
    const std::size_t entry = entry_names.size();
    const bool category =
        pattern.slots.size() == 1 &&
        pattern.slots[0].kind == lexicon::Slot::Kind::kClass &&
        cue.external_classes.count(pattern.slots[0].value) &&
        !cue.find_class(pattern.slots[0].value);
    entry_names.push_back(entry_name(pattern));
    if (category) {
      category_entry = entry;
      continue;
    }
    for (auto& tokens : lexicon::expand_pattern(cue, pattern)) {
      phrases.push_back(std::move(tokens));
      phrase_entry.push_back(entry);
    }
  }
  matcher = lexicon::PhraseMatcher(phrases);
}

std::size_t extract_agreement(const text::TokenList& response,
                              const PatternLexicon& lexicon, std::size_t window) {
  const auto negations = class_or(lexicon, "neg", {"not", "n't", "never", "no"});
  const auto contrasts = class_or(lexicon, "contrast", {"but", "yet", "however"});
  std::vector<std::vector<std::string>> keywords;
  for (const auto& pattern : lexicon.patterns) {
    for (auto& tokens : lexicon::expand_pattern(lexicon, pattern)) {
      keywords.push_back(std::move(tokens));
    }
  }

  const auto& toks = response.tokens;
  std::size_t count = 0;
  for (const auto& span : text::split_sentences(response)) {
    for (std::size_t pos = span.start; pos < span.end; ++pos) {
      for (const auto& keyword : keywords) {
        const std::size_t len = keyword.size();
        if (pos + len > span.end) continue;
        bool hit = true;
        for (std::size_t k = 0; k < len && hit; ++k) {
          hit = lexicon::literal_matches(keyword[k], toks[pos + k]);
        }
        if (!hit) continue;
        const std::size_t from = pos - std::min(window, pos - span.start);
        bool negated = false;
        for (std::size_t i = from; i < pos && !negated; ++i) {
          negated = any_member_matches(negations, toks[i]);
        }
        bool contrasted = false;
        for (std::size_t i = pos + len; i < span.end && !contrasted; ++i) {
          contrasted = any_member_matches(contrasts, toks[i]);
        }
        if (!negated && !contrasted) ++count;
      }
    }
  }
  return count;
}

std::size_t extract_denial(const text::TokenList& response,
                           const CompiledLexicon& denial) {
  return denial.matcher.count_total(response, text::split_sentences(response));
}

std::vector<std::size_t> denial_matches_by_seed(const text::TokenList& response,
                                                const CompiledLexicon& denial,
                                                std::size_t seed_count) {
  std::vector<std::size_t> by_seed(seed_count, 0);
  const auto counts =
      denial.matcher.count_each(response, text::split_sentences(response));
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const std::size_t seed = denial.expansions[i].seed;
    if (seed < seed_count) by_seed[seed] += counts[i];
  }
  return by_seed;
}

std::vector<std::size_t> extract_cues(const text::TokenList& response,
                                      const CompiledCues& cues,
                                      const CompiledLexicon* cogmech) {
  const auto sentences = text::split_sentences(response);
  std::vector<std::size_t> out(cues.entry_names.size(), 0);
  const auto counts = cues.matcher.count_each(response, sentences);
  for (std::size_t i = 0; i < counts.size(); ++i) out[cues.phrase_entry[i]] += counts[i];
  if (cues.category_entry && cogmech) {
    out[*cues.category_entry] = cogmech->matcher.count_total(response, sentences);
  }
  return out;
}

std::size_t extract_hedges(const text::TokenList& response,
                           const CompiledLexicon& hedges) {
  return hedges.matcher.count_total(response, text::split_sentences(response));
}

Duration extract_duration(const text::TokenList& response) {
  Duration d;
  d.chars = response.char_count;
  d.words = static_cast<std::size_t>(
      std::count_if(response.tokens.begin(), response.tokens.end(),
                    [](const text::Token& t) { return t.kind != text::TokenKind::kPunct; }));
  d.sentences = text::split_sentences(response).size();
  return d;
}

PolarityScores extract_polarity(const text::TokenList& response,
                                const lexicon::PolarityLexicon& mpqa,
                                PolarityMode mode) {
  PolarityScores scores;
  std::size_t words = 0;
  for (const auto& token : response.tokens) {
    if (token.kind == text::TokenKind::kPunct) continue;
    ++words;
    if (token.kind != text::TokenKind::kWord) continue;
    const auto* entry = mpqa.find(token.normalized);
    if (!entry) entry = mpqa.find(token.stripped);
    if (!entry || entry->strength != lexicon::Strength::kStrong) continue;
    if (entry->polarity == lexicon::Polarity::kPositive ||
        entry->polarity == lexicon::Polarity::kBoth) {
      scores.positive += 1.0;
    }
    if (entry->polarity == lexicon::Polarity::kNegative ||
        entry->polarity == lexicon::Polarity::kBoth) {
      scores.negative += 1.0;
    }
  }
  if (mode == PolarityMode::kMean) {
    if (words == 0) return {};
    scores.positive /= static_cast<double>(words);
    scores.negative /= static_cast<double>(words);
  }
  return scores;
}

PunctuationCounts extract_punctuation(const text::TokenList& response) {
  PunctuationCounts counts;
  for (char c : response.text) {
    if (c == '?') ++counts.question_marks;
    if (c == '!') ++counts.exclamations;
  }
  return counts;
}

}  // namespace dissent::features
