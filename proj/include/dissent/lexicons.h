#ifndef DISSENT_LEXICONS_H_
#define DISSENT_LEXICONS_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "dissent/textproc.h"

namespace dissent::lexicon {

enum class LexiconName { kAgreement, kDenial, kCue, kHedge, kCogmech };

std::string_view lexicon_name(LexiconName name);
std::optional<LexiconName> parse_lexicon_name(std::string_view text);

struct Slot {
  enum class Kind { kLiteral, kClass };
  Kind kind = Kind::kLiteral;
  std::string value;  // token for literals, class name for classes
  bool operator==(const Slot&) const = default;
};

enum class PatternSource { kSeed, kGeneralized };

struct Pattern {
  std::vector<Slot> slots;
  PatternSource source = PatternSource::kSeed;
  std::string text;      // pattern as written in the file
  std::size_t line = 0;  // 1-based source line

  bool has_class_slot() const;
};

struct PatternLexicon {
  LexiconName name = LexiconName::kDenial;
  std::string version;
  bool approximation = false;
  std::vector<Pattern> patterns;  // file order
  std::map<std::string, std::vector<std::string>> classes;
  // Classes supplied by another lexicon (the cue file's <cogmech> entry).
  std::set<std::string> external_classes;

  const std::vector<std::string>* find_class(const std::string& name) const;
};

// Lexicon file format (UTF-8, line oriented):
//   # comment
//   name: DENIAL                  metadata header keys: name, version,
//   version: 3                    approximation, external
//   class pron = i you we they    class declaration
//   how can <pron>                pattern; <name> is a class slot
// Literals are lowercased. Throws ParseError or UnknownClassError with the
// line number. Generalizations are not expanded here.
PatternLexicon load_lexicon(std::istream& in, LexiconName name);
PatternLexicon load_lexicon_file(const std::filesystem::path& path,
                                 LexiconName name);

struct Expansion {
  std::vector<std::string> tokens;
  std::size_t seed = 0;  // index into PatternLexicon::patterns
  PatternSource source = PatternSource::kSeed;
};

inline constexpr std::size_t kMaxExpansionsPerPattern = 10000;

// Cartesian expansion of every class slot. Duplicates (compared in
// apostrophe-free form) are merged, keeping the seed whose text sorts first.
// Output is sorted by token sequence, so it does not depend on pattern order.
// Patterns that reference an external class are category references and are
// skipped. Throws ExplosionError if one pattern exceeds `limit` concretes.
std::vector<Expansion> expand_generalizations(
    const PatternLexicon& lexicon,
    std::size_t limit = kMaxExpansionsPerPattern);

// Concretes of a single pattern, before any dedup.
std::vector<std::vector<std::string>> expand_pattern(
    const PatternLexicon& lexicon, const Pattern& pattern,
    std::size_t limit = kMaxExpansionsPerPattern);

struct ValidationCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ValidationReport {
  std::size_t expansions = 0;
  std::vector<ValidationCheck> checks;
  std::vector<std::string> warnings;
  bool ok() const;
  std::string to_string() const;
};

inline constexpr std::size_t kMinDenialExpansions = 300;
inline constexpr std::size_t kCueEntries = 18;

ValidationReport validate_lexicon(const PatternLexicon& lexicon);

// --- token matching -------------------------------------------------------

// A literal matches a token when their apostrophe-free forms are equal, so
// "dont" and "don't" match each other. The literal "n't" matches any word
// ending in the clitic, such as "isn't" or "can't", and the common
// apostrophe-less contractions ("dont", "cant").
bool literal_matches(std::string_view literal, const text::Token& token);
bool token_matches_literal_key(std::string_view key, const text::Token& token);
std::string literal_key(std::string_view literal);

// Counts phrase occurrences inside sentence spans. Each phrase counts once
// per start position; distinct phrases matching at the same place each
// count.
class PhraseMatcher {
 public:
  PhraseMatcher() = default;
  explicit PhraseMatcher(const std::vector<std::vector<std::string>>& phrases);

  std::size_t phrase_count() const { return phrases_.size(); }

  // Per-phrase counts, aligned with the constructor's order.
  std::vector<std::size_t> count_each(
      const text::TokenList& tokens,
      const std::vector<text::SentenceSpan>& sentences) const;
  std::size_t count_total(const text::TokenList& tokens,
                          const std::vector<text::SentenceSpan>& sentences) const;

  // True if some phrase uses a literal that matches `token`.
  bool mentions(const text::Token& token) const;

 private:
  bool matches_at(std::size_t phrase, const text::TokenList& tokens,
                  std::size_t pos, std::size_t end) const;
  template <typename Fn>
  void for_each_match(const text::TokenList& tokens,
                      const std::vector<text::SentenceSpan>& sentences,
                      Fn&& fn) const;

  std::vector<std::vector<std::string>> phrases_;  // literal keys
  std::map<std::string, std::vector<std::size_t>, std::less<>> by_first_;
  std::vector<std::size_t> clitic_first_;  // phrases starting with "n't"
  std::set<std::string, std::less<>> vocabulary_;
};

// --- MPQA subjectivity clues ----------------------------------------------

enum class Strength { kStrong, kWeak };
enum class Polarity { kPositive, kNegative, kNeutral, kBoth };

std::string_view polarity_name(Polarity p);

struct PolarityEntry {
  Strength strength = Strength::kWeak;
  Polarity polarity = Polarity::kNeutral;
  bool operator==(const PolarityEntry&) const = default;
};

struct PolarityLexicon {
  std::map<std::string, PolarityEntry, std::less<>> entries;
  std::size_t skipped_lines = 0;
  std::vector<std::string> diagnostics;  // skipped lines and conflicts

  const PolarityEntry* find(std::string_view word) const;
};

// Reads the published clue format, one record per line:
//   type=strongsubj len=1 word1=abuse pos1=anypos stemmed1=y priorpolarity=negative
// POS and stemming fields are ignored. Records missing type, word1 or
// priorpolarity are skipped and counted. Duplicate words resolve as: strong
// beats weak; equal strength with different polarities becomes BOTH.
// Throws ParseError for a line with no key=value fields at all.
PolarityLexicon load_mpqa(std::istream& in);
PolarityLexicon load_mpqa_file(const std::filesystem::path& path);
void write_mpqa(std::ostream& out, const PolarityLexicon& lexicon);

// --- the full set used by the featurizer ----------------------------------

struct LexiconSet {
  std::optional<PatternLexicon> agreement;
  std::optional<PatternLexicon> denial;
  std::optional<PatternLexicon> cue;
  std::optional<PatternLexicon> hedge;
  std::optional<PatternLexicon> cogmech;
  std::optional<PolarityLexicon> mpqa;
  std::string mpqa_version;

  // "name=version" pairs of every loaded lexicon, in a fixed order.
  std::string versions() const;
};

// Loads agreement.lex, denial.lex, cue.lex, hedge.lex and cogmech.lex from
// `dir` (each optional), and the MPQA file if a path is given.
LexiconSet load_lexicon_set(const std::filesystem::path& dir,
                            const std::optional<std::filesystem::path>& mpqa);

}  // namespace dissent::lexicon

#endif  // DISSENT_LEXICONS_H_
