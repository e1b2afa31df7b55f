#ifndef DISSENT_TEXTPROC_H_
#define DISSENT_TEXTPROC_H_

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace dissent::text {

enum class TokenKind { kWord, kPunct, kNumber };

struct Token {
  std::string surface;     // exact bytes from the source text
  std::string normalized;  // lowercased; curly apostrophes folded to '
  std::string stripped;    // normalized without apostrophes ("don't" -> "dont")
  TokenKind kind = TokenKind::kWord;
  std::size_t offset = 0;  // byte offset of surface in the source text
};

struct TokenList {
  std::string text;  // source text, kept for character-level features
  std::vector<Token> tokens;
  std::size_t char_count = 0;  // code points in text, whitespace included

  std::size_t size() const { return tokens.size(); }
  bool empty() const { return tokens.empty(); }
};

// Half-open token range [start, end).
struct SentenceSpan {
  std::size_t start = 0;
  std::size_t end = 0;
  std::size_t size() const { return end - start; }
  bool operator==(const SentenceSpan&) const = default;
};

// Splits on whitespace, peels leading and trailing punctuation off each
// chunk as single-character PUNCT tokens, and classifies the remaining core
// as NUMBER (digits with internal . or ,) or WORD. Apostrophes inside a word
// stay in it. Expects valid UTF-8.
TokenList tokenize(std::string_view text);

// A sentence ends after a run of '.', '?' or '!' tokens, absorbing closing
// quotes and brackets that immediately follow. A trailing unterminated span
// is a sentence too.
std::vector<SentenceSpan> split_sentences(const TokenList& tokens);

bool is_terminal(const Token& token);

enum class NgramScope { kWordsOnly, kWithPunct };

struct NgramOptions {
  NgramScope scope = NgramScope::kWordsOnly;
  // Ngrams never cross sentence boundaries unless this is cleared.
  bool sentence_scoped = true;
  bool operator==(const NgramOptions&) const = default;
};

inline constexpr const char* kNumberPlaceholder = "<num>";

using Ngram = std::vector<std::string>;
using NgramCounts = std::map<Ngram, std::size_t>;

// Counts every n-token window of eligible tokens (WORD and NUMBER, plus
// PUNCT under kWithPunct). NUMBER tokens appear as "<num>". Throws
// ArgumentError if n < 1.
NgramCounts ngrams(const TokenList& tokens, int n,
                   const NgramOptions& options = {});

std::string join_ngram(const Ngram& ngram);

}  // namespace dissent::text

#endif  // DISSENT_TEXTPROC_H_
