#include <random>

#include "doctest.h"
#include "dissent/error.h"
#include "dissent/textproc.h"

using namespace dissent;
using namespace dissent::text;

namespace {

std::vector<std::string> normalized(const TokenList& t) {
  std::vector<std::string> out;
  for (const auto& tok : t.tokens) out.push_back(tok.normalized);
  return out;
}

std::string random_text(std::mt19937_64& rng) {
  static const std::vector<std::string> pieces = {
      "I", "don't", "think", "so", ".", "?", "!", "...", "Well,", "you're", "right",
      "\"quoted\"", "(aside)", "3.14", "1,000", "it's", "café", "Really???", "no", "--",
      "O'Brien", "'tis", "end.", "x", "\xe2\x80\x99", "don\xe2\x80\x99t", "a-b", ":)"};
  std::uniform_int_distribution<std::size_t> len(0, 25);
  std::uniform_int_distribution<std::size_t> pick(0, pieces.size() - 1);
  std::uniform_int_distribution<int> space(0, 5);
  std::string text;
  const std::size_t n = len(rng);
  for (std::size_t i = 0; i < n; ++i) {
    text += pieces[pick(rng)];
    const int s = space(rng);
    text += s == 0 ? "" : (s == 1 ? "  " : (s == 2 ? "\n" : " "));
  }
  return text;
}

}  // namespace

TEST_CASE("tokenize examples") {
  const auto t = tokenize("Can you?");
  REQUIRE(t.size() == 3);
  CHECK(t.tokens[0].surface == "Can");
  CHECK(t.tokens[0].normalized == "can");
  CHECK(t.tokens[0].kind == TokenKind::kWord);
  CHECK(t.tokens[1].kind == TokenKind::kWord);
  CHECK(t.tokens[2].surface == "?");
  CHECK(t.tokens[2].kind == TokenKind::kPunct);

  const auto d = tokenize("I don't think");
  CHECK(normalized(d) == std::vector<std::string>{"i", "don't", "think"});
  CHECK(d.tokens[1].stripped == "dont");

  const auto e = tokenize("");
  CHECK(e.empty());
  CHECK(e.char_count == 0);
}

TEST_CASE("tokenize punctuation and numbers") {
  const auto t = tokenize("\"Really???\" (3.5, 1,000 times)");
  std::vector<std::string> surfaces;
  for (const auto& tok : t.tokens) surfaces.push_back(tok.surface);
  CHECK(surfaces == std::vector<std::string>{"\"", "Really", "?", "?", "?", "\"", "(", "3.5",
                                             ",", "1,000", "times", ")"});
  CHECK(t.tokens[7].kind == TokenKind::kNumber);
  CHECK(t.tokens[9].kind == TokenKind::kNumber);
}

TEST_CASE("curly apostrophes fold") {
  const auto t = tokenize("don\xe2\x80\x99t");
  REQUIRE(t.size() == 1);
  CHECK(t.tokens[0].normalized == "don't");
  CHECK(t.tokens[0].stripped == "dont");
}

TEST_CASE("char_count counts code points including whitespace") {
  CHECK(tokenize("ab c").char_count == 4);
  CHECK(tokenize("caf\xc3\xa9 !").char_count == 6);
}

TEST_CASE("split_sentences examples") {
  CHECK(split_sentences(tokenize("Quite right. My mistake.")).size() == 2);
  CHECK(split_sentences(tokenize("Really???")).size() == 1);
  CHECK(split_sentences(tokenize("no terminal punct")).size() == 1);
  CHECK(split_sentences(tokenize("")).empty());
  const auto spans = split_sentences(tokenize("He said \"stop.\" Then left"));
  REQUIRE(spans.size() == 2);
  CHECK(spans[0].end == 6);  // the closing quote stays with the first sentence
}

TEST_CASE("ngrams examples") {
  const auto t = tokenize("i see");
  const auto bi = ngrams(t, 2);
  REQUIRE(bi.size() == 1);
  CHECK(bi.at({"i", "see"}) == 1);

  const auto abab = ngrams(tokenize("a b a b"), 2);
  CHECK(abab.size() == 2);
  CHECK(abab.at({"a", "b"}) == 2);
  CHECK(abab.at({"b", "a"}) == 1);

  CHECK(ngrams(tokenize("one two. three four."), 3).empty());
  CHECK_THROWS_AS(ngrams(t, 0), ArgumentError);
}

TEST_CASE("ngrams options") {
  const auto t = tokenize("Hi there. You 42!");
  const auto words = ngrams(t, 2);
  CHECK(words.size() == 2);
  CHECK(words.count({"you", "<num>"}) == 1);
  CHECK(words.count({"there", "you"}) == 0);

  NgramOptions crossing;
  crossing.sentence_scoped = false;
  CHECK(ngrams(t, 2, crossing).count({"there", "you"}) == 1);

  NgramOptions punct;
  punct.scope = NgramScope::kWithPunct;
  const auto with = ngrams(t, 2, punct);
  CHECK(with.count({"there", "."}) == 1);
  CHECK(with.count({"<num>", "!"}) == 1);
}

TEST_CASE("property: sentence spans partition the tokens") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 2000; ++i) {
    const auto t = tokenize(random_text(rng));
    const auto spans = split_sentences(t);
    std::size_t at = 0;
    for (const auto& s : spans) {
      CHECK(s.start == at);
      CHECK(s.end > s.start);
      at = s.end;
    }
    CHECK(at == t.size());
  }
}

TEST_CASE("property: ngram positions per sentence") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 1000; ++i) {
    const auto t = tokenize(random_text(rng));
    const auto spans = split_sentences(t);
    for (int n = 1; n <= 3; ++n) {
      std::size_t expected = 0;
      for (const auto& s : spans) {
        std::size_t eligible = 0;
        for (std::size_t k = s.start; k < s.end; ++k) {
          eligible += t.tokens[k].kind != TokenKind::kPunct;
        }
        if (eligible >= static_cast<std::size_t>(n)) expected += eligible - n + 1;
      }
      std::size_t total = 0;
      for (const auto& [gram, count] : ngrams(t, n)) total += count;
      CHECK(total == expected);
    }
  }
}

TEST_CASE("property: tokenization is idempotent on normalized forms") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 2000; ++i) {
    const auto first = normalized(tokenize(random_text(rng)));
    std::string joined;
    for (const auto& s : first) joined += (joined.empty() ? "" : " ") + s;
    CHECK(normalized(tokenize(joined)) == first);
  }
}

TEST_CASE("property: surfaces rebuild the non-whitespace text") {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 2000; ++i) {
    const std::string text = random_text(rng);
    const auto t = tokenize(text);
    std::string surfaces;
    for (const auto& tok : t.tokens) {
      CHECK(text.compare(tok.offset, tok.surface.size(), tok.surface) == 0);
      surfaces += tok.surface;
    }
    std::string compact;
    for (char c : text) {
      if (c != ' ' && c != '\n' && c != '\t' && c != '\r') compact += c;
    }
    CHECK(surfaces == compact);
  }
}
