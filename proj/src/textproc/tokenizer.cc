#include <algorithm>
#include <cctype>

#include "dissent/textproc.h"
#include "dissent/utf8.h"

namespace dissent::text {

namespace {

bool is_space(char32_t cp) {
  switch (cp) {
    case ' ': case '\t': case '\n': case '\r': case '\f': case '\v':
    case 0x00A0: case 0x1680: case 0x2028: case 0x2029: case 0x202F:
    case 0x205F: case 0x3000: case 0xFEFF:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200B;
  }
}

bool is_punct(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= '!' && cp <= '/') || (cp >= ':' && cp <= '@') ||
           (cp >= '[' && cp <= '`') || (cp >= '{' && cp <= '~');
  }
  switch (cp) {
    case 0x00A1: case 0x00AB: case 0x00B7: case 0x00BB: case 0x00BF:
    case 0x2013: case 0x2014: case 0x2018: case 0x2019: case 0x201C:
    case 0x201D: case 0x2022: case 0x2026:
      return true;
    default:
      return false;
  }
}

bool is_apostrophe(char32_t cp) { return cp == '\'' || cp == 0x2019 || cp == 0x2018; }

bool is_number(std::string_view core) {
  if (core.empty() || !std::isdigit(static_cast<unsigned char>(core.front())) ||
      !std::isdigit(static_cast<unsigned char>(core.back()))) {
    return false;
  }
  char prev = '0';
  for (char c : core) {
    const bool digit = c >= '0' && c <= '9';
    const bool sep = c == '.' || c == ',';
    if (!digit && !sep) return false;
    if (sep && (prev == '.' || prev == ',')) return false;
    prev = c;
  }
  return true;
}

// Lowercases ASCII and folds curly apostrophes to '.
std::string normalize_word(std::string_view surface, std::string* stripped) {
  std::string out;
  stripped->clear();
  for (std::size_t i = 0; i < surface.size();) {
    std::size_t width;
    char32_t cp = utf8::decode(surface, i, &width);
    if (is_apostrophe(cp)) {
      out.push_back('\'');
    } else if (cp < 0x80) {
      char c = static_cast<char>(cp);
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
      out.push_back(c);
      stripped->push_back(c);
    } else {
      out.append(surface.substr(i, width));
      stripped->append(surface.substr(i, width));
    }
    i += width;
  }
  return out;
}

struct CodePoint {
  char32_t cp;
  std::size_t offset;
  std::size_t width;
};

void emit_punct(std::string_view text, const CodePoint& c, TokenList* out) {
  Token t;
  t.surface = std::string(text.substr(c.offset, c.width));
  t.normalized = is_apostrophe(c.cp) ? std::string("'") : t.surface;
  t.stripped = t.normalized;
  t.kind = TokenKind::kPunct;
  t.offset = c.offset;
  out->tokens.push_back(std::move(t));
}

void emit_chunk(std::string_view text, const std::vector<CodePoint>& chunk,
                TokenList* out) {
  std::size_t lo = 0;
  std::size_t hi = chunk.size();
  while (lo < hi && is_punct(chunk[lo].cp)) emit_punct(text, chunk[lo++], out);
  std::size_t trail = hi;
  while (trail > lo && is_punct(chunk[trail - 1].cp)) --trail;
  if (lo < trail) {
    const std::size_t begin = chunk[lo].offset;
    const std::size_t end = chunk[trail - 1].offset + chunk[trail - 1].width;
    Token t;
    t.surface = std::string(text.substr(begin, end - begin));
    t.offset = begin;
    if (is_number(t.surface)) {
      t.kind = TokenKind::kNumber;
      t.normalized = t.surface;
      t.stripped = t.surface;
    } else {
      t.kind = TokenKind::kWord;
      t.normalized = normalize_word(t.surface, &t.stripped);
    }
    out->tokens.push_back(std::move(t));
  }
  for (std::size_t i = trail; i < hi; ++i) emit_punct(text, chunk[i], out);
}

}  // namespace

TokenList tokenize(std::string_view text) {
  TokenList out;
  out.text = std::string(text);
  std::vector<CodePoint> chunk;
  for (std::size_t i = 0; i < text.size();) {
    std::size_t width;
    const char32_t cp = utf8::decode(text, i, &width);
    ++out.char_count;
    if (is_space(cp)) {
      if (!chunk.empty()) emit_chunk(text, chunk, &out);
      chunk.clear();
    } else {
      chunk.push_back({cp, i, width});
    }
    i += width;
  }
  if (!chunk.empty()) emit_chunk(text, chunk, &out);
  return out;
}

bool is_terminal(const Token& token) {
  return token.kind == TokenKind::kPunct &&
         (token.surface == "." || token.surface == "?" || token.surface == "!");
}

namespace {

bool is_closer(const Token& token) {
  if (token.kind != TokenKind::kPunct) return false;
  static const char* kClosers[] = {"\"", "'", ")", "]", "}",
                                   "”", "’", "»"};
  return std::any_of(std::begin(kClosers), std::end(kClosers),
                     [&](const char* c) { return token.surface == c; });
}

}  // namespace

std::vector<SentenceSpan> split_sentences(const TokenList& tokens) {
  std::vector<SentenceSpan> spans;
  const auto& toks = tokens.tokens;
  std::size_t start = 0;
  std::size_t i = 0;
  while (i < toks.size()) {
    if (!is_terminal(toks[i])) {
      ++i;
      continue;
    }
    while (i < toks.size() && is_terminal(toks[i])) ++i;
    while (i < toks.size() && is_closer(toks[i])) ++i;
    spans.push_back({start, i});
    start = i;
  }
  if (start < toks.size()) spans.push_back({start, toks.size()});
  return spans;
}

}  // namespace dissent::text
