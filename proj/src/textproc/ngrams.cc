#include "dissent/error.h"
#include "dissent/textproc.h"

namespace dissent::text {

namespace {

void count_span(const TokenList& tokens, SentenceSpan span, int n,
                NgramScope scope, NgramCounts* counts) {
  std::vector<const std::string*> eligible;
  static const std::string kNum = kNumberPlaceholder;
  for (std::size_t i = span.start; i < span.end; ++i) {
    const Token& t = tokens.tokens[i];
    switch (t.kind) {
      case TokenKind::kWord: eligible.push_back(&t.normalized); break;
      case TokenKind::kNumber: eligible.push_back(&kNum); break;
      case TokenKind::kPunct:
        if (scope == NgramScope::kWithPunct) eligible.push_back(&t.normalized);
        break;
    }
  }
  const auto width = static_cast<std::size_t>(n);
  for (std::size_t i = 0; i + width <= eligible.size(); ++i) {
    Ngram gram;
    gram.reserve(width);
    for (std::size_t k = 0; k < width; ++k) gram.push_back(*eligible[i + k]);
    ++(*counts)[std::move(gram)];
  }
}

}  // namespace

NgramCounts ngrams(const TokenList& tokens, int n, const NgramOptions& options) {
  if (n < 1) throw ArgumentError("ngram order must be >= 1");
  NgramCounts counts;
  if (options.sentence_scoped) {
    for (const auto& span : split_sentences(tokens)) {
      count_span(tokens, span, n, options.scope, &counts);
    }
  } else {
    count_span(tokens, {0, tokens.size()}, n, options.scope, &counts);
  }
  return counts;
}

std::string join_ngram(const Ngram& ngram) {
  std::string out;
  for (const auto& part : ngram) {
    if (!out.empty()) out.push_back(' ');
    out += part;
  }
  return out;
}

}  // namespace dissent::text
