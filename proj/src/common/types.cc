#include "dissent/types.h"

#include "dissent/utf8.h"

namespace dissent {

std::optional<Label> parse_label(std::string_view text) {
  const std::string lower = utf8::ascii_lower(utf8::trim(text));
  if (lower == "agreement" || lower == "agree") return Label::kAgreement;
  if (lower == "disagreement" || lower == "disagree") {
    return Label::kDisagreement;
  }
  return std::nullopt;
}

}  // namespace dissent
