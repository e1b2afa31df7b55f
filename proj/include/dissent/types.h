#ifndef DISSENT_TYPES_H_
#define DISSENT_TYPES_H_

#include <array>
#include <optional>
#include <string_view>

namespace dissent {

// Class index 0 is AGREEMENT everywhere; every fixed tie rule in the
// library falls back to it.
enum class Label { kAgreement = 0, kDisagreement = 1 };

inline constexpr std::array<Label, 2> kLabels = {Label::kAgreement,
                                                 Label::kDisagreement};

inline constexpr int label_index(Label label) {
  return static_cast<int>(label);
}

inline constexpr Label label_from_index(int index) {
  return index == 0 ? Label::kAgreement : Label::kDisagreement;
}

inline constexpr std::string_view label_name(Label label) {
  return label == Label::kAgreement ? "AGREEMENT" : "DISAGREEMENT";
}

std::optional<Label> parse_label(std::string_view text);

}  // namespace dissent

#endif  // DISSENT_TYPES_H_
