#ifndef DISSENT_UTF8_H_
#define DISSENT_UTF8_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace dissent::utf8 {

// True when `text` is well-formed UTF-8 (no overlongs, no surrogates).
bool is_valid(std::string_view text);

// Number of code points; assumes valid input.
std::size_t length(std::string_view text);

// Decodes the code point starting at text[pos] and stores its byte width.
char32_t decode(std::string_view text, std::size_t pos, std::size_t* width);

void append(std::string& out, char32_t cp);

// ASCII-only lowercasing. Non-ASCII bytes pass through untouched.
std::string ascii_lower(std::string_view text);

std::string_view trim(std::string_view text);

}  // namespace dissent::utf8

#endif  // DISSENT_UTF8_H_
