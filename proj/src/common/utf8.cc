#include "dissent/utf8.h"

namespace dissent::utf8 {

namespace {

bool is_continuation(unsigned char c) { return (c & 0xC0) == 0x80; }

}  // namespace

bool is_valid(std::string_view text) {
  const auto* s = reinterpret_cast<const unsigned char*>(text.data());
  const std::size_t n = text.size();
  std::size_t i = 0;
  while (i < n) {
    const unsigned char c = s[i];
    if (c < 0x80) {
      ++i;
      continue;
    }
    std::size_t width;
    char32_t cp;
    if ((c & 0xE0) == 0xC0) {
      width = 2;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      width = 3;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      width = 4;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + width > n) return false;
    for (std::size_t k = 1; k < width; ++k) {
      if (!is_continuation(s[i + k])) return false;
      cp = (cp << 6) | (s[i + k] & 0x3F);
    }
    // Overlong encodings, surrogates and out-of-range values.
    if ((width == 2 && cp < 0x80) || (width == 3 && cp < 0x800) ||
        (width == 4 && cp < 0x10000) || cp > 0x10FFFF ||
        (cp >= 0xD800 && cp <= 0xDFFF)) {
      return false;
    }
    i += width;
  }
  return true;
}

std::size_t length(std::string_view text) {
  std::size_t count = 0;
  for (unsigned char c : text) {
    if (!is_continuation(c)) ++count;
  }
  return count;
}

char32_t decode(std::string_view text, std::size_t pos, std::size_t* width) {
  const auto c = static_cast<unsigned char>(text[pos]);
  std::size_t w = 1;
  char32_t cp = c;
  if (c >= 0xF0) {
    w = 4;
    cp = c & 0x07;
  } else if (c >= 0xE0) {
    w = 3;
    cp = c & 0x0F;
  } else if (c >= 0xC0) {
    w = 2;
    cp = c & 0x1F;
  }
  if (w > 1) {
    if (pos + w > text.size()) {
      *width = 1;
      return 0xFFFD;
    }
    for (std::size_t k = 1; k < w; ++k) {
      cp = (cp << 6) | (static_cast<unsigned char>(text[pos + k]) & 0x3F);
    }
  }
  *width = w;
  return cp;
}

void append(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::string ascii_lower(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::string_view trim(std::string_view text) {
  const char* ws = " \t\r\n\f\v";
  const auto begin = text.find_first_not_of(ws);
  if (begin == std::string_view::npos) return {};
  const auto end = text.find_last_not_of(ws);
  return text.substr(begin, end - begin + 1);
}

}  // namespace dissent::utf8
