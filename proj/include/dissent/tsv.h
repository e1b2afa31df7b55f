#ifndef DISSENT_TSV_H_
#define DISSENT_TSV_H_

#include <string>
#include <string_view>
#include <vector>

namespace dissent::tsv {

// Backslash escaping used by every TSV file in the project:
// \t, \n, \r and \\ inside a field.
std::string escape(std::string_view field);
std::string unescape(std::string_view field);

std::vector<std::string_view> split(std::string_view line, char sep = '\t');

// Shortest round-trip decimal form of a double.
std::string format_double(double value);

// Parses a complete field as a double; false on trailing junk or overflow.
bool parse_double(std::string_view text, double* out);

}  // namespace dissent::tsv

#endif  // DISSENT_TSV_H_
