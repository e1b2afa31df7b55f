#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "dissent/error.h"
#include "dissent/lexicons.h"
#include "dissent/utf8.h"

namespace dissent::lexicon {

std::string_view polarity_name(Polarity p) {
  switch (p) {
    case Polarity::kPositive: return "positive";
    case Polarity::kNegative: return "negative";
    case Polarity::kNeutral: return "neutral";
    case Polarity::kBoth: return "both";
  }
  return "?";
}

const PolarityEntry* PolarityLexicon::find(std::string_view word) const {
  auto it = entries.find(word);
  return it == entries.end() ? nullptr : &it->second;
}

namespace {

std::optional<Polarity> parse_polarity(std::string_view v) {
  if (v == "positive") return Polarity::kPositive;
  if (v == "negative" || v == "weakneg" || v == "strongneg") {
    return Polarity::kNegative;
  }
  if (v == "weakpos" || v == "strongpos") return Polarity::kPositive;
  if (v == "neutral") return Polarity::kNeutral;
  if (v == "both") return Polarity::kBoth;
  return std::nullopt;
}

// Strong beats weak; equal strength with a different polarity keeps both.
PolarityEntry resolve(const PolarityEntry& old, const PolarityEntry& incoming) {
  if (old.strength != incoming.strength) {
    return old.strength == Strength::kStrong ? old : incoming;
  }
  if (old.polarity == incoming.polarity) return old;
  return {old.strength, Polarity::kBoth};
}

}  // namespace

PolarityLexicon load_mpqa(std::istream& in) {
  PolarityLexicon lex;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view body = utf8::trim(line);
    if (body.empty() || body.front() == '#') continue;

    std::map<std::string, std::string> fields;
    std::istringstream words{std::string(body)};
    std::string word;
    std::size_t stray = 0;
    while (words >> word) {
      const auto eq = word.find('=');
      if (eq == std::string::npos || eq == 0) {
        ++stray;
        continue;
      }
      fields[word.substr(0, eq)] = word.substr(eq + 1);
    }
    if (fields.empty()) {
      throw ParseError("no key=value fields in MPQA record", line_no);
    }
    if (stray > 0) {
      lex.diagnostics.push_back("line " + std::to_string(line_no) +
                                ": ignored " + std::to_string(stray) +
                                " stray token(s)");
    }

    auto type = fields.find("type");
    auto word1 = fields.find("word1");
    auto prior = fields.find("priorpolarity");
    if (type == fields.end() || word1 == fields.end() || prior == fields.end() ||
        word1->second.empty()) {
      ++lex.skipped_lines;
      lex.diagnostics.push_back("line " + std::to_string(line_no) +
                                ": missing type, word1 or priorpolarity");
      continue;
    }
    PolarityEntry entry;
    if (type->second == "strongsubj") {
      entry.strength = Strength::kStrong;
    } else if (type->second == "weaksubj") {
      entry.strength = Strength::kWeak;
    } else {
      ++lex.skipped_lines;
      lex.diagnostics.push_back("line " + std::to_string(line_no) +
                                ": unknown type '" + type->second + "'");
      continue;
    }
    auto polarity = parse_polarity(prior->second);
    if (!polarity) {
      ++lex.skipped_lines;
      lex.diagnostics.push_back("line " + std::to_string(line_no) +
                                ": unknown priorpolarity '" + prior->second + "'");
      continue;
    }
    entry.polarity = *polarity;

    const std::string key = utf8::ascii_lower(word1->second);
    auto [it, inserted] = lex.entries.emplace(key, entry);
    if (!inserted && !(it->second == entry)) {
      const PolarityEntry merged = resolve(it->second, entry);
      lex.diagnostics.push_back(
          "line " + std::to_string(line_no) + ": conflicting entry for '" + key +
          "', kept " + (merged.strength == Strength::kStrong ? "strong" : "weak") +
          "/" + std::string(polarity_name(merged.polarity)));
      it->second = merged;
    }
  }
  return lex;
}

PolarityLexicon load_mpqa_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open MPQA lexicon " + path.string());
  try {
    return load_mpqa(in);
  } catch (const InputError& e) {
    throw ParseError(path.string() + ": " + e.what(), 0);
  }
}

void write_mpqa(std::ostream& out, const PolarityLexicon& lexicon) {
  for (const auto& [word, entry] : lexicon.entries) {
    out << "type=" << (entry.strength == Strength::kStrong ? "strongsubj" : "weaksubj")
        << " len=1 word1=" << word << " pos1=anypos stemmed1=n priorpolarity="
        << polarity_name(entry.polarity) << '\n';
  }
}

}  // namespace dissent::lexicon
