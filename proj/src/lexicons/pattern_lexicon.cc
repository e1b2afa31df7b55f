#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>

#include "dissent/error.h"
#include "dissent/lexicons.h"
#include "dissent/utf8.h"

namespace dissent::lexicon {

namespace {

constexpr std::string_view kClitic = "n't";

std::vector<std::string> split_ws(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  std::string word;
  while (in >> word) out.push_back(word);
  return out;
}

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  });
}

std::optional<std::string> class_ref(std::string_view token) {
  if (token.size() >= 3 && token.front() == '<' && token.back() == '>') {
    return std::string(token.substr(1, token.size() - 2));
  }
  return std::nullopt;
}

bool parse_bool(std::string_view v) {
  const auto lower = utf8::ascii_lower(utf8::trim(v));
  return lower == "true" || lower == "yes" || lower == "1";
}

std::string joined_key(const std::vector<std::string>& tokens) {
  std::string key;
  for (const auto& t : tokens) {
    key += literal_key(t);
    key.push_back('\x1f');
  }
  return key;
}

}  // namespace

std::string_view lexicon_name(LexiconName name) {
  switch (name) {
    case LexiconName::kAgreement: return "AGREEMENT";
    case LexiconName::kDenial: return "DENIAL";
    case LexiconName::kCue: return "CUE";
    case LexiconName::kHedge: return "HEDGE";
    case LexiconName::kCogmech: return "COGMECH";
  }
  return "?";
}

std::optional<LexiconName> parse_lexicon_name(std::string_view text) {
  const auto upper = [&] {
    std::string s(utf8::trim(text));
    for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return s;
  }();
  for (auto n : {LexiconName::kAgreement, LexiconName::kDenial,
                 LexiconName::kCue, LexiconName::kHedge,
                 LexiconName::kCogmech}) {
    if (lexicon_name(n) == upper) return n;
  }
  return std::nullopt;
}

bool Pattern::has_class_slot() const {
  return std::any_of(slots.begin(), slots.end(), [](const Slot& s) {
    return s.kind == Slot::Kind::kClass;
  });
}

const std::vector<std::string>* PatternLexicon::find_class(
    const std::string& name) const {
  auto it = classes.find(name);
  return it == classes.end() ? nullptr : &it->second;
}

PatternLexicon load_lexicon(std::istream& in, LexiconName name) {
  PatternLexicon lex;
  lex.name = name;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!utf8::is_valid(line)) throw ParseError("invalid UTF-8", line_no);
    const std::string_view body = utf8::trim(line);
    if (body.empty() || body.front() == '#') continue;

    // Metadata header keys.
    if (const auto colon = body.find(':'); colon != std::string_view::npos) {
      const std::string key = utf8::ascii_lower(utf8::trim(body.substr(0, colon)));
      const std::string_view value = utf8::trim(body.substr(colon + 1));
      if (key == "name") {
        auto declared = parse_lexicon_name(value);
        if (!declared || *declared != name) {
          throw ParseError("lexicon declares name '" + std::string(value) +
                               "' but was loaded as " +
                               std::string(lexicon_name(name)),
                           line_no);
        }
        continue;
      }
      if (key == "version") {
        lex.version = std::string(value);
        continue;
      }
      if (key == "approximation") {
        lex.approximation = parse_bool(value);
        continue;
      }
      if (key == "external") {
        for (auto& cls : split_ws(value)) lex.external_classes.insert(cls);
        continue;
      }
    }

    const auto words = split_ws(body);
    if (words.front() == "class") {
      if (words.size() < 3 || words[2] != "=" || !is_identifier(words[1])) {
        throw ParseError("expected 'class <name> = tok ...'", line_no);
      }
      if (lex.classes.count(words[1])) {
        throw ParseError("class '" + words[1] + "' declared twice", line_no);
      }
      std::vector<std::string> members;
      for (std::size_t i = 3; i < words.size(); ++i) {
        members.push_back(utf8::ascii_lower(words[i]));
      }
      lex.classes.emplace(words[1], std::move(members));
      continue;
    }

    Pattern pattern;
    pattern.line = line_no;
    pattern.text = std::string(body);
    for (const auto& word : words) {
      if (auto cls = class_ref(word)) {
        if (!is_identifier(*cls)) {
          throw ParseError("bad class reference '" + word + "'", line_no);
        }
        pattern.slots.push_back({Slot::Kind::kClass, *cls});
      } else if (word.front() == '<' || word.back() == '>') {
        throw ParseError("malformed slot '" + word + "'", line_no);
      } else {
        pattern.slots.push_back({Slot::Kind::kLiteral, utf8::ascii_lower(word)});
      }
    }
    lex.patterns.push_back(std::move(pattern));
  }

  // Class references may precede their declaration; resolve at the end.
  for (const auto& pattern : lex.patterns) {
    for (const auto& slot : pattern.slots) {
      if (slot.kind == Slot::Kind::kClass && !lex.classes.count(slot.value) &&
          !lex.external_classes.count(slot.value)) {
        throw UnknownClassError("undeclared class <" + slot.value + ">",
                                pattern.line);
      }
    }
  }
  return lex;
}

PatternLexicon load_lexicon_file(const std::filesystem::path& path,
                                 LexiconName name) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open lexicon " + path.string());
  try {
    return load_lexicon(in, name);
  } catch (const InputError& e) {
    throw ParseError(path.string() + ": " + e.what(), 0);
  }
}

std::vector<std::vector<std::string>> expand_pattern(
    const PatternLexicon& lexicon, const Pattern& pattern, std::size_t limit) {
  std::size_t total = 1;
  std::vector<const std::vector<std::string>*> choices;
  for (const auto& slot : pattern.slots) {
    if (slot.kind == Slot::Kind::kLiteral) {
      choices.push_back(nullptr);
      continue;
    }
    const auto* members = lexicon.find_class(slot.value);
    if (!members) {
      throw UnknownClassError("undeclared class <" + slot.value + ">",
                              pattern.line);
    }
    choices.push_back(members);
    total *= members->size();
    if (total > limit) {
      throw ExplosionError("pattern '" + pattern.text + "' expands to more than " +
                           std::to_string(limit) + " concretes");
    }
  }

  std::vector<std::vector<std::string>> out;
  if (total == 0) return out;
  out.reserve(total);
  std::vector<std::size_t> odometer(pattern.slots.size(), 0);
  while (true) {
    std::vector<std::string> concrete;
    concrete.reserve(pattern.slots.size());
    for (std::size_t i = 0; i < pattern.slots.size(); ++i) {
      concrete.push_back(choices[i] ? (*choices[i])[odometer[i]]
                                    : pattern.slots[i].value);
    }
    out.push_back(std::move(concrete));
    // Rightmost slot varies fastest; a carry out of slot 0 means done.
    bool carried_out = true;
    for (std::size_t i = pattern.slots.size(); i > 0; --i) {
      const auto* members = choices[i - 1];
      if (!members) continue;
      if (++odometer[i - 1] < members->size()) {
        carried_out = false;
        break;
      }
      odometer[i - 1] = 0;
    }
    if (carried_out) return out;
  }
}

namespace {

bool references_external(const PatternLexicon& lexicon, const Pattern& p) {
  return std::any_of(p.slots.begin(), p.slots.end(), [&](const Slot& s) {
    return s.kind == Slot::Kind::kClass &&
           lexicon.external_classes.count(s.value) &&
           !lexicon.classes.count(s.value);
  });
}

}  // namespace

std::vector<Expansion> expand_generalizations(const PatternLexicon& lexicon,
                                              std::size_t limit) {
  std::map<std::string, Expansion> unique;
  for (std::size_t i = 0; i < lexicon.patterns.size(); ++i) {
    const auto& pattern = lexicon.patterns[i];
    if (references_external(lexicon, pattern)) continue;
    const auto source = pattern.has_class_slot() ? PatternSource::kGeneralized
                                                 : PatternSource::kSeed;
    for (auto& tokens : expand_pattern(lexicon, pattern, limit)) {
      auto key = joined_key(tokens);
      auto it = unique.find(key);
      if (it == unique.end()) {
        unique.emplace(std::move(key), Expansion{std::move(tokens), i, source});
        continue;
      }
      // Keep the seed whose text sorts first so the result is independent
      // of pattern order.
      const auto& current = lexicon.patterns[it->second.seed].text;
      if (pattern.text < current) {
        it->second = Expansion{std::move(tokens), i, source};
      } else if (pattern.text == current && source == PatternSource::kSeed) {
        it->second.source = source;
      }
    }
  }
  std::vector<Expansion> out;
  out.reserve(unique.size());
  for (auto& [key, expansion] : unique) out.push_back(std::move(expansion));
  return out;
}

bool ValidationReport::ok() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const ValidationCheck& c) { return c.passed; });
}

std::string ValidationReport::to_string() const {
  std::ostringstream out;
  out << "expansions: " << expansions << '\n';
  for (const auto& c : checks) {
    out << c.name << ": " << (c.passed ? "PASS" : "FAIL");
    if (!c.detail.empty()) out << " (" << c.detail << ')';
    out << '\n';
  }
  for (const auto& w : warnings) out << "warning: " << w << '\n';
  return out.str();
}

ValidationReport validate_lexicon(const PatternLexicon& lexicon) {
  ValidationReport report;

  std::vector<std::string> empty_classes;
  for (const auto& [name, members] : lexicon.classes) {
    if (members.empty()) {
      empty_classes.push_back(name);
      report.warnings.push_back("class <" + name + "> is empty");
    }
  }
  report.checks.push_back({"no empty classes", empty_classes.empty(),
                           empty_classes.empty() ? ""
                                                 : std::to_string(empty_classes.size()) +
                                                       " empty"});

  // Duplicate concretes, attributed to the seeds that produced them.
  std::map<std::string, std::vector<std::size_t>> producers;
  std::size_t limit_failures = 0;
  for (std::size_t i = 0; i < lexicon.patterns.size(); ++i) {
    const auto& pattern = lexicon.patterns[i];
    if (references_external(lexicon, pattern)) continue;
    try {
      for (const auto& tokens : expand_pattern(lexicon, pattern)) {
        producers[joined_key(tokens)].push_back(i);
      }
    } catch (const ExplosionError& e) {
      ++limit_failures;
      report.warnings.push_back(e.what());
    }
  }
  report.expansions = producers.size();
  std::size_t duplicates = 0;
  for (const auto& [key, seeds] : producers) {
    if (seeds.size() < 2) continue;
    ++duplicates;
    std::string names;
    for (std::size_t s : seeds) {
      if (!names.empty()) names += ", ";
      names += "'" + lexicon.patterns[s].text + "' (line " +
               std::to_string(lexicon.patterns[s].line) + ")";
    }
    std::string shown = key;
    std::replace(shown.begin(), shown.end(), '\x1f', ' ');
    report.warnings.push_back("duplicate expansion '" +
                              std::string(utf8::trim(shown)) + "' from " + names);
  }
  report.checks.push_back({"no duplicate expansions", duplicates == 0,
                           duplicates ? std::to_string(duplicates) + " duplicated"
                                      : ""});
  report.checks.push_back({"expansion limit", limit_failures == 0, ""});

  if (lexicon.name == LexiconName::kDenial) {
    report.checks.push_back(
        {"expansions >= " + std::to_string(kMinDenialExpansions),
         report.expansions >= kMinDenialExpansions,
         std::to_string(report.expansions) + " concrete ngrams"});
  }
  if (lexicon.name == LexiconName::kCue) {
    report.checks.push_back({"cue count = " + std::to_string(kCueEntries),
                             lexicon.patterns.size() == kCueEntries,
                             std::to_string(lexicon.patterns.size()) + " entries"});
  }
  return report;
}

// --- matching ---------------------------------------------------------------

std::string literal_key(std::string_view literal) {
  std::string lower = utf8::ascii_lower(literal);
  if (lower == kClitic) return lower;
  std::string out;
  for (std::size_t i = 0; i < lower.size();) {
    std::size_t width;
    const char32_t cp = utf8::decode(lower, i, &width);
    if (cp != '\'' && cp != 0x2019 && cp != 0x2018) out.append(lower, i, width);
    i += width;
  }
  return out;
}

namespace {

// Negated auxiliaries as typed without the apostrophe.
bool is_bare_contraction(std::string_view s) {
  static const std::set<std::string, std::less<>> kForms = {
      "aint",   "arent",  "cant",     "couldnt", "didnt",  "doesnt",
      "dont",   "hadnt",  "hasnt",    "havent",  "isnt",   "mightnt",
      "mustnt", "neednt", "shouldnt", "wasnt",   "werent", "wont",
      "wouldnt"};
  return kForms.count(s) > 0;
}

}  // namespace

bool token_matches_literal_key(std::string_view key, const text::Token& token) {
  if (key == kClitic) {
    const auto& n = token.normalized;
    if (token.kind != text::TokenKind::kWord) return false;
    return (n.size() > kClitic.size() &&
            n.compare(n.size() - kClitic.size(), kClitic.size(), kClitic) == 0) ||
           is_bare_contraction(token.stripped);
  }
  return key == token.stripped;
}

bool literal_matches(std::string_view literal, const text::Token& token) {
  return token_matches_literal_key(literal_key(literal), token);
}

PhraseMatcher::PhraseMatcher(
    const std::vector<std::vector<std::string>>& phrases) {
  phrases_.reserve(phrases.size());
  for (std::size_t i = 0; i < phrases.size(); ++i) {
    std::vector<std::string> keys;
    for (const auto& lit : phrases[i]) {
      keys.push_back(literal_key(lit));
      vocabulary_.insert(keys.back());
    }
    if (keys.empty()) {
      phrases_.push_back(std::move(keys));
      continue;
    }
    if (keys.front() == kClitic) {
      clitic_first_.push_back(i);
    } else {
      by_first_[keys.front()].push_back(i);
    }
    phrases_.push_back(std::move(keys));
  }
}

bool PhraseMatcher::matches_at(std::size_t phrase,
                               const text::TokenList& tokens, std::size_t pos,
                               std::size_t end) const {
  const auto& keys = phrases_[phrase];
  if (keys.empty() || pos + keys.size() > end) return false;
  for (std::size_t k = 0; k < keys.size(); ++k) {
    if (!token_matches_literal_key(keys[k], tokens.tokens[pos + k])) return false;
  }
  return true;
}

template <typename Fn>
void PhraseMatcher::for_each_match(
    const text::TokenList& tokens,
    const std::vector<text::SentenceSpan>& sentences, Fn&& fn) const {
  for (const auto& span : sentences) {
    for (std::size_t pos = span.start; pos < span.end; ++pos) {
      const auto& token = tokens.tokens[pos];
      if (auto it = by_first_.find(token.stripped); it != by_first_.end()) {
        for (std::size_t phrase : it->second) {
          if (matches_at(phrase, tokens, pos, span.end)) fn(phrase);
        }
      }
      if (!clitic_first_.empty() && token_matches_literal_key(kClitic, token)) {
        for (std::size_t phrase : clitic_first_) {
          if (matches_at(phrase, tokens, pos, span.end)) fn(phrase);
        }
      }
    }
  }
}

std::vector<std::size_t> PhraseMatcher::count_each(
    const text::TokenList& tokens,
    const std::vector<text::SentenceSpan>& sentences) const {
  std::vector<std::size_t> counts(phrases_.size(), 0);
  for_each_match(tokens, sentences, [&](std::size_t p) { ++counts[p]; });
  return counts;
}

std::size_t PhraseMatcher::count_total(
    const text::TokenList& tokens,
    const std::vector<text::SentenceSpan>& sentences) const {
  std::size_t total = 0;
  for_each_match(tokens, sentences, [&](std::size_t) { ++total; });
  return total;
}

bool PhraseMatcher::mentions(const text::Token& token) const {
  if (vocabulary_.count(token.stripped)) return true;
  return vocabulary_.count(std::string(kClitic)) &&
         token_matches_literal_key(kClitic, token);
}

}  // namespace dissent::lexicon
