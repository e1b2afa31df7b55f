#include <fstream>

#include "dissent/error.h"
#include "dissent/lexicons.h"

namespace dissent::lexicon {

std::string LexiconSet::versions() const {
  std::string out;
  auto add = [&](const std::optional<PatternLexicon>& lex, LexiconName name) {
    if (!lex) return;
    if (!out.empty()) out += ",";
    out += std::string(lexicon_name(name)) + "=" +
           (lex->version.empty() ? "unversioned" : lex->version);
  };
  add(agreement, LexiconName::kAgreement);
  add(cue, LexiconName::kCue);
  add(denial, LexiconName::kDenial);
  add(hedge, LexiconName::kHedge);
  add(cogmech, LexiconName::kCogmech);
  if (mpqa) {
    if (!out.empty()) out += ",";
    out += "MPQA=" + (mpqa_version.empty() ? "unversioned" : mpqa_version);
  }
  return out;
}

namespace {

// First "# version: X" comment of an MPQA-format file, if any.
std::string mpqa_version_of(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("#", 0) != 0) break;
    const auto pos = line.find("version:");
    if (pos != std::string::npos) {
      auto v = line.substr(pos + 8);
      const auto b = v.find_first_not_of(" \t");
      const auto e = v.find_last_not_of(" \t\r");
      if (b != std::string::npos) return v.substr(b, e - b + 1);
    }
  }
  return path.filename().string();
}

}  // namespace

LexiconSet load_lexicon_set(const std::filesystem::path& dir,
                            const std::optional<std::filesystem::path>& mpqa) {
  if (!std::filesystem::is_directory(dir)) {
    throw Error("lexicon directory not found: " + dir.string());
  }
  LexiconSet set;
  auto load = [&](const char* file, LexiconName name) -> std::optional<PatternLexicon> {
    const auto path = dir / file;
    if (!std::filesystem::exists(path)) return std::nullopt;
    return load_lexicon_file(path, name);
  };
  set.agreement = load("agreement.lex", LexiconName::kAgreement);
  set.denial = load("denial.lex", LexiconName::kDenial);
  set.cue = load("cue.lex", LexiconName::kCue);
  set.hedge = load("hedge.lex", LexiconName::kHedge);
  set.cogmech = load("cogmech.lex", LexiconName::kCogmech);
  if (mpqa) {
    set.mpqa = load_mpqa_file(*mpqa);
    set.mpqa_version = mpqa_version_of(*mpqa);
  }
  return set;
}

}  // namespace dissent::lexicon
