#include "dissent/synthetic.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "dissent/error.h"
#include "dissent/tsv.h"
#include "dissent/utf8.h"

namespace dissent::corpus {

namespace {

constexpr std::array<std::pair<CueFamily, std::string_view>, 9> kFamilyNames = {{
    {CueFamily::kAgreement, "agreement"},
    {CueFamily::kGuarded, "guarded"},
    {CueFamily::kDenial, "denial"},
    {CueFamily::kHedge, "hedge"},
    {CueFamily::kCueWord, "cue_word"},
    {CueFamily::kQuestion, "question"},
    {CueFamily::kExclamation, "exclamation"},
    {CueFamily::kPositive, "positive"},
    {CueFamily::kNegative, "negative"},
}};

// Agreement and guarded-agreement openers. Each uses one agreement keyword
// and no negation.
const std::vector<std::string> kAgreementTemplates = {
    "i agree", "i agree with you", "you are right", "that is correct", "agreed",
    "right, i agree with that"};
const std::vector<std::string> kGuardedTemplates = {
    "i agree but", "you are right but", "that is correct however", "agreed, yet",
    "i agree with some of that but"};

constexpr std::string_view kConsonants = "bdfgklmprstvz";
constexpr std::string_view kVowels = "aeiou";

std::size_t parse_count(std::string_view text, std::size_t line) {
  double v;
  if (!tsv::parse_double(text, &v) || v < 0 || v != std::floor(v)) {
    throw ParseError("expected a non-negative integer, got '" + std::string(text) + "'", line);
  }
  return static_cast<std::size_t>(v);
}

double parse_real(std::string_view text, std::size_t line) {
  double v;
  if (!tsv::parse_double(text, &v)) {
    throw ParseError("expected a number, got '" + std::string(text) + "'", line);
  }
  return v;
}

Range parse_range(std::string_view text, std::size_t line) {
  const auto dash = text.find('-');
  if (dash == std::string_view::npos) {
    const std::size_t v = parse_count(text, line);
    return {v, v};
  }
  return {parse_count(utf8::trim(text.substr(0, dash)), line),
          parse_count(utf8::trim(text.substr(dash + 1)), line)};
}

std::vector<std::string_view> words(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < text.size() && text[j] != ' ' && text[j] != '\t') ++j;
    if (j > i) out.push_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::size_t below(std::size_t n) {
    const std::uint64_t limit = std::mt19937_64::max() - std::mt19937_64::max() % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return static_cast<std::size_t>(x % n);
  }

  std::size_t in(const Range& r) { return r.lo + below(r.hi - r.lo + 1); }

  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  template <typename T>
  const T& pick(const std::vector<T>& items) { return items[below(items.size())]; }

  template <typename T>
  void shuffle(std::vector<T>* items) {
    for (std::size_t i = items->size(); i > 1; --i) std::swap((*items)[i - 1], (*items)[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

std::string join(const std::vector<std::string>& tokens) {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

void collect_literals(const lexicon::PatternLexicon& lex, std::set<std::string>* keys) {
  for (const auto& [name, members] : lex.classes) {
    for (const auto& m : members) keys->insert(lexicon::literal_key(m));
  }
  for (const auto& p : lex.patterns) {
    for (const auto& slot : p.slots) {
      if (slot.kind == lexicon::Slot::Kind::kLiteral) keys->insert(lexicon::literal_key(slot.value));
    }
  }
}

struct Pools {
  std::vector<std::vector<std::string>> denial, hedge, cue;
  std::vector<std::string> positive, negative;
  std::set<std::string> forbidden;
};

Pools build_pools(const SyntheticSpec& spec, const lexicon::LexiconSet& lexicons) {
  Pools pools;
  auto expand = [](const lexicon::PatternLexicon& lex) {
    std::vector<std::vector<std::string>> out;
    for (auto& e : lexicon::expand_generalizations(lex)) out.push_back(std::move(e.tokens));
    return out;
  };
  for (const auto* lex : {&lexicons.agreement, &lexicons.denial, &lexicons.cue,
                          &lexicons.hedge, &lexicons.cogmech}) {
    if (*lex) collect_literals(**lex, &pools.forbidden);
  }
  if (lexicons.denial) pools.denial = expand(*lexicons.denial);
  if (lexicons.hedge) pools.hedge = expand(*lexicons.hedge);
  if (lexicons.cue) pools.cue = expand(*lexicons.cue);
  for (const auto& t : kAgreementTemplates) {
    for (auto w : words(t)) pools.forbidden.insert(lexicon::literal_key(w));
  }
  for (const auto& t : kGuardedTemplates) {
    for (auto w : words(t)) pools.forbidden.insert(lexicon::literal_key(w));
  }
  if (lexicons.mpqa) {
    // Words that another lexicon also matches would plant a second cue.
    const std::set<std::string> pattern_keys = pools.forbidden;
    for (const auto& [word, entry] : lexicons.mpqa->entries) {
      pools.forbidden.insert(lexicon::literal_key(word));
      const bool alpha = std::all_of(word.begin(), word.end(),
                                     [](char c) { return c >= 'a' && c <= 'z'; });
      if (!alpha || entry.strength != lexicon::Strength::kStrong) continue;
      if (pattern_keys.count(word)) continue;
      if (entry.polarity == lexicon::Polarity::kPositive) pools.positive.push_back(word);
      if (entry.polarity == lexicon::Polarity::kNegative) pools.negative.push_back(word);
    }
  }
  pools.forbidden.insert(lexicon::literal_key(spec.decoy_token));
  return pools;
}

void validate(const SyntheticSpec& spec, const lexicon::LexiconSet& lexicons, const Pools& pools) {
  if (spec.vocabulary_size == 0) throw ArgumentError("synthetic spec has an empty vocabulary");
  if (spec.topics.empty()) throw ArgumentError("synthetic spec declares no topics");
  std::set<std::string> names;
  for (const auto& t : spec.topics) {
    if (t.name.empty() || !names.insert(t.name).second) {
      throw ArgumentError("topic names must be non-empty and unique");
    }
  }
  for (const Range* r : {&spec.syllables, &spec.content_sentences, &spec.sentence_words}) {
    if (r->lo < 1 || r->lo > r->hi) throw ArgumentError("ranges need 1 <= lo <= hi");
  }
  for (double r : {spec.train_correlation, spec.test_correlation}) {
    if (!(r >= -1.0 && r <= 1.0)) throw ArgumentError("decoy correlation outside [-1, 1]");
  }
  if (!(spec.mean_agreement >= 1.0 && spec.mean_agreement <= 5.0)) {
    throw ArgumentError("mean_agreement must be in [1, 5]");
  }
  if (spec.decoy_token.empty() || words(spec.decoy_token).size() != 1) {
    throw ArgumentError("decoy token must be a single word");
  }
  bool any = false;
  for (const auto& [family, p] : spec.probability) {
    for (double v : p) {
      if (!(v >= 0.0 && v <= 1.0)) {
        throw ArgumentError(std::string("probability of ") +
                            std::string(cue_family_name(family)) + " outside [0, 1]");
      }
      any = any || v > 0.0;
    }
    const bool used = p[0] > 0.0 || p[1] > 0.0;
    bool available = true;
    switch (family) {
      case CueFamily::kAgreement:
      case CueFamily::kGuarded: available = lexicons.agreement.has_value(); break;
      case CueFamily::kDenial: available = !pools.denial.empty(); break;
      case CueFamily::kHedge: available = !pools.hedge.empty(); break;
      case CueFamily::kCueWord: available = !pools.cue.empty(); break;
      case CueFamily::kPositive: available = !pools.positive.empty(); break;
      case CueFamily::kNegative: available = !pools.negative.empty(); break;
      default: break;
    }
    if (used && !available) {
      throw ArgumentError(std::string(cue_family_name(family)) +
                          " cues requested but the lexicon supplying them is not loaded");
    }
  }
  if (!any) throw ArgumentError("every cue probability is zero; labels would be unrecoverable");
}

std::vector<std::vector<std::string>> build_vocabularies(const SyntheticSpec& spec,
                                                         const Pools& pools, Rng& rng) {
  std::set<std::string> used = pools.forbidden;
  std::vector<std::vector<std::string>> vocabularies;
  for (std::size_t t = 0; t < spec.topics.size(); ++t) {
    std::vector<std::string> vocab;
    std::size_t attempts = 0;
    while (vocab.size() < spec.vocabulary_size) {
      if (++attempts > 1000 * spec.vocabulary_size + 1000) {
        throw ArgumentError("cannot draw " + std::to_string(spec.vocabulary_size) +
                            " distinct words with the given syllable range");
      }
      std::string word;
      const std::size_t syllables = rng.in(spec.syllables);
      for (std::size_t s = 0; s < syllables; ++s) {
        word += kConsonants[rng.below(kConsonants.size())];
        word += kVowels[rng.below(kVowels.size())];
      }
      if (used.insert(word).second) vocab.push_back(word);
    }
    vocabularies.push_back(std::move(vocab));
  }
  return vocabularies;
}

struct Sentence {
  std::vector<std::string> tokens;
  char terminal = '.';
  bool content = true;
};

std::vector<std::string> content_words(const std::vector<std::string>& vocab, const Range& size,
                                       Rng& rng) {
  std::vector<std::string> out;
  const std::size_t n = rng.in(size);
  for (std::size_t i = 0; i < n; ++i) out.push_back(rng.pick(vocab));
  return out;
}

std::string render(const std::vector<Sentence>& sentences) {
  std::string text;
  for (const auto& s : sentences) {
    std::string body = join(s.tokens);
    if (!body.empty() && body[0] >= 'a' && body[0] <= 'z') body[0] = static_cast<char>(body[0] - 32);
    if (!text.empty()) text += ' ';
    text += body;
    text += s.terminal;
  }
  return text;
}

std::vector<std::string> tokens_of(std::string_view phrase) {
  std::vector<std::string> out;
  for (auto w : words(phrase)) out.emplace_back(w);
  return out;
}

std::string response_text(Label label, bool decoy, const SyntheticSpec& spec,
                          const std::vector<std::string>& vocab, const Pools& pools, Rng& rng) {
  const int li = label_index(label);
  std::vector<Sentence> sentences;
  const std::size_t content = rng.in(spec.content_sentences);
  for (std::size_t i = 0; i < content; ++i) {
    sentences.push_back({content_words(vocab, spec.sentence_words, rng), '.', true});
  }
  auto p = [&](CueFamily f) {
    auto it = spec.probability.find(f);
    return it == spec.probability.end() ? 0.0 : it->second[li];
  };
  auto random_content = [&]() -> Sentence& {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < sentences.size(); ++i) {
      if (sentences[i].content) idx.push_back(i);
    }
    return sentences[rng.pick(idx)];
  };
  auto insert_word = [&](const std::string& word) {
    Sentence& s = random_content();
    s.tokens.insert(s.tokens.begin() + static_cast<std::ptrdiff_t>(rng.below(s.tokens.size() + 1)),
                    word);
  };
  std::vector<Sentence> planted;
  auto lead = [&](std::vector<std::string> opener, std::size_t min_words) {
    Range r{std::max<std::size_t>(min_words, spec.sentence_words.lo / 2),
            std::max<std::size_t>(min_words, spec.sentence_words.hi / 2)};
    if (r.hi > 0) {
      for (auto& w : content_words(vocab, r, rng)) opener.push_back(std::move(w));
    }
    planted.push_back({std::move(opener), '.', false});
  };

  for (CueFamily f : kCueFamilies) {
    const double prob = p(f);
    if (prob <= 0.0 || rng.unit() >= prob) continue;
    switch (f) {
      case CueFamily::kAgreement:
        planted.push_back({tokens_of(rng.pick(kAgreementTemplates)), '.', false});
        break;
      case CueFamily::kGuarded:
        lead(tokens_of(rng.pick(kGuardedTemplates)), 2);
        break;
      case CueFamily::kDenial:
        lead(rng.pick(pools.denial), 0);
        break;
      case CueFamily::kHedge:
        lead(rng.pick(pools.hedge), 1);
        break;
      case CueFamily::kCueWord: {
        auto opener = rng.pick(pools.cue);
        opener.back() += ',';
        lead(std::move(opener), 2);
        break;
      }
      case CueFamily::kQuestion:
        random_content().terminal = '?';
        break;
      case CueFamily::kExclamation:
        random_content().terminal = '!';
        break;
      case CueFamily::kPositive:
        insert_word(rng.pick(pools.positive));
        break;
      case CueFamily::kNegative:
        insert_word(rng.pick(pools.negative));
        break;
    }
  }
  if (decoy) insert_word(spec.decoy_token);
  for (auto& s : planted) {
    const std::size_t at = rng.below(sentences.size() + 1);
    sentences.insert(sentences.begin() + static_cast<std::ptrdiff_t>(at), std::move(s));
  }
  return render(sentences);
}

}  // namespace

std::string_view cue_family_name(CueFamily family) {
  for (const auto& [f, name] : kFamilyNames) {
    if (f == family) return name;
  }
  return "?";
}

SyntheticSpec parse_synthetic_spec(std::istream& in) {
  SyntheticSpec spec;
  std::string raw;
  std::size_t line = 0;
  bool saw_topic = false;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view text = raw;
    if (auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
    text = utf8::trim(text);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected 'key = value'", line);
    const std::string key(utf8::trim(text.substr(0, eq)));
    const std::string_view value = utf8::trim(text.substr(eq + 1));
    const auto fields = words(value);

    if (key == "version") {
      spec.version = static_cast<int>(parse_count(value, line));
      if (spec.version != 1) throw ParseError("unsupported spec version", line);
    } else if (key == "topic") {
      if (!saw_topic) spec.topics.clear();
      saw_topic = true;
      if (fields.size() != 4 || (fields[1] != "train" && fields[1] != "test")) {
        throw ParseError("topic = <name> train|test <agree> <disagree>", line);
      }
      spec.topics.push_back({std::string(fields[0]), fields[1] == "train",
                             parse_count(fields[2], line), parse_count(fields[3], line)});
    } else if (key == "vocabulary_size") {
      spec.vocabulary_size = parse_count(value, line);
    } else if (key == "syllables") {
      spec.syllables = parse_range(value, line);
    } else if (key == "content_sentences") {
      spec.content_sentences = parse_range(value, line);
    } else if (key == "sentence_words") {
      spec.sentence_words = parse_range(value, line);
    } else if (key == "decoy_token") {
      spec.decoy_token = utf8::ascii_lower(value);
    } else if (key == "decoy_train_correlation") {
      spec.train_correlation = parse_real(value, line);
    } else if (key == "decoy_test_correlation") {
      spec.test_correlation = parse_real(value, line);
    } else if (key == "mean_agreement") {
      spec.mean_agreement = parse_real(value, line);
    } else if (key.rfind("cue.", 0) == 0) {
      const std::string family = key.substr(4);
      auto it = std::find_if(kFamilyNames.begin(), kFamilyNames.end(),
                             [&](const auto& e) { return e.second == family; });
      if (it == kFamilyNames.end()) throw ParseError("unknown cue family '" + family + "'", line);
      if (fields.size() != 2) throw ParseError(key + " = <p_agree> <p_disagree>", line);
      spec.probability[it->first] = {parse_real(fields[0], line), parse_real(fields[1], line)};
    } else {
      throw ParseError("unknown key '" + key + "'", line);
    }
  }
  return spec;
}

SyntheticSpec load_synthetic_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open synthetic spec " + path.string(), 0);
  try {
    return parse_synthetic_spec(in);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), e.line());
  }
}

std::vector<AnnotatedPair> generate_synthetic(std::uint64_t seed, const SyntheticSpec& spec,
                                              const lexicon::LexiconSet& lexicons) {
  const Pools pools = build_pools(spec, lexicons);
  validate(spec, lexicons, pools);
  Rng rng(seed);
  const auto vocabularies = build_vocabularies(spec, pools, rng);

  std::vector<AnnotatedPair> pairs;
  for (std::size_t t = 0; t < spec.topics.size(); ++t) {
    const TopicSpec& topic = spec.topics[t];
    const auto& vocab = vocabularies[t];
    const double r = topic.train ? spec.train_correlation : spec.test_correlation;

    std::vector<Label> labels(topic.agree, Label::kAgreement);
    labels.insert(labels.end(), topic.disagree, Label::kDisagreement);
    rng.shuffle(&labels);

    // Stratified decoy placement: an exact share of each label's responses.
    std::vector<bool> decoy(labels.size(), false);
    for (Label label : kLabels) {
      std::vector<std::size_t> members;
      for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == label) members.push_back(i);
      }
      const double share = label == Label::kAgreement ? (1.0 + r) / 2.0 : (1.0 - r) / 2.0;
      const auto count = static_cast<std::size_t>(
          std::llround(share * static_cast<double>(members.size())));
      rng.shuffle(&members);
      for (std::size_t i = 0; i < count && i < members.size(); ++i) decoy[members[i]] = true;
    }

    for (std::size_t i = 0; i < labels.size(); ++i) {
      AnnotatedPair pair;
      char id[32];
      std::snprintf(id, sizeof id, "%05zu", i + 1);
      pair.pair_id = topic.name + "-" + id;
      pair.topic = topic.name;
      pair.prior.post_id = pair.pair_id + "/prior";
      pair.response.post_id = pair.pair_id + "/response";
      std::vector<Sentence> prior;
      const std::size_t n = rng.in(spec.content_sentences);
      for (std::size_t s = 0; s < n; ++s) {
        prior.push_back({content_words(vocab, spec.sentence_words, rng), '.', true});
      }
      pair.prior.text = render(prior);
      pair.response.text = response_text(labels[i], decoy[i], spec, vocab, pools, rng);
      pair.mean_agreement =
          labels[i] == Label::kAgreement ? spec.mean_agreement : -spec.mean_agreement;
      pairs.push_back(std::move(pair));
    }
  }
  return pairs;
}

}  // namespace dissent::corpus
