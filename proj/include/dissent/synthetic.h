#ifndef DISSENT_SYNTHETIC_H_
#define DISSENT_SYNTHETIC_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "dissent/corpus.h"
#include "dissent/lexicons.h"
#include "dissent/types.h"

namespace dissent::corpus {

// Families of planted cues. Each has one insertion probability per label.
enum class CueFamily {
  kAgreement,    // "i agree", "you are right", ...
  kGuarded,      // agreement keyword followed by a contrast: "i agree but ..."
  kDenial,       // a concrete expansion of the denial lexicon
  kHedge,
  kCueWord,
  kQuestion,     // content sentence ends in '?'
  kExclamation,  // content sentence ends in '!'
  kPositive,     // a strong positive MPQA word
  kNegative,     // a strong negative MPQA word
};

inline constexpr std::array<CueFamily, 9> kCueFamilies = {
    CueFamily::kAgreement, CueFamily::kGuarded,  CueFamily::kDenial,
    CueFamily::kHedge,     CueFamily::kCueWord,  CueFamily::kQuestion,
    CueFamily::kExclamation, CueFamily::kPositive, CueFamily::kNegative};

std::string_view cue_family_name(CueFamily family);

struct TopicSpec {
  std::string name;
  bool train = true;
  std::size_t agree = 0;
  std::size_t disagree = 0;
};

struct Range {
  std::size_t lo = 1;
  std::size_t hi = 1;
};

// Parsed form of a synthetic corpus spec file (see data/synthetic/).
struct SyntheticSpec {
  int version = 1;
  std::vector<TopicSpec> topics;  // file order
  std::size_t vocabulary_size = 300;
  Range syllables{2, 3};
  Range content_sentences{1, 3};
  Range sentence_words{4, 9};
  std::string decoy_token = "zorblat";
  double train_correlation = 0.9;
  double test_correlation = -0.9;
  double mean_agreement = 3.0;
  // probability[family][label_index]
  std::map<CueFamily, std::array<double, 2>> probability;
};

// key = value lines; '#' starts a comment. Throws ParseError with the line
// number on syntax errors and unknown keys.
SyntheticSpec parse_synthetic_spec(std::istream& in);
SyntheticSpec load_synthetic_spec(const std::filesystem::path& path);

// Generates a corpus. Topics get disjoint nonsense vocabularies that no
// lexicon matches; cues are planted per label with the spec's
// probabilities; the decoy token is placed in exactly round((1 + r) / 2 * n)
// AGREEMENT and round((1 - r) / 2 * n) DISAGREEMENT responses of each topic,
// r being the train or test correlation. The output depends only on (seed,
// spec, lexicons).
//
// Throws ArgumentError for an empty vocabulary, a probability outside
// [0, 1], a correlation outside [-1, 1], or a spec in which every cue
// probability is zero. Cue families whose lexicon is absent must have zero
// probability.
std::vector<AnnotatedPair> generate_synthetic(std::uint64_t seed, const SyntheticSpec& spec,
                                              const lexicon::LexiconSet& lexicons);

}  // namespace dissent::corpus

#endif  // DISSENT_SYNTHETIC_H_
