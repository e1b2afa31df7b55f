#ifndef DISSENT_FEATURES_H_
#define DISSENT_FEATURES_H_

#include <array>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "dissent/corpus.h"
#include "dissent/lexicons.h"
#include "dissent/textproc.h"
#include "dissent/types.h"

namespace dissent::features {

enum class Group {
  kAgreement,
  kCue,
  kDenial,
  kHedge,
  kDuration,
  kPolarity,
  kPunctuation,
  kNgram,
};

// The seven theoretically motivated groups, in report order.
inline constexpr std::array<Group, 7> kTmGroups = {
    Group::kAgreement, Group::kCue,      Group::kDenial,     Group::kHedge,
    Group::kDuration,  Group::kPolarity, Group::kPunctuation};

std::string_view group_name(Group group);
std::optional<Group> parse_group(std::string_view name);

enum class AttributeKind { kCount, kLength, kSum };

struct Attribute {
  std::string name;
  Group group = Group::kAgreement;
  AttributeKind kind = AttributeKind::kCount;
  bool operator==(const Attribute&) const = default;
};

enum class PolarityMode { kSum, kMean };

struct FeatureOptions {
  PolarityMode polarity = PolarityMode::kSum;
  // Also featurize the prior post, under "prior."-prefixed attributes.
  bool include_prior = false;
  bool binary_ngrams = false;
  std::size_t negation_window = 3;
  text::NgramOptions ngram;
  bool operator==(const FeatureOptions&) const = default;
};

// Ngram terms (space-joined normalized tokens) of orders 1..order, built
// from training responses only.
struct NgramVocabulary {
  int order = 1;
  std::size_t min_count = 1;
  std::vector<std::string> terms;
};

inline constexpr std::string_view kNgramPrefix = "ng:";
inline constexpr std::string_view kPriorPrefix = "prior.";

class FeatureSpace {
 public:
  FeatureSpace() = default;
  FeatureSpace(std::vector<Attribute> attributes,
               std::optional<NgramVocabulary> vocabulary = std::nullopt,
               FeatureOptions options = {});

  const std::vector<Attribute>& attributes() const { return attributes_; }
  const Attribute& attribute(std::size_t i) const { return attributes_[i]; }
  std::size_t size() const { return attributes_.size(); }
  std::optional<std::size_t> index_of(std::string_view name) const;

  bool has_group(Group group) const;
  std::size_t group_arity(Group group) const;
  std::set<Group> groups() const;

  const std::optional<NgramVocabulary>& vocabulary() const { return vocabulary_; }
  const FeatureOptions& options() const { return options_; }

  // Attributes at `indices`, kept in this space's order.
  FeatureSpace restrict_to(const std::vector<std::size_t>& indices) const;
  FeatureSpace without_group(Group group) const;
  FeatureSpace only_group(Group group) const;

  bool same_attributes(const FeatureSpace& other) const;

 private:
  std::vector<Attribute> attributes_;
  std::map<std::string, std::size_t, std::less<>> index_;
  std::optional<NgramVocabulary> vocabulary_;
  FeatureOptions options_;
};

using SpacePtr = std::shared_ptr<const FeatureSpace>;

struct FeatureVector {
  SpacePtr space;
  std::vector<double> values;  // aligned with space->attributes()
  std::optional<Label> label;
  std::string id;
};

struct Dataset {
  SpacePtr space;
  std::vector<FeatureVector> rows;

  std::size_t size() const { return rows.size(); }
  bool empty() const { return rows.empty(); }
  // Per-class counts, indexed by label_index.
  std::array<std::size_t, 2> class_counts() const;
};

// Builds a space with the requested groups in canonical order. Cue
// attribute names come from the cue lexicon entries. Throws
// SpaceMismatchError when a group's lexicon is missing, or when NGRAM is
// requested without a vocabulary (and vice versa).
FeatureSpace make_space(const std::set<Group>& groups,
                        const lexicon::LexiconSet& lexicons,
                        const std::optional<NgramVocabulary>& vocabulary,
                        const FeatureOptions& options = {});

// Recovers group and kind from an attribute name ("cue.well", "ng:how can",
// "prior.denial", ...). Used when reading feature matrices back.
std::optional<Attribute> attribute_from_name(std::string_view name);

// --- extractors over a tokenized response ----------------------------------

struct CompiledLexicon {
  CompiledLexicon() = default;
  explicit CompiledLexicon(const lexicon::PatternLexicon& lexicon);

  std::vector<lexicon::Expansion> expansions;
  lexicon::PhraseMatcher matcher;
};

struct CompiledCues {
  CompiledCues() = default;
  explicit CompiledCues(const lexicon::PatternLexicon& cue);

  std::vector<std::string> entry_names;  // "well", "you_mean", "cogmech"
  lexicon::PhraseMatcher matcher;
  std::vector<std::size_t> phrase_entry;  // matcher phrase -> entry index
  std::optional<std::size_t> category_entry;
};

// Keywords of the agreement lexicon that are neither preceded by a <neg>
// token within `window` tokens nor followed by a <contrast> token, both
// within the same sentence.
std::size_t extract_agreement(const text::TokenList& response,
                              const lexicon::PatternLexicon& lexicon,
                              std::size_t window = 3);

std::size_t extract_denial(const text::TokenList& response,
                           const CompiledLexicon& denial);

// Matches per seed pattern (indexed like PatternLexicon::patterns).
std::vector<std::size_t> denial_matches_by_seed(const text::TokenList& response,
                                                const CompiledLexicon& denial,
                                                std::size_t seed_count);

// One count per cue entry; the category entry holds the COGMECH total.
std::vector<std::size_t> extract_cues(const text::TokenList& response,
                                      const CompiledCues& cues,
                                      const CompiledLexicon* cogmech);

std::size_t extract_hedges(const text::TokenList& response,
                           const CompiledLexicon& hedges);

struct Duration {
  std::size_t chars = 0;
  std::size_t words = 0;
  std::size_t sentences = 0;
  bool operator==(const Duration&) const = default;
};
Duration extract_duration(const text::TokenList& response);

struct PolarityScores {
  double positive = 0.0;
  double negative = 0.0;
};
PolarityScores extract_polarity(const text::TokenList& response,
                                const lexicon::PolarityLexicon& mpqa,
                                PolarityMode mode = PolarityMode::kSum);

struct PunctuationCounts {
  std::size_t question_marks = 0;
  std::size_t exclamations = 0;
  bool operator==(const PunctuationCounts&) const = default;
};
PunctuationCounts extract_punctuation(const text::TokenList& response);

// --- vocabulary and featurization ------------------------------------------

// All ngrams of orders 1..order over training responses with total
// frequency >= min_count, sorted by frequency (desc) then term. Throws
// ArgumentError unless order is 1 or 2 and train is non-empty.
NgramVocabulary build_vocabulary(const std::vector<corpus::LabeledPair>& train,
                                 int order, std::size_t min_count,
                                 const text::NgramOptions& options = {});

// Compiles the lexicons a space needs once, then featurizes pairs.
class Featurizer {
 public:
  Featurizer(SpacePtr space, const lexicon::LexiconSet& lexicons);

  const SpacePtr& space() const { return space_; }

  FeatureVector featurize(const corpus::LabeledPair& pair) const;

  // Values for one post's text, aligned with the space (prior-prefixed
  // attributes are left at zero).
  std::vector<double> featurize_text(std::string_view text) const;

  // Row order follows `pairs`. Work is split across `threads` workers; the
  // result does not depend on the thread count.
  Dataset featurize_all(const std::vector<corpus::LabeledPair>& pairs,
                        unsigned threads = 1) const;

 private:
  // Canonical TM block: agreement, cues..., denial, hedge, 3 duration,
  // 2 polarity, 2 punctuation. Groups not in the space stay zero.
  std::vector<double> tm_block(const text::TokenList& tokens) const;
  std::vector<double> ngram_block(const text::TokenList& tokens) const;
  void fill(std::string_view text, bool prior, std::vector<double>* values) const;

  SpacePtr space_;
  std::optional<lexicon::PatternLexicon> agreement_;
  std::optional<CompiledLexicon> denial_;
  std::optional<CompiledLexicon> hedge_;
  std::optional<CompiledLexicon> cogmech_;
  std::optional<CompiledCues> cues_;
  std::optional<lexicon::PolarityLexicon> mpqa_;
  std::map<std::string, std::size_t, std::less<>> ngram_index_;

  // Where each attribute's value comes from: a position in the canonical
  // TM block or in the ngram block, for the response or the prior post.
  struct Source {
    bool prior = false;
    bool ngram = false;
    std::size_t index = 0;
  };
  std::vector<Source> sources_;
  std::set<Group> groups_;
};

FeatureVector featurize(const corpus::LabeledPair& pair, const FeatureSpace& space,
                        const lexicon::LexiconSet& lexicons);

// Keeps the attributes of `target` (matched by name). Throws
// SpaceMismatchError if one is missing from the source.
Dataset project(const Dataset& data, SpacePtr target);

// Feature matrix interchange: a header "pair_id <attr>... label" followed by
// one tab-separated row per pair.
void write_matrix(std::ostream& out, const Dataset& data);
Dataset read_matrix(std::istream& in);

// A space with its options and vocabulary settings, in a line-oriented text
// block ("space 1" ... "end"). read_space throws ParseError on bad input.
void write_space(std::ostream& out, const FeatureSpace& space);
FeatureSpace read_space(std::istream& in);

}  // namespace dissent::features

#endif  // DISSENT_FEATURES_H_
