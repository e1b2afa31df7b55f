#include <algorithm>

#include "dissent/error.h"
#include "dissent/features.h"

namespace dissent::features {

namespace {

constexpr std::array<std::pair<Group, std::string_view>, 8> kGroupNames = {{
    {Group::kAgreement, "agreement"},
    {Group::kCue, "cue"},
    {Group::kDenial, "denial"},
    {Group::kHedge, "hedge"},
    {Group::kDuration, "duration"},
    {Group::kPolarity, "polarity"},
    {Group::kPunctuation, "punctuation"},
    {Group::kNgram, "ngram"},
}};

bool starts_with(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

}  // namespace

std::string_view group_name(Group group) {
  for (const auto& [g, name] : kGroupNames) {
    if (g == group) return name;
  }
  return "?";
}

std::optional<Group> parse_group(std::string_view name) {
  for (const auto& [g, n] : kGroupNames) {
    if (n == name) return g;
  }
  if (name == "cues" || name == "cue-words") return Group::kCue;
  if (name == "hedges") return Group::kHedge;
  return std::nullopt;
}

FeatureSpace::FeatureSpace(std::vector<Attribute> attributes,
                           std::optional<NgramVocabulary> vocabulary,
                           FeatureOptions options)
    : attributes_(std::move(attributes)),
      vocabulary_(std::move(vocabulary)),
      options_(options) {
  for (std::size_t i = 0; i < attributes_.size(); ++i) {
    if (!index_.emplace(attributes_[i].name, i).second) {
      throw ArgumentError("duplicate attribute name '" + attributes_[i].name + "'");
    }
  }
}

std::optional<std::size_t> FeatureSpace::index_of(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool FeatureSpace::has_group(Group group) const { return group_arity(group) > 0; }

std::size_t FeatureSpace::group_arity(Group group) const {
  return static_cast<std::size_t>(
      std::count_if(attributes_.begin(), attributes_.end(),
                    [&](const Attribute& a) { return a.group == group; }));
}

std::set<Group> FeatureSpace::groups() const {
  std::set<Group> out;
  for (const auto& a : attributes_) out.insert(a.group);
  return out;
}

FeatureSpace FeatureSpace::restrict_to(const std::vector<std::size_t>& indices) const {
  std::vector<std::size_t> sorted = indices;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<Attribute> kept;
  std::optional<NgramVocabulary> vocab;
  for (std::size_t i : sorted) {
    if (i >= attributes_.size()) throw ArgumentError("attribute index out of range");
    kept.push_back(attributes_[i]);
  }
  if (vocabulary_) {
    vocab = NgramVocabulary{vocabulary_->order, vocabulary_->min_count, {}};
    for (const auto& a : kept) {
      if (a.group == Group::kNgram && starts_with(a.name, kNgramPrefix)) {
        vocab->terms.push_back(a.name.substr(kNgramPrefix.size()));
      }
    }
    if (vocab->terms.empty()) vocab.reset();
  }
  return FeatureSpace(std::move(kept), std::move(vocab), options_);
}

FeatureSpace FeatureSpace::without_group(Group group) const {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < attributes_.size(); ++i) {
    if (attributes_[i].group != group) keep.push_back(i);
  }
  return restrict_to(keep);
}

FeatureSpace FeatureSpace::only_group(Group group) const {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < attributes_.size(); ++i) {
    if (attributes_[i].group == group) keep.push_back(i);
  }
  return restrict_to(keep);
}

bool FeatureSpace::same_attributes(const FeatureSpace& other) const {
  return attributes_ == other.attributes_;
}

std::array<std::size_t, 2> Dataset::class_counts() const {
  std::array<std::size_t, 2> counts{0, 0};
  for (const auto& row : rows) {
    if (row.label) ++counts[label_index(*row.label)];
  }
  return counts;
}

namespace {

std::vector<Attribute> tm_attributes(const std::set<Group>& groups,
                                     const lexicon::LexiconSet& lexicons,
                                     std::string_view prefix) {
  std::vector<Attribute> out;
  auto add = [&](std::string name, Group g, AttributeKind k) {
    out.push_back({std::string(prefix) + name, g, k});
  };
  for (Group g : kTmGroups) {
    if (!groups.count(g)) continue;
    switch (g) {
      case Group::kAgreement:
        if (!lexicons.agreement) {
          throw SpaceMismatchError("AGREEMENT group needs the agreement lexicon");
        }
        add("agreement", g, AttributeKind::kCount);
        break;
      case Group::kCue: {
        if (!lexicons.cue) throw SpaceMismatchError("CUE group needs the cue lexicon");
        CompiledCues cues(*lexicons.cue);
        if (cues.category_entry && !lexicons.cogmech) {
          throw SpaceMismatchError("CUE group needs the cogmech lexicon");
        }
        for (const auto& entry : cues.entry_names) {
          add("cue." + entry, g, AttributeKind::kCount);
        }
        break;
      }
      case Group::kDenial:
        if (!lexicons.denial) {
          throw SpaceMismatchError("DENIAL group needs the denial lexicon");
        }
        add("denial", g, AttributeKind::kCount);
        break;
      case Group::kHedge:
        if (!lexicons.hedge) throw SpaceMismatchError("HEDGE group needs the hedge lexicon");
        add("hedge", g, AttributeKind::kCount);
        break;
      case Group::kDuration:
        add("duration.chars", g, AttributeKind::kLength);
        add("duration.words", g, AttributeKind::kLength);
        add("duration.sentences", g, AttributeKind::kLength);
        break;
      case Group::kPolarity:
        if (!lexicons.mpqa) {
          throw SpaceMismatchError("POLARITY group needs the MPQA lexicon");
        }
        add("polarity.positive", g, AttributeKind::kSum);
        add("polarity.negative", g, AttributeKind::kSum);
        break;
      case Group::kPunctuation:
        add("punctuation.question", g, AttributeKind::kCount);
        add("punctuation.exclamation", g, AttributeKind::kCount);
        break;
      case Group::kNgram:
        break;
    }
  }
  return out;
}

}  // namespace

FeatureSpace make_space(const std::set<Group>& groups,
                        const lexicon::LexiconSet& lexicons,
                        const std::optional<NgramVocabulary>& vocabulary,
                        const FeatureOptions& options) {
  const bool wants_ngram = groups.count(Group::kNgram) > 0;
  if (wants_ngram != vocabulary.has_value()) {
    throw SpaceMismatchError(wants_ngram ? "NGRAM group needs a vocabulary"
                                         : "vocabulary given without NGRAM group");
  }
  std::vector<Attribute> attributes = tm_attributes(groups, lexicons, "");
  if (wants_ngram) {
    for (const auto& term : vocabulary->terms) {
      attributes.push_back({std::string(kNgramPrefix) + term, Group::kNgram,
                            AttributeKind::kCount});
    }
  }
  if (options.include_prior) {
    for (auto& a : tm_attributes(groups, lexicons, kPriorPrefix)) {
      attributes.push_back(std::move(a));
    }
  }
  return FeatureSpace(std::move(attributes), vocabulary, options);
}

std::optional<Attribute> attribute_from_name(std::string_view name) {
  std::string_view body = name;
  if (starts_with(body, kPriorPrefix)) body.remove_prefix(kPriorPrefix.size());
  if (starts_with(body, kNgramPrefix)) {
    if (body.size() == kNgramPrefix.size()) return std::nullopt;
    return Attribute{std::string(name), Group::kNgram, AttributeKind::kCount};
  }
  const auto dot = body.find('.');
  const auto group = parse_group(body.substr(0, dot));
  if (!group || *group == Group::kNgram) return std::nullopt;
  AttributeKind kind = AttributeKind::kCount;
  if (*group == Group::kDuration) kind = AttributeKind::kLength;
  if (*group == Group::kPolarity) kind = AttributeKind::kSum;
  return Attribute{std::string(name), *group, kind};
}

}  // namespace dissent::features
