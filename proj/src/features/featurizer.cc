#include <algorithm>
#include <thread>
#include <unordered_map>

#include "dissent/error.h"
#include "dissent/features.h"

namespace dissent::features {

namespace {

bool starts_with(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

// Canonical TM block names, with the cue entries spliced in after
// agreement.
std::vector<std::string> tm_block_names(const std::vector<std::string>& cue_entries) {
  std::vector<std::string> names = {"agreement"};
  for (const auto& e : cue_entries) names.push_back("cue." + e);
  for (const char* n : {"denial", "hedge", "duration.chars", "duration.words",
                        "duration.sentences", "polarity.positive",
                        "polarity.negative", "punctuation.question",
                        "punctuation.exclamation"}) {
    names.emplace_back(n);
  }
  return names;
}

}  // namespace

Featurizer::Featurizer(SpacePtr space, const lexicon::LexiconSet& lexicons)
    : space_(std::move(space)) {
  if (!space_) throw ArgumentError("featurizer needs a feature space");
  groups_ = space_->groups();
  auto need = [&](Group g) { return groups_.count(g) > 0; };

  if (need(Group::kAgreement)) {
    if (!lexicons.agreement) {
      throw SpaceMismatchError("space uses AGREEMENT but no agreement lexicon is loaded");
    }
    agreement_ = *lexicons.agreement;
  }
  if (need(Group::kDenial)) {
    if (!lexicons.denial) {
      throw SpaceMismatchError("space uses DENIAL but no denial lexicon is loaded");
    }
    denial_.emplace(*lexicons.denial);
  }
  if (need(Group::kHedge)) {
    if (!lexicons.hedge) {
      throw SpaceMismatchError("space uses HEDGE but no hedge lexicon is loaded");
    }
    hedge_.emplace(*lexicons.hedge);
  }
  if (need(Group::kCue)) {
    if (!lexicons.cue) {
      throw SpaceMismatchError("space uses CUE but no cue lexicon is loaded");
    }
    cues_.emplace(*lexicons.cue);
    if (cues_->category_entry) {
      if (!lexicons.cogmech) {
        throw SpaceMismatchError("cue category entry needs the cogmech lexicon");
      }
      cogmech_.emplace(*lexicons.cogmech);
    }
  }
  if (need(Group::kPolarity)) {
    if (!lexicons.mpqa) {
      throw SpaceMismatchError("space uses POLARITY but no MPQA lexicon is loaded");
    }
    mpqa_ = *lexicons.mpqa;
  }
  if (const auto& vocab = space_->vocabulary()) {
    for (std::size_t i = 0; i < vocab->terms.size(); ++i) {
      ngram_index_.emplace(vocab->terms[i], i);
    }
  }

  const auto names = tm_block_names(cues_ ? cues_->entry_names : std::vector<std::string>{});
  std::unordered_map<std::string, std::size_t> tm_index;
  for (std::size_t i = 0; i < names.size(); ++i) tm_index.emplace(names[i], i);

  for (const auto& attr : space_->attributes()) {
    Source src;
    std::string_view name = attr.name;
    if (starts_with(name, kPriorPrefix)) {
      src.prior = true;
      name.remove_prefix(kPriorPrefix.size());
    }
    if (attr.group == Group::kNgram) {
      auto it = ngram_index_.find(name.substr(kNgramPrefix.size()));
      if (!starts_with(name, kNgramPrefix) || it == ngram_index_.end()) {
        throw SpaceMismatchError("ngram attribute '" + attr.name + "' not in vocabulary");
      }
      src.ngram = true;
      src.index = it->second;
    } else {
      auto it = tm_index.find(std::string(name));
      if (it == tm_index.end()) {
        throw SpaceMismatchError("attribute '" + attr.name +
                                 "' has no extractor for the loaded lexicons");
      }
      src.index = it->second;
    }
    sources_.push_back(src);
  }
}

std::vector<double> Featurizer::tm_block(const text::TokenList& tokens) const {
  const std::size_t cue_count = cues_ ? cues_->entry_names.size() : 0;
  std::vector<double> block(cue_count + 10, 0.0);
  std::size_t at = 0;
  if (agreement_) {
    block[at] = static_cast<double>(
        extract_agreement(tokens, *agreement_, space_->options().negation_window));
  }
  ++at;
  if (cues_) {
    const auto counts = extract_cues(tokens, *cues_, cogmech_ ? &*cogmech_ : nullptr);
    for (std::size_t i = 0; i < counts.size(); ++i) {
      block[at + i] = static_cast<double>(counts[i]);
    }
  }
  at += cue_count;
  if (denial_) block[at] = static_cast<double>(extract_denial(tokens, *denial_));
  ++at;
  if (hedge_) block[at] = static_cast<double>(extract_hedges(tokens, *hedge_));
  ++at;
  if (groups_.count(Group::kDuration)) {
    const auto d = extract_duration(tokens);
    block[at] = static_cast<double>(d.chars);
    block[at + 1] = static_cast<double>(d.words);
    block[at + 2] = static_cast<double>(d.sentences);
  }
  at += 3;
  if (mpqa_) {
    const auto p = extract_polarity(tokens, *mpqa_, space_->options().polarity);
    block[at] = p.positive;
    block[at + 1] = p.negative;
  }
  at += 2;
  if (groups_.count(Group::kPunctuation)) {
    const auto p = extract_punctuation(tokens);
    block[at] = static_cast<double>(p.question_marks);
    block[at + 1] = static_cast<double>(p.exclamations);
  }
  return block;
}

std::vector<double> Featurizer::ngram_block(const text::TokenList& tokens) const {
  std::vector<double> block(ngram_index_.size(), 0.0);
  const auto& vocab = space_->vocabulary();
  if (!vocab) return block;
  for (int n = 1; n <= vocab->order; ++n) {
    for (const auto& [gram, count] : text::ngrams(tokens, n, space_->options().ngram)) {
      auto it = ngram_index_.find(text::join_ngram(gram));
      if (it == ngram_index_.end()) continue;
      block[it->second] += space_->options().binary_ngrams ? 1.0 : static_cast<double>(count);
    }
  }
  if (space_->options().binary_ngrams) {
    for (auto& v : block) v = std::min(v, 1.0);
  }
  return block;
}

void Featurizer::fill(std::string_view text, bool prior,
                      std::vector<double>* values) const {
  const auto tokens = text::tokenize(text);
  const auto tm = tm_block(tokens);
  std::vector<double> ngram;
  if (!prior && groups_.count(Group::kNgram)) ngram = ngram_block(tokens);
  for (std::size_t i = 0; i < sources_.size(); ++i) {
    const Source& src = sources_[i];
    if (src.prior != prior) continue;
    if (src.ngram) {
      if (!prior) (*values)[i] = ngram[src.index];
    } else {
      (*values)[i] = tm[src.index];
    }
  }
}

std::vector<double> Featurizer::featurize_text(std::string_view text) const {
  std::vector<double> values(space_->size(), 0.0);
  fill(text, false, &values);
  return values;
}

FeatureVector Featurizer::featurize(const corpus::LabeledPair& pair) const {
  FeatureVector v;
  v.space = space_;
  v.values.assign(space_->size(), 0.0);
  fill(pair.pair.response.text, false, &v.values);
  if (space_->options().include_prior) fill(pair.pair.prior.text, true, &v.values);
  v.label = pair.label;
  v.id = pair.pair.pair_id;
  return v;
}

Dataset Featurizer::featurize_all(const std::vector<corpus::LabeledPair>& pairs,
                                  unsigned threads) const {
  Dataset data;
  data.space = space_;
  data.rows.resize(pairs.size());
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(pairs.size())));
  if (threads <= 1) {
    for (std::size_t i = 0; i < pairs.size(); ++i) data.rows[i] = featurize(pairs[i]);
    return data;
  }
  std::vector<std::thread> workers;
  for (unsigned t = 0; t < threads; ++t) {
    workers.emplace_back([&, t] {
      for (std::size_t i = t; i < pairs.size(); i += threads) {
        data.rows[i] = featurize(pairs[i]);
      }
    });
  }
  for (auto& w : workers) w.join();
  return data;
}

FeatureVector featurize(const corpus::LabeledPair& pair, const FeatureSpace& space,
                        const lexicon::LexiconSet& lexicons) {
  return Featurizer(std::make_shared<const FeatureSpace>(space), lexicons).featurize(pair);
}

NgramVocabulary build_vocabulary(const std::vector<corpus::LabeledPair>& train,
                                 int order, std::size_t min_count,
                                 const text::NgramOptions& options) {
  if (order != 1 && order != 2) throw ArgumentError("ngram vocabulary order must be 1 or 2");
  if (train.empty()) throw ArgumentError("cannot build a vocabulary from no pairs");
  std::unordered_map<std::string, std::size_t> freq;
  for (const auto& pair : train) {
    const auto tokens = text::tokenize(pair.pair.response.text);
    for (int n = 1; n <= order; ++n) {
      for (const auto& [gram, count] : text::ngrams(tokens, n, options)) {
        freq[text::join_ngram(gram)] += count;
      }
    }
  }
  std::vector<std::pair<std::string, std::size_t>> items;
  for (auto& [term, count] : freq) {
    if (count >= min_count) items.emplace_back(term, count);
  }
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  NgramVocabulary vocab;
  vocab.order = order;
  vocab.min_count = min_count;
  vocab.terms.reserve(items.size());
  for (auto& [term, count] : items) vocab.terms.push_back(std::move(term));
  return vocab;
}

Dataset project(const Dataset& data, SpacePtr target) {
  if (!data.space || !target) throw ArgumentError("project needs both spaces");
  std::vector<std::size_t> from;
  from.reserve(target->size());
  for (const auto& attr : target->attributes()) {
    auto idx = data.space->index_of(attr.name);
    if (!idx) throw SpaceMismatchError("attribute '" + attr.name + "' not in source space");
    from.push_back(*idx);
  }
  Dataset out;
  out.space = target;
  out.rows.reserve(data.rows.size());
  for (const auto& row : data.rows) {
    FeatureVector v;
    v.space = target;
    v.label = row.label;
    v.id = row.id;
    v.values.reserve(from.size());
    for (std::size_t i : from) v.values.push_back(row.values[i]);
    out.rows.push_back(std::move(v));
  }
  return out;
}

}  // namespace dissent::features
