#ifndef DISSENT_CORPUS_H_
#define DISSENT_CORPUS_H_

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dissent/types.h"

namespace dissent::corpus {

inline constexpr double kMinAgreement = -5.0;
inline constexpr double kMaxAgreement = 5.0;
inline constexpr const char* kUnknownTopic = "unknown";

struct Post {
  std::string post_id;
  std::string text;
  std::optional<std::string> author;

  bool operator==(const Post&) const = default;
};

// A prior post, its direct response, and the mean annotator judgment on the
// [-5, 5] agreement scale.
struct AnnotatedPair {
  std::string pair_id;
  std::string topic;
  Post prior;
  Post response;
  double mean_agreement = 0.0;

  bool operator==(const AnnotatedPair&) const = default;
};

struct LabeledPair {
  AnnotatedPair pair;
  Label label = Label::kAgreement;
};

struct DatasetSplit {
  std::vector<LabeledPair> train;
  std::vector<LabeledPair> test;
  std::set<std::string> train_topics;
  std::set<std::string> test_topics;
  // Pairs whose topic is in neither set.
  std::size_t excluded = 0;
};

struct LoadOptions {
  // When set, every topic must be one of these (or "unknown").
  std::optional<std::set<std::string>> declared_topics;
};

// Reads the tab-separated corpus format:
//   pair_id  topic  prior_text  response_text  mean_agreement
// plus the optional columns prior_id, response_id, prior_author and
// response_author. Columns are matched by header name. Blank lines and
// lines starting with '#' are skipped. Throws DecodeError, SchemaError,
// RangeError, EmptyPostError or DuplicateIdError with the offending line.
std::vector<AnnotatedPair> load_pairs(std::istream& in,
                                      const LoadOptions& options = {});

// Inverse of load_pairs. Optional columns are written only when some pair
// carries a non-default value for them.
void write_pairs(std::ostream& out, const std::vector<AnnotatedPair>& pairs);

struct ThresholdResult {
  std::vector<LabeledPair> labeled;
  std::size_t dropped = 0;
};

// mean >= hi is AGREEMENT, mean <= lo is DISAGREEMENT (both inclusive);
// anything strictly between is dropped.
ThresholdResult filter_by_threshold(const std::vector<AnnotatedPair>& pairs,
                                    double lo = -1.0, double hi = 1.0);

// Routes pairs by exact topic match. Throws ArgumentError if the topic sets
// overlap.
DatasetSplit split_by_topic(const std::vector<LabeledPair>& pairs,
                            const std::set<std::string>& train_topics,
                            const std::set<std::string>& test_topics);

struct TopicCounts {
  std::size_t agree = 0;
  std::size_t disagree = 0;
  std::size_t total() const { return agree + disagree; }
  bool operator==(const TopicCounts&) const = default;
};

std::map<std::string, TopicCounts> corpus_stats(
    const std::vector<LabeledPair>& pairs);

}  // namespace dissent::corpus

#endif  // DISSENT_CORPUS_H_
