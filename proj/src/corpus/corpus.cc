#include "dissent/corpus.h"

#include <array>
#include <istream>
#include <ostream>
#include <unordered_set>

#include "dissent/error.h"
#include "dissent/tsv.h"
#include "dissent/utf8.h"

namespace dissent::corpus {

namespace {

constexpr std::array<const char*, 5> kRequiredColumns = {
    "pair_id", "topic", "prior_text", "response_text", "mean_agreement"};
constexpr std::array<const char*, 4> kOptionalColumns = {
    "prior_id", "response_id", "prior_author", "response_author"};

std::string default_post_id(const std::string& pair_id, const char* role) {
  return pair_id + "/" + role;
}

struct ColumnMap {
  std::map<std::string, std::size_t> index;

  std::optional<std::size_t> find(const std::string& name) const {
    auto it = index.find(name);
    if (it == index.end()) return std::nullopt;
    return it->second;
  }
};

}  // namespace

std::vector<AnnotatedPair> load_pairs(std::istream& in,
                                      const LoadOptions& options) {
  std::vector<AnnotatedPair> pairs;
  std::unordered_set<std::string> seen_ids;
  std::optional<ColumnMap> columns;
  std::string line;
  std::size_t line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!utf8::is_valid(line)) {
      throw DecodeError("invalid UTF-8", line_no);
    }
    if (line.empty() || line.front() == '#') continue;
    const auto fields = tsv::split(line);

    if (!columns) {
      ColumnMap map;
      for (std::size_t i = 0; i < fields.size(); ++i) {
        map.index.emplace(std::string(utf8::trim(fields[i])), i);
      }
      for (const char* name : kRequiredColumns) {
        if (!map.find(name)) {
          throw SchemaError(std::string("missing column '") + name + "'",
                            line_no);
        }
      }
      columns = std::move(map);
      continue;
    }

    if (fields.size() != columns->index.size()) {
      throw SchemaError("expected " + std::to_string(columns->index.size()) +
                            " fields, found " + std::to_string(fields.size()),
                        line_no);
    }
    auto field = [&](const char* name) -> std::optional<std::string> {
      auto idx = columns->find(name);
      if (!idx) return std::nullopt;
      return tsv::unescape(fields[*idx]);
    };

    AnnotatedPair pair;
    pair.pair_id = *field("pair_id");
    if (utf8::trim(pair.pair_id).empty()) {
      throw SchemaError("empty pair_id", line_no);
    }
    if (!seen_ids.insert(pair.pair_id).second) {
      throw DuplicateIdError("duplicate pair_id '" + pair.pair_id + "'",
                             line_no);
    }
    pair.topic = std::string(utf8::trim(*field("topic")));
    if (pair.topic.empty()) pair.topic = kUnknownTopic;
    if (options.declared_topics && pair.topic != kUnknownTopic &&
        !options.declared_topics->count(pair.topic)) {
      throw SchemaError("undeclared topic '" + pair.topic + "'", line_no);
    }

    pair.prior.text = *field("prior_text");
    pair.response.text = *field("response_text");
    if (utf8::trim(pair.prior.text).empty()) {
      throw EmptyPostError("empty prior post in pair '" + pair.pair_id + "'",
                           line_no);
    }
    if (utf8::trim(pair.response.text).empty()) {
      throw EmptyPostError(
          "empty response post in pair '" + pair.pair_id + "'", line_no);
    }

    auto non_empty = [](std::optional<std::string> v) {
      return v && !v->empty() ? v : std::nullopt;
    };
    pair.prior.post_id = non_empty(field("prior_id"))
                             .value_or(default_post_id(pair.pair_id, "prior"));
    pair.response.post_id =
        non_empty(field("response_id"))
            .value_or(default_post_id(pair.pair_id, "response"));
    pair.prior.author = non_empty(field("prior_author"));
    pair.response.author = non_empty(field("response_author"));

    const std::string raw_mean(utf8::trim(fields[*columns->find("mean_agreement")]));
    if (!tsv::parse_double(raw_mean, &pair.mean_agreement)) {
      throw SchemaError("mean_agreement '" + raw_mean + "' is not a number",
                        line_no);
    }
    if (pair.mean_agreement < kMinAgreement ||
        pair.mean_agreement > kMaxAgreement) {
      throw RangeError("mean_agreement " + raw_mean + " of pair '" +
                           pair.pair_id + "' outside [-5, 5]",
                       line_no);
    }
    pairs.push_back(std::move(pair));
  }
  if (in.bad()) throw Error("read failure while loading corpus");
  if (!columns) throw SchemaError("missing header row", line_no);
  return pairs;
}

void write_pairs(std::ostream& out, const std::vector<AnnotatedPair>& pairs) {
  bool ids = false;
  bool prior_author = false;
  bool response_author = false;
  for (const auto& p : pairs) {
    ids = ids || p.prior.post_id != default_post_id(p.pair_id, "prior") ||
          p.response.post_id != default_post_id(p.pair_id, "response");
    prior_author = prior_author || p.prior.author.has_value();
    response_author = response_author || p.response.author.has_value();
  }

  out << "pair_id\ttopic\tprior_text\tresponse_text\tmean_agreement";
  if (ids) out << '\t' << kOptionalColumns[0] << '\t' << kOptionalColumns[1];
  if (prior_author) out << '\t' << kOptionalColumns[2];
  if (response_author) out << '\t' << kOptionalColumns[3];
  out << '\n';

  for (const auto& p : pairs) {
    out << tsv::escape(p.pair_id) << '\t' << tsv::escape(p.topic) << '\t'
        << tsv::escape(p.prior.text) << '\t' << tsv::escape(p.response.text)
        << '\t' << tsv::format_double(p.mean_agreement);
    if (ids) {
      out << '\t' << tsv::escape(p.prior.post_id) << '\t'
          << tsv::escape(p.response.post_id);
    }
    if (prior_author) out << '\t' << tsv::escape(p.prior.author.value_or(""));
    if (response_author) {
      out << '\t' << tsv::escape(p.response.author.value_or(""));
    }
    out << '\n';
  }
}

ThresholdResult filter_by_threshold(const std::vector<AnnotatedPair>& pairs,
                                    double lo, double hi) {
  if (!(lo < hi)) {
    throw ArgumentError("threshold lo must be below hi");
  }
  ThresholdResult result;
  for (const auto& pair : pairs) {
    if (pair.mean_agreement >= hi) {
      result.labeled.push_back({pair, Label::kAgreement});
    } else if (pair.mean_agreement <= lo) {
      result.labeled.push_back({pair, Label::kDisagreement});
    } else {
      ++result.dropped;
    }
  }
  return result;
}

DatasetSplit split_by_topic(const std::vector<LabeledPair>& pairs,
                            const std::set<std::string>& train_topics,
                            const std::set<std::string>& test_topics) {
  for (const auto& topic : train_topics) {
    if (test_topics.count(topic)) {
      throw ArgumentError("topic '" + topic + "' is in both train and test");
    }
  }
  DatasetSplit split;
  split.train_topics = train_topics;
  split.test_topics = test_topics;
  for (const auto& pair : pairs) {
    if (train_topics.count(pair.pair.topic)) {
      split.train.push_back(pair);
    } else if (test_topics.count(pair.pair.topic)) {
      split.test.push_back(pair);
    } else {
      ++split.excluded;
    }
  }
  return split;
}

std::map<std::string, TopicCounts> corpus_stats(
    const std::vector<LabeledPair>& pairs) {
  std::map<std::string, TopicCounts> table;
  for (const auto& p : pairs) {
    auto& counts = table[p.pair.topic];
    if (p.label == Label::kAgreement) {
      ++counts.agree;
    } else {
      ++counts.disagree;
    }
  }
  return table;
}

}  // namespace dissent::corpus
