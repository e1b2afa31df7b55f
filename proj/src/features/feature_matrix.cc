#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "dissent/error.h"
#include "dissent/features.h"
#include "dissent/tsv.h"

namespace dissent::features {

void write_matrix(std::ostream& out, const Dataset& data) {
  out << "pair_id";
  if (data.space) {
    for (const auto& attr : data.space->attributes()) out << '\t' << tsv::escape(attr.name);
  }
  out << "\tlabel\n";
  for (const auto& row : data.rows) {
    out << tsv::escape(row.id);
    for (double v : row.values) out << '\t' << tsv::format_double(v);
    out << '\t' << (row.label ? label_name(*row.label) : std::string_view("?")) << '\n';
  }
}

Dataset read_matrix(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  Dataset data;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto fields = tsv::split(line);

    if (!data.space) {
      if (fields.size() < 2 || fields.front() != "pair_id" || fields.back() != "label") {
        throw SchemaError("feature matrix header must be 'pair_id <attributes...> label'",
                          line_no);
      }
      std::vector<Attribute> attributes;
      std::optional<NgramVocabulary> vocab;
      for (std::size_t i = 1; i + 1 < fields.size(); ++i) {
        const std::string name = tsv::unescape(fields[i]);
        auto attr = attribute_from_name(name);
        if (!attr) throw SchemaError("unrecognized attribute '" + name + "'", line_no);
        if (attr->group == Group::kNgram && name.rfind(kPriorPrefix, 0) != 0) {
          if (!vocab) vocab = NgramVocabulary{};
          std::string term = name.substr(kNgramPrefix.size());
          const int order = 1 + static_cast<int>(std::count(term.begin(), term.end(), ' '));
          vocab->order = std::max(vocab->order, order);
          vocab->terms.push_back(std::move(term));
        }
        attributes.push_back(std::move(*attr));
      }
      width = attributes.size();
      data.space = std::make_shared<const FeatureSpace>(std::move(attributes), std::move(vocab));
      continue;
    }

    if (fields.size() != width + 2) {
      throw SchemaError("expected " + std::to_string(width + 2) + " fields, found " +
                            std::to_string(fields.size()),
                        line_no);
    }
    FeatureVector row;
    row.space = data.space;
    row.id = tsv::unescape(fields.front());
    row.values.reserve(width);
    for (std::size_t i = 1; i <= width; ++i) {
      double v;
      if (!tsv::parse_double(fields[i], &v)) {
        throw SchemaError("non-numeric cell '" + std::string(fields[i]) + "'", line_no);
      }
      row.values.push_back(v);
    }
    if (fields.back() != "?") {
      row.label = parse_label(fields.back());
      if (!row.label) {
        throw SchemaError("bad label '" + std::string(fields.back()) + "'", line_no);
      }
    }
    data.rows.push_back(std::move(row));
  }
  if (!data.space) throw SchemaError("empty feature matrix", line_no);
  return data;
}

namespace {

const char* polarity_key(PolarityMode mode) {
  return mode == PolarityMode::kMean ? "mean" : "sum";
}

const char* scope_key(text::NgramScope scope) {
  return scope == text::NgramScope::kWithPunct ? "with-punct" : "words";
}

std::map<std::string, std::string> key_values(std::istringstream& fields,
                                              std::size_t line_no) {
  std::map<std::string, std::string> out;
  std::string field;
  while (fields >> field) {
    const auto eq = field.find('=');
    if (eq == std::string::npos) throw ParseError("expected key=value, got '" + field + "'", line_no);
    out[field.substr(0, eq)] = field.substr(eq + 1);
  }
  return out;
}

std::string require(const std::map<std::string, std::string>& kv, const std::string& key,
                    std::size_t line_no) {
  auto it = kv.find(key);
  if (it == kv.end()) throw ParseError("missing '" + key + "'", line_no);
  return it->second;
}

std::size_t to_size(const std::string& text, std::size_t line_no) {
  double v;
  if (!tsv::parse_double(text, &v) || v < 0 || v != static_cast<double>(static_cast<std::size_t>(v))) {
    throw ParseError("expected a non-negative integer, got '" + text + "'", line_no);
  }
  return static_cast<std::size_t>(v);
}

bool to_flag(const std::string& text, std::size_t line_no) {
  if (text == "1") return true;
  if (text == "0") return false;
  throw ParseError("expected 0 or 1, got '" + text + "'", line_no);
}

bool next_line(std::istream& in, std::string* line, std::size_t* line_no) {
  while (std::getline(in, *line)) {
    ++*line_no;
    if (!line->empty() && line->back() == '\r') line->pop_back();
    if (!line->empty()) return true;
  }
  return false;
}

}  // namespace

void write_space(std::ostream& out, const FeatureSpace& space) {
  const auto& o = space.options();
  out << "space 1\n";
  out << "options polarity=" << polarity_key(o.polarity)
      << " include_prior=" << o.include_prior << " binary_ngrams=" << o.binary_ngrams
      << " negation_window=" << o.negation_window << " ngram_scope=" << scope_key(o.ngram.scope)
      << " sentence_scoped=" << o.ngram.sentence_scoped << '\n';
  if (const auto& v = space.vocabulary()) {
    out << "vocabulary order=" << v->order << " min_count=" << v->min_count << '\n';
  } else {
    out << "vocabulary none\n";
  }
  out << "attributes " << space.size() << '\n';
  for (const auto& attr : space.attributes()) out << tsv::escape(attr.name) << '\n';
  out << "end\n";
}

FeatureSpace read_space(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto expect = [&](std::string_view head) {
    if (!next_line(in, &line, &line_no)) throw ParseError("truncated space block", line_no);
    if (line.rfind(head, 0) != 0) {
      throw ParseError("expected '" + std::string(head) + "', got '" + line + "'", line_no);
    }
    return std::istringstream(line.substr(head.size()));
  };

  {
    auto rest = expect("space ");
    std::string version;
    rest >> version;
    if (version != "1") throw ParseError("unsupported space version '" + version + "'", line_no);
  }
  FeatureOptions options;
  {
    auto rest = expect("options");
    const auto kv = key_values(rest, line_no);
    const auto polarity = require(kv, "polarity", line_no);
    if (polarity != "sum" && polarity != "mean") throw ParseError("bad polarity mode", line_no);
    options.polarity = polarity == "mean" ? PolarityMode::kMean : PolarityMode::kSum;
    options.include_prior = to_flag(require(kv, "include_prior", line_no), line_no);
    options.binary_ngrams = to_flag(require(kv, "binary_ngrams", line_no), line_no);
    options.negation_window = to_size(require(kv, "negation_window", line_no), line_no);
    const auto scope = require(kv, "ngram_scope", line_no);
    if (scope != "words" && scope != "with-punct") throw ParseError("bad ngram scope", line_no);
    options.ngram.scope =
        scope == "with-punct" ? text::NgramScope::kWithPunct : text::NgramScope::kWordsOnly;
    options.ngram.sentence_scoped = to_flag(require(kv, "sentence_scoped", line_no), line_no);
  }
  std::optional<NgramVocabulary> vocab;
  {
    auto rest = expect("vocabulary");
    std::string first;
    std::istringstream peek(rest.str());
    peek >> first;
    if (first != "none") {
      const auto kv = key_values(rest, line_no);
      vocab = NgramVocabulary{};
      vocab->order = static_cast<int>(to_size(require(kv, "order", line_no), line_no));
      vocab->min_count = to_size(require(kv, "min_count", line_no), line_no);
    }
  }
  std::size_t count = 0;
  {
    auto rest = expect("attributes ");
    std::string n;
    rest >> n;
    count = to_size(n, line_no);
  }
  std::vector<Attribute> attributes;
  for (std::size_t i = 0; i < count; ++i) {
    if (!std::getline(in, line)) throw ParseError("truncated attribute list", line_no);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string name = tsv::unescape(line);
    auto attr = attribute_from_name(name);
    if (!attr) throw ParseError("unrecognized attribute '" + name + "'", line_no);
    if (attr->group == Group::kNgram && name.rfind(kPriorPrefix, 0) != 0) {
      if (!vocab) throw ParseError("ngram attribute without a vocabulary", line_no);
      vocab->terms.push_back(name.substr(kNgramPrefix.size()));
    }
    attributes.push_back(std::move(*attr));
  }
  expect("end");
  try {
    return FeatureSpace(std::move(attributes), std::move(vocab), options);
  } catch (const ArgumentError& e) {
    throw ParseError(e.what(), line_no);
  }
}

}  // namespace dissent::features
