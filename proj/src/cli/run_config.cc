#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "dissent/cli.h"
#include "dissent/eval.h"
#include "dissent/features.h"
#include "dissent/tsv.h"
#include "dissent/utf8.h"

#ifndef DISSENT_DATA_DIR
#define DISSENT_DATA_DIR "data"
#endif

namespace dissent::cli {

namespace {

std::string trimmed(std::string_view s) { return std::string(utf8::trim(s)); }

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= value.size()) {
    const std::size_t comma = std::min(value.find(',', start), value.size());
    std::string item = trimmed(std::string_view(value).substr(start, comma - start));
    if (!item.empty()) out.push_back(std::move(item));
    start = comma + 1;
  }
  return out;
}

std::string join_list(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& item : items) {
    if (!out.empty()) out += ',';
    out += item;
  }
  return out;
}

template <typename T>
T parse_unsigned(const std::string& key, const std::string& value) {
  T out{};
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size() || value.empty()) {
    throw ConfigError(key + ": expected a non-negative integer, got '" + value + "'");
  }
  return out;
}

double parse_real(const std::string& key, const std::string& value) {
  double out = 0.0;
  if (!tsv::parse_double(value, &out)) {
    throw ConfigError(key + ": expected a number, got '" + value + "'");
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  const std::string v = utf8::ascii_lower(value);
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw ConfigError(key + ": expected true or false, got '" + value + "'");
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

std::optional<fs::path> optional_path(const std::string& value) {
  if (value.empty()) return std::nullopt;
  return fs::path(value);
}

using Setter = std::function<void(RunConfig&, const std::string& key, const std::string&)>;
using Getter = std::function<std::string(const RunConfig&)>;

struct Key {
  const char* name;
  Setter set;
  Getter get;
};

const std::vector<Key>& keys() {
  static const std::vector<Key> table = {
      {"corpus", [](RunConfig& c, auto&, auto& v) { c.corpus = optional_path(v); },
       [](const RunConfig& c) { return c.corpus ? c.corpus->string() : ""; }},
      {"synthetic_spec", [](RunConfig& c, auto&, auto& v) { c.synthetic_spec = optional_path(v); },
       [](const RunConfig& c) { return c.synthetic_spec ? c.synthetic_spec->string() : ""; }},
      {"synthetic_seed",
       [](RunConfig& c, auto& k, auto& v) { c.synthetic_seed = parse_unsigned<std::uint64_t>(k, v); },
       [](const RunConfig& c) { return std::to_string(c.synthetic_seed); }},
      {"lexicon_dir", [](RunConfig& c, auto&, auto& v) { c.lexicon_dir = v; },
       [](const RunConfig& c) { return c.lexicon_dir.string(); }},
      {"mpqa", [](RunConfig& c, auto&, auto& v) { c.mpqa = optional_path(v); },
       [](const RunConfig& c) { return c.mpqa ? c.mpqa->string() : ""; }},
      {"output_dir", [](RunConfig& c, auto&, auto& v) { c.output_dir = v; },
       [](const RunConfig& c) { return c.output_dir.string(); }},
      {"train_topics", [](RunConfig& c, auto&, auto& v) { c.train_topics = split_list(v); },
       [](const RunConfig& c) { return join_list(c.train_topics); }},
      {"test_topics", [](RunConfig& c, auto&, auto& v) { c.test_topics = split_list(v); },
       [](const RunConfig& c) { return join_list(c.test_topics); }},
      {"threshold_lo", [](RunConfig& c, auto& k, auto& v) { c.threshold_lo = parse_real(k, v); },
       [](const RunConfig& c) { return tsv::format_double(c.threshold_lo); }},
      {"threshold_hi", [](RunConfig& c, auto& k, auto& v) { c.threshold_hi = parse_real(k, v); },
       [](const RunConfig& c) { return tsv::format_double(c.threshold_hi); }},
      {"mode", [](RunConfig& c, auto&, auto& v) { c.mode = utf8::ascii_lower(v); },
       [](const RunConfig& c) { return c.mode; }},
      {"groups", [](RunConfig& c, auto&, auto& v) { c.groups = split_list(v); },
       [](const RunConfig& c) { return join_list(c.groups); }},
      {"learners", [](RunConfig& c, auto&, auto& v) { c.learners = split_list(v); },
       [](const RunConfig& c) { return join_list(c.learners); }},
      {"sweep_base", [](RunConfig& c, auto&, auto& v) { c.sweep_base = v; },
       [](const RunConfig& c) { return c.sweep_base; }},
      {"sweep_ks",
       [](RunConfig& c, auto& k, auto& v) {
         c.sweep_ks.clear();
         for (const auto& item : split_list(v)) {
           c.sweep_ks.push_back(parse_unsigned<std::size_t>(k, item));
         }
       },
       [](const RunConfig& c) {
         std::string out;
         for (std::size_t k : c.sweep_ks) out += (out.empty() ? "" : ",") + std::to_string(k);
         return out;
       }},
      {"sweep_reference", [](RunConfig& c, auto&, auto& v) { c.sweep_reference = v; },
       [](const RunConfig& c) { return c.sweep_reference; }},
      {"fit_on_test", [](RunConfig& c, auto& k, auto& v) { c.fit_on_test = parse_bool(k, v); },
       [](const RunConfig& c) { return bool_text(c.fit_on_test); }},
      {"per_topic", [](RunConfig& c, auto& k, auto& v) { c.per_topic = parse_bool(k, v); },
       [](const RunConfig& c) { return bool_text(c.per_topic); }},
      {"include_prior", [](RunConfig& c, auto& k, auto& v) { c.include_prior = parse_bool(k, v); },
       [](const RunConfig& c) { return bool_text(c.include_prior); }},
      {"binary_ngrams", [](RunConfig& c, auto& k, auto& v) { c.binary_ngrams = parse_bool(k, v); },
       [](const RunConfig& c) { return bool_text(c.binary_ngrams); }},
      {"polarity", [](RunConfig& c, auto&, auto& v) { c.polarity = utf8::ascii_lower(v); },
       [](const RunConfig& c) { return c.polarity; }},
      {"ngram_scope", [](RunConfig& c, auto&, auto& v) { c.ngram_scope = utf8::ascii_lower(v); },
       [](const RunConfig& c) { return c.ngram_scope; }},
      {"ngram_sentence_scoped",
       [](RunConfig& c, auto& k, auto& v) { c.ngram_sentence_scoped = parse_bool(k, v); },
       [](const RunConfig& c) { return bool_text(c.ngram_sentence_scoped); }},
      {"ngram_min_count",
       [](RunConfig& c, auto& k, auto& v) { c.ngram_min_count = parse_unsigned<std::size_t>(k, v); },
       [](const RunConfig& c) { return std::to_string(c.ngram_min_count); }},
      {"negation_window",
       [](RunConfig& c, auto& k, auto& v) { c.negation_window = parse_unsigned<std::size_t>(k, v); },
       [](const RunConfig& c) { return std::to_string(c.negation_window); }},
      {"seed", [](RunConfig& c, auto& k, auto& v) { c.seed = parse_unsigned<std::uint64_t>(k, v); },
       [](const RunConfig& c) { return std::to_string(c.seed); }},
      {"threads", [](RunConfig& c, auto& k, auto& v) { c.threads = parse_unsigned<unsigned>(k, v); },
       [](const RunConfig& c) { return std::to_string(c.threads); }},
      {"folds", [](RunConfig& c, auto& k, auto& v) { c.folds = parse_unsigned<std::size_t>(k, v); },
       [](const RunConfig& c) { return std::to_string(c.folds); }},
      {"tree.confidence",
       [](RunConfig& c, auto& k, auto& v) { c.tree.confidence = parse_real(k, v); },
       [](const RunConfig& c) { return tsv::format_double(c.tree.confidence); }},
      {"tree.min_leaf",
       [](RunConfig& c, auto& k, auto& v) { c.tree.min_leaf = parse_unsigned<std::size_t>(k, v); },
       [](const RunConfig& c) { return std::to_string(c.tree.min_leaf); }},
      {"tree.prune", [](RunConfig& c, auto& k, auto& v) { c.tree.prune = parse_bool(k, v); },
       [](const RunConfig& c) { return bool_text(c.tree.prune); }},
      {"tree.mdl_correction",
       [](RunConfig& c, auto& k, auto& v) { c.tree.mdl_correction = parse_bool(k, v); },
       [](const RunConfig& c) { return bool_text(c.tree.mdl_correction); }},
      {"tree.average_gain_filter",
       [](RunConfig& c, auto& k, auto& v) { c.tree.average_gain_filter = parse_bool(k, v); },
       [](const RunConfig& c) { return bool_text(c.tree.average_gain_filter); }},
      {"forest.num_trees",
       [](RunConfig& c, auto& k, auto& v) { c.forest.num_trees = parse_unsigned<std::size_t>(k, v); },
       [](const RunConfig& c) { return std::to_string(c.forest.num_trees); }},
      {"forest.features_per_split",
       [](RunConfig& c, auto& k, auto& v) {
         c.forest.features_per_split = parse_unsigned<std::size_t>(k, v);
       },
       [](const RunConfig& c) { return std::to_string(c.forest.features_per_split); }},
      {"forest.bootstrap",
       [](RunConfig& c, auto& k, auto& v) { c.forest.bootstrap = parse_bool(k, v); },
       [](const RunConfig& c) { return bool_text(c.forest.bootstrap); }},
  };
  return table;
}

void check_path(const std::string& key, const fs::path& path, bool directory) {
  std::error_code ec;
  const bool ok = directory ? fs::is_directory(path, ec) : fs::is_regular_file(path, ec);
  if (!ok) throw ConfigError(key + ": no such " + (directory ? "directory" : "file") + ": " +
                             path.string());
}

}  // namespace

RunConfig default_run_config() {
  RunConfig config;
  config.lexicon_dir = fs::path(DISSENT_DATA_DIR) / "lexicons";
  config.mpqa = fs::path(DISSENT_DATA_DIR) / "lexicons" / "mpqa_approx.tff";
  return config;
}

void set_config_value(RunConfig* config, const std::string& key, const std::string& value) {
  for (const auto& k : keys()) {
    if (key == k.name) {
      k.set(*config, key, trimmed(value));
      return;
    }
  }
  throw ConfigError("unknown config key '" + key + "'");
}

RunConfig parse_run_config(std::istream& in, RunConfig base) {
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string t = trimmed(line);
    if (t.empty() || t[0] == '#') continue;
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(number) + ": expected 'key = value'");
    }
    try {
      set_config_value(&base, trimmed(std::string_view(t).substr(0, eq)), t.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(number) + ": " + e.what());
    }
  }
  return base;
}

RunConfig load_run_config(const fs::path& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file: " + path.string());
  try {
    return parse_run_config(in, std::move(base));
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

void validate_run_config(const RunConfig& config) {
  if (config.corpus && config.synthetic_spec) {
    throw ConfigError("set either corpus or synthetic_spec, not both");
  }
  if (!config.corpus && !config.synthetic_spec) {
    throw ConfigError("one of corpus or synthetic_spec is required");
  }
  if (config.corpus) check_path("corpus", *config.corpus, false);
  if (config.synthetic_spec) check_path("synthetic_spec", *config.synthetic_spec, false);
  check_path("lexicon_dir", config.lexicon_dir, true);
  if (config.mpqa) check_path("mpqa", *config.mpqa, false);
  if (config.corpus && config.train_topics.empty()) {
    throw ConfigError("train_topics is required with a corpus file");
  }
  if (!(config.threshold_lo < config.threshold_hi)) {
    throw ConfigError("threshold_lo must be below threshold_hi");
  }
  if (config.mode != "compare" && config.mode != "ablate" && config.mode != "individual" &&
      config.mode != "sweep") {
    throw ConfigError("mode must be compare, ablate, individual or sweep, got '" + config.mode +
                      "'");
  }
  if (config.learners.empty()) throw ConfigError("learners must not be empty");
  for (const auto& l : config.learners) {
    try {
      eval::parse_learner(l);
    } catch (const ArgumentError& e) {
      throw ConfigError(std::string("learners: ") + e.what());
    }
  }
  try {
    if (config.mode == "compare") {
      for (const auto& g : config.groups) eval::parse_feature_set(g);
    } else if (config.mode == "ablate" || config.mode == "individual") {
      for (const auto& g : config.groups) {
        const auto group = features::parse_group(g);
        if (!group || *group == features::Group::kNgram) {
          throw ConfigError("groups: '" + g + "' is not a theoretically motivated group");
        }
      }
    } else {
      eval::parse_feature_set(config.sweep_base);
      if (!config.sweep_reference.empty()) eval::parse_feature_set(config.sweep_reference);
      if (config.sweep_ks.empty()) throw ConfigError("sweep_ks must not be empty");
      for (std::size_t k : config.sweep_ks) {
        if (k == 0) throw ConfigError("sweep_ks entries must be positive");
      }
    }
  } catch (const ArgumentError& e) {
    throw ConfigError(std::string("groups: ") + e.what());
  }
  if (config.polarity != "sum" && config.polarity != "mean") {
    throw ConfigError("polarity must be sum or mean, got '" + config.polarity + "'");
  }
  if (config.ngram_scope != "words" && config.ngram_scope != "with-punct") {
    throw ConfigError("ngram_scope must be words or with-punct, got '" + config.ngram_scope + "'");
  }
  if (config.ngram_min_count == 0) throw ConfigError("ngram_min_count must be at least 1");
  if (config.folds < 2) throw ConfigError("folds must be at least 2");
  validate_learner_config(config);
}

void validate_learner_config(const RunConfig& config) {
  if (config.threads == 0) throw ConfigError("threads must be at least 1");
  if (!(config.tree.confidence > 0.0 && config.tree.confidence < 1.0)) {
    throw ConfigError("tree.confidence must be in (0, 1)");
  }
  if (config.tree.min_leaf == 0) throw ConfigError("tree.min_leaf must be at least 1");
  if (config.forest.num_trees == 0) throw ConfigError("forest.num_trees must be at least 1");
}

std::string resolved_config(const RunConfig& config) {
  std::ostringstream out;
  for (const auto& k : keys()) out << k.name << " = " << k.get(config) << '\n';
  return out.str();
}

}  // namespace dissent::cli
