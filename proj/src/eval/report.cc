#include <algorithm>
#include <sstream>

#include "dissent/eval.h"
#include "dissent/tsv.h"
#include "dissent/utf8.h"

namespace dissent::eval {

namespace {

std::string percent(double fraction) { return fixed(100.0 * fraction, 2); }

std::string k_cell(const RunResult& r) { return r.k ? std::to_string(*r.k) : "all"; }

std::string p_cell(double p) {
  if (p < 1e-4) return p == 0.0 ? "0" : "<0.0001";
  return fixed(p, 4);
}

std::string t_cell(const TTestResult& t) {
  if (t.degenerate) return t.t > 0 ? "inf" : "-inf";
  return fixed(t.t, 4);
}

// Rows of `runs` that share `name` and `k`, one accuracy cell per learner.
std::vector<std::string> learner_cells(const ModeResult& result, const std::string& name,
                                       const std::optional<std::size_t>& k) {
  std::vector<std::string> cells;
  for (const auto& learner : result.learners) {
    std::string cell = "-";
    for (const auto& run : result.runs) {
      if (run.feature_set == name && run.learner == learner && run.k == k) {
        cell = percent(run.report.accuracy);
      }
    }
    cells.push_back(cell);
  }
  return cells;
}

// Distinct (feature set, k) in first-seen order.
std::vector<const RunResult*> distinct_sets(const ModeResult& result) {
  std::vector<const RunResult*> out;
  for (const auto& run : result.runs) {
    const bool seen = std::any_of(out.begin(), out.end(), [&](const RunResult* r) {
      return r->feature_set == run.feature_set && r->k == run.k;
    });
    if (!seen) out.push_back(&run);
  }
  return out;
}

Table wide_table(const ModeResult& result, const std::string& name, const std::string& title,
                 const std::string& first_column) {
  Table t;
  t.name = name;
  t.title = title;
  t.columns = {first_column, "attributes"};
  for (const auto& l : result.learners) t.columns.push_back(l);
  for (const RunResult* run : distinct_sets(result)) {
    std::vector<std::string> row = {run->feature_set, std::to_string(run->attributes)};
    for (auto& cell : learner_cells(result, run->feature_set, run->k)) row.push_back(cell);
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table runs_table(const ModeResult& result) {
  Table t;
  t.name = result.mode + "_runs";
  t.title = "Per-run metrics (accuracy in percent; confusion as actual/predicted)";
  t.columns = {"feature_set", "learner",       "k",          "attributes", "accuracy",
               "precision",   "recall",        "agree_prec", "agree_rec",  "disagree_prec",
               "disagree_rec", "agree/agree",  "agree/disagree", "disagree/agree",
               "disagree/disagree", "n", "fingerprint"};
  for (const auto& run : result.runs) {
    const auto& r = run.report;
    t.rows.push_back({run.feature_set, run.learner, k_cell(run), std::to_string(run.attributes),
                      percent(r.accuracy), fixed(r.precision, 4), fixed(r.recall, 4),
                      fixed(r.per_class[0].precision, 4), fixed(r.per_class[0].recall, 4),
                      fixed(r.per_class[1].precision, 4), fixed(r.per_class[1].recall, 4),
                      std::to_string(r.confusion[0][0]), std::to_string(r.confusion[0][1]),
                      std::to_string(r.confusion[1][0]), std::to_string(r.confusion[1][1]),
                      std::to_string(r.size()), r.fingerprint});
  }
  return t;
}

Table significance_table(const ModeResult& result) {
  Table t;
  t.name = result.mode + "_significance";
  t.title = "Paired t-test over 10 test folds, with McNemar on instances";
  t.columns = {"learner", "a", "b", "t", "df", "p", "mcnemar_a_only", "mcnemar_b_only",
               "mcnemar_chi2", "mcnemar_p"};
  for (const auto& s : result.tests) {
    t.rows.push_back({s.learner, s.a, s.b, t_cell(s.t), std::to_string(s.t.df), p_cell(s.t.p),
                      std::to_string(s.mcnemar.only_a), std::to_string(s.mcnemar.only_b),
                      fixed(s.mcnemar.chi2, 4), p_cell(s.mcnemar.p)});
  }
  return t;
}

Table individual_table(const ModeResult& result) {
  Table t;
  t.name = "individual";
  t.title = "Single feature groups";
  t.columns = {"feature", "learner", "attributes", "accuracy", "precision", "recall"};
  for (const auto& run : result.runs) {
    t.rows.push_back({run.feature_set, run.learner, std::to_string(run.attributes),
                      percent(run.report.accuracy), fixed(run.report.precision, 2),
                      fixed(run.report.recall, 2)});
  }
  return t;
}

Table sweep_table(const ModeResult& result) {
  Table t;
  t.name = "sweep";
  t.title = "Accuracy by number of selected features";
  t.columns = {"feature_set", "k", "learner", "attributes", "accuracy", "selected"};
  for (const auto& run : result.runs) {
    std::string selected;
    for (const auto& name : run.selected) {
      if (!selected.empty()) selected += ", ";
      selected += name;
    }
    t.rows.push_back({run.feature_set, k_cell(run), run.learner, std::to_string(run.attributes),
                      percent(run.report.accuracy), selected});
  }
  return t;
}

Table per_topic_table(const ModeResult& result) {
  Table t;
  t.name = result.mode + "_per_topic";
  t.title = "Accuracy by test topic";
  t.columns = {"feature_set", "learner", "k", "topic", "n", "accuracy"};
  for (const auto& run : result.runs) {
    for (const auto& [topic, r] : run.per_topic) {
      t.rows.push_back({run.feature_set, run.learner, k_cell(run), topic,
                        std::to_string(r.size()), percent(r.accuracy)});
    }
  }
  return t;
}

}  // namespace

Report make_report(const ModeResult& result,
                   const std::vector<std::pair<std::string, std::string>>& meta) {
  Report report;
  report.meta = meta;
  report.meta.emplace_back("mode", result.mode);
  for (const auto& w : result.warnings) report.meta.emplace_back("warning", w);

  if (result.mode == "compare") {
    report.tables.push_back(
        wide_table(result, "compare", "Accuracy (%) by feature set and learner", "features"));
  } else if (result.mode == "ablate") {
    report.tables.push_back(
        wide_table(result, "ablate", "Accuracy (%) when ablating each group", "ablated"));
  } else if (result.mode == "individual") {
    report.tables.push_back(individual_table(result));
  } else if (result.mode == "sweep") {
    report.tables.push_back(sweep_table(result));
  }
  report.tables.push_back(runs_table(result));
  if (result.mode != "individual") report.tables.push_back(significance_table(result));
  const bool any_topics = std::any_of(result.runs.begin(), result.runs.end(),
                                      [](const RunResult& r) { return !r.per_topic.empty(); });
  if (any_topics) report.tables.push_back(per_topic_table(result));
  return report;
}

std::string emit_table(const Report& report, const Table& table, Format format) {
  std::ostringstream out;
  if (format == Format::kTsv) {
    for (const auto& [key, value] : report.meta) out << "# " << key << ": " << value << '\n';
    out << "# table: " << table.title << '\n';
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
      out << (i ? "\t" : "") << tsv::escape(table.columns[i]);
    }
    out << '\n';
    for (const auto& row : table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "\t" : "") << tsv::escape(row[i]);
      out << '\n';
    }
    return out.str();
  }

  std::vector<std::size_t> width(table.columns.size(), 0);
  auto measure = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size() && i < width.size(); ++i) {
      width[i] = std::max(width[i], utf8::length(row[i]));
    }
  };
  measure(table.columns);
  for (const auto& row : table.rows) measure(row);
  auto line = [&](const std::vector<std::string>& row) {
    std::string text;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) text += "  ";
      text += row[i];
      if (i + 1 < row.size() && i < width.size()) {
        text.append(width[i] - utf8::length(row[i]), ' ');
      }
    }
    out << text << '\n';
  };
  out << table.title << '\n';
  line(table.columns);
  std::size_t total = 0;
  for (std::size_t w : width) total += w + 2;
  out << std::string(total > 2 ? total - 2 : 0, '-') << '\n';
  for (const auto& row : table.rows) line(row);
  return out.str();
}

std::string emit_report(const Report& report, Format format) {
  std::ostringstream out;
  if (format == Format::kHuman) {
    for (const auto& [key, value] : report.meta) out << key << ": " << value << '\n';
    for (const auto& table : report.tables) out << '\n' << emit_table(report, table, format);
    return out.str();
  }
  bool first = true;
  for (const auto& table : report.tables) {
    if (!first) out << '\n';
    first = false;
    out << emit_table(report, table, format);
  }
  return out.str();
}

}  // namespace dissent::eval
