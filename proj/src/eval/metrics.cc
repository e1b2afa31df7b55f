#include <charconv>
#include <cmath>
#include <sstream>

#include "dissent/error.h"
#include "dissent/eval.h"

namespace dissent::eval {

EvalReport score_predictions(const std::vector<Label>& actual,
                             const std::vector<Label>& predicted) {
  if (actual.size() != predicted.size()) {
    throw ArgumentError("prediction count does not match the test set");
  }
  if (actual.empty()) throw EmptyTestError("cannot evaluate on an empty test set");
  EvalReport r;
  r.correct.reserve(actual.size());
  std::size_t hits = 0;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    const int a = label_index(actual[i]);
    const int p = label_index(predicted[i]);
    ++r.confusion[a][p];
    r.correct.push_back(a == p ? 1 : 0);
    hits += a == p;
  }
  const double n = static_cast<double>(actual.size());
  r.accuracy = static_cast<double>(hits) / n;
  for (int c = 0; c < 2; ++c) {
    const std::size_t tp = r.confusion[c][c];
    const std::size_t support = r.confusion[c][0] + r.confusion[c][1];
    const std::size_t predicted_c = r.confusion[0][c] + r.confusion[1][c];
    auto& m = r.per_class[c];
    m.support = support;
    m.precision = predicted_c ? static_cast<double>(tp) / static_cast<double>(predicted_c) : 0.0;
    m.recall = support ? static_cast<double>(tp) / static_cast<double>(support) : 0.0;
    r.precision += m.precision * static_cast<double>(support) / n;
    r.recall += m.recall * static_cast<double>(support) / n;
  }
  return r;
}

EvalReport evaluate(const learn::Model& model, const Dataset& test) {
  if (test.rows.empty()) throw EmptyTestError("cannot evaluate on an empty test set");
  std::vector<Label> actual;
  std::vector<Label> predicted;
  actual.reserve(test.rows.size());
  predicted.reserve(test.rows.size());
  for (const auto& row : test.rows) {
    if (!row.label) throw ArgumentError("test row '" + row.id + "' has no label");
    actual.push_back(*row.label);
    predicted.push_back(learn::predict(model, row));
  }
  EvalReport r = score_predictions(actual, predicted);
  std::ostringstream serialized;
  learn::write_model(serialized, model);
  r.fingerprint = fnv1a_hex(serialized.str());
  return r;
}

std::vector<double> fold_accuracies(const std::vector<int>& correct, std::size_t folds) {
  if (folds < 2) throw ArgumentError("need at least 2 folds");
  if (correct.size() < folds) {
    throw ArgumentError("test set of " + std::to_string(correct.size()) +
                        " instances cannot fill " + std::to_string(folds) + " folds");
  }
  std::vector<double> hits(folds, 0.0);
  std::vector<double> sizes(folds, 0.0);
  for (std::size_t i = 0; i < correct.size(); ++i) {
    hits[i % folds] += correct[i];
    sizes[i % folds] += 1.0;
  }
  for (std::size_t f = 0; f < folds; ++f) hits[f] /= sizes[f];
  return hits;
}

std::string fnv1a_hex(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  auto [end, ec] = std::to_chars(buf, buf + 16, h, 16);
  std::string hex(buf, end);
  return std::string(16 - hex.size(), '0') + hex;
}

std::string fixed(double value, int digits) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, digits);
  std::string s(buf, end);
  // Rounded negative zero prints as zero.
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

}  // namespace dissent::eval
