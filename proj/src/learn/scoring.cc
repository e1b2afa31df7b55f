#include <algorithm>
#include <cmath>

#include "dissent/error.h"
#include "dissent/learn.h"
#include "split.h"

namespace dissent::learn {

double entropy(const std::vector<double>& counts) {
  double total = 0.0;
  for (double c : counts) {
    if (c < 0.0 || !std::isfinite(c)) throw ArgumentError("class counts must be >= 0");
    total += c;
  }
  if (total <= 0.0) throw ArgumentError("entropy of all-zero counts");
  double h = 0.0;
  for (double c : counts) {
    if (c > 0.0) {
      const double p = c / total;
      h -= p * std::log2(p);
    }
  }
  return h;
}

double entropy(const std::array<double, 2>& counts) {
  return entropy(std::vector<double>(counts.begin(), counts.end()));
}

namespace internal {

namespace {

// Entropy that tolerates an empty side; only used on partitions.
double h2(double a, double b) {
  const double n = a + b;
  if (n <= 0.0) return 0.0;
  double h = 0.0;
  if (a > 0.0) h -= a / n * std::log2(a / n);
  if (b > 0.0) h -= b / n * std::log2(b / n);
  return h;
}

}  // namespace

void add_to_column(GroupedColumn* column, double value, int cls, double weight) {
  if (column->empty() || !(column->back().value == value)) column->push_back({value, {0.0, 0.0}});
  column->back().count[cls] += weight;
}

SplitScore scan_column(const GroupedColumn& column, std::size_t min_leaf,
                       bool mdl_correction) {
  SplitScore best;
  if (column.size() < 2) return best;
  std::array<double, 2> total{0.0, 0.0};
  for (const auto& g : column) {
    total[0] += g.count[0];
    total[1] += g.count[1];
  }
  const double nd = total[0] + total[1];
  const double parent = h2(total[0], total[1]);
  const double min = static_cast<double>(min_leaf);

  std::array<double, 2> left{0.0, 0.0};
  double best_gain = -1.0;
  double best_left = 0.0;
  for (std::size_t i = 0; i + 1 < column.size(); ++i) {
    left[0] += column[i].count[0];
    left[1] += column[i].count[1];
    const double a = column[i].value;
    const double b = column[i + 1].value;
    const double nl = left[0] + left[1];
    const double nr = nd - nl;
    if (nl < min || nr < min) continue;
    ++best.candidates;
    const double children = nl / nd * h2(left[0], left[1]) +
                            nr / nd * h2(total[0] - left[0], total[1] - left[1]);
    const double gain = parent - children;
    if (gain > best_gain + kTieEpsilon) {
      best_gain = gain;
      best_left = nl;
      double mid = a + (b - a) / 2.0;
      if (!(mid < b)) mid = a;
      best.threshold = mid;
    }
  }
  if (best.candidates == 0) return best;

  best.gain = std::max(0.0, best_gain);
  best.corrected_gain = best.gain;
  if (mdl_correction) {
    best.corrected_gain -= std::log2(static_cast<double>(best.candidates)) / nd;
  }
  best.split_info = h2(best_left, nd - best_left);
  // Gains within rounding of zero are zero, whatever the summation order.
  if (best.corrected_gain > kTieEpsilon && best.split_info > 0.0) {
    best.ratio = best.corrected_gain / best.split_info;
  }
  return best;
}

}  // namespace internal

namespace {

internal::GroupedColumn column_of(const Dataset& data, std::size_t attribute) {
  std::vector<std::pair<double, int>> pairs;
  pairs.reserve(data.rows.size());
  for (const auto& row : data.rows) {
    if (!row.label) throw ArgumentError("training rows need labels");
    pairs.emplace_back(row.values[attribute], label_index(*row.label));
  }
  std::sort(pairs.begin(), pairs.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  internal::GroupedColumn column;
  for (const auto& [value, cls] : pairs) internal::add_to_column(&column, value, cls);
  return column;
}

}  // namespace

SplitScore gain_ratio(const Dataset& data, std::size_t attribute,
                      const SplitOptions& options) {
  if (!data.space || attribute >= data.space->size()) {
    throw ArgumentError("attribute index out of range");
  }
  if (data.rows.empty()) throw ArgumentError("gain ratio of an empty dataset");
  const auto column = column_of(data, attribute);
  if (column.size() < 2) {
    if (options.lenient) return {};
    throw DegenerateError("attribute '" + data.space->attribute(attribute).name +
                          "' is constant");
  }
  return internal::scan_column(column, options.min_leaf, options.mdl_correction);
}

FeatureRanking rank_features(const Dataset& data, const SplitOptions& options) {
  if (!data.space) throw ArgumentError("dataset has no feature space");
  FeatureRanking ranking;
  ranking.space = data.space;
  SplitOptions strict = options;
  strict.lenient = false;
  for (std::size_t i = 0; i < data.space->size(); ++i) {
    RankedFeature f;
    f.index = i;
    f.name = data.space->attribute(i).name;
    try {
      const auto score = gain_ratio(data, i, strict);
      f.score = score.ratio;
      f.threshold = score.threshold;
    } catch (const DegenerateError& e) {
      ranking.diagnostics.push_back(std::string(e.what()) + "; scored 0");
    }
    ranking.features.push_back(std::move(f));
  }
  std::stable_sort(ranking.features.begin(), ranking.features.end(),
                   [](const RankedFeature& a, const RankedFeature& b) {
                     return a.score > b.score;
                   });
  return ranking;
}

FeatureSpace select_top_k(const FeatureRanking& ranking, std::size_t k) {
  if (!ranking.space) throw ArgumentError("ranking has no feature space");
  if (k < 1 || k > ranking.features.size()) {
    throw ArgumentError("k = " + std::to_string(k) + " outside [1, " +
                        std::to_string(ranking.features.size()) + "]");
  }
  std::vector<std::size_t> keep;
  keep.reserve(k);
  for (std::size_t i = 0; i < k; ++i) keep.push_back(ranking.features[i].index);
  return ranking.space->restrict_to(keep);
}

}  // namespace dissent::learn
