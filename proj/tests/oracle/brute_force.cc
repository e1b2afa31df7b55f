#include "oracle/brute_force.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace oracle {

namespace {

constexpr double kTie = 1e-12;

double plogp(double c, double n) { return c > 0.0 ? -(c / n) * std::log2(c / n) : 0.0; }

int majority(int c0, int c1, int tie) { return c0 > c1 ? 0 : (c1 > c0 ? 1 : tie); }

void grow_into(const Data& data, const std::vector<std::size_t>& rows, int parent_label,
               std::size_t min_leaf, bool mdl, bool average_filter, std::vector<Node>* out) {
  int c[2] = {0, 0};
  for (std::size_t r : rows) ++c[data.y[r]];
  Node node;
  node.label = majority(c[0], c[1], parent_label);
  const std::size_t self = out->size();
  out->push_back(node);
  if (c[0] == 0 || c[1] == 0 || rows.size() < 2 * min_leaf) return;
  const auto choice = choose(data, rows, min_leaf, mdl, average_filter);
  if (!choice) return;
  (*out)[self].leaf = false;
  (*out)[self].attribute = choice->attribute;
  (*out)[self].threshold = choice->threshold;
  std::vector<std::size_t> left, right;
  for (std::size_t r : rows) {
    (data.x[r][choice->attribute] <= choice->threshold ? left : right).push_back(r);
  }
  grow_into(data, left, node.label, min_leaf, mdl, average_filter, out);
  grow_into(data, right, node.label, min_leaf, mdl, average_filter, out);
}

}  // namespace

double entropy(double a, double b) {
  const double n = a + b;
  if (n <= 0.0) return 0.0;
  return plogp(a, n) + plogp(b, n);
}

Score score(const Data& data, const std::vector<std::size_t>& rows, std::size_t attribute,
            std::size_t min_leaf, bool mdl) {
  Score s;
  std::set<double> distinct;
  for (std::size_t r : rows) distinct.insert(data.x[r][attribute]);
  if (distinct.size() < 2) {
    s.constant = true;
    return s;
  }
  const std::vector<double> values(distinct.begin(), distinct.end());
  const double n = static_cast<double>(rows.size());
  double all[2] = {0, 0};
  for (std::size_t r : rows) all[data.y[r]] += 1;
  const double parent = entropy(all[0], all[1]);

  double best = -1.0;
  double best_left = 0.0;
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    double t = (values[i] + values[i + 1]) / 2.0;
    if (!(t < values[i + 1])) t = values[i];
    double l[2] = {0, 0}, r[2] = {0, 0};
    for (std::size_t row : rows) {
      (data.x[row][attribute] <= t ? l : r)[data.y[row]] += 1;
    }
    const double nl = l[0] + l[1];
    const double nr = r[0] + r[1];
    if (nl < static_cast<double>(min_leaf) || nr < static_cast<double>(min_leaf)) continue;
    ++s.candidates;
    const double gain = parent - nl / n * entropy(l[0], l[1]) - nr / n * entropy(r[0], r[1]);
    if (gain > best + kTie) {
      best = gain;
      best_left = nl;
      s.threshold = t;
    }
  }
  if (s.candidates == 0) return s;
  s.gain = std::max(0.0, best);
  s.corrected_gain = s.gain - (mdl ? std::log2(static_cast<double>(s.candidates)) / n : 0.0);
  s.split_info = entropy(best_left, n - best_left);
  if (s.corrected_gain > kTie && s.split_info > 0.0) s.ratio = s.corrected_gain / s.split_info;
  return s;
}

Score score(const Data& data, std::size_t attribute, std::size_t min_leaf, bool mdl) {
  std::vector<std::size_t> rows(data.x.size());
  std::iota(rows.begin(), rows.end(), 0);
  return score(data, rows, attribute, min_leaf, mdl);
}

std::vector<std::size_t> ranking(const Data& data, std::size_t min_leaf, bool mdl) {
  std::vector<double> scores;
  for (std::size_t a = 0; a < data.attributes(); ++a) {
    scores.push_back(score(data, a, min_leaf, mdl).ratio);
  }
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return a < b;
  });
  return order;
}

std::optional<Choice> choose(const Data& data, const std::vector<std::size_t>& rows,
                             std::size_t min_leaf, bool mdl, bool average_filter) {
  std::vector<std::pair<std::size_t, Score>> usable;
  for (std::size_t a = 0; a < data.attributes(); ++a) {
    const Score s = score(data, rows, a, min_leaf, mdl);
    if (!s.constant && s.candidates > 0) usable.emplace_back(a, s);
  }
  if (usable.empty()) return std::nullopt;
  double average = 0.0;
  for (const auto& [a, s] : usable) average += s.corrected_gain;
  average /= static_cast<double>(usable.size());

  std::optional<Choice> best;
  double best_ratio = 0.0;
  for (const auto& [a, s] : usable) {
    if (average_filter && s.corrected_gain < average - 1e-3) continue;
    if (s.ratio <= 0.0) continue;
    if (!best || s.ratio > best_ratio + kTie) {
      best = Choice{a, s.threshold};
      best_ratio = s.ratio;
    }
  }
  return best;
}

std::vector<Node> grow(const Data& data, std::size_t min_leaf, bool mdl, bool average_filter) {
  std::vector<std::size_t> rows(data.x.size());
  std::iota(rows.begin(), rows.end(), 0);
  std::vector<Node> nodes;
  grow_into(data, rows, 0, min_leaf, mdl, average_filter, &nodes);
  return nodes;
}

}  // namespace oracle
