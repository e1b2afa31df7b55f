#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>

#include <boost/math/distributions/normal.hpp>

#include "dissent/error.h"
#include "dissent/learn.h"
#include "split.h"

namespace dissent::learn {

namespace internal {

std::size_t bounded(std::mt19937_64& rng, std::size_t n) {
  const std::uint64_t range = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = std::mt19937_64::max() - std::mt19937_64::max() % range;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return static_cast<std::size_t>(x % range);
}

namespace {

Label majority(const std::array<double, 2>& d, Label tie) {
  if (d[0] > d[1]) return Label::kAgreement;
  if (d[1] > d[0]) return Label::kDisagreement;
  return tie;
}

// Each attribute keeps its nonzero values, sorted, as (value, position)
// entries; zeros are implicit. The entries of a node's instances occupy one
// range per attribute, and splitting stably partitions each range in place.
class Grower {
 public:
  Grower(const Dataset& data, const std::vector<std::size_t>& sample,
         const GrowConfig& config)
      : data_(data), sample_(sample), config_(config), m_(data.space->size()) {
    const std::size_t n = sample.size();
    cls_.resize(n);
    for (std::size_t p = 0; p < n; ++p) cls_[p] = label_index(*data.rows[sample[p]].label);
    members_.resize(n);
    std::iota(members_.begin(), members_.end(), 0u);
    nonzero_.resize(m_);
    for (std::uint32_t p = 0; p < n; ++p) {
      const auto& values = data.rows[sample[p]].values;
      for (std::size_t a = 0; a < m_; ++a) {
        if (values[a] != 0.0) nonzero_[a].push_back({values[a], p});
      }
    }
    for (auto& entries : nonzero_) {
      std::stable_sort(entries.begin(), entries.end(),
                       [](const Entry& x, const Entry& y) { return x.value < y.value; });
    }
    goes_left_.resize(n);
    pool_.resize(m_);
    std::iota(pool_.begin(), pool_.end(), std::size_t{0});
  }

  std::vector<Node> run() {
    std::vector<Range> ranges(m_);
    for (std::size_t a = 0; a < m_; ++a) ranges[a] = {0, nonzero_[a].size()};
    grow_node(0, sample_.size(), ranges, Label::kAgreement);
    return std::move(nodes_);
  }

 private:
  struct Entry {
    double value;
    std::uint32_t pos;
  };
  struct Range {
    std::size_t lo = 0;
    std::size_t hi = 0;
  };

  double value(std::size_t attribute, std::uint32_t pos) const {
    return data_.rows[sample_[pos]].values[attribute];
  }

  std::vector<std::size_t> candidate_attributes() {
    const std::size_t k = config_.features_per_split;
    if (!config_.rng || k == 0 || k >= m_) return pool_identity();
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t j = i + bounded(*config_.rng, m_ - i);
      std::swap(pool_[i], pool_[j]);
    }
    std::vector<std::size_t> chosen(pool_.begin(), pool_.begin() + static_cast<std::ptrdiff_t>(k));
    std::sort(chosen.begin(), chosen.end());
    return chosen;
  }

  std::vector<std::size_t> pool_identity() const {
    std::vector<std::size_t> all(m_);
    std::iota(all.begin(), all.end(), std::size_t{0});
    return all;
  }

  // Value groups of one attribute over the node, zeros merged in place.
  void build_column(std::size_t a, const Range& range, const std::array<double, 2>& dist,
                    GroupedColumn* column) const {
    column->clear();
    std::array<double, 2> zeros = dist;
    for (std::size_t i = range.lo; i < range.hi; ++i) zeros[cls_[nonzero_[a][i].pos]] -= 1.0;
    const bool has_zeros = zeros[0] + zeros[1] > 0.0;
    bool zeros_done = !has_zeros;
    for (std::size_t i = range.lo; i < range.hi; ++i) {
      const Entry& e = nonzero_[a][i];
      if (!zeros_done && e.value > 0.0) {
        column->push_back({0.0, zeros});
        zeros_done = true;
      }
      add_to_column(column, e.value, cls_[e.pos]);
    }
    if (!zeros_done) column->push_back({0.0, zeros});
  }

  std::size_t grow_node(std::size_t lo, std::size_t hi, const std::vector<Range>& ranges,
                        Label parent) {
    std::array<double, 2> dist{0.0, 0.0};
    for (std::size_t i = lo; i < hi; ++i) dist[cls_[members_[i]]] += 1.0;
    const std::size_t index = nodes_.size();
    Node node;
    node.distribution = dist;
    node.label = majority(dist, parent);
    nodes_.push_back(node);

    const std::size_t n = hi - lo;
    const TreeParams& params = config_.params;
    if (dist[0] == 0.0 || dist[1] == 0.0 || n < 2 * params.min_leaf || m_ == 0) {
      return index;
    }

    struct Scored {
      std::size_t attribute;
      SplitScore score;
    };
    std::vector<Scored> valid;
    GroupedColumn column;
    for (std::size_t a : candidate_attributes()) {
      build_column(a, ranges[a], dist, &column);
      if (column.size() < 2) continue;
      const SplitScore s = scan_column(column, params.min_leaf, params.mdl_correction);
      if (s.valid()) valid.push_back({a, s});
    }
    if (valid.empty()) return index;

    double average = 0.0;
    for (const auto& v : valid) average += v.score.corrected_gain;
    average /= static_cast<double>(valid.size());

    const Scored* best = nullptr;
    for (const auto& v : valid) {
      if (params.average_gain_filter && v.score.corrected_gain < average - 1e-3) continue;
      if (v.score.ratio <= 0.0) continue;
      if (!best || v.score.ratio > best->score.ratio + kTieEpsilon) best = &v;
    }
    if (!best) return index;
    const std::size_t attribute = best->attribute;
    const double threshold = best->score.threshold;

    std::size_t nl = 0;
    for (std::size_t i = lo; i < hi; ++i) {
      const std::uint32_t p = members_[i];
      goes_left_[p] = value(attribute, p) <= threshold;
      nl += goes_left_[p];
    }
    partition(&members_, lo, hi, [](std::uint32_t p) { return p; });
    std::vector<Range> left_ranges(m_);
    std::vector<Range> right_ranges(m_);
    for (std::size_t a = 0; a < m_; ++a) {
      const Range r = ranges[a];
      const std::size_t mid =
          partition(&nonzero_[a], r.lo, r.hi, [](const Entry& e) { return e.pos; });
      left_ranges[a] = {r.lo, mid};
      right_ranges[a] = {mid, r.hi};
    }

    nodes_[index].leaf = false;
    nodes_[index].attribute = attribute;
    nodes_[index].threshold = threshold;
    const Label label = nodes_[index].label;
    const std::size_t left = grow_node(lo, lo + nl, left_ranges, label);
    left_ranges = {};
    const std::size_t right = grow_node(lo + nl, hi, right_ranges, label);
    nodes_[index].left = left;
    nodes_[index].right = right;
    return index;
  }

  // Stable partition of [lo, hi) by goes_left_; returns the split point.
  template <typename T, typename PosOf>
  std::size_t partition(std::vector<T>* range, std::size_t lo, std::size_t hi, PosOf pos_of) {
    auto& r = *range;
    std::vector<T> spill;
    std::size_t out = lo;
    for (std::size_t i = lo; i < hi; ++i) {
      if (goes_left_[pos_of(r[i])]) {
        r[out++] = r[i];
      } else {
        spill.push_back(r[i]);
      }
    }
    std::copy(spill.begin(), spill.end(), r.begin() + static_cast<std::ptrdiff_t>(out));
    return out;
  }

  const Dataset& data_;
  const std::vector<std::size_t>& sample_;
  GrowConfig config_;
  std::size_t m_;
  std::vector<int> cls_;
  std::vector<std::uint32_t> members_;
  std::vector<std::vector<Entry>> nonzero_;
  std::vector<char> goes_left_;
  std::vector<std::size_t> pool_;
  std::vector<Node> nodes_;
};

}  // namespace

std::vector<Node> grow(const Dataset& data, const std::vector<std::size_t>& sample,
                       const GrowConfig& config) {
  return Grower(data, sample, config).run();
}

}  // namespace internal

namespace {

void check_training_data(const Dataset& data) {
  if (!data.space) throw ArgumentError("dataset has no feature space");
  if (data.rows.empty()) throw ArgumentError("cannot train on an empty dataset");
  for (const auto& row : data.rows) {
    if (!row.label) throw ArgumentError("training row '" + row.id + "' has no label");
    if (row.values.size() != data.space->size()) {
      throw SpaceMismatchError("training row '" + row.id + "' does not match the space");
    }
    for (double v : row.values) {
      if (!std::isfinite(v)) throw ArgumentError("training row '" + row.id + "' has a non-finite value");
    }
  }
}

double leaf_errors(const Node& node) {
  return node.distribution[0] + node.distribution[1] -
         node.distribution[label_index(node.label)];
}

// Bottom-up subtree replacement. Returns the estimated errors of the
// (possibly pruned) subtree.
double prune_node(std::vector<Node>* nodes, std::size_t index, double cf) {
  Node& node = (*nodes)[index];
  const double n = node.distribution[0] + node.distribution[1];
  const double e = leaf_errors(node);
  const double as_leaf = e + added_errors(n, e, cf);
  if (node.leaf) return as_leaf;
  const std::size_t left = node.left;
  const std::size_t right = node.right;
  const double subtree = prune_node(nodes, left, cf) + prune_node(nodes, right, cf);
  if (as_leaf <= subtree + 0.1) {
    (*nodes)[index].leaf = true;
    return as_leaf;
  }
  return subtree;
}

// Drops nodes no longer reachable from the root, renumbering in preorder.
std::vector<Node> compact(const std::vector<Node>& nodes) {
  std::vector<Node> out;
  std::function<std::size_t(std::size_t)> copy = [&](std::size_t i) -> std::size_t {
    const std::size_t at = out.size();
    Node node = nodes[i];
    if (node.leaf) {
      node.attribute = 0;
      node.threshold = 0.0;
      node.left = node.right = 0;
    }
    out.push_back(node);
    if (!node.leaf) {
      const std::size_t l = copy(node.left);
      const std::size_t r = copy(node.right);
      out[at].left = l;
      out[at].right = r;
    }
    return at;
  };
  if (!nodes.empty()) copy(0);
  return out;
}

}  // namespace

double added_errors(double n, double errors, double cf) {
  if (!(cf > 0.0 && cf <= 1.0)) throw ArgumentError("confidence must be in (0, 1]");
  if (n <= 0.0) return 0.0;
  if (cf >= 1.0) return 0.0;
  if (errors < 1.0) {
    const double base = n * (1.0 - std::pow(cf, 1.0 / n));
    if (errors == 0.0) return base;
    return base + errors * (added_errors(n, 1.0, cf) - base);
  }
  if (errors + 0.5 >= n) return std::max(n - errors, 0.0);
  const double z = boost::math::quantile(boost::math::normal(), 1.0 - cf);
  const double f = (errors + 0.5) / n;
  const double r = (f + z * z / (2.0 * n) +
                    z * std::sqrt(f / n - f * f / n + z * z / (4.0 * n * n))) /
                   (1.0 + z * z / n);
  return r * n - errors;
}

std::size_t DecisionTree::leaf_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes.begin(), nodes.end(), [](const Node& n) { return n.leaf; }));
}

std::size_t DecisionTree::depth() const {
  if (nodes.empty()) return 0;
  std::function<std::size_t(std::size_t)> walk = [&](std::size_t i) -> std::size_t {
    if (nodes[i].leaf) return 0;
    return 1 + std::max(walk(nodes[i].left), walk(nodes[i].right));
  };
  return walk(0);
}

DecisionTree train_tree(const Dataset& data, const TreeParams& params) {
  check_training_data(data);
  if (params.min_leaf < 1) throw ArgumentError("min_leaf must be >= 1");
  if (!(params.confidence > 0.0 && params.confidence <= 1.0)) {
    throw ArgumentError("confidence must be in (0, 1]");
  }
  const auto counts = data.class_counts();
  if ((counts[0] == 0 || counts[1] == 0) && !params.lenient) {
    throw DegenerateError("training data has a single class");
  }

  DecisionTree tree;
  tree.space = data.space;
  tree.params = params;
  std::vector<std::size_t> sample(data.rows.size());
  std::iota(sample.begin(), sample.end(), std::size_t{0});
  internal::GrowConfig config;
  config.params = params;
  tree.nodes = internal::grow(data, sample, config);
  if (params.prune) {
    prune_node(&tree.nodes, 0, params.confidence);
    tree.nodes = compact(tree.nodes);
  }
  return tree;
}

namespace internal {

void check_space(const SpacePtr& model, const FeatureVector& v) {
  if (!model || v.values.size() != model->size() ||
      (v.space && v.space != model && !v.space->same_attributes(*model))) {
    throw SpaceMismatchError("feature vector '" + v.id +
                             "' does not match the model's feature space");
  }
}

}  // namespace internal

Prediction predict_tree(const DecisionTree& tree, const FeatureVector& v) {
  internal::check_space(tree.space, v);
  if (tree.nodes.empty()) throw ArgumentError("empty tree");
  std::size_t i = 0;
  while (!tree.nodes[i].leaf) {
    const Node& node = tree.nodes[i];
    i = v.values[node.attribute] <= node.threshold ? node.left : node.right;
  }
  return {tree.nodes[i].label, tree.nodes[i].distribution};
}

}  // namespace dissent::learn
