#ifndef DISSENT_LEARN_SPLIT_H_
#define DISSENT_LEARN_SPLIT_H_

#include <array>
#include <cstddef>
#include <random>
#include <utility>
#include <vector>

#include "dissent/learn.h"

namespace dissent::learn::internal {

// Instances sharing one attribute value, with their class counts.
struct ValueGroup {
  double value = 0.0;
  std::array<double, 2> count{0.0, 0.0};
};

// Groups in strictly increasing value order.
using GroupedColumn = std::vector<ValueGroup>;

// Appends (value, class) to a column being built in sorted order.
void add_to_column(GroupedColumn* column, double value, int cls, double weight = 1.0);

// Scans the midpoint between every two adjacent groups. Returns an invalid
// score (no candidates) when no midpoint leaves min_leaf instances on both
// sides.
SplitScore scan_column(const GroupedColumn& column, std::size_t min_leaf,
                       bool mdl_correction);

// Grows an unpruned tree over data.rows[sample[i]]. When rng is set, each
// node draws features_per_split candidate attributes from it.
struct GrowConfig {
  TreeParams params;
  std::size_t features_per_split = 0;  // 0 means every attribute
  std::mt19937_64* rng = nullptr;
};
std::vector<Node> grow(const Dataset& data, const std::vector<std::size_t>& sample,
                       const GrowConfig& config);

// Uniform integer in [0, n) with a platform-independent rejection step.
std::size_t bounded(std::mt19937_64& rng, std::size_t n);

// Throws SpaceMismatchError unless v was built in the model's space.
void check_space(const SpacePtr& model, const FeatureVector& v);

}  // namespace dissent::learn::internal

#endif  // DISSENT_LEARN_SPLIT_H_
