#ifndef DISSENT_LEARN_H_
#define DISSENT_LEARN_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "dissent/features.h"
#include "dissent/types.h"

namespace dissent::learn {

using features::Dataset;
using features::FeatureSpace;
using features::FeatureVector;
using features::SpacePtr;

// Two scores closer than this are treated as tied.
inline constexpr double kTieEpsilon = 1e-12;

// Shannon entropy in bits. Throws ArgumentError when all counts are zero.
double entropy(const std::vector<double>& counts);
double entropy(const std::array<double, 2>& counts);

struct SplitOptions {
  // Each side of a split must keep at least this many instances.
  std::size_t min_leaf = 1;
  // Subtract log2(candidates)/N from the gain before scoring.
  bool mdl_correction = true;
  // Constant attributes score 0 instead of raising DegenerateError.
  bool lenient = false;
};

struct SplitScore {
  double ratio = 0.0;
  double threshold = 0.0;
  double gain = 0.0;            // at the threshold, before correction
  double corrected_gain = 0.0;  // gain - log2(candidates)/N when enabled
  double split_info = 0.0;
  std::size_t candidates = 0;   // midpoints that satisfy min_leaf
  bool valid() const { return candidates > 0; }
};

// Best binary split of one numeric attribute. Every midpoint between
// adjacent distinct values is a candidate; the threshold with the largest
// gain wins (ties to the smaller threshold), and the ratio is taken there.
SplitScore gain_ratio(const Dataset& data, std::size_t attribute,
                      const SplitOptions& options = {});

struct RankedFeature {
  std::size_t index = 0;
  std::string name;
  double score = 0.0;
  double threshold = 0.0;
};

struct FeatureRanking {
  SpacePtr space;
  std::vector<RankedFeature> features;  // score descending, then index
  std::vector<std::string> diagnostics;
};

FeatureRanking rank_features(const Dataset& data, const SplitOptions& options = {});

// The k best attributes, kept in the space's original order. Throws
// ArgumentError unless 1 <= k <= ranking size.
FeatureSpace select_top_k(const FeatureRanking& ranking, std::size_t k);

// --- decision tree ---------------------------------------------------------

struct TreeParams {
  double confidence = 0.25;
  std::size_t min_leaf = 2;
  bool prune = true;
  bool mdl_correction = true;
  // Only attributes whose gain reaches the average gain of the candidate
  // attributes compete on gain ratio.
  bool average_gain_filter = true;
  // Single-class data yields a lone leaf instead of DegenerateError.
  bool lenient = true;
  bool operator==(const TreeParams&) const = default;
};

struct Node {
  bool leaf = true;
  Label label = Label::kAgreement;
  std::array<double, 2> distribution{0.0, 0.0};
  std::size_t attribute = 0;
  double threshold = 0.0;
  std::size_t left = 0;   // value <= threshold
  std::size_t right = 0;  // value > threshold
  bool operator==(const Node&) const = default;
};

struct DecisionTree {
  SpacePtr space;
  TreeParams params;
  std::vector<Node> nodes;  // nodes[0] is the root
  std::uint64_t seed = 0;   // bootstrap seed when grown inside a forest

  std::size_t size() const { return nodes.size(); }
  std::size_t leaf_count() const;
  std::size_t depth() const;
  bool same_structure(const DecisionTree& other) const { return nodes == other.nodes; }
};

DecisionTree train_tree(const Dataset& data, const TreeParams& params = {});

struct Prediction {
  Label label = Label::kAgreement;
  std::array<double, 2> distribution{0.0, 0.0};
};

// Throws SpaceMismatchError if the vector's space differs from the tree's.
Prediction predict_tree(const DecisionTree& tree, const FeatureVector& v);

// Pessimistic error estimate added to `errors` observed among `n` cases at
// confidence `cf` (upper bound of the binomial interval).
double added_errors(double n, double errors, double cf);

// --- random forest ---------------------------------------------------------

struct ForestParams {
  std::size_t num_trees = 10;
  std::size_t features_per_split = 0;  // 0 means floor(log2 M) + 1
  bool bootstrap = true;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  bool operator==(const ForestParams&) const = default;
};

struct Forest {
  SpacePtr space;
  ForestParams params;
  std::size_t features_per_split = 0;  // resolved value
  std::vector<DecisionTree> trees;
};

std::size_t default_features_per_split(std::size_t attributes);

Forest train_forest(const Dataset& data, const ForestParams& params = {});

// Majority vote; a tied vote goes to AGREEMENT.
Label predict_forest(const Forest& forest, const FeatureVector& v);

// Seed of tree `index` in a forest seeded with `seed`.
std::uint64_t tree_seed(std::uint64_t seed, std::size_t index);

// --- models ----------------------------------------------------------------

using Model = std::variant<DecisionTree, Forest>;

const SpacePtr& model_space(const Model& model);
Label predict(const Model& model, const FeatureVector& v);
std::string describe(const Model& model);

// Versioned text format; doubles round-trip exactly.
void write_model(std::ostream& out, const Model& model);
Model read_model(std::istream& in);

}  // namespace dissent::learn

#endif  // DISSENT_LEARN_H_
