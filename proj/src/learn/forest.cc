#include <bit>
#include <cmath>
#include <thread>

#include "dissent/error.h"
#include "dissent/learn.h"
#include "dissent/tsv.h"
#include "split.h"

namespace dissent::learn {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t tree_seed(std::uint64_t seed, std::size_t index) {
  return splitmix64(splitmix64(seed) ^ static_cast<std::uint64_t>(index));
}

std::size_t default_features_per_split(std::size_t attributes) {
  if (attributes == 0) return 0;
  return static_cast<std::size_t>(std::bit_width(attributes) - 1) + 1;
}

Forest train_forest(const Dataset& data, const ForestParams& params) {
  if (!data.space) throw ArgumentError("dataset has no feature space");
  if (data.rows.empty()) throw ArgumentError("cannot train on an empty dataset");
  if (params.num_trees < 1) throw ArgumentError("num_trees must be >= 1");
  const std::size_t m = data.space->size();
  const std::size_t k =
      params.features_per_split == 0 ? default_features_per_split(m) : params.features_per_split;
  if (k > m) {
    throw ArgumentError("features_per_split = " + std::to_string(k) + " exceeds " +
                        std::to_string(m) + " attributes");
  }
  for (const auto& row : data.rows) {
    if (!row.label) throw ArgumentError("training row '" + row.id + "' has no label");
    if (row.values.size() != m) {
      throw SpaceMismatchError("training row '" + row.id + "' does not match the space");
    }
    for (double v : row.values) {
      if (!std::isfinite(v)) throw ArgumentError("training row '" + row.id + "' has a non-finite value");
    }
  }

  Forest forest;
  forest.space = data.space;
  forest.params = params;
  forest.features_per_split = k;
  forest.trees.resize(params.num_trees);

  TreeParams tree_params;
  tree_params.prune = false;
  tree_params.min_leaf = 1;
  const std::size_t n = data.rows.size();

  auto build = [&](std::size_t t) {
    DecisionTree& tree = forest.trees[t];
    tree.space = data.space;
    tree.params = tree_params;
    tree.seed = tree_seed(params.seed, t);
    std::mt19937_64 rng(tree.seed);
    std::vector<std::size_t> sample(n);
    for (std::size_t i = 0; i < n; ++i) {
      sample[i] = params.bootstrap ? internal::bounded(rng, n) : i;
    }
    internal::GrowConfig config;
    config.params = tree_params;
    config.features_per_split = k;
    config.rng = &rng;
    tree.nodes = internal::grow(data, sample, config);
  };

  const unsigned workers =
      std::max(1u, std::min<unsigned>(params.threads, static_cast<unsigned>(params.num_trees)));
  if (workers == 1) {
    for (std::size_t t = 0; t < params.num_trees; ++t) build(t);
    return forest;
  }
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t t = w; t < params.num_trees; t += workers) build(t);
    });
  }
  for (auto& th : pool) th.join();
  return forest;
}

Label predict_forest(const Forest& forest, const FeatureVector& v) {
  internal::check_space(forest.space, v);
  std::size_t votes[2] = {0, 0};
  for (const auto& tree : forest.trees) ++votes[label_index(predict_tree(tree, v).label)];
  return votes[1] > votes[0] ? Label::kDisagreement : Label::kAgreement;
}

const SpacePtr& model_space(const Model& model) {
  return std::visit([](const auto& m) -> const SpacePtr& { return m.space; }, model);
}

Label predict(const Model& model, const FeatureVector& v) {
  if (const auto* tree = std::get_if<DecisionTree>(&model)) return predict_tree(*tree, v).label;
  return predict_forest(std::get<Forest>(model), v);
}

std::string describe(const Model& model) {
  if (const auto* tree = std::get_if<DecisionTree>(&model)) {
    return "tree(confidence=" + tsv::format_double(tree->params.confidence) +
           ", min_leaf=" + std::to_string(tree->params.min_leaf) +
           ", prune=" + (tree->params.prune ? "on" : "off") +
           ", nodes=" + std::to_string(tree->size()) + ")";
  }
  const auto& forest = std::get<Forest>(model);
  return "forest(trees=" + std::to_string(forest.params.num_trees) +
         ", features_per_split=" + std::to_string(forest.features_per_split) +
         ", bootstrap=" + (forest.params.bootstrap ? "on" : "off") +
         ", seed=" + std::to_string(forest.params.seed) + ")";
}

}  // namespace dissent::learn
