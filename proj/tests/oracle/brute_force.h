// Exhaustive reference scoring for small datasets. Everything is recomputed
// from scratch for each candidate threshold; nothing is shared with the
// library beyond the tie rules.
#ifndef DISSENT_TESTS_ORACLE_BRUTE_FORCE_H_
#define DISSENT_TESTS_ORACLE_BRUTE_FORCE_H_

#include <cstddef>
#include <optional>
#include <vector>

namespace oracle {

struct Data {
  std::vector<std::vector<double>> x;  // x[instance][attribute]
  std::vector<int> y;                  // 0 or 1
  std::size_t attributes() const { return x.empty() ? 0 : x[0].size(); }
};

double entropy(double a, double b);

struct Score {
  bool constant = false;
  std::size_t candidates = 0;
  double threshold = 0.0;
  double gain = 0.0;
  double corrected_gain = 0.0;
  double split_info = 0.0;
  double ratio = 0.0;
};

// Best split of one attribute over the instances in `rows`.
Score score(const Data& data, const std::vector<std::size_t>& rows, std::size_t attribute,
            std::size_t min_leaf, bool mdl);
Score score(const Data& data, std::size_t attribute, std::size_t min_leaf, bool mdl);

// Attribute indices by score descending, ties by index.
std::vector<std::size_t> ranking(const Data& data, std::size_t min_leaf, bool mdl);

struct Choice {
  std::size_t attribute = 0;
  double threshold = 0.0;
};

// The split a node over `rows` takes, or nothing for a leaf.
std::optional<Choice> choose(const Data& data, const std::vector<std::size_t>& rows,
                             std::size_t min_leaf, bool mdl, bool average_filter);

struct Node {
  bool leaf = true;
  int label = 0;
  std::size_t attribute = 0;
  double threshold = 0.0;
};

// Unpruned tree in preorder (node, left subtree, right subtree).
std::vector<Node> grow(const Data& data, std::size_t min_leaf, bool mdl, bool average_filter);

}  // namespace oracle

#endif  // DISSENT_TESTS_ORACLE_BRUTE_FORCE_H_
