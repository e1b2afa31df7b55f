#include <random>

#include "doctest.h"
#include "oracle/brute_force.h"
#include "oracle/check.h"

using namespace dissent;

TEST_CASE("perfect split scores one bit before correction") {
  oracle::Data d;
  for (int i = 0; i < 10; ++i) {
    d.x.push_back({i < 5 ? 0.0 : 1.0});
    d.y.push_back(i < 5 ? 0 : 1);
  }
  const auto s = oracle::score(d, 0, 1, true);
  CHECK(s.gain == doctest::Approx(1.0));
  CHECK(s.threshold == 0.5);
  CHECK(oracle::check_dataset(d) == "");
}

TEST_CASE("four-instance datasets match exhaustively") {
  // Every labeling and every assignment of values from {0, 1, 2} to four
  // instances of one attribute.
  int checked = 0;
  for (int labels = 1; labels < 15; ++labels) {
    for (int code = 0; code < 81; ++code) {
      oracle::Data d;
      int c = code;
      for (int i = 0; i < 4; ++i) {
        d.x.push_back({static_cast<double>(c % 3)});
        c /= 3;
        d.y.push_back((labels >> i) & 1);
      }
      const std::string why = oracle::check_dataset(d);
      INFO(why);
      CHECK(why.empty());
      ++checked;
    }
  }
  CHECK(checked == 14 * 81);
}

TEST_CASE("three-attribute toy ranking and top two") {
  oracle::Data d;
  d.x = {{0, 1, 2}, {0, 0, 2}, {1, 1, 2}, {1, 0, 3}, {1, 1, 3}, {0, 0, 3}};
  d.y = {0, 0, 1, 1, 1, 0};
  const auto want = oracle::ranking(d, 1, true);
  const auto data = oracle::to_dataset(d);
  learn::SplitOptions options;
  options.min_leaf = 1;
  const auto got = learn::rank_features(data, options);
  for (std::size_t i = 0; i < want.size(); ++i) CHECK(got.features[i].index == want[i]);
  CHECK(want[0] == 0);
  const auto top2 = learn::select_top_k(got, 2);
  std::vector<std::string> names;
  for (const auto& a : top2.attributes()) names.push_back(a.name);
  std::vector<std::size_t> expected = {want[0], want[1]};
  std::sort(expected.begin(), expected.end());
  CHECK(names == std::vector<std::string>{"x" + std::to_string(expected[0]),
                                          "x" + std::to_string(expected[1])});
}

TEST_CASE("eight-instance two-attribute root split") {
  oracle::Data d;
  d.x = {{1, 0}, {2, 0}, {3, 1}, {4, 1}, {5, 0}, {6, 1}, {7, 1}, {8, 1}};
  d.y = {0, 0, 0, 1, 1, 1, 1, 1};
  std::vector<std::size_t> rows = {0, 1, 2, 3, 4, 5, 6, 7};
  const auto choice = oracle::choose(d, rows, 2, true, true);
  REQUIRE(choice.has_value());
  learn::TreeParams params;
  params.prune = false;
  const auto tree = learn::train_tree(oracle::to_dataset(d), params);
  REQUIRE_FALSE(tree.nodes[0].leaf);
  CHECK(tree.nodes[0].attribute == choice->attribute);
  CHECK(tree.nodes[0].threshold == doctest::Approx(choice->threshold));
}

TEST_CASE("random small datasets match the oracle") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 1000; ++i) {
    const auto d = oracle::random_data(rng);
    const std::string why = oracle::check_dataset(d);
    INFO("dataset " << i << ": " << why);
    CHECK(why.empty());
  }
}
