// Model file layout (version 1):
//
//   dissent-model 1
//   type tree|forest
//   space 1 ... end                     (see features::write_space)
//   forest num_trees=.. features_per_split=.. bootstrap=.. seed=..   (forest only)
//   tree seed=.. confidence=.. min_leaf=.. prune=.. mdl=.. avg_filter=.. nodes=K
//   L <label> <d0> <d1>
//   S <attribute> <threshold> <left> <right> <label> <d0> <d1>
//   ...
//   end
//
// Doubles use the shortest representation that reads back exactly.

#include <charconv>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "dissent/error.h"
#include "dissent/learn.h"
#include "dissent/tsv.h"

namespace dissent::learn {

namespace {

constexpr const char* kMagic = "dissent-model";
constexpr const char* kVersion = "1";

void write_tree(std::ostream& out, const DecisionTree& tree) {
  const auto& p = tree.params;
  out << "tree seed=" << tree.seed << " confidence=" << tsv::format_double(p.confidence)
      << " min_leaf=" << p.min_leaf << " prune=" << p.prune << " mdl=" << p.mdl_correction
      << " avg_filter=" << p.average_gain_filter << " nodes=" << tree.nodes.size() << '\n';
  for (const auto& node : tree.nodes) {
    if (node.leaf) {
      out << "L " << label_index(node.label);
    } else {
      out << "S " << node.attribute << ' ' << tsv::format_double(node.threshold) << ' '
          << node.left << ' ' << node.right << ' ' << label_index(node.label);
    }
    out << ' ' << tsv::format_double(node.distribution[0]) << ' '
        << tsv::format_double(node.distribution[1]) << '\n';
  }
}

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  std::string line() {
    std::string text;
    while (std::getline(in_, text)) {
      ++line_no_;
      if (!text.empty() && text.back() == '\r') text.pop_back();
      if (!text.empty()) return text;
    }
    throw ParseError("unexpected end of model file", line_no_);
  }

  std::vector<std::string> words(const std::string& text) {
    std::istringstream ss(text);
    std::vector<std::string> out;
    std::string w;
    while (ss >> w) out.push_back(w);
    return out;
  }

  std::map<std::string, std::string> key_values(const std::vector<std::string>& w,
                                                std::size_t from) {
    std::map<std::string, std::string> kv;
    for (std::size_t i = from; i < w.size(); ++i) {
      const auto eq = w[i].find('=');
      if (eq == std::string::npos) fail("expected key=value, got '" + w[i] + "'");
      kv[w[i].substr(0, eq)] = w[i].substr(eq + 1);
    }
    return kv;
  }

  std::string get(const std::map<std::string, std::string>& kv, const std::string& key) {
    auto it = kv.find(key);
    if (it == kv.end()) fail("missing '" + key + "'");
    return it->second;
  }

  double number(const std::string& text) {
    double v;
    if (!tsv::parse_double(text, &v)) fail("bad number '" + text + "'");
    return v;
  }

  std::uint64_t integer(const std::string& text) {
    std::uint64_t v = 0;
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end) fail("bad integer '" + text + "'");
    return v;
  }

  bool flag(const std::string& text) {
    if (text != "0" && text != "1") fail("bad flag '" + text + "'");
    return text == "1";
  }

  [[noreturn]] void fail(const std::string& what) { throw ParseError(what, line_no_); }

  std::istream& stream() { return in_; }
  std::size_t line_no() const { return line_no_; }
  void advance(std::size_t lines) { line_no_ += lines; }

 private:
  std::istream& in_;
  std::size_t line_no_ = 0;
};

DecisionTree read_tree(Reader& r, const SpacePtr& space) {
  const auto head = r.words(r.line());
  if (head.empty() || head[0] != "tree") r.fail("expected 'tree'");
  const auto kv = r.key_values(head, 1);
  DecisionTree tree;
  tree.space = space;
  tree.seed = r.integer(r.get(kv, "seed"));
  tree.params.confidence = r.number(r.get(kv, "confidence"));
  tree.params.min_leaf = r.integer(r.get(kv, "min_leaf"));
  tree.params.prune = r.flag(r.get(kv, "prune"));
  tree.params.mdl_correction = r.flag(r.get(kv, "mdl"));
  tree.params.average_gain_filter = r.flag(r.get(kv, "avg_filter"));
  const std::size_t count = r.integer(r.get(kv, "nodes"));
  if (count == 0) r.fail("tree without nodes");
  for (std::size_t i = 0; i < count; ++i) {
    const auto w = r.words(r.line());
    Node node;
    std::size_t at = 1;
    if (w.size() == 4 && w[0] == "L") {
      node.leaf = true;
    } else if (w.size() == 8 && w[0] == "S") {
      node.leaf = false;
      node.attribute = r.integer(w[1]);
      node.threshold = r.number(w[2]);
      node.left = r.integer(w[3]);
      node.right = r.integer(w[4]);
      at = 5;
      if (node.attribute >= space->size()) r.fail("split attribute out of range");
      if (node.left <= i || node.right <= i || node.left >= count || node.right >= count) {
        r.fail("child index out of range");
      }
    } else {
      r.fail("bad node line");
    }
    const auto label = r.integer(w[at]);
    if (label > 1) r.fail("bad label index");
    node.label = label_from_index(static_cast<int>(label));
    node.distribution = {r.number(w[at + 1]), r.number(w[at + 2])};
    tree.nodes.push_back(node);
  }
  return tree;
}

}  // namespace

void write_model(std::ostream& out, const Model& model) {
  out << kMagic << ' ' << kVersion << '\n';
  if (const auto* tree = std::get_if<DecisionTree>(&model)) {
    out << "type tree\n";
    features::write_space(out, *tree->space);
    write_tree(out, *tree);
  } else {
    const auto& forest = std::get<Forest>(model);
    out << "type forest\n";
    features::write_space(out, *forest.space);
    out << "forest num_trees=" << forest.params.num_trees
        << " features_per_split=" << forest.features_per_split
        << " bootstrap=" << forest.params.bootstrap << " seed=" << forest.params.seed << '\n';
    for (const auto& tree : forest.trees) write_tree(out, tree);
  }
  out << "end\n";
}

Model read_model(std::istream& in) {
  Reader r(in);
  const auto magic = r.words(r.line());
  if (magic.size() != 2 || magic[0] != kMagic) r.fail("not a model file");
  if (magic[1] != kVersion) r.fail("unsupported model version '" + magic[1] + "'");
  const auto type = r.words(r.line());
  if (type.size() != 2 || type[0] != "type" || (type[1] != "tree" && type[1] != "forest")) {
    r.fail("expected 'type tree' or 'type forest'");
  }
  auto space = std::make_shared<const FeatureSpace>(features::read_space(in));
  r.advance(space->size() + 5);

  Model model;
  if (type[1] == "tree") {
    model = read_tree(r, space);
  } else {
    const auto head = r.words(r.line());
    if (head.empty() || head[0] != "forest") r.fail("expected 'forest'");
    const auto kv = r.key_values(head, 1);
    Forest forest;
    forest.space = space;
    forest.params.num_trees = r.integer(r.get(kv, "num_trees"));
    forest.features_per_split = r.integer(r.get(kv, "features_per_split"));
    forest.params.features_per_split = forest.features_per_split;
    forest.params.bootstrap = r.flag(r.get(kv, "bootstrap"));
    forest.params.seed = r.integer(r.get(kv, "seed"));
    if (forest.params.num_trees == 0) r.fail("forest without trees");
    for (std::size_t t = 0; t < forest.params.num_trees; ++t) {
      forest.trees.push_back(read_tree(r, space));
    }
    model = std::move(forest);
  }
  if (r.line() != "end") r.fail("expected 'end'");
  return model;
}

}  // namespace dissent::learn
