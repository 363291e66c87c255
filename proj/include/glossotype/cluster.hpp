#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "glossotype/distance.hpp"
#include "glossotype/error.hpp"
#include "glossotype/format.hpp"
#include "glossotype/rng.hpp"

namespace glossotype {

// ---------------------------------------------------------------------------
// Hierarchical clustering

enum class Linkage { average, single, complete };

constexpr std::string_view to_string(Linkage linkage) noexcept {
  switch (linkage) {
    case Linkage::average: return "average";
    case Linkage::single: return "single";
    case Linkage::complete: return "complete";
  }
  return "unknown";
}

struct DendrogramNode {
  std::string label;  // leaves only
  std::optional<std::size_t> left;
  std::optional<std::size_t> right;
  double height = 0.0;
  std::size_t leaf_count = 1;
  std::string min_label;  // smallest leaf label below this node

  bool is_leaf() const noexcept { return !left.has_value(); }
};

/// Binary tree over the labels of a distance matrix. Nodes [0, n) are the
/// leaves in matrix order; each later node is one merge, in merge order.
class Dendrogram {
 public:
  Dendrogram() = default;
  explicit Dendrogram(std::vector<DendrogramNode> nodes) : nodes_(std::move(nodes)) {}

  const std::vector<DendrogramNode>& nodes() const noexcept { return nodes_; }
  const DendrogramNode& node(std::size_t id) const { return nodes_.at(id); }
  std::size_t root() const noexcept { return nodes_.size() - 1; }
  std::size_t leaf_count() const noexcept { return (nodes_.size() + 1) / 2; }

  /// Leaf labels under `id`, left to right.
  std::vector<std::string> leaves_under(std::size_t id) const {
    std::vector<std::string> out;
    collect(id, out);
    return out;
  }

 private:
  void collect(std::size_t id, std::vector<std::string>& out) const {
    const auto& n = nodes_.at(id);
    if (n.is_leaf()) {
      out.push_back(n.label);
      return;
    }
    collect(*n.left, out);
    collect(*n.right, out);
  }

  std::vector<DendrogramNode> nodes_;
};

/// Agglomerative clustering. Each step merges the two clusters at minimal
/// linkage distance (ties: lexicographically smallest pair of cluster
/// labels, a cluster being labelled by its smallest leaf); the merge height
/// is half that distance. Average linkage is UPGMA.
inline Dendrogram upgma(const DistanceMatrix& matrix, Linkage linkage = Linkage::average) {
  const std::size_t n = matrix.size();
  if (n < 2) throw Error(Errc::too_few_labels, "clustering needs at least 2 labels");

  std::vector<DendrogramNode> nodes;
  nodes.reserve(2 * n - 1);
  for (const auto& label : matrix.labels()) {
    nodes.push_back(DendrogramNode{label, std::nullopt, std::nullopt, 0.0, 1, label});
  }

  // slot -> node id of the cluster currently occupying it
  std::vector<std::size_t> slot_node(n);
  std::iota(slot_node.begin(), slot_node.end(), std::size_t{0});
  std::vector<bool> active(n, true);
  std::vector<double> d(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) d[i * n + j] = matrix(i, j);
  }

  auto pair_before = [&](std::size_t a1, std::size_t b1, std::size_t a2, std::size_t b2) {
    const auto& x1 = nodes[slot_node[a1]].min_label;
    const auto& y1 = nodes[slot_node[b1]].min_label;
    const auto& x2 = nodes[slot_node[a2]].min_label;
    const auto& y2 = nodes[slot_node[b2]].min_label;
    const auto& lo1 = std::min(x1, y1);
    const auto& hi1 = std::max(x1, y1);
    const auto& lo2 = std::min(x2, y2);
    const auto& hi2 = std::max(x2, y2);
    return lo1 != lo2 ? lo1 < lo2 : hi1 < hi2;
  };

  for (std::size_t step = 0; step + 1 < n; ++step) {
    std::size_t best_a = n, best_b = n;
    double best = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
      if (!active[a]) continue;
      for (std::size_t b = a + 1; b < n; ++b) {
        if (!active[b]) continue;
        const double v = d[a * n + b];
        if (best_a == n || v < best || (v == best && pair_before(a, b, best_a, best_b))) {
          best = v;
          best_a = a;
          best_b = b;
        }
      }
    }

    std::size_t first = slot_node[best_a], second = slot_node[best_b];
    if (nodes[second].min_label < nodes[first].min_label) std::swap(first, second);
    const std::size_t size_a = nodes[slot_node[best_a]].leaf_count;
    const std::size_t size_b = nodes[slot_node[best_b]].leaf_count;

    DendrogramNode merged;
    merged.left = first;
    merged.right = second;
    merged.height = best / 2.0;
    merged.leaf_count = size_a + size_b;
    merged.min_label = std::min(nodes[first].min_label, nodes[second].min_label);
    nodes.push_back(std::move(merged));

    for (std::size_t k = 0; k < n; ++k) {
      if (!active[k] || k == best_a || k == best_b) continue;
      const double da = d[best_a * n + k];
      const double db = d[best_b * n + k];
      double v = 0.0;
      switch (linkage) {
        case Linkage::average:
          v = (static_cast<double>(size_a) * da + static_cast<double>(size_b) * db) /
              static_cast<double>(size_a + size_b);
          break;
        case Linkage::single: v = std::min(da, db); break;
        case Linkage::complete: v = std::max(da, db); break;
      }
      d[best_a * n + k] = d[k * n + best_a] = v;
    }
    slot_node[best_a] = nodes.size() - 1;
    active[best_b] = false;
  }
  return Dendrogram(std::move(nodes));
}

namespace detail {

inline bool newick_needs_quotes(std::string_view label) {
  if (label.empty()) return true;
  return label.find_first_of("()[]':;, \t\n_") != std::string_view::npos;
}

inline std::string newick_label(std::string_view label) {
  if (!newick_needs_quotes(label)) return std::string(label);
  std::string out = "'";
  for (char c : label) {
    if (c == '\'') out += '\'';
    out += c;
  }
  out += '\'';
  return out;
}

inline void write_newick(const Dendrogram& tree, std::size_t id, std::optional<double> parent_height,
                         std::string& out) {
  const auto& node = tree.node(id);
  if (node.is_leaf()) {
    out += newick_label(node.label);
  } else {
    out += '(';
    write_newick(tree, *node.left, node.height, out);
    out += ',';
    write_newick(tree, *node.right, node.height, out);
    out += ')';
  }
  if (parent_height) {
    out += ':';
    out += format_double(*parent_height - node.height);
  }
}

}  // namespace detail

/// Newick with branch lengths (parent height minus child height).
inline std::string to_newick(const Dendrogram& tree) {
  std::string out;
  if (tree.nodes().empty()) return ";";
  detail::write_newick(tree, tree.root(), std::nullopt, out);
  out += ';';
  return out;
}

// ---------------------------------------------------------------------------
// Similarity graph

/// Default retention threshold: the z-score bounding a 75% two-sided
/// confidence interval.
inline constexpr double kDefaultZThreshold = 1.15035;

struct SimilarityEdge {
  std::size_t source = 0;
  std::size_t target = 0;
  double zscore = 0.0;

  friend bool operator==(const SimilarityEdge&, const SimilarityEdge&) = default;
};

struct SimilarityGraph {
  std::vector<std::string> nodes;
  std::vector<SimilarityEdge> edges;
  std::vector<std::size_t> communities;  // empty until detect_communities

  std::size_t community_count() const {
    return communities.empty() ? 0 : *std::max_element(communities.begin(), communities.end()) + 1;
  }

  friend bool operator==(const SimilarityGraph&, const SimilarityGraph&) = default;
};

/// Keeps the pairs whose distance is significantly below average:
/// (d - mean) / sd <= -z_threshold, with mean and sample standard deviation
/// taken over the strict upper triangle. Each edge stores its z-score.
inline SimilarityGraph zscore_filter(const DistanceMatrix& matrix, double z_threshold = kDefaultZThreshold) {
  const std::size_t n = matrix.size();
  if (n < 3) throw Error(Errc::too_few_labels, "z-scores need at least 3 labels");
  const auto values = matrix.upper_triangle();
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  if (*lo == *hi) throw Error(Errc::zero_variance, "all pairwise distances are equal");

  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
  if (!(sd > 0.0) || !std::isfinite(sd)) throw Error(Errc::zero_variance, "standard deviation is zero");

  SimilarityGraph graph{matrix.labels(), {}, {}};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double z = (matrix(i, j) - mean) / sd;
      if (z <= -z_threshold) graph.edges.push_back({i, j, z});
    }
  }
  return graph;
}

/// Asynchronous label propagation. Every node starts with its own label;
/// each sweep visits the nodes in a freshly seeded random order and gives
/// each the label most frequent among its neighbours (ties: keep the
/// current label if tied, else a seeded random choice). Stops after a sweep
/// without changes or after `max_sweeps`.
/// Community ids are then renumbered 0.. in order of first node.
inline SimilarityGraph detect_communities(SimilarityGraph graph, std::uint64_t seed,
                                          std::size_t max_sweeps = 100) {
  const std::size_t n = graph.nodes.size();
  std::vector<std::vector<std::size_t>> adjacency(n);
  for (const auto& e : graph.edges) {
    if (e.source == e.target) continue;
    adjacency[e.source].push_back(e.target);
    adjacency[e.target].push_back(e.source);
  }

  std::vector<std::size_t> label(n);
  std::iota(label.begin(), label.end(), std::size_t{0});
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  SplitMix64 rng(seed);
  std::map<std::size_t, std::size_t> tally;
  std::vector<std::size_t> tied;

  for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
    rng.shuffle(std::span<std::size_t>(order));
    bool changed = false;
    for (std::size_t v : order) {
      if (adjacency[v].empty()) continue;
      tally.clear();
      for (std::size_t u : adjacency[v]) ++tally[label[u]];
      std::size_t best_count = 0;
      tied.clear();
      for (const auto& [l, count] : tally) {  // ascending label order
        if (count > best_count) {
          best_count = count;
          tied.clear();
        }
        if (count == best_count) tied.push_back(l);
      }
      // Keep the current label when it is among the best; otherwise pick a
      // tied label at random.
      std::size_t best_label = label[v];
      if (std::find(tied.begin(), tied.end(), best_label) == tied.end()) best_label = tied[rng.below(tied.size())];
      if (best_label != label[v]) {
        label[v] = best_label;
        changed = true;
      }
    }
    if (!changed) break;
  }

  std::map<std::size_t, std::size_t> renumber;
  graph.communities.assign(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    const auto [it, inserted] = renumber.try_emplace(label[v], renumber.size());
    graph.communities[v] = it->second;
  }
  return graph;
}

/// Adjusted Rand index between two labelings of the same items.
inline double adjusted_rand_index(std::span<const std::size_t> a, std::span<const std::size_t> b) {
  if (a.size() != b.size()) throw Error(Errc::dimension_mismatch, "labelings differ in length");
  const std::size_t n = a.size();
  if (n < 2) return 1.0;
  std::map<std::pair<std::size_t, std::size_t>, double> joint;
  std::map<std::size_t, double> rows, cols;
  for (std::size_t i = 0; i < n; ++i) {
    joint[{a[i], b[i]}] += 1.0;
    rows[a[i]] += 1.0;
    cols[b[i]] += 1.0;
  }
  auto choose2 = [](double x) { return x * (x - 1.0) / 2.0; };
  double index = 0.0, sum_rows = 0.0, sum_cols = 0.0;
  for (const auto& [k, v] : joint) index += choose2(v);
  for (const auto& [k, v] : rows) sum_rows += choose2(v);
  for (const auto& [k, v] : cols) sum_cols += choose2(v);
  const double expected = sum_rows * sum_cols / choose2(static_cast<double>(n));
  const double max_index = (sum_rows + sum_cols) / 2.0;
  if (max_index == expected) return 1.0;
  return (index - expected) / (max_index - expected);
}

}  // namespace glossotype
