// Copyright 2026 The quwit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "quwit/error.hpp"

namespace quwit {

/// Unordered vertex pair stored with first < second.
struct Edge {
  std::size_t first = 0;
  std::size_t second = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Simple undirected graph on vertices 0..N-1. Edges keep their insertion
/// order so files round-trip unchanged.
class Graph {
 public:
  Graph() = default;

  Graph(std::size_t vertex_count, std::vector<std::pair<std::size_t, std::size_t>> edges)
      : vertex_count_(vertex_count), adjacency_(vertex_count) {
    detail::require(vertex_count_ >= 2, "a graph needs at least two vertices");
    std::set<Edge> seen;
    edges_.reserve(edges.size());
    for (auto [a, b] : edges) {
      detail::require(a != b, "self-loop at vertex " + std::to_string(a));
      detail::require(a < vertex_count_ && b < vertex_count_,
                      "edge (" + std::to_string(a) + "," + std::to_string(b) +
                          ") references a missing vertex");
      const Edge e{std::min(a, b), std::max(a, b)};
      detail::require(seen.insert(e).second, "duplicate edge (" + std::to_string(a) +
                                                 "," + std::to_string(b) + ")");
      edges_.push_back(e);
      adjacency_[a].push_back(b);
      adjacency_[b].push_back(a);
    }
    for (auto& n : adjacency_) std::sort(n.begin(), n.end());
  }

  /// Two vertices joined by one edge.
  static Graph bar() { return Graph(2, {{0, 1}}); }

  /// Vertex 0 joined to every other vertex.
  static Graph star(std::size_t n) {
    std::vector<std::pair<std::size_t, std::size_t>> e;
    for (std::size_t v = 1; v < n; ++v) e.emplace_back(0, v);
    return Graph(n, std::move(e));
  }

  /// Path 0-1-...-(n-1).
  static Graph chain(std::size_t n) {
    std::vector<std::pair<std::size_t, std::size_t>> e;
    for (std::size_t v = 1; v < n; ++v) e.emplace_back(v - 1, v);
    return Graph(n, std::move(e));
  }

  static Graph cycle(std::size_t n) {
    detail::require(n >= 3, "a cycle needs at least three vertices");
    auto e = chain(n).edge_pairs();
    e.emplace_back(n - 1, 0);
    return Graph(n, std::move(e));
  }

  static Graph complete(std::size_t n) {
    std::vector<std::pair<std::size_t, std::size_t>> e;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) e.emplace_back(a, b);
    }
    return Graph(n, std::move(e));
  }

  /// 2 x rungs grid: top row 0..rungs-1, bottom row rungs..2*rungs-1.
  static Graph ladder(std::size_t rungs) {
    detail::require(rungs >= 1, "a ladder needs at least one rung");
    std::vector<std::pair<std::size_t, std::size_t>> e;
    for (std::size_t i = 0; i < rungs; ++i) {
      if (i + 1 < rungs) {
        e.emplace_back(i, i + 1);
        e.emplace_back(rungs + i, rungs + i + 1);
      }
      e.emplace_back(i, rungs + i);
    }
    return Graph(2 * rungs, std::move(e));
  }

  /// Edge list bitmask over the pairs (a, b), a < b, in lexicographic order.
  static Graph from_mask(std::size_t n, std::uint64_t mask) {
    std::vector<std::pair<std::size_t, std::size_t>> e;
    std::size_t bit = 0;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b, ++bit) {
        if ((mask >> bit) & 1u) e.emplace_back(a, b);
      }
    }
    return Graph(n, std::move(e));
  }

  std::size_t vertex_count() const { return vertex_count_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::size_t>& neighbors(std::size_t v) const { return adjacency_.at(v); }
  std::size_t degree(std::size_t v) const { return adjacency_.at(v).size(); }

  bool has_edge(std::size_t a, std::size_t b) const {
    const auto& n = adjacency_.at(a);
    return std::binary_search(n.begin(), n.end(), b);
  }

  std::vector<std::pair<std::size_t, std::size_t>> edge_pairs() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    out.reserve(edges_.size());
    for (const auto& e : edges_) out.emplace_back(e.first, e.second);
    return out;
  }

  bool is_connected() const {
    std::vector<bool> seen(vertex_count_, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t reached = 1;
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      for (auto w : adjacency_[v]) {
        if (!seen[w]) {
          seen[w] = true;
          ++reached;
          stack.push_back(w);
        }
      }
    }
    return reached == vertex_count_;
  }

  /// Same vertex count and edge set; edge order is ignored.
  bool same_edges(const Graph& other) const {
    if (vertex_count_ != other.vertex_count_) return false;
    auto a = edges_;
    auto b = other.edges_;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.vertex_count_ == b.vertex_count_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> adjacency_;
};

/// Ordered colour classes Y_1..Y_q.
class ColoredPartition {
 public:
  ColoredPartition() = default;

  explicit ColoredPartition(std::vector<std::vector<std::size_t>> classes)
      : classes_(std::move(classes)) {
    detail::require(!classes_.empty(), "a colouring needs at least one class");
    for (auto& c : classes_) {
      detail::require(!c.empty(), "colour classes must be nonempty");
      std::sort(c.begin(), c.end());
    }
  }

  std::size_t q() const { return classes_.size(); }
  const std::vector<std::vector<std::size_t>>& classes() const { return classes_; }
  const std::vector<std::size_t>& color_class(std::size_t j) const { return classes_.at(j); }

  std::size_t largest_class() const {
    std::size_t m = 0;
    for (const auto& c : classes_) m = std::max(m, c.size());
    return m;
  }

  /// Colour index of every vertex; throws unless the classes partition 0..n-1.
  std::vector<std::size_t> color_map(std::size_t n) const {
    constexpr auto unset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> color(n, unset);
    std::size_t covered = 0;
    for (std::size_t j = 0; j < classes_.size(); ++j) {
      for (auto v : classes_[j]) {
        detail::require(v < n, "colouring names missing vertex " + std::to_string(v));
        detail::require(color[v] == unset,
                        "vertex " + std::to_string(v) + " appears in two colour classes");
        color[v] = j;
        ++covered;
      }
    }
    detail::require(covered == n, "colouring does not cover every vertex");
    return color;
  }

  /// Number of edges whose endpoints share a class.
  std::size_t monochromatic_edges(const Graph& g) const {
    const auto color = color_map(g.vertex_count());
    std::size_t bad = 0;
    for (const auto& e : g.edges()) bad += color[e.first] == color[e.second] ? 1 : 0;
    return bad;
  }

  bool is_proper_for(const Graph& g) const {
    try {
      return monochromatic_edges(g) == 0;
    } catch (const InvalidArgument&) {
      return false;
    }
  }

  friend bool operator==(const ColoredPartition&, const ColoredPartition&) = default;

 private:
  std::vector<std::vector<std::size_t>> classes_;
};

namespace detail {

inline ColoredPartition partition_from_colors(const std::vector<std::size_t>& color) {
  std::size_t q = 0;
  for (auto c : color) q = std::max(q, c + 1);
  std::vector<std::vector<std::size_t>> classes(q);
  for (std::size_t v = 0; v < color.size(); ++v) classes[color[v]].push_back(v);
  std::erase_if(classes, [](const auto& c) { return c.empty(); });
  // Canonical order: by smallest member.
  std::sort(classes.begin(), classes.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return ColoredPartition(std::move(classes));
}

inline std::optional<std::vector<std::size_t>> two_coloring(const Graph& g) {
  constexpr auto unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> color(g.vertex_count(), unset);
  for (std::size_t root = 0; root < g.vertex_count(); ++root) {
    if (color[root] != unset) continue;
    color[root] = 0;
    std::queue<std::size_t> queue;
    queue.push(root);
    while (!queue.empty()) {
      const auto v = queue.front();
      queue.pop();
      for (auto w : g.neighbors(v)) {
        if (color[w] == unset) {
          color[w] = 1 - color[v];
          queue.push(w);
        } else if (color[w] == color[v]) {
          return std::nullopt;
        }
      }
    }
  }
  return color;
}

/// Welsh-Powell: vertices by nonincreasing degree, smallest free colour.
inline std::vector<std::size_t> greedy_coloring(const Graph& g) {
  const auto n = g.vertex_count();
  std::vector<std::size_t> order(n);
  for (std::size_t v = 0; v < n; ++v) order[v] = v;
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
    return g.degree(a) > g.degree(b);
  });
  constexpr auto unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> color(n, unset);
  for (auto v : order) {
    std::vector<bool> used(n + 1, false);
    for (auto w : g.neighbors(v)) {
      if (color[w] != unset) used[color[w]] = true;
    }
    std::size_t c = 0;
    while (used[c]) ++c;
    color[v] = c;
  }
  return color;
}

/// Exact chromatic colouring by branch and bound, seeded with the greedy bound.
class ExactColoring {
 public:
  explicit ExactColoring(const Graph& g) : g_(g), color_(g.vertex_count(), unset) {
    best_ = greedy_coloring(g);
    best_q_ = 0;
    for (auto c : best_) best_q_ = std::max(best_q_, c + 1);
    order_.resize(g.vertex_count());
    for (std::size_t v = 0; v < order_.size(); ++v) order_[v] = v;
    std::stable_sort(order_.begin(), order_.end(), [&](auto a, auto b) {
      return g.degree(a) > g.degree(b);
    });
  }

  std::vector<std::size_t> solve() {
    search(0, 0);
    return best_;
  }

 private:
  static constexpr auto unset = static_cast<std::size_t>(-1);

  void search(std::size_t depth, std::size_t used) {
    if (used >= best_q_) return;
    if (depth == order_.size()) {
      best_ = color_;
      best_q_ = used;
      return;
    }
    const auto v = order_[depth];
    // A new colour is only tried once (symmetry breaking).
    for (std::size_t c = 0; c <= used && c < best_q_ - 1; ++c) {
      bool clash = false;
      for (auto w : g_.neighbors(v)) {
        if (color_[w] == c) {
          clash = true;
          break;
        }
      }
      if (clash) continue;
      color_[v] = c;
      search(depth + 1, std::max(used, c + 1));
      color_[v] = unset;
      if (best_q_ <= lower_bound_) return;
    }
  }

  const Graph& g_;
  std::vector<std::size_t> color_;
  std::vector<std::size_t> best_;
  std::size_t best_q_ = 0;
  std::size_t lower_bound_ = 1;
  std::vector<std::size_t> order_;
};

}  // namespace detail

inline constexpr std::size_t exact_coloring_cutoff = 16;

/// The requested colouring verbatim if supplied (it must be proper);
/// otherwise a two-colouring when the graph is bipartite, an exact minimum
/// colouring up to 16 vertices, and a greedy colouring beyond that.
inline ColoredPartition color_graph(const Graph& g,
                                    const std::optional<ColoredPartition>& requested = {}) {
  if (requested) {
    const auto bad = requested->monochromatic_edges(g);
    detail::require(bad == 0, "requested colouring is improper: " + std::to_string(bad) +
                                  " monochromatic edge(s)");
    return *requested;
  }
  if (g.edges().empty()) {
    std::vector<std::size_t> all(g.vertex_count());
    for (std::size_t v = 0; v < all.size(); ++v) all[v] = v;
    return ColoredPartition({all});
  }
  if (auto two = detail::two_coloring(g)) return detail::partition_from_colors(*two);
  if (g.vertex_count() <= exact_coloring_cutoff) {
    return detail::partition_from_colors(detail::ExactColoring(g).solve());
  }
  return detail::partition_from_colors(detail::greedy_coloring(g));
}

/// Connected graphs on n vertices, one representative per isomorphism class.
/// Brute force over all labellings, so only meant for small n (n <= 6).
inline std::vector<Graph> connected_graphs_up_to_isomorphism(std::size_t n) {
  detail::require(n >= 2 && n <= 6, "isomorphism enumeration supports 2..6 vertices");
  const std::size_t pairs = n * (n - 1) / 2;
  std::vector<std::vector<std::size_t>> pair_index(n, std::vector<std::size_t>(n, 0));
  {
    std::size_t bit = 0;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b, ++bit) pair_index[a][b] = pair_index[b][a] = bit;
    }
  }
  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));

  std::set<std::uint64_t> canonical_seen;
  std::vector<Graph> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs); ++mask) {
    std::uint64_t canonical = mask;
    for (const auto& perm : perms) {
      std::uint64_t image = 0;
      std::size_t bit = 0;
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b, ++bit) {
          if ((mask >> bit) & 1u) image |= std::uint64_t{1} << pair_index[perm[a]][perm[b]];
        }
      }
      canonical = std::min(canonical, image);
    }
    if (!canonical_seen.insert(canonical).second) continue;
    Graph g = Graph::from_mask(n, canonical);
    if (g.is_connected()) out.push_back(std::move(g));
  }
  return out;
}

}  // namespace quwit
