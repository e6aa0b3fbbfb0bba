#pragma once

// Finite simple undirected graphs on consecutively numbered nodes, with the
// two-phase contract/squeeze editing model and an isomorphism test based on
// color refinement plus individualization.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace latpoly {

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SearchBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : adj_(n), deleted_(n, false) {}

  static Graph from_edges(std::size_t n, const std::vector<std::pair<int, int>>& edges) {
    Graph g(n);
    for (auto [a, b] : edges) g.add_edge(a, b);
    return g;
  }

  /// Number of node slots, including deleted ones.
  std::size_t dim() const { return adj_.size(); }
  std::size_t nodes() const { return static_cast<std::size_t>(std::count(deleted_.begin(), deleted_.end(), false)); }
  std::size_t edges() const {
    std::size_t e = 0;
    for (std::size_t i = 0; i < adj_.size(); ++i)
      if (!deleted_[i]) e += adj_[i].size();
    return e / 2;
  }
  bool has_gaps() const { return std::find(deleted_.begin(), deleted_.end(), true) != deleted_.end(); }
  bool deleted(int n) const { return deleted_.at(n); }

  const std::set<int>& adjacent_nodes(int n) const { return adj_.at(n); }
  std::size_t degree(int n) const { return adj_.at(n).size(); }
  bool edge_exists(int a, int b) const { return adj_.at(a).count(b) > 0; }

  void add_edge(int a, int b) {
    check_live(a);
    check_live(b);
    if (a == b) throw GraphError("loops are not allowed");
    adj_[a].insert(b);
    adj_[b].insert(a);
  }

  /// Merges the neighborhood of `v` into `u` and marks `v` deleted.
  void contract_edge(int u, int v) {
    check_live(u);
    check_live(v);
    if (u == v) throw GraphError("contract_edge: endpoints coincide");
    if (!edge_exists(u, v)) throw GraphError("contract_edge: no edge " + std::to_string(u) + "-" + std::to_string(v));
    for (int w : adj_[v]) {
      adj_[w].erase(v);
      if (w != u) {
        adj_[w].insert(u);
        adj_[u].insert(w);
      }
    }
    adj_[v].clear();
    adj_[u].erase(v);
    deleted_[v] = true;
  }

  /// Drops deleted nodes and renumbers survivors 0..m-1, keeping their order.
  void squeeze() {
    std::vector<int> new_index(adj_.size(), -1);
    int next = 0;
    for (std::size_t i = 0; i < adj_.size(); ++i)
      if (!deleted_[i]) new_index[i] = next++;
    std::vector<std::set<int>> adj(next);
    for (std::size_t i = 0; i < adj_.size(); ++i) {
      if (deleted_[i]) continue;
      for (int w : adj_[i]) adj[new_index[i]].insert(new_index[w]);
    }
    adj_ = std::move(adj);
    deleted_.assign(adj_.size(), false);
  }

  friend bool operator==(const Graph& a, const Graph& b) { return a.adj_ == b.adj_ && a.deleted_ == b.deleted_; }

  friend std::ostream& operator<<(std::ostream& os, const Graph& g) {
    for (std::size_t i = 0; i < g.adj_.size(); ++i) {
      if (g.deleted_[i]) continue;
      os << '{';
      bool first = true;
      for (int w : g.adj_[i]) {
        if (!first) os << ' ';
        os << w;
        first = false;
      }
      os << "}\n";
    }
    return os;
  }

 private:
  void check_live(int n) const {
    if (n < 0 || static_cast<std::size_t>(n) >= adj_.size()) throw GraphError("node " + std::to_string(n) + " out of range");
    if (deleted_[n]) throw GraphError("node " + std::to_string(n) + " is deleted");
  }

  std::vector<std::set<int>> adj_;
  std::vector<bool> deleted_;
};

namespace detail {

using Coloring = std::vector<int>;

// Refines the colorings of both graphs together so that color ids mean the
// same thing on either side. Returns false as soon as the color histograms
// diverge.
inline bool refine_jointly(const Graph& g1, const Graph& g2, Coloring& c1, Coloring& c2) {
  const std::size_t n = g1.dim();
  std::size_t classes = std::set<int>(c1.begin(), c1.end()).size();
  while (true) {
    using Signature = std::pair<int, std::vector<int>>;
    auto signatures = [](const Graph& g, const Coloring& c) {
      std::vector<Signature> sig(c.size());
      for (std::size_t v = 0; v < c.size(); ++v) {
        std::vector<int> nb;
        nb.reserve(g.degree(static_cast<int>(v)));
        for (int w : g.adjacent_nodes(static_cast<int>(v))) nb.push_back(c[w]);
        std::sort(nb.begin(), nb.end());
        sig[v] = {c[v], std::move(nb)};
      }
      return sig;
    };
    auto s1 = signatures(g1, c1);
    auto s2 = signatures(g2, c2);
    std::map<Signature, std::pair<int, int>> count;
    for (const auto& s : s1) ++count[s].first;
    for (const auto& s : s2) ++count[s].second;
    std::map<Signature, int> id;
    for (const auto& [s, cnt] : count) {
      if (cnt.first != cnt.second) return false;
      id.emplace(s, static_cast<int>(id.size()));
    }
    for (std::size_t v = 0; v < n; ++v) {
      c1[v] = id[s1[v]];
      c2[v] = id[s2[v]];
    }
    if (id.size() == classes) return true;
    classes = id.size();
  }
}

struct IsoSearch {
  const Graph& g1;
  const Graph& g2;
  std::size_t budget;
  std::size_t visited = 0;

  std::optional<std::vector<int>> run(Coloring c1, Coloring c2) {
    if (++visited > budget) throw SearchBudgetExceeded("isomorphism search exceeded its node budget");
    if (!refine_jointly(g1, g2, c1, c2)) return std::nullopt;
    const std::size_t n = c1.size();
    // pick the smallest non-singleton class
    std::map<int, int> size;
    for (int c : c1) ++size[c];
    int target = -1, best = 0;
    for (auto [c, s] : size)
      if (s > 1 && (target < 0 || s < best)) target = c, best = s;
    if (target < 0) {
      std::vector<int> map(n);
      std::vector<int> by_color(n);
      for (std::size_t v = 0; v < n; ++v) by_color[c2[v]] = static_cast<int>(v);
      for (std::size_t v = 0; v < n; ++v) map[v] = by_color[c1[v]];
      for (std::size_t v = 0; v < n; ++v)
        for (int w : g1.adjacent_nodes(static_cast<int>(v)))
          if (!g2.edge_exists(map[v], map[w])) return std::nullopt;
      return map;
    }
    std::size_t v = 0;
    while (c1[v] != target) ++v;
    const int fresh = static_cast<int>(size.size());
    for (std::size_t w = 0; w < n; ++w) {
      if (c2[w] != target) continue;
      Coloring d1 = c1, d2 = c2;
      d1[v] = fresh;
      d2[w] = fresh;
      if (auto m = run(std::move(d1), std::move(d2))) return m;
    }
    return std::nullopt;
  }
};

inline void require_squeezed(const Graph& g) {
  if (g.has_gaps()) throw GraphError("graph has deleted nodes; call squeeze first");
}

}  // namespace detail

/// Node map m with {v,w} an edge of g1 iff {m[v],m[w]} is an edge of g2.
inline std::optional<std::vector<int>> find_isomorphism(const Graph& g1, const Graph& g2,
                                                        std::size_t budget = 1'000'000) {
  detail::require_squeezed(g1);
  detail::require_squeezed(g2);
  if (g1.dim() != g2.dim() || g1.edges() != g2.edges()) return std::nullopt;
  detail::IsoSearch search{g1, g2, budget};
  return search.run(detail::Coloring(g1.dim(), 0), detail::Coloring(g2.dim(), 0));
}

inline bool isomorphic(const Graph& g1, const Graph& g2, std::size_t budget = 1'000'000) {
  return find_isomorphism(g1, g2, budget).has_value();
}

/// Searches for a set of `merges` pairwise disjoint edges of `g` whose
/// contraction yields a graph isomorphic to `target`. Works by building the
/// contraction map node by node (each target node receives one node or the
/// two ends of an edge) and checking adjacency as it goes.
inline std::optional<std::vector<std::pair<int, int>>> find_contraction_matching(const Graph& g, const Graph& target,
                                                                                 std::size_t budget = 50'000'000) {
  detail::require_squeezed(g);
  detail::require_squeezed(target);
  const int n = static_cast<int>(g.dim());
  const int m = static_cast<int>(target.dim());
  if (m > n) return std::nullopt;
  const int merges = n - m;

  // breadth-first order keeps every node after at least one neighbour
  std::vector<int> order;
  std::vector<bool> seen(n, false);
  for (int s = 0; s < n; ++s) {
    if (seen[s]) continue;
    seen[s] = true;
    order.push_back(s);
    for (std::size_t i = order.size() - 1; i < order.size(); ++i)
      for (int w : g.adjacent_nodes(order[i]))
        if (!seen[w]) seen[w] = true, order.push_back(w);
  }

  std::vector<int> image(n, -1);
  std::vector<std::vector<int>> fiber(m);
  int used_merges = 0;
  std::size_t visited = 0;

  // A target node is closed when every neighbour of its fiber has an image;
  // its image neighbourhood must then be exactly its target neighbourhood.
  auto closed_and_wrong = [&](int t) {
    if (fiber[t].empty()) return false;
    std::set<int> covered;
    for (int x : fiber[t])
      for (int y : g.adjacent_nodes(x)) {
        if (image[y] < 0) return false;
        if (image[y] != t) covered.insert(image[y]);
      }
    return covered.size() != target.degree(t);
  };

  auto rec = [&](auto&& self, std::size_t i) -> bool {
    if (++visited > budget) throw SearchBudgetExceeded("contraction search exceeded its node budget");
    if (i == order.size()) return used_merges == merges;
    const int a = order[i];
    std::set<int> candidates;
    bool anchored = false;
    for (int b : g.adjacent_nodes(a)) {
      if (image[b] < 0) continue;
      anchored = true;
      if (candidates.empty()) {
        candidates.insert(image[b]);
        for (int t : target.adjacent_nodes(image[b])) candidates.insert(t);
      }
      break;
    }
    if (!anchored)
      for (int t = 0; t < m; ++t) candidates.insert(t);
    for (int t : candidates) {
      if (fiber[t].size() >= 2) continue;
      bool merging = !fiber[t].empty();
      if (merging && (used_merges == merges || !g.edge_exists(fiber[t][0], a))) continue;
      bool ok = true;
      for (int b : g.adjacent_nodes(a)) {
        if (image[b] < 0 || image[b] == t) continue;
        if (!target.edge_exists(image[b], t)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      image[a] = t;
      fiber[t].push_back(a);
      used_merges += merging;
      bool bad = closed_and_wrong(t);
      for (int b : g.adjacent_nodes(a))
        if (!bad && image[b] >= 0 && image[b] != t) bad = closed_and_wrong(image[b]);
      if (!bad && self(self, i + 1)) return true;
      used_merges -= merging;
      fiber[t].pop_back();
      image[a] = -1;
    }
    return false;
  };

  if (!rec(rec, 0)) return std::nullopt;
  std::vector<std::pair<int, int>> matching;
  for (const auto& f : fiber)
    if (f.size() == 2) matching.emplace_back(std::min(f[0], f[1]), std::max(f[0], f[1]));
  std::sort(matching.begin(), matching.end());
  return matching;
}

}  // namespace latpoly
