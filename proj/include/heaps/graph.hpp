#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <deque>
#include <fstream>
#include <initializer_list>
#include <istream>
#include <optional>
#include <sstream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace heaps {

/// Vertices are 1-based; their numeric order is the total order used for every
/// "smallest" tie-break in the library.
using Vertex = int;

/// Sorted set of distinct vertices.
class VertexSet {
 public:
  VertexSet() = default;
  VertexSet(std::initializer_list<Vertex> vs) : v_(vs) { canonicalize(); }
  explicit VertexSet(std::vector<Vertex> vs) : v_(std::move(vs)) { canonicalize(); }

  static VertexSet range(Vertex first, Vertex last) {
    VertexSet s;
    for (Vertex v = first; v <= last; ++v) s.v_.push_back(v);
    return s;
  }

  /// Bits 0..63 stand for vertices 1..64.
  static VertexSet from_mask(std::uint64_t mask) {
    VertexSet s;
    for (Vertex v = 1; mask != 0; ++v, mask >>= 1)
      if (mask & 1U) s.v_.push_back(v);
    return s;
  }

  std::uint64_t mask() const {
    std::uint64_t m = 0;
    for (Vertex v : v_) {
      if (v < 1 || v > 64) throw std::domain_error("VertexSet::mask: vertex outside 1..64");
      m |= std::uint64_t{1} << (v - 1);
    }
    return m;
  }

  bool contains(Vertex v) const { return std::binary_search(v_.begin(), v_.end(), v); }
  void insert(Vertex v) {
    auto it = std::lower_bound(v_.begin(), v_.end(), v);
    if (it == v_.end() || *it != v) v_.insert(it, v);
  }
  void erase(Vertex v) {
    auto it = std::lower_bound(v_.begin(), v_.end(), v);
    if (it != v_.end() && *it == v) v_.erase(it);
  }

  std::size_t size() const { return v_.size(); }
  bool empty() const { return v_.empty(); }
  auto begin() const { return v_.begin(); }
  auto end() const { return v_.end(); }
  Vertex front() const { return v_.front(); }
  Vertex back() const { return v_.back(); }
  const std::vector<Vertex>& vertices() const { return v_; }

  bool is_subset_of(const VertexSet& other) const {
    return std::includes(other.v_.begin(), other.v_.end(), v_.begin(), v_.end());
  }

  friend VertexSet operator|(const VertexSet& a, const VertexSet& b) {
    VertexSet r;
    std::set_union(a.v_.begin(), a.v_.end(), b.v_.begin(), b.v_.end(), std::back_inserter(r.v_));
    return r;
  }
  friend VertexSet operator&(const VertexSet& a, const VertexSet& b) {
    VertexSet r;
    std::set_intersection(a.v_.begin(), a.v_.end(), b.v_.begin(), b.v_.end(), std::back_inserter(r.v_));
    return r;
  }
  friend VertexSet operator-(const VertexSet& a, const VertexSet& b) {
    VertexSet r;
    std::set_difference(a.v_.begin(), a.v_.end(), b.v_.begin(), b.v_.end(), std::back_inserter(r.v_));
    return r;
  }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;
  /// Size first, then lexicographic: the family order used for independent sets.
  friend std::strong_ordering operator<=>(const VertexSet& a, const VertexSet& b) {
    if (auto c = a.v_.size() <=> b.v_.size(); c != 0) return c;
    return a.v_ <=> b.v_;
  }

  std::string to_string() const {
    std::string s = "{";
    for (std::size_t i = 0; i < v_.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(v_[i]);
    }
    return s + "}";
  }

 private:
  void canonicalize() {
    std::sort(v_.begin(), v_.end());
    v_.erase(std::unique(v_.begin(), v_.end()), v_.end());
  }
  std::vector<Vertex> v_;
};

struct Edge {
  Vertex u;
  Vertex v;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Finite simple graph on vertices 1..n. Immutable after construction.
class Graph {
 public:
  Graph() = default;

  explicit Graph(int n, std::span<const Edge> edges = {}) : n_(n) {
    if (n < 0) throw std::domain_error("Graph: negative vertex count");
    adj_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
    nbrs_.resize(static_cast<std::size_t>(n) + 1);
    masks_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (Edge e : edges) {
      if (e.u > e.v) std::swap(e.u, e.v);
      if (e.u < 1 || e.v > n) throw std::domain_error("Graph: edge endpoint outside 1..n");
      if (e.u == e.v) throw std::domain_error("Graph: self-loop " + std::to_string(e.u));
      if (adjacent(e.u, e.v))
        throw std::domain_error("Graph: duplicate edge " + std::to_string(e.u) + "-" + std::to_string(e.v));
      adj_[idx(e.u, e.v)] = adj_[idx(e.v, e.u)] = 1;
      edges_.push_back(e);
      nbrs_[e.u].push_back(e.v);
      nbrs_[e.v].push_back(e.u);
      if (n <= 64) {
        masks_[e.u] |= std::uint64_t{1} << (e.v - 1);
        masks_[e.v] |= std::uint64_t{1} << (e.u - 1);
      }
    }
    std::sort(edges_.begin(), edges_.end());
    for (auto& nb : nbrs_) std::sort(nb.begin(), nb.end());
  }

  Graph(int n, std::initializer_list<Edge> edges) : Graph(n, std::span<const Edge>(edges.begin(), edges.size())) {}

  int order() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  bool has_vertex(Vertex v) const { return v >= 1 && v <= n_; }
  VertexSet vertices() const { return VertexSet::range(1, n_); }

  bool adjacent(Vertex a, Vertex b) const { return adj_[idx(a, b)] != 0; }
  /// Letters a and b do not commute in the trace monoid.
  bool dependent(Vertex a, Vertex b) const { return a == b || adj_[idx(a, b)] != 0; }

  std::span<const Vertex> neighbors(Vertex v) const { return nbrs_[static_cast<std::size_t>(v)]; }
  int degree(Vertex v) const { return static_cast<int>(nbrs_[static_cast<std::size_t>(v)].size()); }

  /// Open neighbourhood as a bit mask; only valid for graphs with at most 64 vertices.
  std::uint64_t neighbor_mask(Vertex v) const { return masks_[static_cast<std::size_t>(v)]; }
  bool fits_mask() const { return n_ <= 64; }
  std::uint64_t all_mask() const { return n_ >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1; }

  void require_vertex(Vertex v) const {
    if (!has_vertex(v)) throw std::domain_error("unknown vertex " + std::to_string(v));
  }

  friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.edges_ == b.edges_; }

  /// Compact descriptor, e.g. "n=4;1-2,2-3,3-4".
  std::string descriptor() const {
    std::string s = "n=" + std::to_string(n_) + ";";
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(edges_[i].u) + "-" + std::to_string(edges_[i].v);
    }
    return s;
  }

 private:
  std::size_t idx(Vertex a, Vertex b) const {
    return static_cast<std::size_t>(a - 1) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(b - 1);
  }

  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<char> adj_;
  std::vector<std::vector<Vertex>> nbrs_;
  std::vector<std::uint64_t> masks_;
};

inline Graph path_graph(int n) {
  std::vector<Edge> e;
  for (Vertex v = 1; v < n; ++v) e.push_back({v, v + 1});
  return Graph(n, e);
}

inline Graph complete_graph(int n) {
  std::vector<Edge> e;
  for (Vertex a = 1; a <= n; ++a)
    for (Vertex b = a + 1; b <= n; ++b) e.push_back({a, b});
  return Graph(n, e);
}

inline Graph cycle_graph(int n) {
  std::vector<Edge> e;
  for (Vertex v = 1; v < n; ++v) e.push_back({v, v + 1});
  if (n >= 3) e.push_back({1, n});
  return Graph(n, e);
}

// ---------------------------------------------------------------------------
// Text format: first line "n m", then m lines "u v". '#' starts a comment.

inline Graph parse_graph(std::istream& in) {
  std::vector<std::pair<long, long>> pairs;
  std::optional<std::pair<long, long>> header;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    long a = 0, b = 0;
    if (!(ls >> a)) {
      std::string rest;
      ls.clear();
      if (ls >> rest) throw std::invalid_argument("graph file line " + std::to_string(lineno) + ": expected integers");
      continue;  // blank
    }
    if (!(ls >> b)) throw std::invalid_argument("graph file line " + std::to_string(lineno) + ": expected two integers");
    std::string extra;
    if (ls >> extra) throw std::invalid_argument("graph file line " + std::to_string(lineno) + ": trailing tokens");
    if (!header)
      header = {a, b};
    else
      pairs.emplace_back(a, b);
  }
  if (!header) throw std::invalid_argument("graph file: missing 'n m' header");
  auto [n, m] = *header;
  if (n < 0 || m < 0) throw std::invalid_argument("graph file: negative header values");
  if (static_cast<long>(pairs.size()) != m)
    throw std::invalid_argument("graph file: header announces " + std::to_string(m) + " edges, found " +
                                std::to_string(pairs.size()));
  std::vector<Edge> edges;
  for (auto [a, b] : pairs) {
    if (a < 1 || b < 1 || a > n || b > n)
      throw std::invalid_argument("graph file: edge " + std::to_string(a) + " " + std::to_string(b) + " out of range");
    edges.push_back({static_cast<Vertex>(a), static_cast<Vertex>(b)});
  }
  try {
    return Graph(static_cast<int>(n), edges);
  } catch (const std::domain_error& e) {
    throw std::invalid_argument(std::string("graph file: ") + e.what());
  }
}

inline Graph parse_graph(const std::string& text) {
  std::istringstream in(text);
  return parse_graph(in);
}

inline Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open graph file " + path);
  return parse_graph(in);
}

inline std::string format_graph(const Graph& g) {
  std::string s = std::to_string(g.order()) + " " + std::to_string(g.edges().size()) + "\n";
  for (const Edge& e : g.edges()) s += std::to_string(e.u) + " " + std::to_string(e.v) + "\n";
  return s;
}

// ---------------------------------------------------------------------------

inline VertexSet neighborhood(const Graph& g, Vertex u, bool closed = false) {
  g.require_vertex(u);
  auto nb = g.neighbors(u);
  VertexSet s(std::vector<Vertex>(nb.begin(), nb.end()));
  if (closed) s.insert(u);
  return s;
}

/// N_G[S]: union of closed neighbourhoods.
inline VertexSet closed_neighborhood(const Graph& g, const VertexSet& s) {
  std::vector<Vertex> out;
  for (Vertex v : s) {
    g.require_vertex(v);
    out.push_back(v);
    for (Vertex w : g.neighbors(v)) out.push_back(w);
  }
  return VertexSet(std::move(out));
}

inline void require_subset(const Graph& g, const VertexSet& s) {
  for (Vertex v : s) g.require_vertex(v);
}

/// G[S] relabelled to 1..|S| in inherited order, with the map back to G's names.
struct InducedSubgraph {
  Graph graph;
  std::vector<Vertex> original;  // original[i-1] is the G-name of vertex i

  Vertex to_original(Vertex v) const { return original.at(static_cast<std::size_t>(v - 1)); }
  std::optional<Vertex> from_original(Vertex v) const {
    auto it = std::lower_bound(original.begin(), original.end(), v);
    if (it == original.end() || *it != v) return std::nullopt;
    return static_cast<Vertex>(it - original.begin()) + 1;
  }
};

inline InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& s) {
  require_subset(g, s);
  InducedSubgraph r;
  r.original = s.vertices();
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    auto a = std::lower_bound(r.original.begin(), r.original.end(), e.u);
    auto b = std::lower_bound(r.original.begin(), r.original.end(), e.v);
    if (a != r.original.end() && *a == e.u && b != r.original.end() && *b == e.v)
      edges.push_back({static_cast<Vertex>(a - r.original.begin()) + 1, static_cast<Vertex>(b - r.original.begin()) + 1});
  }
  r.graph = Graph(static_cast<int>(s.size()), edges);
  return r;
}

/// Components of G[within] in original names, ordered by minimal vertex.
inline std::vector<VertexSet> connected_components(const Graph& g, const VertexSet& within) {
  require_subset(g, within);
  std::vector<char> in(static_cast<std::size_t>(g.order()) + 1, 0), seen(in.size(), 0);
  for (Vertex v : within) in[static_cast<std::size_t>(v)] = 1;
  std::vector<VertexSet> parts;
  for (Vertex start : within) {
    if (seen[static_cast<std::size_t>(start)]) continue;
    std::vector<Vertex> comp{start}, stack{start};
    seen[static_cast<std::size_t>(start)] = 1;
    while (!stack.empty()) {
      Vertex x = stack.back();
      stack.pop_back();
      for (Vertex y : g.neighbors(x)) {
        auto yi = static_cast<std::size_t>(y);
        if (in[yi] && !seen[yi]) {
          seen[yi] = 1;
          comp.push_back(y);
          stack.push_back(y);
        }
      }
    }
    parts.emplace_back(std::move(comp));
  }
  return parts;
}

inline std::vector<VertexSet> connected_components(const Graph& g) { return connected_components(g, g.vertices()); }

/// The component of G[within] containing v.
inline VertexSet component_of(const Graph& g, const VertexSet& within, Vertex v) {
  for (auto& c : connected_components(g, within))
    if (c.contains(v)) return c;
  throw std::domain_error("component_of: vertex " + std::to_string(v) + " not in the vertex set");
}

inline bool is_connected(const Graph& g) { return g.order() <= 1 || connected_components(g).size() == 1; }

inline bool is_connected(const Graph& g, const VertexSet& within) {
  return within.size() <= 1 || connected_components(g, within).size() == 1;
}

/// Breadth-first distances from u; -1 marks unreachable vertices.
inline std::vector<int> bfs_distances(const Graph& g, Vertex u) {
  g.require_vertex(u);
  std::vector<int> dist(static_cast<std::size_t>(g.order()) + 1, -1);
  std::deque<Vertex> q{u};
  dist[static_cast<std::size_t>(u)] = 0;
  while (!q.empty()) {
    Vertex x = q.front();
    q.pop_front();
    for (Vertex y : g.neighbors(x))
      if (dist[static_cast<std::size_t>(y)] < 0) {
        dist[static_cast<std::size_t>(y)] = dist[static_cast<std::size_t>(x)] + 1;
        q.push_back(y);
      }
  }
  return dist;
}

/// Lexicographically smallest shortest path from u to v.
inline std::vector<Vertex> shortest_path(const Graph& g, Vertex u, Vertex v) {
  g.require_vertex(u);
  g.require_vertex(v);
  if (u == v) throw std::domain_error("shortest_path: endpoints coincide");
  if (!is_connected(g)) throw std::domain_error("shortest_path: graph is disconnected");
  // Walking forward from u and always taking the smallest neighbour that is one
  // step closer to v yields the lexicographically smallest shortest path.
  auto to_v = bfs_distances(g, v);
  std::vector<Vertex> path{u};
  Vertex x = u;
  while (x != v) {
    int d = to_v[static_cast<std::size_t>(x)];
    for (Vertex y : g.neighbors(x))
      if (to_v[static_cast<std::size_t>(y)] == d - 1) {
        x = y;
        break;
      }
    path.push_back(x);
  }
  return path;
}

/// True iff p is a shortest path in g between its endpoints.
inline bool is_shortest_path(const Graph& g, std::span<const Vertex> p) {
  if (p.size() < 2) return false;
  for (Vertex x : p)
    if (!g.has_vertex(x)) return false;
  for (std::size_t i = 0; i + 1 < p.size(); ++i)
    if (!g.adjacent(p[i], p[i + 1])) return false;
  auto dist = bfs_distances(g, p.front());
  return dist[static_cast<std::size_t>(p.back())] == static_cast<int>(p.size()) - 1;
}

inline bool is_independent(const Graph& g, const VertexSet& s) {
  require_subset(g, s);
  const auto& vs = s.vertices();
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j)
      if (g.adjacent(vs[i], vs[j])) return false;
  return true;
}

}  // namespace heaps
