#pragma once

#include <algorithm>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "heaps/graph.hpp"
#include "heaps/indep_poly.hpp"
#include "heaps/stable_path_tree.hpp"
#include "heaps/trace_word.hpp"

namespace heaps {

// ---------------------------------------------------------------------------
// Words with a prescribed initial alphabet.

/// w -> w / prod_{y in K} y, for w with IA(w) = K exactly. The image ends
/// only in letters of N_G[K].
inline TraceWord phi_K(const TraceWord& w, const VertexSet& k) {
  if (k.empty()) throw std::domain_error("phi_K: K must be nonempty");
  if (!is_independent(w.graph(), k)) throw std::domain_error("phi_K: K is not independent");
  if (initial_alphabet(w) != k)
    throw std::domain_error("phi_K: initial alphabet " + initial_alphabet(w).to_string() + " differs from " + k.to_string());
  return divide_by_independent_set(w, k);
}

/// Inverse of phi_K: multiplication by prod_{y in K} y.
inline TraceWord phi_K_inverse(const TraceWord& w, const VertexSet& k) {
  if (k.empty() || !is_independent(w.graph(), k)) throw std::domain_error("phi_K_inverse: K must be nonempty and independent");
  if (!initial_alphabet(w).is_subset_of(closed_neighborhood(w.graph(), k)))
    throw std::domain_error("phi_K_inverse: word does not end inside N[K]");
  return concat(w, product_word(w.graph_ptr(), k));
}

/// Nonempty words of length <= max_length ending only in S, grouped by their
/// exact initial alphabet. Every nonempty independent subset of G[S] gets a
/// (possibly empty) class.
inline std::map<VertexSet, std::vector<TraceWord>> ia_class_partition(const GraphPtr& g, const VertexSet& s,
                                                                       std::size_t max_length) {
  std::map<VertexSet, std::vector<TraceWord>> classes;
  for (const VertexSet& k : independent_sets(*g, s, /*nonempty_only=*/true).sets) classes[k];
  for (TraceWord& w : enumerate_words(g, s, max_length)) {
    if (w.empty()) continue;
    auto it = classes.find(initial_alphabet(w));
    if (it == classes.end()) throw std::logic_error("ia_class_partition: initial alphabet outside the family");
    it->second.push_back(std::move(w));
  }
  return classes;
}

// ---------------------------------------------------------------------------
// The length- and weight-preserving bijection between words of G ending only
// in u and words of the stable-path tree ending only in its root.

namespace detail {

inline Vertex child_with_label(const StablePathTree& t, Vertex node, Vertex label) {
  for (Vertex c : t.children(node))
    if (t.label(c) == label) return c;
  throw std::logic_error("stable-path tree: no child of " + std::to_string(node) + " labelled " + std::to_string(label));
}

inline void phi_rec(const StablePathTree& t, Vertex node, std::span<const Vertex> w, std::vector<Vertex>& out) {
  if (w.empty()) return;
  const Graph& g = *t.source();
  const Vertex u = t.label(node);
  if (std::count(w.begin(), w.end(), u) > 1) {
    for (const auto& f : ia_factor_letters(g, w, u)) phi_rec(t, node, f, out);
    return;
  }
  const auto parts = nbd_factor_letters(g, w, u);
  if (parts.rest.size() != 1 || parts.rest.front() != u) throw std::logic_error("phi_G: malformed neighbourhood decomposition");
  for (std::size_t i = 0; i < parts.neighbors.size(); ++i) {
    const Vertex child = child_with_label(t, node, parts.neighbors[i]);
    for (Vertex x : parts.factors[i])
      if (!t.domain(child).contains(x)) throw std::logic_error("phi_G: factor leaves its component");
    phi_rec(t, child, parts.factors[i], out);
  }
  out.push_back(node);
}

inline void psi_rec(const StablePathTree& t, Vertex node, std::span<const Vertex> w, std::vector<Vertex>& out) {
  if (w.empty()) return;
  const Graph& tree = t.tree();
  if (std::count(w.begin(), w.end(), node) > 1) {
    for (const auto& f : ia_factor_letters(tree, w, node)) psi_rec(t, node, f, out);
    return;
  }
  const auto parts = nbd_factor_letters(tree, w, node);
  if (parts.rest.size() != 1 || parts.rest.front() != node) throw std::logic_error("psi_G: malformed neighbourhood decomposition");
  for (std::size_t i = 0; i < parts.neighbors.size(); ++i) {
    if (t.parent(parts.neighbors[i]) != node) throw std::logic_error("psi_G: factor outside the subtree");
    psi_rec(t, parts.neighbors[i], parts.factors[i], out);
  }
  out.push_back(t.label(node));
}

}  // namespace detail

/// phi_G: P^∅_u(G) -> P^∅_{u'}(T_G), where u labels the root of t.
inline TraceWord phi_G(const TraceWord& w, const StablePathTree& t) {
  if (!same_graph(w.graph_ptr(), t.source())) throw std::domain_error("phi_G: word is not over the tree's source graph");
  if (!initial_alphabet(w).is_subset_of(VertexSet{t.source_root()}))
    throw std::domain_error("phi_G: word does not end only in " + std::to_string(t.source_root()));
  std::vector<Vertex> out;
  out.reserve(w.length());
  detail::phi_rec(t, t.root(), w.letters(), out);
  return TraceWord::normalize(t.tree_ptr(), out);
}

/// psi_G: P^∅_{u'}(T_G) -> P^∅_u(G), the two-sided inverse of phi_G.
inline TraceWord psi_G(const TraceWord& w, const StablePathTree& t) {
  if (!same_graph(w.graph_ptr(), t.tree_ptr())) throw std::domain_error("psi_G: word is not over the stable-path tree");
  if (!initial_alphabet(w).is_subset_of(VertexSet{t.root()}))
    throw std::domain_error("psi_G: word does not end only in the root");
  std::vector<Vertex> out;
  out.reserve(w.length());
  detail::psi_rec(t, t.root(), w.letters(), out);
  return TraceWord::normalize(t.source(), out);
}

// ---------------------------------------------------------------------------
// Connected bipartite subgraphs through a shortest path.

/// H = H1 ⊔ H2 containing the path p = v1...vk, with H2 the part holding
/// v1, v3, ... and H1 the part holding v2, v4, ...
struct BipartiteWitness {
  std::vector<Vertex> path;
  VertexSet h1, h2, z1, z2;

  Vertex u() const { return path.front(); }
  Vertex v() const { return path.back(); }

  /// {v2, v4, ...}
  VertexSet even_path() const {
    VertexSet s;
    for (std::size_t i = 1; i < path.size(); i += 2) s.insert(path[i]);
    return s;
  }
  /// {v1, v3, ...}
  VertexSet odd_path() const {
    VertexSet s;
    for (std::size_t i = 0; i < path.size(); i += 2) s.insert(path[i]);
    return s;
  }
  VertexSet h1_extra() const { return h1 - even_path(); }
  VertexSet h2_extra() const { return h2 - odd_path(); }

  friend bool operator==(const BipartiteWitness&, const BipartiteWitness&) = default;
};

/// Fills in Z1(H) = N[H1 \ even] ∪ (N[H1] ∩ N[u]) and
/// Z2(H) = N[H2 \ odd] ∪ (N[H2] ∩ N[v]).
inline BipartiteWitness make_witness(const Graph& g, std::vector<Vertex> path, VertexSet h1, VertexSet h2) {
  BipartiteWitness w{std::move(path), std::move(h1), std::move(h2), {}, {}};
  w.z1 = closed_neighborhood(g, w.h1_extra()) | (closed_neighborhood(g, w.h1) & neighborhood(g, w.u(), true));
  w.z2 = closed_neighborhood(g, w.h2_extra()) | (closed_neighborhood(g, w.h2) & neighborhood(g, w.v(), true));
  return w;
}

/// All invariants of a witness: parts disjoint and independent, path letters
/// in their parts, extras inside N[u] resp. N[v], G[H1 ∪ H2] connected, and
/// the Z sets as defined.
inline bool is_valid_witness(const Graph& g, const BipartiteWitness& w) {
  if (!is_shortest_path(g, w.path)) return false;
  if (!(w.h1 & w.h2).empty()) return false;
  if (!is_independent(g, w.h1) || !is_independent(g, w.h2)) return false;
  if (!w.even_path().is_subset_of(w.h1) || !w.odd_path().is_subset_of(w.h2)) return false;
  if (!w.h1_extra().is_subset_of(neighborhood(g, w.u(), true))) return false;
  if (!w.h2_extra().is_subset_of(neighborhood(g, w.v(), true))) return false;
  if (!is_connected(g, w.h1 | w.h2)) return false;
  const auto ref = make_witness(g, w.path, w.h1, w.h2);
  return ref.z1 == w.z1 && ref.z2 == w.z2;
}

namespace detail {
inline void require_path(const Graph& g, std::span<const Vertex> p, Vertex u, Vertex v, const char* who) {
  if (p.size() < 2 || p.front() != u || p.back() != v || !is_shortest_path(g, p))
    throw std::domain_error(std::string(who) + ": not a shortest path from " + std::to_string(u) + " to " + std::to_string(v));
}
}  // namespace detail

/// Every witness for (G, p), ordered by H2 then H1 (each by size, then
/// lexicographically).
inline std::vector<BipartiteWitness> enumerate_witnesses(const Graph& g, Vertex u, Vertex v, std::span<const Vertex> p) {
  g.require_vertex(u);
  g.require_vertex(v);
  if (u == v) throw std::domain_error("enumerate_witnesses: u and v coincide");
  detail::require_path(g, p, u, v, "enumerate_witnesses");
  const std::vector<Vertex> path(p.begin(), p.end());
  BipartiteWitness shape{path, {}, {}, {}, {}};
  const VertexSet even = shape.even_path(), odd = shape.odd_path();
  const std::vector<Vertex> cand_a = (neighborhood(g, u, true) - even).vertices();
  const std::vector<Vertex> cand_b = (neighborhood(g, v, true) - odd).vertices();
  if (cand_a.size() + cand_b.size() > 40) throw std::domain_error("enumerate_witnesses: neighbourhoods too large");

  std::vector<BipartiteWitness> out;
  for (std::uint64_t bm = 0; bm < (std::uint64_t{1} << cand_b.size()); ++bm) {
    VertexSet h2 = odd;
    for (std::size_t j = 0; j < cand_b.size(); ++j)
      if (bm >> j & 1U) h2.insert(cand_b[j]);
    if (!is_independent(g, h2)) continue;
    for (std::uint64_t am = 0; am < (std::uint64_t{1} << cand_a.size()); ++am) {
      VertexSet h1 = even;
      for (std::size_t i = 0; i < cand_a.size(); ++i)
        if (am >> i & 1U) h1.insert(cand_a[i]);
      if (!(h1 & h2).empty() || !is_independent(g, h1) || !is_connected(g, h1 | h2)) continue;
      out.push_back(make_witness(g, path, std::move(h1), h2));
    }
  }
  std::sort(out.begin(), out.end(), [](const BipartiteWitness& a, const BipartiteWitness& b) {
    return a.h2 != b.h2 ? a.h2 < b.h2 : a.h1 < b.h1;
  });
  return out;
}

struct BipartiteImage {
  BipartiteWitness witness;
  TraceWord first;   // in P^∅_{Z1(H)}(G)
  TraceWord second;  // in P^∅_{Z2(H)}(G)
};

/// (wu, w'v) -> (w v2 v4... / prod H1, w' v1 v3... / prod H2) together with
/// H1 = IA(w v2 v4...) and H2 = IA(w' v1 v3...).
inline BipartiteImage bipartite_forward(const TraceWord& wu, const TraceWord& wv, std::span<const Vertex> p) {
  if (!same_graph(wu.graph_ptr(), wv.graph_ptr())) throw std::domain_error("bipartite_forward: words over different graphs");
  if (p.size() < 2) throw std::domain_error("bipartite_forward: path too short");
  const Graph& g = wu.graph();
  const Vertex u = p.front(), v = p.back();
  detail::require_path(g, p, u, v, "bipartite_forward");
  if (wu.empty() || initial_alphabet(wu) != VertexSet{u})
    throw std::domain_error("bipartite_forward: first word must end only in " + std::to_string(u));
  if (wv.empty() || initial_alphabet(wv) != VertexSet{v})
    throw std::domain_error("bipartite_forward: second word must end only in " + std::to_string(v));

  BipartiteWitness shape{std::vector<Vertex>(p.begin(), p.end()), {}, {}, {}, {}};
  const TraceWord a = concat(divide_by_independent_set(wu, {u}), product_word(wu.graph_ptr(), shape.even_path()));
  const TraceWord b = concat(divide_by_independent_set(wv, {v}), product_word(wv.graph_ptr(), shape.odd_path()));
  VertexSet h1 = initial_alphabet(a), h2 = initial_alphabet(b);
  BipartiteImage img{make_witness(g, shape.path, h1, h2), divide_by_independent_set(a, h1), divide_by_independent_set(b, h2)};
  return img;
}

/// (a, b) -> (a prod(H1 \ even) u, b prod(H2 \ odd) v), the inverse of
/// bipartite_forward on the fibre of a witness.
inline std::pair<TraceWord, TraceWord> bipartite_backward(const BipartiteWitness& h, const TraceWord& a, const TraceWord& b) {
  if (!same_graph(a.graph_ptr(), b.graph_ptr())) throw std::domain_error("bipartite_backward: words over different graphs");
  if (!initial_alphabet(a).is_subset_of(h.z1)) throw std::domain_error("bipartite_backward: first word does not end in Z1");
  if (!initial_alphabet(b).is_subset_of(h.z2)) throw std::domain_error("bipartite_backward: second word does not end in Z2");
  const GraphPtr& g = a.graph_ptr();
  TraceWord first = concat(concat(a, product_word(g, h.h1_extra())), TraceWord::normalize(g, {h.u()}));
  TraceWord second = concat(concat(b, product_word(g, h.h2_extra())), TraceWord::normalize(g, {h.v()}));
  return {std::move(first), std::move(second)};
}

}  // namespace heaps
