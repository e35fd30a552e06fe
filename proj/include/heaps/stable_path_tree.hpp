#pragma once

#include <cassert>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "heaps/graph.hpp"
#include "heaps/multipoly.hpp"
#include "heaps/trace_word.hpp"

namespace heaps {

/// Rooted stable-path tree (T_G, u') with its labelling onto V(G).
///
/// Tree vertices are numbered 1..N in recursion order: a node precedes its
/// children, and children follow the order of the neighbours they were built
/// from. The subtree of t therefore occupies the id interval
/// [t, subtree_end(t)). Each node also remembers the vertex set of the
/// subgraph G_t it was built from, so maps defined by recursion over the
/// subgraphs can walk the tree instead of rebuilding them.
class StablePathTree {
 public:
  const Graph& tree() const { return *tree_; }
  const GraphPtr& tree_ptr() const { return tree_; }
  const GraphPtr& source() const { return source_; }
  Vertex source_root() const { return label(root()); }

  Vertex root() const { return 1; }
  std::size_t size() const { return label_.size() - 1; }

  Vertex label(Vertex t) const { return label_.at(static_cast<std::size_t>(t)); }
  Vertex parent(Vertex t) const { return parent_.at(static_cast<std::size_t>(t)); }  // 0 for the root
  std::span<const Vertex> children(Vertex t) const { return children_.at(static_cast<std::size_t>(t)); }
  const VertexSet& domain(Vertex t) const { return domain_.at(static_cast<std::size_t>(t)); }
  Vertex subtree_end(Vertex t) const { return end_.at(static_cast<std::size_t>(t)); }
  bool in_subtree(Vertex a, Vertex t) const { return a >= t && a < subtree_end(t); }

  /// Total order on tree vertices: by label, ties by recursion id.
  bool precedes(Vertex a, Vertex b) const {
    return label(a) != label(b) ? label(a) < label(b) : a < b;
  }

  /// Text drawing, one node per line: "id' -> label".
  std::string render() const {
    std::string out;
    auto rec = [&](auto&& self, Vertex t, const std::string& prefix, bool last, bool top) -> void {
      out += top ? "" : prefix + (last ? "`-- " : "|-- ");
      out += std::to_string(t) + "' -> " + std::to_string(label(t)) + "\n";
      const auto kids = children(t);
      const std::string next = top ? "" : prefix + (last ? "    " : "|   ");
      for (std::size_t i = 0; i < kids.size(); ++i) self(self, kids[i], next, i + 1 == kids.size(), false);
    };
    rec(rec, root(), "", true, true);
    return out;
  }

 private:
  friend StablePathTree build_spt(const GraphPtr& g, Vertex u);

  GraphPtr source_;
  GraphPtr tree_;
  std::vector<Vertex> label_{0};
  std::vector<Vertex> parent_{0};
  std::vector<std::vector<Vertex>> children_{{}};
  std::vector<VertexSet> domain_{{}};
  std::vector<Vertex> end_{0};
};

inline StablePathTree build_spt(const GraphPtr& g, Vertex u) {
  g->require_vertex(u);
  if (!is_connected(*g)) throw std::domain_error("build_spt: graph is disconnected");
  StablePathTree t;
  t.source_ = g;
  std::vector<Edge> edges;
  [[maybe_unused]] const int n = g->order();
  auto rec = [&](auto&& self, const VertexSet& dom, Vertex root, Vertex parent, int depth) -> Vertex {
    assert(depth <= n);
    const Vertex id = static_cast<Vertex>(t.label_.size());
    t.label_.push_back(root);
    t.parent_.push_back(parent);
    t.children_.emplace_back();
    t.domain_.push_back(dom);
    t.end_.push_back(0);
    if (parent != 0) edges.push_back({parent, id});
    VertexSet removed{root};
    for (Vertex nb : g->neighbors(root)) {
      if (!dom.contains(nb)) continue;
      const VertexSet sub = component_of(*g, dom - removed, nb);
      const Vertex child = self(self, sub, nb, id, depth + 1);
      t.children_[static_cast<std::size_t>(id)].push_back(child);
      removed.insert(nb);
    }
    t.end_[static_cast<std::size_t>(id)] = static_cast<Vertex>(t.label_.size());
    return id;
  };
  rec(rec, g->vertices(), u, 0, 1);
  t.tree_ = share(Graph(static_cast<int>(t.size()), edges));
  return t;
}

/// Substitutes x_{t} -> x_{label(t)} (same alphabet) and collects terms.
inline MultiPoly label_pushforward(const StablePathTree& t, const MultiPoly& p) {
  return p.rename_variables([&](Variable v) {
    if (v.vertex < 1 || static_cast<std::size_t>(v.vertex) > t.size())
      throw std::domain_error("label_pushforward: variable " + v.name() + " is not a tree vertex");
    return Variable{v.alphabet, t.label(v.vertex)};
  });
}

/// label_pushforward(I(T, x)) or, with without_root, label_pushforward(I(T - u', x)),
/// computed bottom-up on the tree so that I(T) itself is never expanded.
/// At a node a: E(a) = prod_c F(c) is I(subtree - a) and
/// F(a) = E(a) - x_{label a} prod_c E(c) is I(subtree).
inline MultiPoly pushed_independence_polynomial(const StablePathTree& t, bool without_root = false,
                                                Alphabet alphabet = Alphabet::x) {
  const std::size_t n = t.size();
  std::vector<MultiPoly> full(n + 1), minus_top(n + 1);
  for (std::size_t a = n; a >= 1; --a) {
    const Vertex av = static_cast<Vertex>(a);
    MultiPoly e = 1, below = 1;
    for (Vertex c : t.children(av)) {
      e *= full[static_cast<std::size_t>(c)];
      below *= minus_top[static_cast<std::size_t>(c)];
    }
    full[a] = e - MultiPoly::variable({alphabet, t.label(av)}) * below;
    minus_top[a] = std::move(e);
  }
  return without_root ? minus_top[1] : full[1];
}

}  // namespace heaps
