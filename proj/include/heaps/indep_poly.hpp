#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "heaps/graph.hpp"
#include "heaps/multipoly.hpp"

namespace heaps {

/// Independent subsets of G (or of G[within]) in original vertex names,
/// ordered by size then lexicographically.
struct IndependentFamily {
  std::vector<VertexSet> sets;
  bool include_empty = true;
  std::optional<VertexSet> restricted_to;

  std::size_t size() const { return sets.size(); }
};

namespace detail {

inline void require_mask_graph(const Graph& g, const char* who) {
  if (!g.fits_mask()) throw std::domain_error(std::string(who) + ": graphs above 64 vertices are not supported");
}

/// Branch on the smallest remaining vertex: take it (drop its closed
/// neighbourhood) or skip it.
template <class Visitor>
void for_each_independent_mask(const Graph& g, std::uint64_t avail, std::uint64_t chosen, Visitor& visit) {
  if (avail == 0) {
    visit(chosen);
    return;
  }
  const int idx = std::countr_zero(avail);
  const std::uint64_t bit = std::uint64_t{1} << idx;
  const Vertex v = idx + 1;
  for_each_independent_mask(g, avail & ~(bit | g.neighbor_mask(v)), chosen | bit, visit);
  for_each_independent_mask(g, avail & ~bit, chosen, visit);
}

}  // namespace detail

inline IndependentFamily independent_sets(const Graph& g, const std::optional<VertexSet>& within = std::nullopt,
                                          bool nonempty_only = false) {
  detail::require_mask_graph(g, "independent_sets");
  std::uint64_t avail = g.all_mask();
  if (within) {
    require_subset(g, *within);
    avail = within->mask();
  }
  IndependentFamily fam;
  fam.include_empty = !nonempty_only;
  fam.restricted_to = within;
  auto visit = [&](std::uint64_t m) {
    if (m != 0 || !nonempty_only) fam.sets.push_back(VertexSet::from_mask(m));
  };
  detail::for_each_independent_mask(g, avail, 0, visit);
  std::sort(fam.sets.begin(), fam.sets.end());
  return fam;
}

/// I(G - minus, x) = sum over independent S of (-1)^{|S|} prod_{v in S} x_v,
/// in the original variable names.
inline MultiPoly independence_polynomial(const Graph& g, const VertexSet& minus = {}, Alphabet alphabet = Alphabet::x) {
  detail::require_mask_graph(g, "independence_polynomial");
  require_subset(g, minus);
  std::vector<MultiPoly::Term> ts;
  auto visit = [&](std::uint64_t m) {
    const VertexSet s = VertexSet::from_mask(m);
    ts.emplace_back(Monomial::product_of(s, alphabet), (s.size() % 2 == 0) ? CheckedInt(1) : CheckedInt(-1));
  };
  detail::for_each_independent_mask(g, g.all_mask() & ~minus.mask(), 0, visit);
  return MultiPoly::from_terms(std::move(ts));
}

struct FundamentalCheck {
  MultiPoly lhs;             // I(G - S, x) - I(G, x)
  MultiPoly rhs;             // sum_K (prod_{v in K} x_v) I(G - N[K], x)
  std::size_t family_size = 0;  // s: number of nonempty independent K in G[S]
  bool holds = false;
};

inline FundamentalCheck fundamental_identity_check(const Graph& g, const VertexSet& s) {
  require_subset(g, s);
  FundamentalCheck r;
  r.lhs = independence_polynomial(g, s) - independence_polynomial(g);
  for (const VertexSet& k : independent_sets(g, s, /*nonempty_only=*/true).sets) {
    r.rhs += MultiPoly(Monomial::product_of(k), 1) * independence_polynomial(g, closed_neighborhood(g, k));
    ++r.family_size;
  }
  r.holds = r.lhs == r.rhs;
  return r;
}

}  // namespace heaps
