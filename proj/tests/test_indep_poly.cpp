#include <catch2/catch_amalgamated.hpp>

#include "heaps/identities.hpp"
#include "heaps/indep_poly.hpp"
#include "oracles.hpp"

using namespace heaps;

TEST_CASE("independent sets of P4") {
  const Graph p4 = path_graph(4);
  const auto fam = independent_sets(p4);
  CHECK(fam.sets == std::vector<VertexSet>{{}, {1}, {2}, {3}, {4}, {1, 3}, {1, 4}, {2, 4}});
  CHECK(independent_sets(p4, VertexSet{2, 3}, true).sets == std::vector<VertexSet>{{2}, {3}});
  CHECK(independent_sets(Graph(0, {})).sets == std::vector<VertexSet>{{}});
  CHECK_THROWS_AS(independent_sets(p4, VertexSet{9}), std::domain_error);
}

TEST_CASE("independence polynomials of P4 and its deletions") {
  const Graph p4 = path_graph(4);
  CHECK(to_string(independence_polynomial(p4)) == "1 - x1 - x2 - x3 - x4 + x1*x3 + x1*x4 + x2*x4");
  CHECK(to_string(independence_polynomial(p4, {2})) == "1 - x1 - x3 - x4 + x1*x3 + x1*x4");
  CHECK(to_string(independence_polynomial(p4, {2, 3})) == "1 - x1 - x4 + x1*x4");
  CHECK(to_string(independence_polynomial(p4, {3}, Alphabet::y)) == "1 - y1 - y2 - y4 + y1*y4 + y2*y4");
  CHECK(independence_polynomial(p4, {1, 2, 3, 4}) == MultiPoly(1));
}

TEST_CASE("independence polynomial agrees with the subset scan and the deletion recurrence") {
  for (int n = 1; n <= 5; ++n)
    for_each_connected_graph(n, [&](const Graph& g) {
      CHECK(independence_polynomial(g) == oracle::independence_polynomial(g));
      for (Vertex v = 1; v <= n; ++v) {
        CHECK(independence_polynomial(g, {v}) == oracle::independence_polynomial(g, {v}));
        // I(G) = I(G - v) - x_v I(G - N[v])
        const MultiPoly rec = independence_polynomial(g, {v}) -
                              MultiPoly::variable(xvar(v)) * independence_polynomial(g, neighborhood(g, v, true));
        CHECK(independence_polynomial(g) == rec);
      }
    });
  const Graph two(3, {{1, 2}});
  CHECK(independence_polynomial(two) == oracle::independence_polynomial(two));
}

TEST_CASE("fundamental identity examples") {
  const Graph p4 = path_graph(4);
  const auto a = fundamental_identity_check(p4, {2});
  CHECK(a.holds);
  CHECK(a.family_size == 1);
  CHECK(to_string(a.rhs) == "x2 - x2*x4");

  const auto empty = fundamental_identity_check(p4, {});
  CHECK(empty.holds);
  CHECK(empty.lhs.is_zero());
  CHECK(empty.rhs.is_zero());

  const auto ends = fundamental_identity_check(p4, {1, 4});
  CHECK(ends.holds);
  CHECK(ends.family_size == 3);

  CHECK(fundamental_identity_check(p4, {1, 2, 3, 4}).family_size == 7);
  CHECK_THROWS_AS(fundamental_identity_check(p4, {5}), std::domain_error);
}

TEST_CASE("fundamental identity right side against an independent expansion") {
  for (int n = 1; n <= 4; ++n)
    for_each_connected_graph(n, [&](const Graph& g) {
      for (std::uint32_t sm = 0; sm < (1U << n); ++sm) {
        const auto s = oracle::from_mask(sm);
        MultiPoly rhs;
        std::size_t count = 0;
        for (std::uint32_t km = 1; km < (1U << n); ++km) {
          if ((km & ~sm) != 0) continue;
          const auto k = oracle::from_mask(km);
          if (!oracle::independent(g, k)) continue;
          ++count;
          std::vector<Vertex> nk;
          for (Vertex v : oracle::closed_nbhd(g, {k.begin(), k.end()})) nk.push_back(v);
          MultiPoly term = oracle::independence_polynomial(g, nk);
          for (Vertex v : k) term *= MultiPoly::variable(xvar(v));
          rhs += term;
        }
        const auto r = fundamental_identity_check(g, VertexSet(s));
        CHECK(r.rhs == rhs);
        CHECK(r.family_size == count);
        CHECK(r.lhs == oracle::independence_polynomial(g, s) - oracle::independence_polynomial(g));
        CHECK(r.holds);
      }
    });
}
