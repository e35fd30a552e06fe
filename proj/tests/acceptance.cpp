// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "heaps/heaps.hpp"
#include "oracles.hpp"

using namespace heaps;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream note;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) note << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

GraphPtr bull() { return share(Graph(5, {{1, 2}, {1, 5}, {2, 5}, {1, 3}, {2, 4}})); }

MultiPoly poly(const std::string& s) { return parse_polynomial(s); }

std::vector<GraphPtr> connected_up_to(int max_n) {
  std::vector<GraphPtr> out;
  for (int n = 1; n <= max_n; ++n) for_each_connected_graph(n, [&](const Graph& g) { out.push_back(share(g)); });
  return out;
}

void c1(Outcome& o) {
  const Graph g = path_graph(4);
  o.require(to_string(independence_polynomial(g)) == "1 - x1 - x2 - x3 - x4 + x1*x3 + x1*x4 + x2*x4", "I(P4)");
  o.require(to_string(independence_polynomial(g, {2})) == "1 - x1 - x3 - x4 + x1*x3 + x1*x4", "I(G-u,x)");
  o.require(to_string(independence_polynomial(g, {3}, Alphabet::y)) == "1 - y1 - y2 - y4 + y1*y4 + y2*y4", "I(G-v,y)");

  const std::vector<Vertex> p{2, 3};
  const auto hs = enumerate_witnesses(g, 2, 3, p);
  o.require(hs.size() == 4, "four witnesses");
  if (hs.size() != 4) return;
  struct Case {
    VertexSet h1, h2, z1, z2;
    std::string ix, iy;  // listed polynomials; empty when the case lists none
  };
  const std::vector<Case> cases{
      {{3}, {2}, {2, 3}, {2, 3}, "1 - x1 - x4 + x1*x4", ""},
      {{1, 3}, {2}, {1, 2, 3}, {2, 3}, "1 - x4", "1 - y1 - y4 + y1*y4"},
      {{3}, {2, 4}, {2, 3}, {2, 3, 4}, "1 - x1 - x4 + x1*x4", "1 - y1"},
      {{1, 3}, {2, 4}, {1, 2, 3}, {2, 3, 4}, "1 - x4", "1 - y1"},
  };
  for (std::size_t i = 0; i < 4; ++i) {
    const auto& h = hs[i];
    const auto& c = cases[i];
    const std::string tag = "case " + std::string(1, static_cast<char>('a' + i));
    o.require(h.h1 == c.h1 && h.h2 == c.h2 && h.z1 == c.z1 && h.z2 == c.z2, tag + " sets");
    o.require(to_string(independence_polynomial(g, h.z1, Alphabet::x)) == c.ix, tag + " I(G-Z1,x)");
    if (!c.iy.empty()) o.require(to_string(independence_polynomial(g, h.z2, Alphabet::y)) == c.iy, tag + " I(G-Z2,y)");
  }
  o.note << "I(P4), both deletions and cases (a)-(d) match";
}

void c2(Outcome& o) {
  const TraceWord w = parse_word("3 4 2 1 1 1", share(path_graph(4)));
  const WordStats st = word_stats(w);
  o.require(st.length == 6, "|w|");
  o.require(st.counts == std::map<Vertex, std::size_t>{{1, 3}, {2, 1}, {3, 1}, {4, 1}}, "letter counts");
  o.require(st.ia_multiset == std::vector<Vertex>{1, 1, 1, 4}, "IA_m");
  o.require(st.ia_set == VertexSet{1, 4}, "IA");
  o.note << "|w|=6, counts 3,1,1,1, IA_m={1,1,1,4}, IA={1,4}";
}

void c3(Outcome& o) {
  const StablePathTree t = build_spt(bull(), 1);
  o.require(t.size() == 6, "six tree vertices");
  if (t.size() != 6) return;
  std::multiset<Vertex> labels;
  for (Vertex a = 1; a <= 6; ++a) labels.insert(t.label(a));
  o.require(labels == std::multiset<Vertex>{1, 2, 3, 4, 5, 5}, "label multiset");
  auto kid_labels = [&](Vertex a) {
    std::vector<Vertex> out;
    for (Vertex c : t.children(a)) out.push_back(t.label(c));
    return out;
  };
  o.require(t.label(1) == 1 && kid_labels(1) == std::vector<Vertex>{2, 3, 5}, "root children 2,3,5");
  if (!t.children(1).empty()) o.require(kid_labels(t.children(1)[0]) == std::vector<Vertex>{4, 5}, "2-child children 4,5");
  // Every non-root vertex hangs off the root or off the 2-child.
  if (!t.children(1).empty())
    for (Vertex a = 2; a <= 6; ++a) o.require(t.parent(a) == 1 || t.parent(a) == t.children(1)[0], "shape");
  o.note << "6 vertices, labels {1,2,3,4,5,5}, root children 2,3,5, 2-child children 4,5";
}

void c4(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t checks = 0, graphs = 0;
  for (int n = 1; n <= 6; ++n)
    for_each_connected_graph(n, [&](const Graph& graph) {
      ++graphs;
      const GraphPtr g = share(graph);
      for (Vertex u = 1; u <= n; ++u) {
        ++checks;
        const auto r = check_godsil(g, u);
        o.require(r.pass, r.graph + " root " + std::to_string(u));
      }
    });
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.require(secs < 600.0, "runtime under 10 minutes");
  o.note << graphs << " graphs, " << checks << " roots, " << secs << " s";
}

void c5(Outcome& o) {
  const unsigned L = 6;
  std::size_t checks = 0;
  for (const auto& g : connected_up_to(5)) {
    const int n = g->order();
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
      const VertexSet k = VertexSet::from_mask(m);
      const auto r = check_inversion(*g, k, L);
      ++checks;
      o.require(r.pass, r.graph + " K=" + k.to_string());
      if (n > 3) continue;
      // Word side against the string-deduplication oracle.
      MultiPoly gen;
      for (const auto& w : oracle::traces_by_string_dedup(*g, {k.begin(), k.end()}, L)) {
        std::vector<Monomial::Factor> fs;
        for (Vertex x : w) fs.push_back({xvar(x), 1});
        gen.add_term(Monomial::from_factors(fs), 1);
      }
      o.require(gen == r.rhs, "string-dedup oracle on " + r.graph + " K=" + k.to_string());
    }
  }
  o.note << checks << " (graph, K) pairs at L=6; graphs on <= 3 vertices cross-checked by string dedup";
}

void c6(Outcome& o) {
  const Graph p4 = path_graph(4);
  for (auto form : {BipartiteForm::quotient, BipartiteForm::derivative}) {
    const auto a = check_bipartite(p4, 2, 3, form);
    const auto b = check_bipartite(p4, 1, 4, form);
    o.require(a.pass && a.counts["witnesses"] == 4, std::string("P4 (2,3) ") + to_string(form));
    o.require(b.pass && b.counts["witnesses"] == 1, std::string("P4 (1,4) ") + to_string(form));
    if (form == BipartiteForm::quotient) {
      o.require(a.rhs == poly("x2*y3") * poly("1 - x4") * poly("1 - y1"), "x2 y3 (1-x4)(1-y1)");
      o.require(b.rhs == poly("x1*y4") * poly("1 - x3 - x4") * poly("1 - y1 - y2"), "x1 y4 (1-x3-x4)(1-y1-y2)");
    }
  }
  std::size_t checks = 0;
  for (const auto& g : connected_up_to(5))
    for (Vertex u = 1; u <= g->order(); ++u)
      for (Vertex v = 1; v <= g->order(); ++v) {
        if (u == v) continue;
        for (auto form : {BipartiteForm::quotient, BipartiteForm::derivative}) {
          const auto r = check_bipartite(*g, u, v, form);
          ++checks;
          o.require(r.pass, r.graph + " " + r.identity);
        }
      }
  o.note << "both worked examples; " << checks << " checks on graphs up to 5 vertices";
}

void c7(Outcome& o) {
  std::size_t checks = 0;
  for (int n = 1; n <= 6; ++n)
    for_each_connected_graph(n, [&](const Graph& g) {
      for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
        const auto r = check_fundamental(g, VertexSet::from_mask(m));
        ++checks;
        o.require(r.pass, r.graph + " S=" + VertexSet::from_mask(m).to_string());
      }
      for (Vertex v = 1; v <= n; ++v) {
        // S = {v}: I(G - v) - I(G) = x_v I(G - N[v]).
        const auto r = check_fundamental(g, {v});
        o.require(r.rhs == MultiPoly::variable(xvar(v)) * independence_polynomial(g, neighborhood(g, v, true)),
                  "deletion recurrence " + g.descriptor());
      }
    });
  o.note << checks << " (graph, S) pairs on graphs up to 6 vertices";
}

void c8(Outcome& o) {
  const std::size_t L = 6;
  std::size_t words = 0, roots = 0;
  for (const auto& g : connected_up_to(5))
    for (Vertex u = 1; u <= g->order(); ++u) {
      ++roots;
      const StablePathTree t = build_spt(g, u);
      std::vector<std::size_t> source_len(L + 1, 0), target_len(L + 1, 0);
      std::set<TraceWord> images;
      for (const auto& w : enumerate_words(g, {u}, L)) {
        ++words;
        ++source_len[w.length()];
        const TraceWord x = phi_G(w, t);
        o.require(x.length() == w.length(), "length");
        o.require(label_pushforward(t, MultiPoly(commutative_image(x), 1)) == MultiPoly(commutative_image(w), 1),
                  "commutative diagram on " + g->descriptor());
        o.require(psi_G(x, t) == w, "psi(phi(w)) on " + g->descriptor() + " w=" + w.to_string());
        o.require(images.insert(x).second, "phi injective");
      }
      for (const auto& x : enumerate_words(t.tree_ptr(), {t.root()}, L)) {
        ++target_len[x.length()];
        o.require(images.count(x) == 1, "image covers the tree words");
        o.require(phi_G(psi_G(x, t), t) == x, "phi(psi(w')) on " + g->descriptor());
      }
      o.require(source_len == target_len, "per-length counts on " + g->descriptor());
    }
  o.note << words << " words over " << roots << " (graph, root) pairs, lengths <= 6";
}

void c9(Outcome& o) {
  const std::size_t L = 5;
  std::size_t words = 0;
  for (const auto& g : connected_up_to(5)) {
    const int n = g->order();
    // For small graphs, every class is compared against the initial alphabet
    // read off explicit commutation classes.
    std::map<oracle::Word, std::set<Vertex>> oracle_ia;
    if (n <= 4) {
      oracle::Word cur;
      auto rec = [&](auto&& self) -> void {
        if (!cur.empty()) {
          const auto nf = oracle::normal_form(*g, cur);
          if (!oracle_ia.count(nf)) oracle_ia[nf] = oracle::initial_alphabet(*g, cur);
        }
        if (cur.size() == L) return;
        for (Vertex v = 1; v <= n; ++v) {
          cur.push_back(v);
          self(self);
          cur.pop_back();
        }
      };
      rec(rec);
    }
    for (std::uint64_t sm = 1; sm < (std::uint64_t{1} << n); ++sm) {
      const VertexSet s = VertexSet::from_mask(sm);
      const auto classes = ia_class_partition(g, s, L);
      std::set<TraceWord> seen;
      for (const auto& [k, members] : classes) {
        for (const auto& w : members) {
          ++words;
          o.require(seen.insert(w).second, "classes disjoint");
          o.require(initial_alphabet(w) == k, "class label");
          if (n <= 4) o.require(oracle_ia.at(w.letters()) == std::set<Vertex>(k.begin(), k.end()), "oracle IA");
          o.require(phi_K_inverse(phi_K(w, k), k) == w, "phi_K round trip");
          o.require(initial_alphabet(phi_K(w, k)).is_subset_of(closed_neighborhood(*g, k)), "phi_K lands in N[K]");
        }
        std::set<TraceWord> back;
        for (const auto& x : enumerate_words(g, closed_neighborhood(*g, k), L - k.size())) back.insert(phi_K_inverse(x, k));
        o.require(back == std::set<TraceWord>(members.begin(), members.end()), "phi_K onto its class");
      }
      const auto all = enumerate_words(g, s, L);
      o.require(seen.size() + 1 == all.size(), "classes exhaust the words ending in S");
      if (n <= 4) {
        std::size_t expected = 0;
        for (const auto& [w, ia] : oracle_ia)
          if (std::includes(s.begin(), s.end(), ia.begin(), ia.end())) ++expected;
        o.require(seen.size() == expected, "oracle count");
      }
    }
  }
  o.note << words << " classified words over all S on graphs up to 5 vertices";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"independence polynomials of the P4 worked example", c1},
      {"statistics of the word 342111 on P4", c2},
      {"stable-path tree of the bull graph", c3},
      {"godsil identity on all connected graphs up to 6 vertices", c4},
      {"inversion identity with L=6 up to 5 vertices", c5},
      {"bipartite identity, worked examples and all pairs up to 5 vertices", c6},
      {"fundamental identity on all subsets up to 6 vertices", c7},
      {"tree bijection property suite", c8},
      {"initial-alphabet partition and phi_K", c9},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.note << "exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failed;
    std::printf("%s criterion %zu: %s [%.1fs] %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), secs,
                o.note.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
