#pragma once

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "heaps/bijections.hpp"
#include "heaps/graph.hpp"
#include "heaps/indep_poly.hpp"
#include "heaps/multipoly.hpp"
#include "heaps/stable_path_tree.hpp"
#include "heaps/trace_word.hpp"

namespace heaps {

using ordered_json = nlohmann::ordered_json;

/// Outcome of one identity check. `pass` is exactly `lhs == rhs`.
struct VerificationReport {
  std::string identity;
  std::string graph;
  ordered_json parameters = ordered_json::object();
  bool pass = false;
  MultiPoly lhs;
  MultiPoly rhs;
  ordered_json counts = ordered_json::object();
  std::optional<double> elapsed_ms;

  ordered_json to_json() const {
    ordered_json j;
    j["identity"] = identity;
    j["graph"] = graph;
    j["parameters"] = parameters;
    j["verdict"] = pass ? "pass" : "fail";
    j["lhs"] = to_string(lhs);
    j["rhs"] = to_string(rhs);
    j["counts"] = counts;
    if (elapsed_ms) j["elapsed_ms"] = *elapsed_ms;
    return j;
  }
};

inline ordered_json to_json(const VertexSet& s) { return s.vertices(); }

namespace detail {

inline void finish(VerificationReport& r) { r.pass = r.lhs == r.rhs; }

/// Sum of pi_G(w) over canonical words of length <= max_length ending only in
/// K. Exponent vectors are packed eight bits per vertex when they fit.
inline MultiPoly word_generating_polynomial(const Graph& g, const VertexSet& k, std::size_t max_length,
                                            std::vector<std::size_t>& per_length) {
  per_length.assign(max_length + 1, 0);
  const std::uint64_t kmask = k.mask();
  if (g.order() <= 8 && max_length <= 255) {
    std::unordered_map<std::uint64_t, std::int64_t> acc;
    for_each_canonical_word_ending_in(g, kmask, max_length, [&](std::span<const Vertex> s, std::uint64_t) {
      std::uint64_t key = 0;
      for (Vertex x : s) key += std::uint64_t{1} << (8 * (x - 1));
      ++acc[key];
      ++per_length[s.size()];
    });
    std::vector<MultiPoly::Term> ts;
    for (const auto& [key, c] : acc) {
      std::vector<Monomial::Factor> fs;
      for (Vertex x = 1; x <= g.order(); ++x)
        if (unsigned e = (key >> (8 * (x - 1))) & 0xFFU) fs.push_back({xvar(x), e});
      ts.emplace_back(Monomial::from_factors(std::move(fs)), CheckedInt(c));
    }
    return MultiPoly::from_terms(std::move(ts));
  }
  std::vector<MultiPoly::Term> ts;
  for_each_canonical_word_ending_in(g, kmask, max_length, [&](std::span<const Vertex> s, std::uint64_t) {
    std::vector<Monomial::Factor> fs;
    for (Vertex x : s) fs.push_back({xvar(x), 1});
    ts.emplace_back(Monomial::from_factors(std::move(fs)), 1);
    ++per_length[s.size()];
  });
  return MultiPoly::from_terms(std::move(ts));
}

}  // namespace detail

/// Series expansion of I(G-K)/I(G) against the generating function of words
/// ending only in K, through total degree max_degree.
inline VerificationReport check_inversion(const Graph& g, const VertexSet& k, unsigned max_degree) {
  require_subset(g, k);
  if (!g.fits_mask()) throw std::domain_error("check_inversion: graphs above 64 vertices are not supported");
  VerificationReport r;
  r.identity = "inversion";
  r.graph = g.descriptor();
  r.parameters = {{"K", to_json(k)}, {"L", max_degree}};
  r.lhs = series_divide(independence_polynomial(g, k), independence_polynomial(g), max_degree).series;
  std::vector<std::size_t> per_length;
  r.rhs = detail::word_generating_polynomial(g, k, max_degree, per_length);
  std::size_t total = 0;
  for (auto c : per_length) total += c;
  r.counts = {{"words", total}, {"words_per_length", per_length}};
  detail::finish(r);
  return r;
}

/// I(G-u,x) * l(I(T,x)) == I(G,x) * l(I(T-u',x)) for the stable-path tree
/// rooted at u.
inline VerificationReport check_godsil(const GraphPtr& g, Vertex u) {
  VerificationReport r;
  r.identity = "godsil";
  r.graph = g->descriptor();
  r.parameters = {{"root", u}};
  const StablePathTree t = build_spt(g, u);
  r.lhs = independence_polynomial(*g, {u}) * pushed_independence_polynomial(t);
  r.rhs = independence_polynomial(*g) * pushed_independence_polynomial(t, /*without_root=*/true);
  r.counts = {{"tree_vertices", t.size()}};
  detail::finish(r);
  return r;
}

enum class BipartiteForm { quotient, derivative };

inline const char* to_string(BipartiteForm f) { return f == BipartiteForm::quotient ? "quotient" : "derivative"; }

/// Sum over witnesses H, with x and y alphabets kept apart.
/// quotient:   (I(G-u,x) - I(G,x)) (I(G-v,y) - I(G,y))
///               = sum_H x_u y_v prod_{H1\even} x prod_{H2\odd} y I(G-Z1,x) I(G-Z2,y)
/// derivative: dI(G,x)/dx_u dI(G,y)/dy_v
///               = sum_H prod_{H1\even} x prod_{H2\odd} y I(G-Z1,x) I(G-Z2,y)
inline VerificationReport check_bipartite(const Graph& g, Vertex u, Vertex v, BipartiteForm form,
                                          std::optional<std::vector<Vertex>> path = std::nullopt) {
  g.require_vertex(u);
  g.require_vertex(v);
  if (u == v) throw std::domain_error("check_bipartite: u and v coincide");
  if (!is_connected(g)) throw std::domain_error("check_bipartite: graph is disconnected");
  const std::vector<Vertex> p = path ? *path : shortest_path(g, u, v);
  VerificationReport r;
  r.identity = std::string("bipartite-") + to_string(form);
  r.graph = g.descriptor();
  r.parameters = {{"u", u}, {"v", v}, {"path", p}, {"form", to_string(form)}};

  const MultiPoly ix = independence_polynomial(g, {}, Alphabet::x);
  const MultiPoly iy = independence_polynomial(g, {}, Alphabet::y);
  if (form == BipartiteForm::quotient)
    r.lhs = (independence_polynomial(g, {u}, Alphabet::x) - ix) * (independence_polynomial(g, {v}, Alphabet::y) - iy);
  else
    r.lhs = partial_derivative(ix, xvar(u)) * partial_derivative(iy, yvar(v));

  const auto witnesses = enumerate_witnesses(g, u, v, p);
  for (const auto& h : witnesses) {
    Monomial weight = Monomial::product_of(h.h1_extra(), Alphabet::x) * Monomial::product_of(h.h2_extra(), Alphabet::y);
    if (form == BipartiteForm::quotient) weight = weight * Monomial(xvar(u)) * Monomial(yvar(v));
    r.rhs += MultiPoly(weight, 1) * independence_polynomial(g, h.z1, Alphabet::x) *
             independence_polynomial(g, h.z2, Alphabet::y);
  }
  r.counts = {{"witnesses", witnesses.size()}};
  detail::finish(r);
  return r;
}

inline VerificationReport check_fundamental(const Graph& g, const VertexSet& s) {
  VerificationReport r;
  r.identity = "fundamental";
  r.graph = g.descriptor();
  r.parameters = {{"S", to_json(s)}};
  auto f = fundamental_identity_check(g, s);
  r.lhs = std::move(f.lhs);
  r.rhs = std::move(f.rhs);
  r.counts = {{"s", f.family_size}};
  detail::finish(r);
  return r;
}

// ---------------------------------------------------------------------------
// Graph corpora.

/// Every connected labelled graph on n vertices, by scanning edge subsets of
/// K_n in increasing bit-mask order (edges ordered (1,2), (1,3), ..., (n-1,n)).
template <class Visitor>
void for_each_connected_graph(int n, Visitor&& visit) {
  if (n < 1) return;
  std::vector<Edge> all;
  for (Vertex a = 1; a <= n; ++a)
    for (Vertex b = a + 1; b <= n; ++b) all.push_back({a, b});
  const std::uint64_t limit = std::uint64_t{1} << all.size();
  std::vector<std::uint64_t> adj(static_cast<std::size_t>(n) + 1);
  for (std::uint64_t mask = 0; mask < limit; ++mask) {
    std::fill(adj.begin(), adj.end(), 0);
    for (std::size_t i = 0; i < all.size(); ++i)
      if (mask >> i & 1U) {
        adj[static_cast<std::size_t>(all[i].u)] |= std::uint64_t{1} << (all[i].v - 1);
        adj[static_cast<std::size_t>(all[i].v)] |= std::uint64_t{1} << (all[i].u - 1);
      }
    std::uint64_t seen = 1, frontier = 1;
    while (frontier) {
      std::uint64_t next = 0;
      for (std::uint64_t f = frontier; f; f &= f - 1) next |= adj[static_cast<std::size_t>(std::countr_zero(f)) + 1];
      frontier = next & ~seen;
      seen |= next;
    }
    if (seen != (std::uint64_t{1} << n) - 1) continue;
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < all.size(); ++i)
      if (mask >> i & 1U) edges.push_back(all[i]);
    visit(Graph(n, edges));
  }
}

inline std::vector<Graph> connected_graphs(int n) {
  std::vector<Graph> out;
  for_each_connected_graph(n, [&](Graph g) { out.push_back(std::move(g)); });
  return out;
}

/// Each edge present independently with probability p, redrawn until
/// connected. The edge coin compares raw 64-bit generator output against
/// p * 2^64, so sequences do not depend on the standard library's
/// distribution implementations.
inline std::vector<Graph> random_connected_graphs(int n, double p, int count, std::uint64_t seed) {
  if (n < 1) throw std::domain_error("random_connected_graphs: n must be positive");
  if (!(p > 0.0 && p <= 1.0) && n > 1) throw std::domain_error("random_connected_graphs: p must lie in (0, 1]");
  std::mt19937_64 gen(seed);
  const long double threshold = static_cast<long double>(p) * 18446744073709551616.0L;
  std::vector<Graph> out;
  while (static_cast<int>(out.size()) < count) {
    std::vector<Edge> edges;
    for (Vertex a = 1; a <= n; ++a)
      for (Vertex b = a + 1; b <= n; ++b)
        if (static_cast<long double>(gen()) < threshold) edges.push_back({a, b});
    Graph g(n, edges);
    if (is_connected(g)) out.push_back(std::move(g));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sweeps.

struct GraphFamily {
  enum class Kind { all_connected, random };
  Kind kind = Kind::all_connected;
  int n = 4;
  double edge_prob = 0.5;
  int count = 0;

  /// "connected:N" or "random:N:P:COUNT".
  static GraphFamily parse(const std::string& text) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
      auto c = text.find(':', start);
      parts.push_back(text.substr(start, c == std::string::npos ? std::string::npos : c - start));
      if (c == std::string::npos) break;
      start = c + 1;
    }
    GraphFamily f;
    try {
      if (parts.size() == 2 && parts[0] == "connected") {
        f.kind = Kind::all_connected;
        f.n = std::stoi(parts[1]);
        return f;
      }
      if (parts.size() == 4 && parts[0] == "random") {
        f.kind = Kind::random;
        f.n = std::stoi(parts[1]);
        f.edge_prob = std::stod(parts[2]);
        f.count = std::stoi(parts[3]);
        return f;
      }
    } catch (const std::exception&) {
    }
    throw std::invalid_argument("bad graph family '" + text + "' (expected connected:N or random:N:P:COUNT)");
  }

  std::string to_string() const {
    if (kind == Kind::all_connected) return "connected:" + std::to_string(n);
    std::ostringstream os;
    os << "random:" << n << ":" << edge_prob << ":" << count;
    return os.str();
  }
};

struct SweepOptions {
  GraphFamily family;
  std::vector<std::string> checks;  // godsil, inversion, fundamental, bipartite
  std::uint64_t seed = 0;
  unsigned series_degree = 4;       // L for inversion checks
  bool timing = false;
  std::optional<int> max_n;         // defaults to HEAPS_MAX_N, else 7
};

struct SweepSummary {
  std::size_t graphs = 0;
  std::size_t reports = 0;
  std::size_t failures = 0;
  bool pass() const { return failures == 0; }
};

inline int sweep_cap(const SweepOptions& opt) {
  if (opt.max_n) return *opt.max_n;
  if (const char* env = std::getenv("HEAPS_MAX_N")) {
    try {
      return std::stoi(env);
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string("HEAPS_MAX_N is not an integer: ") + env);
    }
  }
  return 7;
}

inline const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names{"godsil", "inversion", "fundamental", "bipartite"};
  return names;
}

/// Runs the selected checks over every (graph, parameter) combination of the
/// family and hands each report to `sink` in task order. Deterministic given
/// the options.
inline SweepSummary corpus_sweep(const SweepOptions& opt, const std::function<void(const VerificationReport&)>& sink) {
  for (const auto& c : opt.checks)
    if (std::find(known_checks().begin(), known_checks().end(), c) == known_checks().end())
      throw std::invalid_argument("unknown check '" + c + "'");
  const int cap = sweep_cap(opt);
  if (opt.family.n > cap)
    throw std::domain_error("sweep: n = " + std::to_string(opt.family.n) + " exceeds the cap of " + std::to_string(cap) +
                            " (set HEAPS_MAX_N to raise it)");
  SweepSummary sum;
  if (opt.checks.empty()) return sum;

  auto emit = [&](VerificationReport r, std::chrono::steady_clock::time_point t0) {
    if (opt.timing)
      r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    ++sum.reports;
    if (!r.pass) ++sum.failures;
    sink(r);
  };
  auto run_graph = [&](const Graph& graph) {
    ++sum.graphs;
    const GraphPtr g = share(graph);
    const int n = g->order();
    for (const auto& check : opt.checks) {
      if (check == "godsil") {
        for (Vertex u = 1; u <= n; ++u) {
          auto t0 = std::chrono::steady_clock::now();
          emit(check_godsil(g, u), t0);
        }
      } else if (check == "inversion" || check == "fundamental") {
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
          auto t0 = std::chrono::steady_clock::now();
          const VertexSet s = VertexSet::from_mask(m);
          emit(check == "inversion" ? check_inversion(*g, s, opt.series_degree) : check_fundamental(*g, s), t0);
        }
      } else if (check == "bipartite") {
        for (Vertex u = 1; u <= n; ++u)
          for (Vertex v = 1; v <= n; ++v) {
            if (u == v) continue;
            for (auto form : {BipartiteForm::quotient, BipartiteForm::derivative}) {
              auto t0 = std::chrono::steady_clock::now();
              emit(check_bipartite(*g, u, v, form), t0);
            }
          }
      }
    }
  };

  if (opt.family.kind == GraphFamily::Kind::all_connected) {
    for (int n = 1; n <= opt.family.n; ++n) for_each_connected_graph(n, run_graph);
  } else {
    for (const Graph& g : random_connected_graphs(opt.family.n, opt.family.edge_prob, opt.family.count, opt.seed))
      run_graph(g);
  }
  return sum;
}

}  // namespace heaps
