#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "heaps/graph.hpp"
#include "heaps/multipoly.hpp"

namespace heaps {

using GraphPtr = std::shared_ptr<const Graph>;

inline GraphPtr share(Graph g) { return std::make_shared<const Graph>(std::move(g)); }

inline bool same_graph(const GraphPtr& a, const GraphPtr& b) { return a == b || (a && b && *a == *b); }

// ---------------------------------------------------------------------------
// Letter-level primitives. A trace is handled through any representative
// string; two letters are dependent when equal or adjacent in the graph, and
// occurrence i precedes occurrence j in the heap order when a chain of
// dependent occurrences leads from i to j.

namespace detail {

/// Lexicographically smallest representative of the commutation class: emit
/// the smallest letter none of whose earlier pending occurrences depends on it.
inline std::vector<Vertex> canonical_letters(const Graph& g, std::span<const Vertex> s) {
  const std::size_t m = s.size();
  std::vector<int> pending(m, 0);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < j; ++i)
      if (g.dependent(s[i], s[j])) ++pending[j];
  std::vector<char> done(m, 0);
  std::vector<Vertex> out;
  out.reserve(m);
  for (std::size_t step = 0; step < m; ++step) {
    std::size_t best = m;
    for (std::size_t i = 0; i < m; ++i)
      if (!done[i] && pending[i] == 0 && (best == m || s[i] < s[best])) best = i;
    done[best] = 1;
    out.push_back(s[best]);
    for (std::size_t k = best + 1; k < m; ++k)
      if (!done[k] && g.dependent(s[best], s[k])) --pending[k];
  }
  return out;
}

/// Appending b to a canonical word keeps it canonical iff no letter after the
/// last occurrence dependent on b is larger than b.
inline bool extends_canonically(const Graph& g, std::span<const Vertex> canonical, Vertex b) {
  for (auto it = canonical.rbegin(); it != canonical.rend(); ++it) {
    if (g.dependent(*it, b)) return true;
    if (*it > b) return false;
  }
  return true;
}

inline bool is_canonical(const Graph& g, std::span<const Vertex> s) {
  for (std::size_t k = 0; k < s.size(); ++k)
    if (!extends_canonically(g, s.first(k), s[k])) return false;
  return true;
}

/// Occurrences with no later dependent occurrence: exactly those that can be
/// moved to the end of the word.
inline std::vector<char> maximal_occurrences(const Graph& g, std::span<const Vertex> s) {
  std::vector<char> maximal(s.size(), 1);
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (g.dependent(s[i], s[j])) {
        maximal[i] = 0;
        break;
      }
  return maximal;
}

/// Occurrences of v followed by no occurrence of a neighbour of v. Later
/// copies of v do not block, so v is counted k times when w = u v^k, which is
/// the multiplicity of v in the initial alphabet multiset.
inline std::vector<char> top_occurrences(const Graph& g, std::span<const Vertex> s) {
  std::vector<char> top(s.size(), 1);
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (s[i] != s[j] && g.adjacent(s[i], s[j])) {
        top[i] = 0;
        break;
      }
  return top;
}

inline std::uint64_t initial_alphabet_mask(const Graph& g, std::span<const Vertex> s) {
  std::uint64_t mask = 0, blocked = 0;
  for (auto it = s.rbegin(); it != s.rend(); ++it) {
    const std::uint64_t bit = std::uint64_t{1} << (*it - 1);
    if (!(blocked & bit)) mask |= bit;
    blocked |= bit | g.neighbor_mask(*it);
  }
  return mask;
}

/// Down-closure in the heap order of the seed occurrences, restricted to the
/// allowed occurrences. Restriction is sound when the complement of `allowed`
/// is itself down-closed.
inline std::vector<char> down_closure(const Graph& g, std::span<const Vertex> s, const std::vector<char>& seed,
                                      const std::vector<char>& allowed) {
  std::vector<char> in(s.size(), 0);
  for (std::size_t i = s.size(); i-- > 0;) {
    if (!allowed[i]) continue;
    if (seed[i]) {
      in[i] = 1;
      continue;
    }
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (in[j] && g.dependent(s[i], s[j])) {
        in[i] = 1;
        break;
      }
  }
  return in;
}

inline std::vector<Vertex> select(std::span<const Vertex> s, const std::vector<char>& keep) {
  std::vector<Vertex> out;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (keep[i]) out.push_back(s[i]);
  return out;
}

/// Factors of the ia-decomposition with respect to u, as subsequences of s.
/// Factor t collects the occurrences below the t-th occurrence of u that are
/// not below an earlier one. Assumes every occurrence lies below some u.
inline std::vector<std::vector<Vertex>> ia_factor_letters(const Graph& g, std::span<const Vertex> s, Vertex u) {
  std::vector<char> remaining(s.size(), 1);
  std::vector<std::vector<Vertex>> out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != u) continue;
    std::vector<char> seed(s.size(), 0);
    seed[i] = 1;
    auto part = down_closure(g, s, seed, remaining);
    for (std::size_t k = 0; k < s.size(); ++k)
      if (part[k]) remaining[k] = 0;
    out.push_back(select(s, part));
  }
  return out;
}

struct NbdLetters {
  std::vector<Vertex> neighbors;              // u_1 < ... < u_d occurring in s
  std::vector<std::vector<Vertex>> factors;   // one per neighbour, possibly empty
  std::vector<Vertex> rest;                   // what is left; {u} on valid input
};

/// Factor i is the down-closure of the occurrences of u_i among what earlier
/// factors left over.
inline NbdLetters nbd_factor_letters(const Graph& g, std::span<const Vertex> s, Vertex u) {
  NbdLetters r;
  for (Vertex x : g.neighbors(u))
    if (std::find(s.begin(), s.end(), x) != s.end()) r.neighbors.push_back(x);
  std::vector<char> remaining(s.size(), 1);
  for (Vertex x : r.neighbors) {
    std::vector<char> seed(s.size(), 0);
    for (std::size_t i = 0; i < s.size(); ++i) seed[i] = s[i] == x;
    auto part = down_closure(g, s, seed, remaining);
    for (std::size_t k = 0; k < s.size(); ++k)
      if (part[k]) remaining[k] = 0;
    r.factors.push_back(select(s, part));
  }
  r.rest = select(s, remaining);
  return r;
}

}  // namespace detail

// ---------------------------------------------------------------------------

/// Element of the Cartier-Foata monoid of a graph, stored as the
/// lexicographically smallest representative of its commutation class. The
/// empty sequence is the identity pt.
class TraceWord {
 public:
  TraceWord() = default;

  static TraceWord identity(GraphPtr g) {
    if (!g) throw std::invalid_argument("TraceWord: null graph");
    TraceWord w;
    w.g_ = std::move(g);
    return w;
  }

  static TraceWord normalize(GraphPtr g, std::span<const Vertex> letters) {
    TraceWord w = identity(std::move(g));
    for (Vertex v : letters) w.g_->require_vertex(v);
    w.letters_ = detail::canonical_letters(*w.g_, letters);
    return w;
  }

  static TraceWord normalize(GraphPtr g, std::initializer_list<Vertex> letters) {
    return normalize(std::move(g), std::span<const Vertex>(letters.begin(), letters.size()));
  }

  /// Trusts that `letters` is already canonical; used by enumeration.
  static TraceWord from_canonical(GraphPtr g, std::vector<Vertex> letters) {
    TraceWord w = identity(std::move(g));
    w.letters_ = std::move(letters);
    return w;
  }

  const std::vector<Vertex>& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const Graph& graph() const { return *g_; }
  const GraphPtr& graph_ptr() const { return g_; }

  std::size_t count(Vertex v) const { return static_cast<std::size_t>(std::count(letters_.begin(), letters_.end(), v)); }

  friend bool operator==(const TraceWord& a, const TraceWord& b) {
    return a.letters_ == b.letters_ && same_graph(a.g_, b.g_);
  }
  /// Length first, then lexicographic.
  friend std::strong_ordering operator<=>(const TraceWord& a, const TraceWord& b) {
    if (auto c = a.letters_.size() <=> b.letters_.size(); c != 0) return c;
    return a.letters_ <=> b.letters_;
  }

  /// Whitespace-separated letters; "pt" for the empty word.
  std::string to_string() const {
    if (letters_.empty()) return "pt";
    std::string s;
    for (std::size_t i = 0; i < letters_.size(); ++i) {
      if (i) s += ' ';
      s += std::to_string(letters_[i]);
    }
    return s;
  }

 private:
  GraphPtr g_;
  std::vector<Vertex> letters_;
};

inline TraceWord normalize(std::span<const Vertex> letters, const GraphPtr& g) { return TraceWord::normalize(g, letters); }

/// Parses "3 4 2 1 1 1" (also accepts commas); "pt" or blank is the empty word.
inline TraceWord parse_word(const std::string& text, const GraphPtr& g) {
  std::string t = text;
  std::replace(t.begin(), t.end(), ',', ' ');
  std::istringstream in(t);
  std::vector<Vertex> letters;
  std::string tok;
  while (in >> tok) {
    if (tok == "pt" && letters.empty()) continue;
    std::size_t pos = 0;
    long v = 0;
    try {
      v = std::stol(tok, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("word: bad letter '" + tok + "'");
    }
    if (pos != tok.size()) throw std::invalid_argument("word: bad letter '" + tok + "'");
    letters.push_back(static_cast<Vertex>(v));
  }
  return TraceWord::normalize(g, letters);
}

struct WordStats {
  std::size_t length = 0;
  std::map<Vertex, std::size_t> counts;  // v(w) for letters occurring in w
  std::vector<Vertex> ia_multiset;       // IA_m(w), sorted
  VertexSet ia_set;                      // IA(w)
};

inline WordStats word_stats(const TraceWord& w) {
  WordStats st;
  st.length = w.length();
  for (Vertex v : w.letters()) ++st.counts[v];
  auto top = detail::top_occurrences(w.graph(), w.letters());
  for (std::size_t i = 0; i < w.length(); ++i)
    if (top[i]) st.ia_multiset.push_back(w.letters()[i]);
  std::sort(st.ia_multiset.begin(), st.ia_multiset.end());
  st.ia_set = VertexSet(st.ia_multiset);
  return st;
}

inline VertexSet initial_alphabet(const TraceWord& w) {
  auto maximal = detail::maximal_occurrences(w.graph(), w.letters());
  return VertexSet(detail::select(w.letters(), maximal));
}

inline TraceWord concat(const TraceWord& a, const TraceWord& b) {
  if (!same_graph(a.graph_ptr(), b.graph_ptr())) throw std::domain_error("concat: words over different graphs");
  std::vector<Vertex> s = a.letters();
  s.insert(s.end(), b.letters().begin(), b.letters().end());
  return TraceWord::normalize(a.graph_ptr(), s);
}

/// Product of the letters of an independent set (they pairwise commute).
inline TraceWord product_word(const GraphPtr& g, const VertexSet& k) {
  return TraceWord::normalize(g, k.vertices());
}

/// The unique w' with w' * prod(K) = w.
inline TraceWord divide_by_independent_set(const TraceWord& w, const VertexSet& k) {
  const Graph& g = w.graph();
  if (!is_independent(g, k)) throw std::domain_error("divide_by_independent_set: " + k.to_string() + " is not independent");
  auto maximal = detail::maximal_occurrences(g, w.letters());
  std::vector<char> keep(w.length(), 1);
  for (Vertex y : k) {
    bool found = false;
    for (std::size_t i = w.length(); i-- > 0;)
      if (w.letters()[i] == y) {
        found = maximal[i] != 0;
        keep[i] = 0;
        break;
      }
    if (!found)
      throw std::domain_error("divide_by_independent_set: " + std::to_string(y) + " is not in the initial alphabet");
  }
  return TraceWord::normalize(w.graph_ptr(), detail::select(w.letters(), keep));
}

struct Decomposition {
  enum class Kind { ia, nbd };
  Kind kind = Kind::ia;
  GraphPtr graph;
  std::vector<TraceWord> factors;
  std::vector<Vertex> neighbors;  // nbd only: u_1 < ... < u_d, one per factor
  std::optional<Vertex> tail;     // nbd only: the final letter u

  TraceWord reassemble() const {
    TraceWord w = TraceWord::identity(graph);
    for (const auto& f : factors) w = concat(w, f);
    if (tail) w = concat(w, TraceWord::normalize(graph, {*tail}));
    return w;
  }
};

namespace detail {
inline void require_ending_only_in(const TraceWord& w, Vertex u, const char* who) {
  w.graph().require_vertex(u);
  if (w.empty()) throw std::domain_error(std::string(who) + ": empty word");
  auto ia = initial_alphabet(w);
  if (ia != VertexSet{u})
    throw std::domain_error(std::string(who) + ": initial alphabet " + ia.to_string() + " is not {" + std::to_string(u) + "}");
}
}  // namespace detail

/// w = w_1 ... w_{u(w)} with IA_m(w_i) = {u}.
inline Decomposition ia_decomposition(const TraceWord& w, Vertex u) {
  detail::require_ending_only_in(w, u, "ia_decomposition");
  Decomposition d;
  d.kind = Decomposition::Kind::ia;
  d.graph = w.graph_ptr();
  for (auto& f : detail::ia_factor_letters(w.graph(), w.letters(), u))
    d.factors.push_back(TraceWord::normalize(w.graph_ptr(), f));
  return d;
}

/// w = w_1 ... w_d u for a word containing u once and ending only in u.
inline Decomposition nbd_decomposition(const TraceWord& w, Vertex u) {
  detail::require_ending_only_in(w, u, "nbd_decomposition");
  if (w.count(u) != 1) throw std::domain_error("nbd_decomposition: letter " + std::to_string(u) + " occurs " +
                                               std::to_string(w.count(u)) + " times");
  auto parts = detail::nbd_factor_letters(w.graph(), w.letters(), u);
  Decomposition d;
  d.kind = Decomposition::Kind::nbd;
  d.neighbors = parts.neighbors;
  d.tail = u;
  d.graph = w.graph_ptr();
  for (auto& f : parts.factors) d.factors.push_back(TraceWord::normalize(w.graph_ptr(), f));
  return d;
}

/// Visits every canonical word of length <= max_length in depth-first
/// lexicographic order, the empty word first.
template <class Visitor>
void for_each_canonical_word(const Graph& g, std::size_t max_length, Visitor&& visit) {
  std::vector<Vertex> cur;
  cur.reserve(max_length);
  auto rec = [&](auto&& self) -> void {
    visit(std::span<const Vertex>(cur));
    if (cur.size() == max_length) return;
    for (Vertex b = 1; b <= g.order(); ++b) {
      if (!detail::extends_canonically(g, cur, b)) continue;
      cur.push_back(b);
      self(self);
      cur.pop_back();
    }
  };
  rec(rec);
}

/// Canonical words of length <= max_length that end only in K, with their
/// initial-alphabet masks. A prefix is abandoned once some initial letter a
/// outside K is farther than the remaining budget from K: covering a needs a
/// chain of later dependent letters ending in K.
template <class Visitor>
void for_each_canonical_word_ending_in(const Graph& g, std::uint64_t kmask, std::size_t max_length, Visitor&& visit) {
  const int n = g.order();
  std::vector<std::size_t> dist(static_cast<std::size_t>(n) + 1, SIZE_MAX);
  std::vector<Vertex> queue;
  for (Vertex v = 1; v <= n; ++v)
    if (kmask >> (v - 1) & 1U) {
      dist[static_cast<std::size_t>(v)] = 0;
      queue.push_back(v);
    }
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (Vertex b : g.neighbors(queue[i]))
      if (dist[static_cast<std::size_t>(b)] == SIZE_MAX) {
        dist[static_cast<std::size_t>(b)] = dist[static_cast<std::size_t>(queue[i])] + 1;
        queue.push_back(b);
      }

  std::vector<Vertex> cur;
  cur.reserve(max_length);
  auto rec = [&](auto&& self, std::uint64_t ia) -> void {
    std::size_t need = 0;
    for (std::uint64_t m = ia & ~kmask; m; m &= m - 1)
      need = std::max(need, dist[static_cast<std::size_t>(std::countr_zero(m)) + 1]);
    if (need > max_length - cur.size()) return;
    if (need == 0) visit(std::span<const Vertex>(cur), ia);
    if (cur.size() == max_length) return;
    for (Vertex b = 1; b <= n; ++b) {
      if (!detail::extends_canonically(g, cur, b)) continue;
      cur.push_back(b);
      self(self, (ia & ~g.neighbor_mask(b)) | std::uint64_t{1} << (b - 1));
      cur.pop_back();
    }
  };
  rec(rec, 0);
}

enum class AlphabetMatch {
  subset,  // IA(w) ⊆ K, including the empty word
  exact,   // IA(w) = K, nonempty words only
};

/// Distinct trace words of length <= max_length whose initial alphabet relates
/// to K as requested, sorted by length then lexicographically.
inline std::vector<TraceWord> enumerate_words(const GraphPtr& g, const VertexSet& k, std::size_t max_length,
                                              AlphabetMatch match = AlphabetMatch::subset) {
  require_subset(*g, k);
  if (!g->fits_mask()) throw std::domain_error("enumerate_words: graphs above 64 vertices are not supported");
  const std::uint64_t kmask = k.mask();
  std::vector<TraceWord> out;
  for_each_canonical_word_ending_in(*g, kmask, max_length, [&](std::span<const Vertex> s, std::uint64_t ia) {
    const bool ok = match == AlphabetMatch::subset || (!s.empty() && ia == kmask);
    if (ok) out.push_back(TraceWord::from_canonical(g, std::vector<Vertex>(s.begin(), s.end())));
  });
  std::sort(out.begin(), out.end());
  return out;
}

/// pi_G(w) = wt(w): the monomial prod x_v^{v(w)}.
inline Monomial commutative_image(const TraceWord& w, Alphabet a = Alphabet::x) {
  std::vector<Monomial::Factor> fs;
  for (Vertex v : w.letters()) fs.push_back({{a, v}, 1});
  return Monomial::from_factors(std::move(fs));
}

}  // namespace heaps
