#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/container/flat_map.hpp>
#include <boost/container/small_vector.hpp>
#include <json.hpp>

#include "heaps/checked_int.hpp"
#include "heaps/graph.hpp"

namespace heaps {

/// Variable alphabets. Identities that mix I(., x) and I(., y) keep the two
/// families apart; every other polynomial lives in the x alphabet.
enum class Alphabet : std::uint8_t { x = 0, y = 1 };

struct Variable {
  Alphabet alphabet = Alphabet::x;
  Vertex vertex = 0;

  friend bool operator==(const Variable&, const Variable&) = default;
  friend auto operator<=>(const Variable&, const Variable&) = default;

  std::string name() const { return (alphabet == Alphabet::x ? "x" : "y") + std::to_string(vertex); }
};

inline Variable xvar(Vertex v) { return {Alphabet::x, v}; }
inline Variable yvar(Vertex v) { return {Alphabet::y, v}; }

/// Sparse exponent vector. Factors are sorted by variable (x before y, then by
/// vertex) and never carry a zero exponent.
class Monomial {
 public:
  struct Factor {
    Variable var;
    unsigned exp;
    friend bool operator==(const Factor&, const Factor&) = default;
  };

  Monomial() = default;
  explicit Monomial(Variable v, unsigned exp = 1) {
    if (exp > 0) {
      f_.push_back({v, exp});
      degree_ = exp;
    }
  }

  static Monomial from_factors(std::vector<Factor> fs) {
    std::sort(fs.begin(), fs.end(), [](const Factor& a, const Factor& b) { return a.var < b.var; });
    Monomial m;
    for (const Factor& f : fs) {
      if (f.exp == 0) continue;
      if (!m.f_.empty() && m.f_.back().var == f.var)
        m.f_.back().exp += f.exp;
      else
        m.f_.push_back(f);
      m.degree_ += f.exp;
    }
    return m;
  }

  /// Squarefree product of x_v (or y_v) over a vertex set.
  static Monomial product_of(const VertexSet& s, Alphabet a = Alphabet::x) {
    Monomial m;
    for (Vertex v : s) m.f_.push_back({{a, v}, 1});
    m.degree_ = static_cast<unsigned>(s.size());
    return m;
  }

  unsigned degree() const { return degree_; }
  bool is_one() const { return f_.empty(); }
  std::span<const Factor> factors() const { return {f_.data(), f_.size()}; }

  unsigned exponent(Variable v) const {
    auto it = std::lower_bound(f_.begin(), f_.end(), v, [](const Factor& f, Variable x) { return f.var < x; });
    return it != f_.end() && it->var == v ? it->exp : 0U;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    r.f_.reserve(a.f_.size() + b.f_.size());
    auto i = a.f_.begin(), j = b.f_.begin();
    while (i != a.f_.end() && j != b.f_.end()) {
      if (i->var == j->var) {
        r.f_.push_back({i->var, i->exp + j->exp});
        ++i, ++j;
      } else if (i->var < j->var) {
        r.f_.push_back(*i++);
      } else {
        r.f_.push_back(*j++);
      }
    }
    r.f_.insert(r.f_.end(), i, a.f_.end());
    r.f_.insert(r.f_.end(), j, b.f_.end());
    r.degree_ = a.degree_ + b.degree_;
    return r;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.f_ == b.f_; }

  /// Canonical monomial order: total degree ascending, then exponent vectors
  /// (indexed x1, x2, ..., y1, y2, ...) lexicographically descending, so that
  /// x1 precedes x2 and x1^2 precedes x1*x2.
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    if (a.degree_ != b.degree_) return a.degree_ <=> b.degree_;
    auto i = a.f_.begin(), j = b.f_.begin();
    for (; i != a.f_.end() && j != b.f_.end(); ++i, ++j) {
      if (i->var != j->var) return i->var < j->var ? std::strong_ordering::less : std::strong_ordering::greater;
      if (i->exp != j->exp) return i->exp > j->exp ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    if (i != a.f_.end()) return std::strong_ordering::less;
    if (j != b.f_.end()) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  std::string to_string() const {
    if (f_.empty()) return "1";
    std::string s;
    for (std::size_t k = 0; k < f_.size(); ++k) {
      if (k) s += '*';
      s += f_[k].var.name();
      if (f_[k].exp > 1) s += "^" + std::to_string(f_[k].exp);
    }
    return s;
  }

 private:
  template <class>
  friend class BasicMultiPoly;

  // Monomials with up to eight distinct variables stay off the heap.
  boost::container::small_vector<Factor, 8> f_;
  unsigned degree_ = 0;
};

/// Exact sparse multivariate polynomial. Zero coefficients are never stored, so
/// structural equality is polynomial equality. Terms sit in a sorted flat map
/// in canonical monomial order.
template <class Coeff>
class BasicMultiPoly {
 public:
  using Terms = boost::container::flat_map<Monomial, Coeff>;
  using Term = std::pair<Monomial, Coeff>;

  BasicMultiPoly() = default;
  BasicMultiPoly(Coeff c) { add_term(Monomial{}, c); }  // NOLINT: constants promote
  BasicMultiPoly(int c) : BasicMultiPoly(Coeff(c)) {}   // NOLINT
  BasicMultiPoly(const Monomial& m, Coeff c) { add_term(m, c); }

  /// Bulk construction from unsorted terms; repeated monomials are merged.
  static BasicMultiPoly from_terms(std::vector<Term> ts) {
    std::sort(ts.begin(), ts.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
    std::size_t out = 0;
    for (std::size_t i = 0; i < ts.size();) {
      std::size_t j = i + 1;
      for (; j < ts.size() && ts[j].first == ts[i].first; ++j) ts[i].second += ts[j].second;
      if (ts[i].second != Coeff(0)) {
        if (out != i) ts[out] = std::move(ts[i]);
        ++out;
      }
      i = j;
    }
    ts.resize(out);
    BasicMultiPoly r;
    r.terms_.adopt_sequence(boost::container::ordered_unique_range, typename Terms::sequence_type(
                                std::make_move_iterator(ts.begin()), std::make_move_iterator(ts.end())));
    return r;
  }

  static BasicMultiPoly variable(Variable v) { return BasicMultiPoly(Monomial(v), Coeff(1)); }

  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  Coeff coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Coeff(0) : it->second;
  }
  Coeff constant_term() const { return coefficient(Monomial{}); }

  unsigned degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first.degree(); }

  void add_term(const Monomial& m, Coeff c) {
    if (c == Coeff(0)) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == Coeff(0)) terms_.erase(it);
    }
  }

  BasicMultiPoly& operator+=(const BasicMultiPoly& o) { return *this = combine(*this, o, false); }
  BasicMultiPoly& operator-=(const BasicMultiPoly& o) { return *this = combine(*this, o, true); }
  BasicMultiPoly& operator*=(const BasicMultiPoly& o) { return *this = *this * o; }

  friend BasicMultiPoly operator+(const BasicMultiPoly& a, const BasicMultiPoly& b) { return combine(a, b, false); }
  friend BasicMultiPoly operator-(const BasicMultiPoly& a, const BasicMultiPoly& b) { return combine(a, b, true); }
  BasicMultiPoly operator-() const {
    BasicMultiPoly r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
  }

  friend BasicMultiPoly operator*(const BasicMultiPoly& a, const BasicMultiPoly& b) {
    return multiply(a, b, static_cast<unsigned>(-1));
  }

  /// Product keeping only monomials of total degree <= max_degree.
  static BasicMultiPoly multiply(const BasicMultiPoly& a, const BasicMultiPoly& b, unsigned max_degree) {
    if (a.terms_.size() < b.terms_.size()) return multiply(b, a, max_degree);
    if (b.terms_.size() == 1 && b.terms_.begin()->first.is_one() && a.degree() <= max_degree) {
      BasicMultiPoly r = a;
      for (auto& t : r.terms_) t.second *= b.terms_.begin()->second;
      return r;
    }
    if (auto packed = multiply_packed(a, b, max_degree)) return std::move(*packed);
    std::vector<Term> prods;
    prods.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& [mb, cb] : b.terms_) {
      for (const auto& [ma, ca] : a.terms_) {
        if (ma.degree() + mb.degree() > max_degree) break;  // terms are degree-sorted
        prods.emplace_back(ma * mb, ca * cb);
      }
    }
    return from_terms(std::move(prods));
  }

  BasicMultiPoly truncated(unsigned max_degree) const {
    BasicMultiPoly r;
    for (const auto& [m, c] : terms_) {
      if (m.degree() > max_degree) break;
      r.terms_.emplace_hint(r.terms_.end(), m, c);
    }
    return r;
  }

  BasicMultiPoly homogeneous_part(unsigned d) const {
    BasicMultiPoly r;
    for (const auto& [m, c] : terms_)
      if (m.degree() == d) r.terms_.emplace_hint(r.terms_.end(), m, c);
    return r;
  }

  /// Ring homomorphism induced by a variable renaming; colliding variables
  /// multiply, so x_a * x_b with a, b -> 5 becomes x_5^2.
  template <class F>
  BasicMultiPoly rename_variables(F&& f) const {
    std::vector<Term> ts;
    ts.reserve(terms_.size());
    for (const auto& [m, c] : terms_) {
      std::vector<Monomial::Factor> fs;
      for (const auto& fac : m.factors()) fs.push_back({f(fac.var), fac.exp});
      ts.emplace_back(Monomial::from_factors(std::move(fs)), c);
    }
    return from_terms(std::move(ts));
  }

  friend bool operator==(const BasicMultiPoly& a, const BasicMultiPoly& b) { return a.terms_ == b.terms_; }

 private:
  static BasicMultiPoly combine(const BasicMultiPoly& a, const BasicMultiPoly& b, bool subtract) {
    BasicMultiPoly r;
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    auto i = a.terms_.begin(), j = b.terms_.begin();
    auto push = [&](const Monomial& m, Coeff c) {
      if (c != Coeff(0)) r.terms_.emplace_hint(r.terms_.end(), m, c);
    };
    while (i != a.terms_.end() || j != b.terms_.end()) {
      if (j == b.terms_.end() || (i != a.terms_.end() && i->first < j->first)) {
        push(i->first, i->second);
        ++i;
      } else if (i == a.terms_.end() || j->first < i->first) {
        push(j->first, subtract ? -j->second : j->second);
        ++j;
      } else {
        push(i->first, subtract ? i->second - j->second : i->second + j->second);
        ++i, ++j;
      }
    }
    return r;
  }

  // Exponent vectors over x1..x8 and y1..y8, one byte each, packed into a
  // 128-bit key so that multiplying monomials is adding keys. x1 takes the
  // most significant byte, so within one degree the canonical order is
  // descending key order.
  __extension__ using PackedKey = unsigned __int128;

  static int slot_of(Variable v) { return 15 - ((v.alphabet == Alphabet::y ? 8 : 0) + v.vertex - 1); }

  static bool packable(const BasicMultiPoly& p, unsigned& max_exp) {
    max_exp = 0;
    for (const auto& [m, c] : p.terms_)
      for (const auto& f : m.factors()) {
        if (f.var.vertex < 1 || f.var.vertex > 8) return false;
        max_exp = std::max(max_exp, f.exp);
      }
    return true;
  }

  static PackedKey pack(const Monomial& m) {
    PackedKey k = 0;
    for (const auto& f : m.factors()) k |= PackedKey(f.exp) << (8 * slot_of(f.var));
    return k;
  }

  static Monomial unpack(PackedKey k) {
    Monomial m;
    for (int slot = 15; slot >= 0; --slot)
      if (unsigned e = static_cast<unsigned>(k >> (8 * slot)) & 0xFFU) {
        const int i = 15 - slot;
        m.f_.push_back({{i < 8 ? Alphabet::x : Alphabet::y, i % 8 + 1}, e});
        m.degree_ += e;
      }
    return m;
  }

  static std::size_t hash(PackedKey k) {
    std::uint64_t h = static_cast<std::uint64_t>(k) ^ (static_cast<std::uint64_t>(k >> 64) * 0x9E3779B97F4A7C15ULL);
    h ^= h >> 33;
    h *= 0xFF51AFD7ED558CCDULL;
    h ^= h >> 33;
    return static_cast<std::size_t>(h);
  }

  template <class Slot>
  static void grow(std::vector<Slot>& table, std::vector<char>& used, std::size_t filled) {
    std::vector<Slot> old = std::move(table);
    std::vector<char> old_used = std::move(used);
    const std::size_t cap = std::max<std::size_t>(16, 4 * filled);
    std::size_t c = 16;
    while (c < cap) c <<= 1;
    table.assign(c, Slot{});
    used.assign(c, 0);
    for (std::size_t i = 0; i < old.size(); ++i) {
      if (!old_used[i]) continue;
      std::size_t h = hash(old[i].key) & (c - 1);
      while (used[h]) h = (h + 1) & (c - 1);
      used[h] = 1;
      table[h] = old[i];
    }
  }

  static std::optional<BasicMultiPoly> multiply_packed(const BasicMultiPoly& a, const BasicMultiPoly& b,
                                                       unsigned max_degree) {
    unsigned ea = 0, eb = 0;
    if (!packable(a, ea) || !packable(b, eb) || ea + eb > 0xFFU) return std::nullopt;
    struct Packed {
      PackedKey key;
      unsigned degree;
      Coeff c;
    };
    std::vector<Packed> pa, pb;
    pa.reserve(a.terms_.size());
    pb.reserve(b.terms_.size());
    for (const auto& [m, c] : a.terms_) pa.push_back({pack(m), m.degree(), c});
    for (const auto& [m, c] : b.terms_) pb.push_back({pack(m), m.degree(), c});
    // Accumulate into an open-addressing table, then sort only the distinct
    // monomials.
    std::size_t cap = 16;
    while (cap < 4 * std::max(pa.size(), pb.size())) cap <<= 1;
    std::vector<Packed> table(cap);
    std::vector<char> used(cap, 0);
    std::size_t filled = 0;
    for (const Packed& y : pb)
      for (const Packed& x : pa) {
        if (x.degree + y.degree > max_degree) break;
        const PackedKey key = x.key + y.key;
        if (2 * filled >= cap) {
          grow(table, used, filled);
          cap = table.size();
        }
        std::size_t h = hash(key) & (cap - 1);
        while (used[h] && table[h].key != key) h = (h + 1) & (cap - 1);
        if (used[h]) {
          table[h].c += x.c * y.c;
        } else {
          used[h] = 1;
          table[h] = {key, x.degree + y.degree, x.c * y.c};
          ++filled;
        }
      }
    std::vector<Packed> distinct;
    distinct.reserve(filled);
    for (std::size_t h = 0; h < cap; ++h)
      if (used[h] && table[h].c != Coeff(0)) distinct.push_back(table[h]);
    std::sort(distinct.begin(), distinct.end(), [](const Packed& x, const Packed& y) {
      return x.degree != y.degree ? x.degree < y.degree : x.key > y.key;
    });
    BasicMultiPoly r;
    typename Terms::sequence_type seq;
    seq.reserve(distinct.size());
    for (const Packed& t : distinct) seq.emplace_back(unpack(t.key), t.c);
    r.terms_.adopt_sequence(boost::container::ordered_unique_range, std::move(seq));
    return r;
  }

  Terms terms_;
};

using MultiPoly = BasicMultiPoly<CheckedInt>;

template <class Coeff>
struct BasicTruncatedSeries {
  BasicMultiPoly<Coeff> series;  // every monomial has total degree <= degree
  unsigned degree = 0;
};
using TruncatedSeries = BasicTruncatedSeries<CheckedInt>;

// ---------------------------------------------------------------------------

enum class ArithOp { add, sub, mul };

template <class Coeff>
BasicMultiPoly<Coeff> poly_arith(const BasicMultiPoly<Coeff>& a, const BasicMultiPoly<Coeff>& b, ArithOp op) {
  switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::sub: return a - b;
    case ArithOp::mul: return a * b;
  }
  throw std::invalid_argument("poly_arith: unknown op");
}

template <class Coeff>
BasicMultiPoly<Coeff> partial_derivative(const BasicMultiPoly<Coeff>& p, Variable v) {
  std::vector<typename BasicMultiPoly<Coeff>::Term> ts;
  for (const auto& [m, c] : p.terms()) {
    const unsigned e = m.exponent(v);
    if (e == 0) continue;
    std::vector<Monomial::Factor> fs(m.factors().begin(), m.factors().end());
    for (auto& f : fs)
      if (f.var == v) --f.exp;
    ts.emplace_back(Monomial::from_factors(std::move(fs)), c * Coeff(static_cast<std::int64_t>(e)));
  }
  return BasicMultiPoly<Coeff>::from_terms(std::move(ts));
}

/// Image under x_v -> -x for every variable. Entry k of the result is the
/// coefficient of x^k; trailing zeros are trimmed, so the zero polynomial maps
/// to an empty vector.
template <class Coeff>
std::vector<Coeff> substitute_single_variable(const BasicMultiPoly<Coeff>& p) {
  std::vector<Coeff> out(p.is_zero() ? 0 : p.degree() + 1, Coeff(0));
  for (const auto& [m, c] : p.terms()) out[m.degree()] += (m.degree() % 2 == 0) ? c : -c;
  while (!out.empty() && out.back() == Coeff(0)) out.pop_back();
  return out;
}

/// Power series quotient num/den through total degree max_degree.
template <class Coeff>
BasicTruncatedSeries<Coeff> series_divide(const BasicMultiPoly<Coeff>& num, const BasicMultiPoly<Coeff>& den,
                                          unsigned max_degree) {
  const Coeff c0 = den.constant_term();
  if (c0 == Coeff(0)) throw std::domain_error("series_divide: denominator has zero constant term");
  std::vector<BasicMultiPoly<Coeff>> den_parts(max_degree + 1), q_parts(max_degree + 1);
  for (const auto& [m, c] : den.terms())
    if (m.degree() <= max_degree) den_parts[m.degree()].add_term(m, c);
  BasicTruncatedSeries<Coeff> out;
  out.degree = max_degree;
  for (unsigned d = 0; d <= max_degree; ++d) {
    BasicMultiPoly<Coeff> rem = num.homogeneous_part(d);
    for (unsigned k = 1; k <= d; ++k)
      if (!den_parts[k].is_zero() && !q_parts[d - k].is_zero()) rem -= den_parts[k] * q_parts[d - k];
    for (const auto& [m, c] : rem.terms()) q_parts[d].add_term(m, exact_div(c, c0));
    out.series += q_parts[d];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Serialization. Terms always appear in canonical monomial order.

template <class Coeff>
std::string to_string(const BasicMultiPoly<Coeff>& p) {
  if (p.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    const bool neg = c < Coeff(0);
    const Coeff mag = neg ? -c : c;
    if (first)
      s += neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    first = false;
    if (m.is_one())
      s += to_string(mag);
    else if (mag == Coeff(1))
      s += m.to_string();
    else
      s += to_string(mag) + "*" + m.to_string();
  }
  return s;
}

namespace detail {

inline Variable parse_variable(const std::string& tok) {
  if (tok.size() < 2 || (tok[0] != 'x' && tok[0] != 'y'))
    throw std::invalid_argument("polynomial: bad variable '" + tok + "'");
  for (std::size_t i = 1; i < tok.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(tok[i]))) throw std::invalid_argument("polynomial: bad variable '" + tok + "'");
  const long v = std::stol(tok.substr(1));
  if (v < 1) throw std::invalid_argument("polynomial: variable index must be positive in '" + tok + "'");
  return {tok[0] == 'x' ? Alphabet::x : Alphabet::y, static_cast<Vertex>(v)};
}

inline bool all_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); });
}

}  // namespace detail

/// Inverse of to_string; accepts "c*x1^2*y3" style terms joined by + and -.
inline MultiPoly parse_polynomial(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw std::invalid_argument("polynomial: empty input");
  MultiPoly p;
  std::size_t i = 0;
  while (i < s.size()) {
    bool neg = false;
    if (s[i] == '+' || s[i] == '-') {
      neg = s[i] == '-';
      ++i;
    } else if (i != 0) {
      throw std::invalid_argument("polynomial: expected '+' or '-'");
    }
    std::size_t j = i;
    while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
    const std::string term = s.substr(i, j - i);
    if (term.empty()) throw std::invalid_argument("polynomial: empty term");
    CheckedInt coeff = 1;
    std::vector<Monomial::Factor> fs;
    std::size_t k = 0;
    bool first_factor = true;
    while (k <= term.size()) {
      std::size_t e = term.find('*', k);
      if (e == std::string::npos) e = term.size();
      const std::string fac = term.substr(k, e - k);
      if (first_factor && detail::all_digits(fac)) {
        coeff = std::stoll(fac);
      } else {
        auto caret = fac.find('^');
        unsigned exp = 1;
        std::string name = fac;
        if (caret != std::string::npos) {
          name = fac.substr(0, caret);
          const std::string ex = fac.substr(caret + 1);
          if (!detail::all_digits(ex)) throw std::invalid_argument("polynomial: bad exponent in '" + fac + "'");
          exp = static_cast<unsigned>(std::stoul(ex));
        }
        fs.push_back({detail::parse_variable(name), exp});
      }
      first_factor = false;
      k = e + 1;
    }
    p.add_term(Monomial::from_factors(std::move(fs)), neg ? -coeff : coeff);
    i = j;
  }
  return p;
}

/// {"terms":[{"coeff":c,"exponents":{"x1":1,...}}, ...]}
inline nlohmann::ordered_json to_json(const MultiPoly& p) {
  nlohmann::ordered_json terms = nlohmann::ordered_json::array();
  for (const auto& [m, c] : p.terms()) {
    nlohmann::ordered_json ex = nlohmann::ordered_json::object();
    for (const auto& f : m.factors()) ex[f.var.name()] = f.exp;
    terms.push_back({{"coeff", c.value()}, {"exponents", ex}});
  }
  return {{"terms", terms}};
}

inline MultiPoly polynomial_from_json(const nlohmann::ordered_json& j) {
  MultiPoly p;
  for (const auto& t : j.at("terms")) {
    std::vector<Monomial::Factor> fs;
    for (const auto& [name, e] : t.at("exponents").items()) fs.push_back({detail::parse_variable(name), e.get<unsigned>()});
    p.add_term(Monomial::from_factors(std::move(fs)), CheckedInt(t.at("coeff").get<std::int64_t>()));
  }
  return p;
}

}  // namespace heaps
