#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "heapconn/rational.hpp"

namespace heapconn {

/// Z2 grading of coordinates, scalars, sections and operators.
enum class Parity : unsigned char { Even = 0, Odd = 1 };

inline Parity operator+(Parity a, Parity b) {
  return static_cast<Parity>(static_cast<unsigned>(a) ^ static_cast<unsigned>(b));
}

inline bool is_odd(Parity p) { return p == Parity::Odd; }

/// Koszul sign picked up when two homogeneous factors are interchanged.
inline int koszul(Parity a, Parity b) {
  return (is_odd(a) && is_odd(b)) ? -1 : 1;
}

inline const char* parity_name(Parity p) { return is_odd(p) ? "odd" : "even"; }

/// A fixed coordinate chart: ordered even coordinates x_i and odd
/// coordinates th_j.  The order defines the canonical form of every scalar.
struct RingSignature {
  std::vector<std::string> even_names;
  std::vector<std::string> odd_names;

  RingSignature() = default;
  RingSignature(std::vector<std::string> even, std::vector<std::string> odd)
      : even_names(std::move(even)), odd_names(std::move(odd)) {
    for (std::size_t i = 0; i < even_names.size(); ++i)
      for (std::size_t j = i + 1; j < even_names.size(); ++j)
        if (even_names[i] == even_names[j])
          throw std::invalid_argument("duplicate even coordinate: " + even_names[i]);
    for (std::size_t i = 0; i < odd_names.size(); ++i)
      for (std::size_t j = i + 1; j < odd_names.size(); ++j)
        if (odd_names[i] == odd_names[j])
          throw std::invalid_argument("duplicate odd coordinate: " + odd_names[i]);
    for (const auto& e : even_names)
      for (const auto& o : odd_names)
        if (e == o) throw std::invalid_argument("coordinate declared both even and odd: " + e);
    if (odd_names.size() > 63)
      throw std::invalid_argument("at most 63 odd coordinates are supported");
  }

  std::size_t even_count() const { return even_names.size(); }
  std::size_t odd_count() const { return odd_names.size(); }
  std::size_t coordinate_count() const { return even_names.size() + odd_names.size(); }

  /// Returns (is_even, index) for a declared coordinate name.
  bool find(const std::string& name, bool& even, std::size_t& index) const {
    for (std::size_t i = 0; i < even_names.size(); ++i)
      if (even_names[i] == name) { even = true; index = i; return true; }
    for (std::size_t j = 0; j < odd_names.size(); ++j)
      if (odd_names[j] == name) { even = false; index = j; return true; }
    return false;
  }

  friend bool operator==(const RingSignature&, const RingSignature&) = default;
};

using RingPtr = std::shared_ptr<const RingSignature>;

inline RingPtr make_ring(std::vector<std::string> even, std::vector<std::string> odd) {
  return std::make_shared<const RingSignature>(std::move(even), std::move(odd));
}

inline bool same_ring(const RingPtr& a, const RingPtr& b) {
  return a == b || (a && b && *a == *b);
}

inline void require_same_ring(const RingPtr& a, const RingPtr& b) {
  if (!same_ring(a, b)) throw std::invalid_argument("ring signature mismatch");
}

/// One monomial x^e * th_{j1}...th_{jk} with j1 < ... < jk stored as a bitmask.
struct Monomial {
  std::vector<unsigned> even_exp;
  std::uint64_t odd_mask = 0;

  unsigned total_even_degree() const {
    unsigned d = 0;
    for (unsigned e : even_exp) d += e;
    return d;
  }

  Parity parity() const {
    return static_cast<Parity>(std::popcount(odd_mask) & 1u);
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;
};

inline std::vector<unsigned> odd_indices(std::uint64_t mask) {
  std::vector<unsigned> idx;
  for (unsigned j = 0; mask != 0; ++j, mask >>= 1)
    if (mask & 1u) idx.push_back(j);
  return idx;
}

/// Canonical term order: higher total even degree first, then lexicographically
/// greater even exponents, then odd index lists ascending.
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const {
    unsigned da = a.total_even_degree(), db = b.total_even_degree();
    if (da != db) return da > db;
    if (a.even_exp != b.even_exp) return a.even_exp > b.even_exp;
    if (a.odd_mask == b.odd_mask) return false;
    return odd_indices(a.odd_mask) < odd_indices(b.odd_mask);
  }
};

/// Sign of sorting the concatenation th_S th_T into ascending order; zero
/// overlap has been excluded by the caller.
inline int merge_sign(std::uint64_t s, std::uint64_t t) {
  unsigned inversions = 0;
  std::uint64_t rest = t;
  for (unsigned j = 0; rest != 0; ++j, rest >>= 1)
    if (rest & 1u)
      inversions += static_cast<unsigned>(std::popcount(s >> (j + 1)));
  return (inversions & 1u) ? -1 : 1;
}

/// Exact element of the supercommutative polynomial ring Q[x] (x) Lambda[th].
class SuperScalar {
 public:
  SuperScalar() = default;
  explicit SuperScalar(RingPtr sig) : sig_(std::move(sig)) {}

  static SuperScalar zero(RingPtr sig) { return SuperScalar(std::move(sig)); }

  static SuperScalar constant(RingPtr sig, const Rational& c) {
    SuperScalar s(std::move(sig));
    Monomial m;
    m.even_exp.assign(s.sig_->even_count(), 0);
    s.add_term(std::move(m), c);
    return s;
  }

  static SuperScalar one(RingPtr sig) { return constant(std::move(sig), 1); }

  static SuperScalar even_coordinate(RingPtr sig, std::size_t i) {
    SuperScalar s(std::move(sig));
    Monomial m;
    m.even_exp.assign(s.sig_->even_count(), 0);
    m.even_exp.at(i) = 1;
    s.add_term(std::move(m), 1);
    return s;
  }

  static SuperScalar odd_coordinate(RingPtr sig, std::size_t j) {
    SuperScalar s(std::move(sig));
    if (j >= s.sig_->odd_count()) throw std::out_of_range("odd coordinate index");
    Monomial m;
    m.even_exp.assign(s.sig_->even_count(), 0);
    m.odd_mask = std::uint64_t{1} << j;
    s.add_term(std::move(m), 1);
    return s;
  }

  static SuperScalar coordinate(RingPtr sig, const std::string& name) {
    bool even;
    std::size_t idx;
    if (!sig->find(name, even, idx)) throw std::invalid_argument("unknown coordinate: " + name);
    return even ? even_coordinate(std::move(sig), idx) : odd_coordinate(std::move(sig), idx);
  }

  static SuperScalar monomial(RingPtr sig, Monomial m, const Rational& c) {
    SuperScalar s(std::move(sig));
    if (m.even_exp.size() != s.sig_->even_count()) throw std::invalid_argument("bad exponent vector");
    s.add_term(std::move(m), c);
    return s;
  }

  const RingPtr& ring() const { return sig_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Monomial, Rational, MonomialOrder>& terms() const { return terms_; }

  bool is_homogeneous(Parity p) const {
    for (const auto& [m, c] : terms_)
      if (m.parity() != p) return false;
    return true;
  }

  bool is_homogeneous() const {
    return is_homogeneous(Parity::Even) || is_homogeneous(Parity::Odd);
  }

  /// Parity of a homogeneous scalar; zero counts as even.
  Parity parity() const {
    if (terms_.empty()) return Parity::Even;
    Parity p = terms_.begin()->first.parity();
    if (!is_homogeneous(p)) throw std::invalid_argument("inhomogeneous scalar has no parity");
    return p;
  }

  SuperScalar part(Parity p) const {
    SuperScalar out(sig_);
    for (const auto& [m, c] : terms_)
      if (m.parity() == p) out.terms_.emplace(m, c);
    return out;
  }

  friend SuperScalar operator+(const SuperScalar& a, const SuperScalar& b) {
    require_same_ring(a.sig_, b.sig_);
    SuperScalar out = a;
    for (const auto& [m, c] : b.terms_) out.add_term(m, c);
    return out;
  }

  friend SuperScalar operator-(const SuperScalar& a) {
    SuperScalar out(a.sig_);
    for (const auto& [m, c] : a.terms_) out.terms_.emplace(m, -c);
    return out;
  }

  friend SuperScalar operator-(const SuperScalar& a, const SuperScalar& b) {
    return a + (-b);
  }

  friend SuperScalar operator*(const SuperScalar& a, const SuperScalar& b) {
    require_same_ring(a.sig_, b.sig_);
    SuperScalar out(a.sig_);
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        if (ma.odd_mask & mb.odd_mask) continue;  // th_j th_j = 0
        Monomial m;
        m.even_exp.resize(ma.even_exp.size());
        for (std::size_t i = 0; i < m.even_exp.size(); ++i)
          m.even_exp[i] = ma.even_exp[i] + mb.even_exp[i];
        m.odd_mask = ma.odd_mask | mb.odd_mask;
        Rational c = ca * cb;
        if (merge_sign(ma.odd_mask, mb.odd_mask) < 0) c = -c;
        out.add_term(std::move(m), c);
      }
    }
    return out;
  }

  friend SuperScalar operator*(const Rational& c, const SuperScalar& a) {
    SuperScalar out(a.sig_);
    if (c == 0) return out;
    for (const auto& [m, k] : a.terms_) out.terms_.emplace(m, c * k);
    return out;
  }

  SuperScalar& operator+=(const SuperScalar& b) { return *this = *this + b; }
  SuperScalar& operator-=(const SuperScalar& b) { return *this = *this - b; }
  SuperScalar& operator*=(const SuperScalar& b) { return *this = *this * b; }

  friend bool operator==(const SuperScalar& a, const SuperScalar& b) {
    return same_ring(a.sig_, b.sig_) && a.terms_ == b.terms_;
  }

  /// d/dx_i.
  SuperScalar d_even(std::size_t i) const {
    SuperScalar out(sig_);
    for (const auto& [m, c] : terms_) {
      if (m.even_exp[i] == 0) continue;
      Monomial d = m;
      d.even_exp[i] -= 1;
      out.add_term(std::move(d), c * m.even_exp[i]);
    }
    return out;
  }

  /// Left derivative d/dth_j: th_j is moved to the front, picking up the
  /// sign of the bits below it, then removed.
  SuperScalar d_odd(std::size_t j) const {
    SuperScalar out(sig_);
    const std::uint64_t bit = std::uint64_t{1} << j;
    for (const auto& [m, c] : terms_) {
      if (!(m.odd_mask & bit)) continue;
      Monomial d = m;
      d.odd_mask &= ~bit;
      unsigned below = static_cast<unsigned>(std::popcount(m.odd_mask & (bit - 1)));
      out.add_term(std::move(d), (below & 1u) ? -c : c);
    }
    return out;
  }

  /// Deterministic canonical form, e.g. "3/2*x^2*y*th1*th2".
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      Rational mag = c < 0 ? Rational(-c) : c;
      if (first) {
        if (c < 0) out += "-";
        first = false;
      } else {
        out += c < 0 ? " - " : " + ";
      }
      std::string mono = monomial_str(m);
      if (mono.empty()) {
        out += to_string(mag);
      } else if (mag == 1) {
        out += mono;
      } else {
        out += to_string(mag) + "*" + mono;
      }
    }
    return out;
  }

 private:
  std::string monomial_str(const Monomial& m) const {
    std::string out;
    for (std::size_t i = 0; i < m.even_exp.size(); ++i) {
      if (m.even_exp[i] == 0) continue;
      if (!out.empty()) out += "*";
      out += sig_->even_names[i];
      if (m.even_exp[i] > 1) out += "^" + std::to_string(m.even_exp[i]);
    }
    for (unsigned j : odd_indices(m.odd_mask)) {
      if (!out.empty()) out += "*";
      out += sig_->odd_names[j];
    }
    return out;
  }

  void add_term(Monomial m, const Rational& c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(std::move(m), c);
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  RingPtr sig_;
  std::map<Monomial, Rational, MonomialOrder> terms_;
};

}  // namespace heapconn
