#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "heapconn/superscalar.hpp"

namespace heapconn {

/// A graded derivation of the coordinate ring,
/// D = sum_i a_i d/dx_i + sum_j b_j d/dth_j, coefficients on the left.
/// d/dth_j is the odd left derivative.
struct Derivation {
  RingPtr sig;
  std::vector<SuperScalar> even_parts;  // coefficient of d/dx_i
  std::vector<SuperScalar> odd_parts;   // coefficient of d/dth_j

  Derivation() = default;
  explicit Derivation(RingPtr s)
      : sig(std::move(s)),
        even_parts(sig->even_count(), SuperScalar::zero(sig)),
        odd_parts(sig->odd_count(), SuperScalar::zero(sig)) {}

  static Derivation zero(RingPtr sig) { return Derivation(std::move(sig)); }

  /// d/d<name> for a declared coordinate.
  static Derivation coordinate(RingPtr sig, const std::string& name) {
    Derivation d(sig);
    bool even;
    std::size_t idx;
    if (!sig->find(name, even, idx)) throw std::invalid_argument("unknown coordinate: " + name);
    if (even)
      d.even_parts[idx] = SuperScalar::one(sig);
    else
      d.odd_parts[idx] = SuperScalar::one(sig);
    return d;
  }

  bool is_zero() const {
    for (const auto& a : even_parts)
      if (!a.is_zero()) return false;
    for (const auto& b : odd_parts)
      if (!b.is_zero()) return false;
    return true;
  }

  /// Term d/dx_i carries the parity of its coefficient; d/dth_j flips it.
  bool is_homogeneous(Parity p) const {
    for (const auto& a : even_parts)
      if (!a.is_homogeneous(p)) return false;
    for (const auto& b : odd_parts)
      if (!b.is_homogeneous(p + Parity::Odd)) return false;
    return true;
  }

  Parity parity() const {
    if (is_homogeneous(Parity::Even)) return Parity::Even;
    if (is_homogeneous(Parity::Odd)) return Parity::Odd;
    throw std::invalid_argument("inhomogeneous derivation has no parity");
  }

  Derivation part(Parity p) const {
    Derivation out(sig);
    for (std::size_t i = 0; i < even_parts.size(); ++i)
      out.even_parts[i] = even_parts[i].part(p);
    for (std::size_t j = 0; j < odd_parts.size(); ++j)
      out.odd_parts[j] = odd_parts[j].part(p + Parity::Odd);
    return out;
  }

  /// Graded Leibniz action on a scalar.
  SuperScalar apply(const SuperScalar& f) const {
    require_same_ring(sig, f.ring());
    SuperScalar out = SuperScalar::zero(sig);
    for (std::size_t i = 0; i < even_parts.size(); ++i)
      if (!even_parts[i].is_zero()) out += even_parts[i] * f.d_even(i);
    for (std::size_t j = 0; j < odd_parts.size(); ++j)
      if (!odd_parts[j].is_zero()) out += odd_parts[j] * f.d_odd(j);
    return out;
  }

  friend Derivation operator+(const Derivation& a, const Derivation& b) {
    require_same_ring(a.sig, b.sig);
    Derivation out(a.sig);
    for (std::size_t i = 0; i < out.even_parts.size(); ++i)
      out.even_parts[i] = a.even_parts[i] + b.even_parts[i];
    for (std::size_t j = 0; j < out.odd_parts.size(); ++j)
      out.odd_parts[j] = a.odd_parts[j] + b.odd_parts[j];
    return out;
  }

  friend Derivation operator-(const Derivation& a) {
    Derivation out(a.sig);
    for (std::size_t i = 0; i < out.even_parts.size(); ++i) out.even_parts[i] = -a.even_parts[i];
    for (std::size_t j = 0; j < out.odd_parts.size(); ++j) out.odd_parts[j] = -a.odd_parts[j];
    return out;
  }

  friend Derivation operator-(const Derivation& a, const Derivation& b) { return a + (-b); }

  /// Left multiplication f*D.
  friend Derivation operator*(const SuperScalar& f, const Derivation& d) {
    require_same_ring(f.ring(), d.sig);
    Derivation out(d.sig);
    for (std::size_t i = 0; i < out.even_parts.size(); ++i) out.even_parts[i] = f * d.even_parts[i];
    for (std::size_t j = 0; j < out.odd_parts.size(); ++j) out.odd_parts[j] = f * d.odd_parts[j];
    return out;
  }

  friend bool operator==(const Derivation& a, const Derivation& b) {
    return same_ring(a.sig, b.sig) && a.even_parts == b.even_parts && a.odd_parts == b.odd_parts;
  }
};

namespace detail {

/// [D1,D2] for homogeneous inputs: determined by its action on coordinates,
/// [D1,D2](z) = D1(D2(z)) - (-1)^{p1 p2} D2(D1(z)).
inline Derivation commutator_homogeneous(const Derivation& d1, Parity p1,
                                         const Derivation& d2, Parity p2) {
  const int sgn = koszul(p1, p2);
  Derivation out(d1.sig);
  auto combine = [&](const SuperScalar& a, const SuperScalar& b) {
    return (sgn < 0) ? d1.apply(a) + d2.apply(b) : d1.apply(a) - d2.apply(b);
  };
  for (std::size_t i = 0; i < out.even_parts.size(); ++i)
    out.even_parts[i] = combine(d2.even_parts[i], d1.even_parts[i]);
  for (std::size_t j = 0; j < out.odd_parts.size(); ++j)
    out.odd_parts[j] = combine(d2.odd_parts[j], d1.odd_parts[j]);
  return out;
}

}  // namespace detail

/// Graded commutator, extended bilinearly over parity components.
inline Derivation commutator(const Derivation& d1, const Derivation& d2) {
  require_same_ring(d1.sig, d2.sig);
  Derivation out = Derivation::zero(d1.sig);
  for (Parity p1 : {Parity::Even, Parity::Odd}) {
    Derivation h1 = d1.part(p1);
    if (h1.is_zero()) continue;
    for (Parity p2 : {Parity::Even, Parity::Odd}) {
      Derivation h2 = d2.part(p2);
      if (h2.is_zero()) continue;
      out = out + detail::commutator_homogeneous(h1, p1, h2, p2);
    }
  }
  return out;
}

}  // namespace heapconn
