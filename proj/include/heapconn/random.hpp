#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "heapconn/connection.hpp"
#include "heapconn/endo.hpp"

namespace heapconn {

/// Deterministic generator for randomized symbolic checks: small integer
/// coefficients, polynomial degree <= 2, recorded seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), gen_(seed) {}

  std::uint64_t seed() const { return seed_; }

  int small_int(int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    return d(gen_);
  }

  Rational nonzero_coeff() {
    int c = small_int(1, 3);
    return small_int(0, 1) ? Rational(c) : Rational(-c);
  }

  /// Random homogeneous scalar of the requested parity, at most `max_terms`
  /// monomials of total even degree <= 2.  In a ring without odd
  /// coordinates, odd parity forces zero.
  SuperScalar scalar(const RingPtr& sig, Parity p, int max_terms = 2) {
    SuperScalar out = SuperScalar::zero(sig);
    const std::size_t n = sig->even_count();
    const std::size_t m = sig->odd_count();
    if (is_odd(p) && m == 0) return out;
    const int terms = small_int(0, max_terms);
    for (int t = 0; t < terms; ++t) {
      Monomial mono;
      mono.even_exp.assign(n, 0);
      int deg = small_int(0, 2);
      for (int d = 0; d < deg && n > 0; ++d)
        mono.even_exp[static_cast<std::size_t>(small_int(0, static_cast<int>(n) - 1))] += 1;
      mono.odd_mask = random_odd_mask(m, p);
      if (mono.parity() != p) continue;
      out += SuperScalar::monomial(sig, mono, nonzero_coeff());
    }
    return out;
  }

  SuperScalar homogeneous_scalar(const RingPtr& sig, int max_terms = 2) {
    return scalar(sig, small_int(0, 1) ? Parity::Odd : Parity::Even, max_terms);
  }

  /// Random homogeneous section of the given parity.
  Section section(const BundlePtr& bundle, Parity p) {
    Section out(bundle);
    for (std::size_t a = 0; a < bundle->rank(); ++a)
      out.comps[a] = scalar(bundle->ring, p + bundle->parity(a), 1);
    return out;
  }

  Section homogeneous_section(const BundlePtr& bundle) {
    return section(bundle, small_int(0, 1) ? Parity::Odd : Parity::Even);
  }

  /// Random connection respecting the parity constraint on Gamma.
  Connection connection(const BundlePtr& bundle) {
    Connection out(bundle);
    const std::size_t r = bundle->rank();
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < r; ++b)
        for (std::size_t c = 0; c < r; ++c)
          out.G(a, b, c) =
              scalar(bundle->ring, bundle->parity(a) + bundle->parity(b) + bundle->parity(c), 1);
    return out;
  }

  /// Random even (1,2)-tensor.
  Tensor12 tensor12(const BundlePtr& bundle) {
    Tensor12 out(bundle);
    const std::size_t r = bundle->rank();
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < r; ++b)
        for (std::size_t c = 0; c < r; ++c)
          out.at(a, b, c) =
              scalar(bundle->ring, bundle->parity(a) + bundle->parity(b) + bundle->parity(c), 1);
    return out;
  }

  /// Random torsion-free connection: Gamma = C/2 plus a graded-symmetric part
  /// S_{ab}^c = (-1)^{a~b~} S_{ba}^c.
  Connection torsion_free_connection(const Algebroid& A) {
    require_bracket(A);
    const BundlePtr& bundle = A.bundle;
    const std::size_t r = bundle->rank();
    Connection out(bundle);
    const Rational half(1, 2);
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = a; b < r; ++b)
        for (std::size_t c = 0; c < r; ++c) {
          SuperScalar s =
              scalar(bundle->ring, bundle->parity(a) + bundle->parity(b) + bundle->parity(c), 1);
          const int k = koszul(bundle->parity(a), bundle->parity(b));
          if (a == b && k < 0) {
            // odd diagonal: symmetric part must satisfy S = -S, hence zero
            s = SuperScalar::zero(bundle->ring);
          }
          out.G(a, b, c) += s;
          if (a != b) out.G(b, a, c) += (k < 0) ? -s : s;
        }
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < r; ++b)
        for (std::size_t c = 0; c < r; ++c) out.G(a, b, c) += half * A.C(a, b, c);
    return out;
  }

  /// Random anchored endomorphism: on a zero-anchored bundle phi may be any
  /// even matrix; otherwise phi = identity (plus nothing in the anchor's
  /// kernel, which we do not attempt to compute) and omega is free.
  ConnEndo endo(const Algebroid& A) {
    const BundlePtr& bundle = A.bundle;
    ConnEndo out = ConnEndo::identity(bundle);
    bool zero_anchor = true;
    for (const auto& d : A.anchor)
      if (!d.is_zero()) zero_anchor = false;
    if (zero_anchor) {
      const std::size_t r = bundle->rank();
      for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b)
          out.phi_at(a, b) =
              out.phi_at(a, b) + scalar(bundle->ring, bundle->parity(a) + bundle->parity(b), 1);
    }
    out.omega = tensor12(bundle);
    return out;
  }

 private:
  std::uint64_t random_odd_mask(std::size_t m, Parity p) {
    if (m == 0) return 0;
    // choose 0 or 2 odd factors for even parity, 1 for odd parity
    if (is_odd(p)) {
      return std::uint64_t{1} << small_int(0, static_cast<int>(m) - 1);
    }
    if (m < 2 || small_int(0, 1) == 0) return 0;
    int j1 = small_int(0, static_cast<int>(m) - 1);
    int j2 = small_int(0, static_cast<int>(m) - 1);
    if (j1 == j2) return 0;
    return (std::uint64_t{1} << j1) | (std::uint64_t{1} << j2);
  }

  std::uint64_t seed_;
  std::mt19937_64 gen_;
};

}  // namespace heapconn
