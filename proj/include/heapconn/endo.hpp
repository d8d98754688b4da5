#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "heapconn/connection.hpp"

namespace heapconn {

/// Endomorphism of the set of connections: a pair (phi, omega) acting by
/// (Phi nabla)_u v = nabla_{phi(u)} v + omega(u, v).
/// phi is an even bundle map phi(e_a) = sum_b phi_a^b e_b preserving the
/// anchor; omega is an even (1,2)-tensor.  Equality is pair equality; two
/// distinct pairs may induce the same map on connections when the anchor is
/// not injective (see induce_same_map).
struct ConnEndo {
  BundlePtr bundle;
  std::vector<SuperScalar> phi;  // [a*r + b]
  Tensor12 omega;

  ConnEndo() = default;
  explicit ConnEndo(BundlePtr b)
      : bundle(std::move(b)),
        phi(bundle->rank() * bundle->rank(), SuperScalar::zero(bundle->ring)),
        omega(bundle) {}

  static ConnEndo identity(BundlePtr b) {
    ConnEndo e(std::move(b));
    for (std::size_t a = 0; a < e.bundle->rank(); ++a)
      e.phi_at(a, a) = SuperScalar::one(e.bundle->ring);
    return e;
  }

  const SuperScalar& phi_at(std::size_t a, std::size_t b) const {
    return phi[a * bundle->rank() + b];
  }
  SuperScalar& phi_at(std::size_t a, std::size_t b) { return phi[a * bundle->rank() + b]; }

  /// phi is an even bundle map: parity(phi_a^b) = a~ + b~.
  bool parity_valid() const {
    const std::size_t r = bundle->rank();
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < r; ++b)
        if (!phi_at(a, b).is_homogeneous(bundle->parity(a) + bundle->parity(b))) return false;
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < r; ++b)
        for (std::size_t c = 0; c < r; ++c) {
          Parity want = bundle->parity(a) + bundle->parity(b) + bundle->parity(c);
          if (!omega.at(a, b, c).is_homogeneous(want)) return false;
        }
    return true;
  }

  Section phi_apply(const Section& u) const {
    require_same_bundle(bundle, u.bundle);
    const std::size_t r = bundle->rank();
    Section out(bundle);
    for (std::size_t a = 0; a < r; ++a) {
      if (u.comps[a].is_zero()) continue;
      for (std::size_t b = 0; b < r; ++b) {
        if (phi_at(a, b).is_zero()) continue;
        out.comps[b] += u.comps[a] * phi_at(a, b);
      }
    }
    return out;
  }

  friend bool operator==(const ConnEndo& a, const ConnEndo& b) {
    return same_bundle(a.bundle, b.bundle) && a.phi == b.phi && a.omega == b.omega;
  }
};

/// rho = rho o phi: sum_b phi_a^b rho(e_b) = rho(e_a) for every a.
inline bool is_anchored(const Algebroid& A, const ConnEndo& e) {
  require_same_bundle(A.bundle, e.bundle);
  const std::size_t r = A.bundle->rank();
  for (std::size_t a = 0; a < r; ++a) {
    Derivation acc = Derivation::zero(A.bundle->ring);
    for (std::size_t b = 0; b < r; ++b)
      if (!e.phi_at(a, b).is_zero()) acc = acc + e.phi_at(a, b) * A.anchor[b];
    if (!(acc == A.anchor[a])) return false;
  }
  return true;
}

inline void require_anchored(const Algebroid& A, const ConnEndo& e) {
  if (!is_anchored(A, e))
    throw std::invalid_argument("endomorphism does not preserve the anchor");
}

/// (Phi nabla)_{e_a} e_b = nabla_{phi(e_a)} e_b + omega(e_a, e_b), so
/// G'_{ab}^c = sum_{a'} phi_a^{a'} G_{a'b}^c + omega_{ab}^c.
inline Connection endo_apply(const Algebroid& A, const ConnEndo& e, const Connection& C) {
  require_anchored(A, e);
  require_same_bundle(e.bundle, C.bundle);
  const std::size_t r = e.bundle->rank();
  Connection out(e.bundle);
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b)
      for (std::size_t c = 0; c < r; ++c) {
        SuperScalar acc = e.omega.at(a, b, c);
        for (std::size_t ap = 0; ap < r; ++ap) {
          if (e.phi_at(a, ap).is_zero() || C.G(ap, b, c).is_zero()) continue;
          acc += e.phi_at(a, ap) * C.G(ap, b, c);
        }
        out.G(a, b, c) = acc;
      }
  return out;
}

/// Composition (phi o phi', omega + omega'); applying Phi o Phi' means
/// phi(phi'(u)), so (phi o phi')_a^c = sum_b phi'_a^b phi_b^c.
inline ConnEndo compose(const ConnEndo& e1, const ConnEndo& e2) {
  require_same_bundle(e1.bundle, e2.bundle);
  const std::size_t r = e1.bundle->rank();
  ConnEndo out(e1.bundle);
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t c = 0; c < r; ++c) {
      SuperScalar acc = SuperScalar::zero(e1.bundle->ring);
      for (std::size_t b = 0; b < r; ++b) acc += e2.phi_at(a, b) * e1.phi_at(b, c);
      out.phi_at(a, c) = acc;
    }
  out.omega = e1.omega + e2.omega;
  return out;
}

/// Componentwise ternary operation (phi1 - phi2 + phi3, omega1 - omega2 + omega3).
inline ConnEndo endo_heap(const ConnEndo& e1, const ConnEndo& e2, const ConnEndo& e3) {
  require_same_bundle(e1.bundle, e2.bundle);
  require_same_bundle(e1.bundle, e3.bundle);
  ConnEndo out(e1.bundle);
  for (std::size_t i = 0; i < out.phi.size(); ++i)
    out.phi[i] = e1.phi[i] - e2.phi[i] + e3.phi[i];
  out.omega = e1.omega - e2.omega + e3.omega;
  return out;
}

/// The truss composition adds omega' unchanged rather than composing the
/// induced maps; this diagnostic reports the discrepancy tensor
/// omega'(phi(u), v) - omega'(u, v) that literal map composition would add.
inline Tensor12 compose_discrepancy(const ConnEndo& e, const ConnEndo& eprime) {
  require_same_bundle(e.bundle, eprime.bundle);
  const std::size_t r = e.bundle->rank();
  Tensor12 out(e.bundle);
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b)
      for (std::size_t c = 0; c < r; ++c) {
        SuperScalar acc = -eprime.omega.at(a, b, c);
        for (std::size_t ap = 0; ap < r; ++ap) {
          if (e.phi_at(a, ap).is_zero()) continue;
          acc += e.phi_at(a, ap) * eprime.omega.at(ap, b, c);
        }
        out.at(a, b, c) = acc;
      }
  return out;
}

/// Map-equality diagnostic: whether two endomorphisms act identically on the
/// supplied sample connections.
inline bool induce_same_map(const Algebroid& A, const ConnEndo& e1, const ConnEndo& e2,
                            const std::vector<Connection>& samples) {
  for (const auto& c : samples)
    if (!(endo_apply(A, e1, c) == endo_apply(A, e2, c))) return false;
  return true;
}

/// Optional standalone check: phi[u,v] = [phi(u), phi(v)] on basis pairs.
inline bool preserves_bracket(const Algebroid& A, const ConnEndo& e) {
  require_bracket(A);
  const std::size_t r = A.bundle->rank();
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b) {
      Section lhs = e.phi_apply(A.bracket_basis(a, b));
      Section rhs = bracket(A, e.phi_apply(Section::basis(A.bundle, a)),
                            e.phi_apply(Section::basis(A.bundle, b)));
      if (!(lhs == rhs)) return false;
    }
  return true;
}

}  // namespace heapconn
