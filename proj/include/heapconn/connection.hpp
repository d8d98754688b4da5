#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "heapconn/algebroid.hpp"

namespace heapconn {

/// Even (1,2)-tensor with components t_{ab}^c, evaluated with the same
/// Koszul convention as a connection:
///   t(u,v)^c = sum_{a,b} (-1)^{a~ * parity(v^b)} u^a v^b t_{ab}^c.
/// Used for torsion tensors, endomorphism shifts, and connection differences.
struct Tensor12 {
  BundlePtr bundle;
  std::vector<SuperScalar> comps;  // [a*r*r + b*r + c]

  Tensor12() = default;
  explicit Tensor12(BundlePtr b)
      : bundle(std::move(b)),
        comps(bundle->rank() * bundle->rank() * bundle->rank(), SuperScalar::zero(bundle->ring)) {}

  const SuperScalar& at(std::size_t a, std::size_t b, std::size_t c) const {
    const std::size_t r = bundle->rank();
    return comps[(a * r + b) * r + c];
  }
  SuperScalar& at(std::size_t a, std::size_t b, std::size_t c) {
    const std::size_t r = bundle->rank();
    return comps[(a * r + b) * r + c];
  }

  bool is_zero() const {
    for (const auto& c : comps)
      if (!c.is_zero()) return false;
    return true;
  }

  friend Tensor12 operator+(const Tensor12& a, const Tensor12& b) {
    require_same_bundle(a.bundle, b.bundle);
    Tensor12 out(a.bundle);
    for (std::size_t i = 0; i < out.comps.size(); ++i) out.comps[i] = a.comps[i] + b.comps[i];
    return out;
  }
  friend Tensor12 operator-(const Tensor12& a) {
    Tensor12 out(a.bundle);
    for (std::size_t i = 0; i < out.comps.size(); ++i) out.comps[i] = -a.comps[i];
    return out;
  }
  friend Tensor12 operator-(const Tensor12& a, const Tensor12& b) { return a + (-b); }
  friend bool operator==(const Tensor12& a, const Tensor12& b) {
    return same_bundle(a.bundle, b.bundle) && a.comps == b.comps;
  }
};

/// t(u,v) by component contraction; v is split into homogeneous parts
/// because the contraction sign depends on the parity of v^b.
inline Section contract12(const Tensor12& t, const Section& u, const Section& v) {
  require_same_bundle(t.bundle, u.bundle);
  require_same_bundle(t.bundle, v.bundle);
  const std::size_t r = t.bundle->rank();
  Section out(t.bundle);
  for (std::size_t a = 0; a < r; ++a) {
    if (u.comps[a].is_zero()) continue;
    const bool a_odd = is_odd(t.bundle->parity(a));
    for (std::size_t b = 0; b < r; ++b) {
      if (v.comps[b].is_zero()) continue;
      for (Parity pvb : {Parity::Even, Parity::Odd}) {
        SuperScalar vb = v.comps[b].part(pvb);
        if (vb.is_zero()) continue;
        SuperScalar coef = u.comps[a] * vb;
        if (a_odd && is_odd(pvb)) coef = -coef;
        for (std::size_t c = 0; c < r; ++c) {
          if (t.at(a, b, c).is_zero()) continue;
          out.comps[c] += coef * t.at(a, b, c);
        }
      }
    }
  }
  return out;
}

using TensorT = Tensor12;

/// Curvature-type tensor R_{abc}^d, meaning R(e_a,e_b)e_c = sum_d R_{abc}^d e_d.
struct TensorR {
  BundlePtr bundle;
  std::vector<SuperScalar> comps;  // [((a*r + b)*r + c)*r + d]

  TensorR() = default;
  explicit TensorR(BundlePtr b)
      : bundle(std::move(b)),
        comps(bundle->rank() * bundle->rank() * bundle->rank() * bundle->rank(),
              SuperScalar::zero(bundle->ring)) {}

  const SuperScalar& at(std::size_t a, std::size_t b, std::size_t c, std::size_t d) const {
    const std::size_t r = bundle->rank();
    return comps[(((a * r) + b) * r + c) * r + d];
  }
  SuperScalar& at(std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
    const std::size_t r = bundle->rank();
    return comps[(((a * r) + b) * r + c) * r + d];
  }

  bool is_zero() const {
    for (const auto& c : comps)
      if (!c.is_zero()) return false;
    return true;
  }

  friend TensorR operator+(const TensorR& a, const TensorR& b) {
    require_same_bundle(a.bundle, b.bundle);
    TensorR out(a.bundle);
    for (std::size_t i = 0; i < out.comps.size(); ++i) out.comps[i] = a.comps[i] + b.comps[i];
    return out;
  }
  friend TensorR operator-(const TensorR& a) {
    TensorR out(a.bundle);
    for (std::size_t i = 0; i < out.comps.size(); ++i) out.comps[i] = -a.comps[i];
    return out;
  }
  friend TensorR operator-(const TensorR& a, const TensorR& b) { return a + (-b); }
  friend bool operator==(const TensorR& a, const TensorR& b) {
    return same_bundle(a.bundle, b.bundle) && a.comps == b.comps;
  }
};

/// Linear connection in Christoffel form: nabla_{e_a} e_b = sum_c G_{ab}^c e_c,
/// with parity(G_{ab}^c) = a~ + b~ + c~.
struct Connection {
  BundlePtr bundle;
  std::vector<SuperScalar> gamma;  // [a*r*r + b*r + c]

  Connection() = default;
  explicit Connection(BundlePtr b)
      : bundle(std::move(b)),
        gamma(bundle->rank() * bundle->rank() * bundle->rank(), SuperScalar::zero(bundle->ring)) {}

  static Connection zero(BundlePtr b) { return Connection(std::move(b)); }

  const SuperScalar& G(std::size_t a, std::size_t b, std::size_t c) const {
    const std::size_t r = bundle->rank();
    return gamma[(a * r + b) * r + c];
  }
  SuperScalar& G(std::size_t a, std::size_t b, std::size_t c) {
    const std::size_t r = bundle->rank();
    return gamma[(a * r + b) * r + c];
  }

  /// Evenness of the connection: every Christoffel entry has parity a~+b~+c~.
  bool parity_valid() const {
    const std::size_t r = bundle->rank();
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < r; ++b)
        for (std::size_t c = 0; c < r; ++c) {
          Parity want = bundle->parity(a) + bundle->parity(b) + bundle->parity(c);
          if (!G(a, b, c).is_homogeneous(want)) return false;
        }
    return true;
  }

  friend bool operator==(const Connection& a, const Connection& b) {
    return same_bundle(a.bundle, b.bundle) && a.gamma == b.gamma;
  }
};

/// Covariant derivative nabla_u v, derived from the connection axioms and
/// the left-coefficient convention:
///   (nabla_u v)^c = sum_a u^a rho_a(v^c)
///                 + sum_{a,b} (-1)^{a~ * parity(v^b)} u^a v^b G_{ab}^c.
inline Section nabla(const Algebroid& A, const Connection& C, const Section& u,
                     const Section& v) {
  require_same_bundle(A.bundle, C.bundle);
  require_same_bundle(A.bundle, u.bundle);
  require_same_bundle(A.bundle, v.bundle);
  const std::size_t r = A.bundle->rank();
  Section out(A.bundle);
  for (std::size_t c = 0; c < r; ++c) {
    SuperScalar acc = SuperScalar::zero(A.bundle->ring);
    for (std::size_t a = 0; a < r; ++a) {
      if (u.comps[a].is_zero()) continue;
      acc += u.comps[a] * A.anchor[a].apply(v.comps[c]);
    }
    out.comps[c] = acc;
  }
  Tensor12 g(A.bundle);
  g.comps = C.gamma;
  return out + contract12(g, u, v);
}

/// Ternary heap operation on connections: Gamma^(1) - Gamma^(2) + Gamma^(3).
inline Connection heap(const Connection& c1, const Connection& c2, const Connection& c3) {
  require_same_bundle(c1.bundle, c2.bundle);
  require_same_bundle(c1.bundle, c3.bundle);
  Connection out(c1.bundle);
  for (std::size_t i = 0; i < out.gamma.size(); ++i)
    out.gamma[i] = c1.gamma[i] - c2.gamma[i] + c3.gamma[i];
  return out;
}

/// Abelian group product with identity c0: [c1, c0, c2].
inline Connection group_product(const Connection& c0, const Connection& c1,
                                const Connection& c2) {
  return heap(c1, c0, c2);
}

/// Group inverse with identity c0: [c0, c, c0].
inline Connection group_inverse(const Connection& c0, const Connection& c) {
  return heap(c0, c, c0);
}

/// Difference tensor Gamma - Gamma0; heap(c, c0, c0) = c0 + difference = c.
inline Tensor12 decompose_against(const Connection& c, const Connection& c0) {
  require_same_bundle(c.bundle, c0.bundle);
  Tensor12 out(c.bundle);
  for (std::size_t i = 0; i < out.comps.size(); ++i) out.comps[i] = c.gamma[i] - c0.gamma[i];
  return out;
}

inline Connection add_tensor(const Connection& c0, const Tensor12& t) {
  require_same_bundle(c0.bundle, t.bundle);
  Connection out(c0.bundle);
  for (std::size_t i = 0; i < out.gamma.size(); ++i) out.gamma[i] = c0.gamma[i] + t.comps[i];
  return out;
}

inline void require_bracket(const Algebroid& A) {
  if (!A.has_bracket())
    throw std::invalid_argument("operation requires Lie bracket structure functions");
}

/// Torsion components T_{ab}^c = G_{ab}^c - (-1)^{a~b~} G_{ba}^c - C_{ab}^c.
inline TensorT torsion(const Algebroid& A, const Connection& C) {
  require_same_bundle(A.bundle, C.bundle);
  require_bracket(A);
  const std::size_t r = A.bundle->rank();
  TensorT out(A.bundle);
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b) {
      const int s = koszul(A.bundle->parity(a), A.bundle->parity(b));
      for (std::size_t c = 0; c < r; ++c) {
        SuperScalar swapped = (s < 0) ? -C.G(b, a, c) : C.G(b, a, c);
        out.at(a, b, c) = C.G(a, b, c) - swapped - A.C(a, b, c);
      }
    }
  return out;
}

/// Defining formula T(u,v) = nabla_u v - (-1)^{u~v~} nabla_v u - [u,v];
/// independent of the component route, used as the tensoriality oracle.
inline Section torsion_eval(const Algebroid& A, const Connection& C, const Section& u,
                            const Section& v) {
  require_bracket(A);
  Section out(A.bundle);
  for (Parity pu : {Parity::Even, Parity::Odd}) {
    Section hu = u.part(pu);
    if (hu.is_zero()) continue;
    for (Parity pv : {Parity::Even, Parity::Odd}) {
      Section hv = v.part(pv);
      if (hv.is_zero()) continue;
      Section t = nabla(A, C, hu, hv);
      Section s = nabla(A, C, hv, hu);
      t = (koszul(pu, pv) < 0) ? t + s : t - s;
      out = out + t - bracket(A, hu, hv);
    }
  }
  return out;
}

inline bool is_torsion_free(const Algebroid& A, const Connection& C) {
  return torsion(A, C).is_zero();
}

/// R(e_a,e_b)e_c = nabla_a nabla_b e_c - (-1)^{a~b~} nabla_b nabla_a e_c
///               - nabla_{[e_a,e_b]} e_c, stored as R_{abc}^d.
inline TensorR curvature(const Algebroid& A, const Connection& C) {
  require_same_bundle(A.bundle, C.bundle);
  require_bracket(A);
  const std::size_t r = A.bundle->rank();
  TensorR out(A.bundle);
  for (std::size_t a = 0; a < r; ++a) {
    Section ea = Section::basis(A.bundle, a);
    for (std::size_t b = 0; b < r; ++b) {
      Section eb = Section::basis(A.bundle, b);
      const int s = koszul(A.bundle->parity(a), A.bundle->parity(b));
      Section uv = A.bracket_basis(a, b);
      for (std::size_t c = 0; c < r; ++c) {
        Section ec = Section::basis(A.bundle, c);
        Section first = nabla(A, C, ea, nabla(A, C, eb, ec));
        Section second = nabla(A, C, eb, nabla(A, C, ea, ec));
        Section res = (s < 0) ? first + second : first - second;
        res = res - nabla(A, C, uv, ec);
        for (std::size_t d = 0; d < r; ++d) out.at(a, b, c, d) = res.comps[d];
      }
    }
  }
  return out;
}

inline bool is_flat(const Algebroid& A, const Connection& C) {
  return curvature(A, C).is_zero();
}

/// R(u,v)w by tensor contraction, splitting each slot into homogeneous
/// parts; the Koszul sign moves coefficients past basis slots:
///   (-1)^{a~ * parity(v^b) + (a~+b~) * parity(w^c)}.
inline Section curvature_contract(const TensorR& R, const Section& u, const Section& v,
                                  const Section& w) {
  const std::size_t r = R.bundle->rank();
  Section out(R.bundle);
  for (std::size_t a = 0; a < r; ++a) {
    if (u.comps[a].is_zero()) continue;
    Parity pa = R.bundle->parity(a);
    for (std::size_t b = 0; b < r; ++b) {
      if (v.comps[b].is_zero()) continue;
      Parity pb = R.bundle->parity(b);
      for (Parity pvb : {Parity::Even, Parity::Odd}) {
        SuperScalar vb = v.comps[b].part(pvb);
        if (vb.is_zero()) continue;
        for (std::size_t c = 0; c < r; ++c) {
          if (w.comps[c].is_zero()) continue;
          for (Parity pwc : {Parity::Even, Parity::Odd}) {
            SuperScalar wc = w.comps[c].part(pwc);
            if (wc.is_zero()) continue;
            int sgn = koszul(pa, pvb) * koszul(pa + pb, pwc);
            SuperScalar coef = u.comps[a] * vb * wc;
            if (sgn < 0) coef = -coef;
            for (std::size_t d = 0; d < r; ++d) {
              if (R.at(a, b, c, d).is_zero()) continue;
              out.comps[d] += coef * R.at(a, b, c, d);
            }
          }
        }
      }
    }
  }
  return out;
}

/// Defining formula on sections, the independent route for tensoriality checks.
inline Section curvature_eval(const Algebroid& A, const Connection& C, const Section& u,
                              const Section& v, const Section& w) {
  require_bracket(A);
  Section out(A.bundle);
  for (Parity pu : {Parity::Even, Parity::Odd}) {
    Section hu = u.part(pu);
    if (hu.is_zero()) continue;
    for (Parity pv : {Parity::Even, Parity::Odd}) {
      Section hv = v.part(pv);
      if (hv.is_zero()) continue;
      Section first = nabla(A, C, hu, nabla(A, C, hv, w));
      Section second = nabla(A, C, hv, nabla(A, C, hu, w));
      Section res = (koszul(pu, pv) < 0) ? first + second : first - second;
      out = out + res - nabla(A, C, bracket(A, hu, hv), w);
    }
  }
  return out;
}

/// nabla_u u = 0, i.e. u is auto-parallel for this connection.
inline bool auto_parallel_check(const Algebroid& A, const Connection& C, const Section& u) {
  return nabla(A, C, u, u).is_zero();
}

/// Metric on the purely even tangent algebroid of a chart; the inverse is
/// user-supplied and validated exactly.
struct Metric {
  RingPtr ring;
  std::vector<SuperScalar> g;      // [i*n + j]
  std::vector<SuperScalar> g_inv;  // [i*n + j]

  Metric() = default;
  Metric(RingPtr r, std::vector<SuperScalar> gm, std::vector<SuperScalar> gi)
      : ring(std::move(r)), g(std::move(gm)), g_inv(std::move(gi)) {
    const std::size_t n = ring->even_count();
    if (ring->odd_count() != 0)
      throw std::invalid_argument("metric requires a purely even chart");
    if (g.size() != n * n || g_inv.size() != n * n)
      throw std::invalid_argument("metric has wrong dimensions");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (!(at(i, j) == at(j, i)))
          throw std::invalid_argument("metric is not symmetric");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        SuperScalar acc = SuperScalar::zero(ring);
        for (std::size_t j = 0; j < n; ++j) acc += at(i, j) * inv(j, k);
        SuperScalar want =
            (i == k) ? SuperScalar::one(ring) : SuperScalar::zero(ring);
        if (!(acc == want)) throw std::invalid_argument("g * g_inv is not the identity");
      }
  }

  std::size_t dim() const { return ring->even_count(); }
  const SuperScalar& at(std::size_t i, std::size_t j) const { return g[i * dim() + j]; }
  const SuperScalar& inv(std::size_t i, std::size_t j) const { return g_inv[i * dim() + j]; }
};

/// The algebroid must be the tangent algebroid of a purely even chart:
/// identity anchor, zero bracket, basis matching the coordinates.
inline void require_even_tangent_chart(const Algebroid& A) {
  const auto& B = *A.bundle;
  if (B.ring->odd_count() != 0)
    throw std::invalid_argument("metric operations require a purely even chart");
  if (B.rank() != B.ring->even_count())
    throw std::invalid_argument("metric operations require the tangent algebroid of the chart");
  for (std::size_t a = 0; a < B.rank(); ++a) {
    if (is_odd(B.parity(a)))
      throw std::invalid_argument("metric operations require an even basis");
    Derivation da = Derivation::coordinate(B.ring, B.ring->even_names[a]);
    if (!(A.anchor[a] == da))
      throw std::invalid_argument("metric operations require the identity anchor");
  }
  if (A.has_bracket()) {
    for (const auto& c : *A.structure)
      if (!c.is_zero())
        throw std::invalid_argument("metric operations require the coordinate (zero) bracket");
  }
}

/// d_a g(e_b, e_c) = g(nabla_a e_b, e_c) + g(e_b, nabla_a e_c), componentwise.
inline bool is_metric(const Algebroid& A, const Connection& C, const Metric& m) {
  require_even_tangent_chart(A);
  require_same_bundle(A.bundle, C.bundle);
  const std::size_t n = m.dim();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        SuperScalar lhs = m.at(b, c).d_even(a);
        SuperScalar rhs = SuperScalar::zero(m.ring);
        for (std::size_t d = 0; d < n; ++d)
          rhs += C.G(a, b, d) * m.at(d, c) + C.G(a, c, d) * m.at(b, d);
        if (!(lhs == rhs)) return false;
      }
  return true;
}

/// G_{ij}^k = 1/2 g^{kl} (d_i g_{jl} + d_j g_{il} - d_l g_{ij}).
inline Connection levi_civita(const Algebroid& A, const Metric& m) {
  require_even_tangent_chart(A);
  const std::size_t n = m.dim();
  Connection out(A.bundle);
  const Rational half(1, 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        SuperScalar acc = SuperScalar::zero(m.ring);
        for (std::size_t l = 0; l < n; ++l) {
          SuperScalar inner =
              m.at(j, l).d_even(i) + m.at(i, l).d_even(j) - m.at(i, j).d_even(l);
          acc += m.inv(k, l) * inner;
        }
        out.G(i, j, k) = half * acc;
      }
  return out;
}

}  // namespace heapconn
