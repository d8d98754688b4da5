#pragma once

#include <array>
#include <string>
#include <vector>

#include "heapconn/connection.hpp"
#include "heapconn/endo.hpp"
#include "heapconn/format.hpp"
#include "heapconn/laws.hpp"
#include "heapconn/random.hpp"

namespace heapconn {

/// Sign convention frozen for the curvature of a triple product, derived by
/// expanding curvature(heap(...)) from scratch.  Writing the heap as
/// sum_i s_i nabla^(i) with s = (+1,-1,+1), the cross terms carry s_i*s_j,
/// which equals (-1)^{i+j}; the published exponent i*j does not match the
/// expansion (it gives +1 for (i,j)=(1,2)).  The mixed commutator is graded
/// by the section parities: [X_u, Y_v] = X_u Y_v - (-1)^{u~v~} Y_v X_u.
inline constexpr const char* kCurvatureSignNote =
    "cross-term sign frozen to (-1)^(i+j) = s_i*s_j from the ternary expansion "
    "nabla = nabla1 - nabla2 + nabla3; mixed commutator graded by (-1)^(u~v~)";

inline int curvature_cross_sign(int i, int j) { return ((i + j) % 2 == 0) ? 1 : -1; }

namespace detail {

inline LawReport make_fail(const std::string& name, std::vector<std::string> witness) {
  LawReport rep{name};
  rep.passed = false;
  rep.witness = std::move(witness);
  return rep;
}

}  // namespace detail

/// Heap laws for the ternary operation on connections, checked on sampled
/// random polynomial connections (the laws are componentwise polynomial
/// identities, so each sampled tuple is verified exactly).
inline std::vector<LawReport> verify_heap_laws(const BundlePtr& bundle, Rng& rng, int iters) {
  LawReport para{"connection-heap para-associativity"};
  LawReport biunit{"connection-heap bi-unitality"};
  LawReport abelian{"connection-heap abelian-symmetry"};
  for (int it = 0; it < iters; ++it) {
    Connection a = rng.connection(bundle), b = rng.connection(bundle), c = rng.connection(bundle);
    Connection d = rng.connection(bundle), e = rng.connection(bundle);
    if (para.passed) {
      Connection lhs = heap(heap(a, b, c), d, e);
      if (!(lhs == heap(a, heap(d, c, b), e)) || !(lhs == heap(a, b, heap(c, d, e))))
        para = detail::make_fail(para.law_name, {str(a), str(b), str(c), str(d), str(e)});
    }
    if (biunit.passed && (!(heap(a, b, b) == a) || !(heap(b, b, a) == a)))
      biunit = detail::make_fail(biunit.law_name, {str(a), str(b)});
    if (abelian.passed && !(heap(a, b, c) == heap(c, b, a)))
      abelian = detail::make_fail(abelian.law_name, {str(a), str(b), str(c)});
  }
  return {para, biunit, abelian};
}

/// Abelian group laws obtained from the heap by fixing a reference connection.
inline std::vector<LawReport> verify_group_laws(const BundlePtr& bundle, Rng& rng, int iters) {
  LawReport identity{"group identity"};
  LawReport inverse{"group inverse"};
  LawReport assoc{"group associativity"};
  LawReport commut{"group commutativity"};
  for (int it = 0; it < iters; ++it) {
    Connection c0 = rng.connection(bundle);
    Connection a = rng.connection(bundle), b = rng.connection(bundle), c = rng.connection(bundle);
    if (identity.passed && (!(group_product(c0, c0, a) == a) || !(group_product(c0, a, c0) == a)))
      identity = detail::make_fail(identity.law_name, {str(c0), str(a)});
    if (inverse.passed && !(group_product(c0, a, group_inverse(c0, a)) == c0))
      inverse = detail::make_fail(inverse.law_name, {str(c0), str(a)});
    if (assoc.passed && !(group_product(c0, group_product(c0, a, b), c) ==
                          group_product(c0, a, group_product(c0, b, c))))
      assoc = detail::make_fail(assoc.law_name, {str(c0), str(a), str(b), str(c)});
    if (commut.passed && !(group_product(c0, a, b) == group_product(c0, b, a)))
      commut = detail::make_fail(commut.law_name, {str(c0), str(a), str(b)});
  }
  return {identity, inverse, assoc, commut};
}

/// The three connection axioms, verified symbolically on random homogeneous
/// data: evenness of nabla, function-linearity in the lower slot, and the
/// anchored Leibniz rule in the upper slot.
inline std::vector<LawReport> verify_nabla_axioms(const Algebroid& A, Rng& rng, int iters) {
  LawReport parity_law{"nabla parity"};
  LawReport lower{"nabla function-linearity (lower slot)"};
  LawReport leibniz{"nabla Leibniz (upper slot)"};
  const BundlePtr& bundle = A.bundle;
  for (int it = 0; it < iters; ++it) {
    Connection C = rng.connection(bundle);
    Parity pu = rng.small_int(0, 1) ? Parity::Odd : Parity::Even;
    Parity pv = rng.small_int(0, 1) ? Parity::Odd : Parity::Even;
    Parity pf = rng.small_int(0, 1) ? Parity::Odd : Parity::Even;
    Section u = rng.section(bundle, pu);
    Section v = rng.section(bundle, pv);
    SuperScalar f = rng.scalar(bundle->ring, pf);
    Section nuv = nabla(A, C, u, v);
    if (parity_law.passed && !nuv.is_homogeneous(pu + pv))
      parity_law = detail::make_fail(parity_law.law_name, {u.str(), v.str(), nuv.str()});
    if (lower.passed && !(nabla(A, C, f * u, v) == f * nuv))
      lower = detail::make_fail(lower.law_name, {f.str(), u.str(), v.str()});
    if (leibniz.passed) {
      Section lhs = nabla(A, C, u, f * v);
      Section rho_term = anchor_apply(A, u).apply(f) * v;
      Section rest = f * nuv;
      Section rhs = (koszul(pu, pf) < 0) ? rho_term - rest : rho_term + rest;
      if (!(lhs == rhs))
        leibniz = detail::make_fail(leibniz.law_name, {f.str(), u.str(), v.str()});
    }
  }
  return {parity_law, lower, leibniz};
}

/// Single-triple check of torsion(heap) = T1 - T2 + T3 plus the cyclic
/// corollary over the three cyclic rotations.
inline std::vector<LawReport> verify_torsion_heap_hom(const Algebroid& A, const Connection& c1,
                                                      const Connection& c2,
                                                      const Connection& c3) {
  LawReport hom{"torsion heap homomorphism"};
  LawReport cyclic{"torsion cyclic identity"};
  TensorT t1 = torsion(A, c1), t2 = torsion(A, c2), t3 = torsion(A, c3);
  if (!(torsion(A, heap(c1, c2, c3)) == t1 - t2 + t3))
    hom = detail::make_fail(hom.law_name, {str(c1), str(c2), str(c3)});
  TensorT lhs = torsion(A, heap(c1, c2, c3)) + torsion(A, heap(c3, c1, c2)) +
                torsion(A, heap(c2, c3, c1));
  if (!(lhs == t1 + t2 + t3))
    cyclic = detail::make_fail(cyclic.law_name, {str(c1), str(c2), str(c3)});
  return {hom, cyclic};
}

inline std::vector<LawReport> verify_torsion_hom_suite(const Algebroid& A, Rng& rng, int iters) {
  LawReport hom{"torsion heap homomorphism"};
  LawReport cyclic{"torsion cyclic identity"};
  for (int it = 0; it < iters; ++it) {
    Connection c1 = rng.connection(A.bundle);
    Connection c2 = rng.connection(A.bundle);
    Connection c3 = rng.connection(A.bundle);
    auto reports = verify_torsion_heap_hom(A, c1, c2, c3);
    if (hom.passed && !reports[0].passed) hom = reports[0];
    if (cyclic.passed && !reports[1].passed) cyclic = reports[1];
  }
  return {hom, cyclic};
}

/// Torsion and curvature are tensorial: contraction of the components agrees
/// with the defining formulas on random sections.
inline std::vector<LawReport> verify_tensoriality(const Algebroid& A, Rng& rng, int iters) {
  LawReport t_law{"torsion tensoriality"};
  LawReport t_anti{"torsion graded antisymmetry"};
  LawReport r_law{"curvature tensoriality"};
  for (int it = 0; it < iters; ++it) {
    Connection C = rng.connection(A.bundle);
    TensorT T = torsion(A, C);
    TensorR R = curvature(A, C);
    Section u = rng.homogeneous_section(A.bundle);
    Section v = rng.homogeneous_section(A.bundle);
    Section w = rng.homogeneous_section(A.bundle);
    if (t_law.passed && !(contract12(T, u, v) == torsion_eval(A, C, u, v)))
      t_law = detail::make_fail(t_law.law_name, {str(C), u.str(), v.str()});
    if (t_anti.passed) {
      const std::size_t r = A.bundle->rank();
      for (std::size_t a = 0; a < r && t_anti.passed; ++a)
        for (std::size_t b = 0; b < r && t_anti.passed; ++b)
          for (std::size_t c = 0; c < r && t_anti.passed; ++c) {
            SuperScalar swapped = (koszul(A.bundle->parity(a), A.bundle->parity(b)) < 0)
                                      ? T.at(b, a, c)
                                      : -T.at(b, a, c);
            if (!(T.at(a, b, c) == swapped))
              t_anti = detail::make_fail(t_anti.law_name, {str(C)});
          }
    }
    if (r_law.passed && !(curvature_contract(R, u, v, w) == curvature_eval(A, C, u, v, w)))
      r_law = detail::make_fail(r_law.law_name, {str(C), u.str(), v.str(), w.str()});
  }
  return {t_law, t_anti, r_law};
}

/// Torsion-free connections form an abelian subheap.
inline std::vector<LawReport> verify_tf_subheap(const Algebroid& A, Rng& rng, int iters) {
  LawReport closure{"torsion-free subheap closure"};
  for (int it = 0; it < iters && closure.passed; ++it) {
    Connection c1 = rng.torsion_free_connection(A);
    Connection c2 = rng.torsion_free_connection(A);
    Connection c3 = rng.torsion_free_connection(A);
    if (!is_torsion_free(A, c1) || !is_torsion_free(A, c2) || !is_torsion_free(A, c3))
      closure = detail::make_fail("torsion-free sample generation", {str(c1), str(c2), str(c3)});
    else if (!is_torsion_free(A, heap(c1, c2, c3)))
      closure = detail::make_fail(closure.law_name, {str(c1), str(c2), str(c3)});
  }
  return {closure};
}

/// torsion(c1) == torsion(c2); the heap-theoretic characterization says this
/// holds iff heap(c1, c2, tf) is torsion-free for a torsion-free tf.
inline bool torsion_equivalent(const Algebroid& A, const Connection& c1, const Connection& c2) {
  return torsion(A, c1) == torsion(A, c2);
}

inline std::vector<LawReport> verify_torsion_equivalence(const Algebroid& A, Rng& rng,
                                                         int iters) {
  LawReport law{"torsion equivalence via subheap relation"};
  for (int it = 0; it < iters && law.passed; ++it) {
    Connection tf = rng.torsion_free_connection(A);
    Connection c1 = rng.connection(A.bundle);
    // alternate between genuinely equivalent pairs and free pairs
    Connection c2 = (it % 2 == 0) ? rng.connection(A.bundle)
                                  : add_tensor(c1, decompose_against(rng.torsion_free_connection(A),
                                                                     rng.torsion_free_connection(A)));
    bool tensors_equal = torsion_equivalent(A, c1, c2);
    bool heap_tf = is_torsion_free(A, heap(c1, c2, tf));
    if (tensors_equal != heap_tf)
      law = detail::make_fail(law.law_name, {str(c1), str(c2), str(tf)});
  }
  return {law};
}

/// If all three connections leave u auto-parallel, so does their heap.
inline LawReport verify_autoparallel_closure(const Algebroid& A, const Section& u,
                                             const Connection& c1, const Connection& c2,
                                             const Connection& c3) {
  LawReport law{"auto-parallel closure"};
  if (!auto_parallel_check(A, c1, u) || !auto_parallel_check(A, c2, u) ||
      !auto_parallel_check(A, c3, u)) {
    law.skipped = true;
    return law;
  }
  if (!auto_parallel_check(A, heap(c1, c2, c3), u))
    law = detail::make_fail(law.law_name, {u.str(), str(c1), str(c2), str(c3)});
  return law;
}

/// Sampled closure suite: u = e_k and random connections with G_{kk}^c = 0,
/// which is exactly nabla_{e_k} e_k = 0.
inline std::vector<LawReport> verify_autoparallel_suite(const Algebroid& A, Rng& rng,
                                                        int iters) {
  LawReport law{"auto-parallel closure"};
  const std::size_t r = A.bundle->rank();
  for (int it = 0; it < iters && law.passed; ++it) {
    std::size_t k = static_cast<std::size_t>(rng.small_int(0, static_cast<int>(r) - 1));
    Section u = Section::basis(A.bundle, k);
    auto sample = [&] {
      Connection c = rng.connection(A.bundle);
      for (std::size_t cc = 0; cc < r; ++cc) c.G(k, k, cc) = SuperScalar::zero(A.bundle->ring);
      return c;
    };
    Connection c1 = sample(), c2 = sample(), c3 = sample();
    LawReport rep = verify_autoparallel_closure(A, u, c1, c2, c3);
    if (rep.skipped)
      law = detail::make_fail(law.law_name, {"sample not auto-parallel", u.str()});
    else if (!rep.passed)
      law = rep;
  }
  return {law};
}

/// Random metric connection: Levi-Civita plus K with K_{ij}^l = B_{ijm} g^{ml}
/// for B antisymmetric in its last two indices.
inline Connection random_metric_connection(const Algebroid& A, const Metric& m, Rng& rng) {
  const std::size_t n = m.dim();
  Connection out = levi_civita(A, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        SuperScalar b = rng.scalar(m.ring, Parity::Even, 1);
        // B_{ijk} = b, B_{ikj} = -b
        for (std::size_t l = 0; l < n; ++l) {
          out.G(i, j, l) += b * m.inv(k, l);
          out.G(i, k, l) -= b * m.inv(j, l);
        }
      }
  return out;
}

/// Metric connections for a fixed metric form a subheap.
inline std::vector<LawReport> verify_metric_subheap(const Algebroid& A, const Metric& m,
                                                    Rng& rng, int iters) {
  LawReport closure{"metric subheap closure"};
  for (int it = 0; it < iters && closure.passed; ++it) {
    Connection c1 = random_metric_connection(A, m, rng);
    Connection c2 = random_metric_connection(A, m, rng);
    Connection c3 = random_metric_connection(A, m, rng);
    if (!is_metric(A, c1, m) || !is_metric(A, c2, m) || !is_metric(A, c3, m))
      closure = detail::make_fail("metric sample generation", {str(c1), str(c2), str(c3)});
    else if (!is_metric(A, heap(c1, c2, c3), m))
      closure = detail::make_fail(closure.law_name, {str(c1), str(c2), str(c3)});
  }
  return {closure};
}

/// Levi-Civita is torsion-free and metric; the flat metric gives Gamma = 0;
/// decompose_against round-trips through the heap identity.
inline std::vector<LawReport> verify_levi_civita(const Algebroid& A, const Metric& m, Rng& rng) {
  std::vector<LawReport> reports;
  Connection lc = levi_civita(A, m);
  LawReport tf{"levi-civita torsion-free"};
  if (!is_torsion_free(A, lc)) tf = detail::make_fail(tf.law_name, {str(lc)});
  reports.push_back(tf);
  LawReport met{"levi-civita metric"};
  if (!is_metric(A, lc, m)) met = detail::make_fail(met.law_name, {str(lc)});
  reports.push_back(met);
  LawReport rt{"decompose round trip"};
  Connection c = rng.connection(A.bundle);
  Tensor12 diff = decompose_against(c, lc);
  if (!(add_tensor(lc, diff) == c) || !(heap(c, lc, lc) == c))
    rt = detail::make_fail(rt.law_name, {str(c), str(lc)});
  reports.push_back(rt);
  return reports;
}

/// RHS of the curvature proposition on a basis triple, with the frozen
/// conventions (see kCurvatureSignNote).
inline Section curvature_formula_rhs(const Algebroid& A, const std::array<const Connection*, 3>& C,
                                     std::size_t a, std::size_t b, std::size_t c) {
  Section ea = Section::basis(A.bundle, a);
  Section eb = Section::basis(A.bundle, b);
  Section ec = Section::basis(A.bundle, c);
  const int sab = koszul(A.bundle->parity(a), A.bundle->parity(b));

  Section rhs(A.bundle);
  for (int i = 0; i < 3; ++i) {
    TensorR Ri = curvature(A, *C[i]);
    for (std::size_t d = 0; d < A.bundle->rank(); ++d) rhs.comps[d] += Ri.at(a, b, c, d);
  }
  Section uv = A.bracket_basis(a, b);
  Section mid = nabla(A, *C[1], uv, ec);
  rhs = rhs + mid + mid;
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) {
      if (i == j) continue;
      Section first = nabla(A, *C[i - 1], ea, nabla(A, *C[j - 1], eb, ec));
      Section second = nabla(A, *C[j - 1], eb, nabla(A, *C[i - 1], ea, ec));
      Section comm = (sab < 0) ? first + second : first - second;
      rhs = (curvature_cross_sign(i, j) < 0) ? rhs - comm : rhs + comm;
    }
  return rhs;
}

/// curvature(heap(c1,c2,c3)) against the proposition's right-hand side, on
/// every basis triple, plus the degenerate consistency check c1=c2=c3.
inline std::vector<LawReport> verify_curvature_formula(const Algebroid& A, const Connection& c1,
                                                       const Connection& c2,
                                                       const Connection& c3) {
  LawReport law{"curvature of triple product"};
  LawReport degen{"curvature degenerate consistency"};
  const std::size_t r = A.bundle->rank();
  TensorR lhs = curvature(A, heap(c1, c2, c3));
  std::array<const Connection*, 3> conns{&c1, &c2, &c3};
  for (std::size_t a = 0; a < r && law.passed; ++a)
    for (std::size_t b = 0; b < r && law.passed; ++b)
      for (std::size_t c = 0; c < r && law.passed; ++c) {
        Section rhs = curvature_formula_rhs(A, conns, a, b, c);
        for (std::size_t d = 0; d < r; ++d)
          if (!(lhs.at(a, b, c, d) == rhs.comps[d])) {
            law = detail::make_fail(law.law_name,
                                    {A.bundle->basis_names[a], A.bundle->basis_names[b],
                                     A.bundle->basis_names[c], str(c1), str(c2), str(c3)});
            break;
          }
      }
  // c1 = c2 = c3 must reproduce R = 3R - 2R
  TensorR R1 = curvature(A, c1);
  std::array<const Connection*, 3> same{&c1, &c1, &c1};
  for (std::size_t a = 0; a < r && degen.passed; ++a)
    for (std::size_t b = 0; b < r && degen.passed; ++b)
      for (std::size_t c = 0; c < r && degen.passed; ++c) {
        Section rhs = curvature_formula_rhs(A, same, a, b, c);
        for (std::size_t d = 0; d < r; ++d)
          if (!(R1.at(a, b, c, d) == rhs.comps[d])) {
            degen = detail::make_fail(degen.law_name, {str(c1)});
            break;
          }
      }
  if (degen.passed && !(curvature(A, heap(c1, c1, c1)) == R1))
    degen = detail::make_fail(degen.law_name, {str(c1)});
  return {law, degen};
}

inline std::vector<LawReport> verify_curvature_suite(const Algebroid& A, Rng& rng, int iters) {
  LawReport law{"curvature of triple product"};
  LawReport degen{"curvature degenerate consistency"};
  for (int it = 0; it < iters; ++it) {
    Connection c1 = rng.connection(A.bundle);
    Connection c2 = rng.connection(A.bundle);
    Connection c3 = rng.connection(A.bundle);
    auto reports = verify_curvature_formula(A, c1, c2, c3);
    if (law.passed && !reports[0].passed) law = reports[0];
    if (degen.passed && !reports[1].passed) degen = reports[1];
  }
  return {law, degen};
}

/// Flat connections are not closed under the heap: each input must be flat
/// and the heap must have nonzero curvature.
inline std::vector<LawReport> verify_flat_nonclosure(const Algebroid& A, const Connection& c1,
                                                     const Connection& c2,
                                                     const Connection& c3) {
  LawReport flat_inputs{"flat witness inputs"};
  LawReport nonflat{"flat non-closure"};
  if (!is_flat(A, c1) || !is_flat(A, c2) || !is_flat(A, c3))
    flat_inputs = detail::make_fail(flat_inputs.law_name, {str(c1), str(c2), str(c3)});
  TensorR R = curvature(A, heap(c1, c2, c3));
  if (R.is_zero()) nonflat = detail::make_fail(nonflat.law_name, {str(heap(c1, c2, c3))});
  return {flat_inputs, nonflat};
}

/// Truss laws for End(C(A)): heap laws for endo_heap, monoid laws for
/// compose, two-sided distributivity, the evaluation law, the anchored
/// invariant of heap results, and the phi = identity shift sub-truss.
inline std::vector<LawReport> verify_truss_laws(const Algebroid& A, Rng& rng, int iters) {
  LawReport para{"endo heap para-associativity"};
  LawReport biunit{"endo heap bi-unitality"};
  LawReport abelian{"endo heap abelian-symmetry"};
  LawReport monoid{"endo compose monoid"};
  LawReport ldist{"endo left distributivity"};
  LawReport rdist{"endo right distributivity"};
  LawReport eval{"endo heap evaluation law"};
  LawReport anchored{"endo heap anchored invariant"};
  LawReport shifts{"shift sub-truss isomorphism"};
  const BundlePtr& bundle = A.bundle;
  const ConnEndo id = ConnEndo::identity(bundle);
  for (int it = 0; it < iters; ++it) {
    ConnEndo e1 = rng.endo(A), e2 = rng.endo(A), e3 = rng.endo(A);
    ConnEndo e4 = rng.endo(A), e5 = rng.endo(A);
    if (para.passed) {
      ConnEndo lhs = endo_heap(endo_heap(e1, e2, e3), e4, e5);
      if (!(lhs == endo_heap(e1, endo_heap(e4, e3, e2), e5)) ||
          !(lhs == endo_heap(e1, e2, endo_heap(e3, e4, e5))))
        para = detail::make_fail(para.law_name, {str(e1), str(e2), str(e3), str(e4), str(e5)});
    }
    if (biunit.passed && (!(endo_heap(e1, e2, e2) == e1) || !(endo_heap(e2, e2, e1) == e1)))
      biunit = detail::make_fail(biunit.law_name, {str(e1), str(e2)});
    if (abelian.passed && !(endo_heap(e1, e2, e3) == endo_heap(e3, e2, e1)))
      abelian = detail::make_fail(abelian.law_name, {str(e1), str(e2), str(e3)});
    if (monoid.passed &&
        (!(compose(compose(e1, e2), e3) == compose(e1, compose(e2, e3))) ||
         !(compose(id, e1) == e1) || !(compose(e1, id) == e1)))
      monoid = detail::make_fail(monoid.law_name, {str(e1), str(e2), str(e3)});
    if (ldist.passed && !(compose(e4, endo_heap(e1, e2, e3)) ==
                          endo_heap(compose(e4, e1), compose(e4, e2), compose(e4, e3))))
      ldist = detail::make_fail(ldist.law_name, {str(e4), str(e1), str(e2), str(e3)});
    if (rdist.passed && !(compose(endo_heap(e1, e2, e3), e4) ==
                          endo_heap(compose(e1, e4), compose(e2, e4), compose(e3, e4))))
      rdist = detail::make_fail(rdist.law_name, {str(e4), str(e1), str(e2), str(e3)});
    if (eval.passed || anchored.passed) {
      Connection c = rng.connection(bundle);
      ConnEndo h = endo_heap(e1, e2, e3);
      if (anchored.passed && !is_anchored(A, h))
        anchored = detail::make_fail(anchored.law_name, {str(e1), str(e2), str(e3)});
      if (eval.passed &&
          !(endo_apply(A, h, c) ==
            heap(endo_apply(A, e1, c), endo_apply(A, e2, c), endo_apply(A, e3, c))))
        eval = detail::make_fail(eval.law_name, {str(e1), str(e2), str(e3), str(c)});
    }
    if (shifts.passed) {
      // phi = identity: endo_heap and compose mirror the (1,2)-tensor
      // operations a - b + c and +.
      Tensor12 w1 = rng.tensor12(bundle), w2 = rng.tensor12(bundle), w3 = rng.tensor12(bundle);
      auto shift = [&](const Tensor12& w) {
        ConnEndo e = ConnEndo::identity(bundle);
        e.omega = w;
        return e;
      };
      ConnEndo h = endo_heap(shift(w1), shift(w2), shift(w3));
      ConnEndo p = compose(shift(w1), shift(w2));
      if (!(h == shift(w1 - w2 + w3)) || !(p == shift(w1 + w2)))
        shifts = detail::make_fail(shifts.law_name,
                                   {str(w1, "omega1"), str(w2, "omega2"), str(w3, "omega3")});
    }
  }
  return {para, biunit, abelian, monoid, ldist, rdist, eval, anchored, shifts};
}

}  // namespace heapconn
