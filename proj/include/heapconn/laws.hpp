#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace heapconn {

/// Outcome of one algebraic law check; witness holds the first failing
/// tuple (canonical strings) and is present iff the law failed.
struct LawReport {
  std::string law_name;
  bool passed = true;
  bool skipped = false;
  std::vector<std::string> witness;
};

inline bool all_passed(const std::vector<LawReport>& reports) {
  for (const auto& r : reports)
    if (!r.passed) return false;
  return true;
}

/// Finite sample of elements together with the operations under test.
/// Checks are exhaustive over tuples drawn from the sample, in index order,
/// so a failing law always reports the minimal-index witness.
template <class T>
struct LawSample {
  std::vector<T> elements;
  std::function<T(const T&, const T&, const T&)> ternary;
  std::function<bool(const T&, const T&)> eq;
  std::function<std::string(const T&)> str;
};

/// [[a,b,c],d,e] = [a,[d,c,b],e] = [a,b,[c,d,e]] over all 5-tuples.
template <class T>
LawReport check_para_associativity(const LawSample<T>& s) {
  LawReport rep{"para-associativity"};
  if (s.elements.empty()) {
    rep.passed = false;
    rep.witness = {"empty sample"};
    return rep;
  }
  const auto& el = s.elements;
  for (const T& a : el)
    for (const T& b : el)
      for (const T& c : el)
        for (const T& d : el)
          for (const T& e : el) {
            T lhs = s.ternary(s.ternary(a, b, c), d, e);
            T mid = s.ternary(a, s.ternary(d, c, b), e);
            T rhs = s.ternary(a, b, s.ternary(c, d, e));
            if (!s.eq(lhs, mid) || !s.eq(lhs, rhs)) {
              rep.passed = false;
              rep.witness = {s.str(a), s.str(b), s.str(c), s.str(d), s.str(e)};
              return rep;
            }
          }
  return rep;
}

/// [a,b,b] = a and [b,b,a] = a over all pairs.
template <class T>
LawReport check_bi_unitality(const LawSample<T>& s) {
  LawReport rep{"bi-unitality"};
  for (const T& a : s.elements)
    for (const T& b : s.elements) {
      if (!s.eq(s.ternary(a, b, b), a) || !s.eq(s.ternary(b, b, a), a)) {
        rep.passed = false;
        rep.witness = {s.str(a), s.str(b)};
        return rep;
      }
    }
  return rep;
}

/// [a,b,c] = [c,b,a] over all triples.
template <class T>
LawReport check_abelian(const LawSample<T>& s) {
  LawReport rep{"abelian-symmetry"};
  for (const T& a : s.elements)
    for (const T& b : s.elements)
      for (const T& c : s.elements) {
        if (!s.eq(s.ternary(a, b, c), s.ternary(c, b, a))) {
          rep.passed = false;
          rep.witness = {s.str(a), s.str(b), s.str(c)};
          return rep;
        }
      }
  return rep;
}

/// All heap laws (para-associativity, bi-unitality, abelian symmetry).
template <class T>
std::vector<LawReport> check_heap(const LawSample<T>& s) {
  return {check_para_associativity(s), check_bi_unitality(s), check_abelian(s)};
}

/// Heap laws plus associativity of the binary operation and two-sided
/// distributivity of the binary over the ternary operation.
template <class T>
std::vector<LawReport> check_truss(const LawSample<T>& s,
                                   const std::function<T(const T&, const T&)>& binary) {
  std::vector<LawReport> reports = check_heap(s);

  LawReport assoc{"binary-associativity"};
  for (const T& a : s.elements)
    for (const T& b : s.elements)
      for (const T& c : s.elements)
        if (!s.eq(binary(binary(a, b), c), binary(a, binary(b, c)))) {
          assoc.passed = false;
          assoc.witness = {s.str(a), s.str(b), s.str(c)};
          goto assoc_done;
        }
assoc_done:
  reports.push_back(assoc);

  LawReport ldist{"left-distributivity"};
  LawReport rdist{"right-distributivity"};
  for (const T& a : s.elements)
    for (const T& b : s.elements)
      for (const T& c : s.elements)
        for (const T& d : s.elements) {
          if (ldist.passed &&
              !s.eq(binary(a, s.ternary(b, c, d)),
                    s.ternary(binary(a, b), binary(a, c), binary(a, d)))) {
            ldist.passed = false;
            ldist.witness = {s.str(a), s.str(b), s.str(c), s.str(d)};
          }
          if (rdist.passed &&
              !s.eq(binary(s.ternary(b, c, d), a),
                    s.ternary(binary(b, a), binary(c, a), binary(d, a)))) {
            rdist.passed = false;
            rdist.witness = {s.str(b), s.str(c), s.str(d), s.str(a)};
          }
          if (!ldist.passed && !rdist.passed) goto dist_done;
        }
dist_done:
  reports.push_back(ldist);
  reports.push_back(rdist);
  return reports;
}

}  // namespace heapconn
