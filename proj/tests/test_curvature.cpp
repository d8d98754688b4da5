#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "heapconn/dsl.hpp"
#include "heapconn/verify.hpp"

using namespace heapconn;

namespace {

ModelFile load_model(const std::string& name) {
  std::ifstream in(std::string(HEAPCONN_MODELS_DIR) + "/" + name);
  REQUIRE(in.good());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str());
}

}  // namespace

TEST_CASE("zero connection over a point is flat") {
  ModelFile m = load_model("zerorank2.hc");
  CHECK(is_flat(m.algebroid, m.connection("C0")));
  CHECK(is_flat(m.algebroid, m.connection("CX")));
  CHECK(is_flat(m.algebroid, m.connection("CY")));
}

TEST_CASE("flat connections are not closed under the heap") {
  ModelFile m = load_model("zerorank2.hc");
  const Algebroid& A = m.algebroid;
  Connection h = heap(m.connection("CX"), m.connection("C0"), m.connection("CY"));
  CHECK_FALSE(is_flat(A, h));
  // the witness value: R(e1, e2)e1 = e1
  TensorR R = curvature(A, h);
  CHECK(R.at(0, 1, 0, 0) == SuperScalar::one(m.ring));
  auto reports = verify_flat_nonclosure(A, m.connection("CX"), m.connection("C0"),
                                        m.connection("CY"));
  CHECK(all_passed(reports));
}

TEST_CASE("nilpotent commuting connections have zero curvature") {
  // Gamma matrices N_1 = [[0,1],[0,0]] for both frame directions: all
  // products agree, anchor and bracket vanish, so R = 0.
  ModelFile m = load_model("zerorank2.hc");
  const Algebroid& A = m.algebroid;
  Connection c(m.bundle);
  auto one = SuperScalar::one(m.ring);
  c.G(0, 1, 0) = one;  // nabla_{e1} e2 = e1
  c.G(1, 1, 0) = one;  // nabla_{e2} e2 = e1
  CHECK(is_flat(A, c));
}

TEST_CASE("curvature of a triple product expands into the derived formula") {
  for (const char* name : {"tangent2d.hc", "odd2.hc", "liealg.hc"}) {
    ModelFile m = load_model(name);
    const Algebroid& A = m.algebroid;
    Rng rng(101);
    for (int i = 0; i < 6; ++i) {
      Connection c1 = rng.connection(m.bundle);
      Connection c2 = rng.connection(m.bundle);
      Connection c3 = rng.connection(m.bundle);
      auto reports = verify_curvature_formula(A, c1, c2, c3);
      INFO(name);
      CHECK(all_passed(reports));
    }
  }
}

TEST_CASE("degenerate triple gives back the plain curvature") {
  // [nabla, nabla, nabla] = nabla, so the expansion must collapse to
  // R = 3R - 2R componentwise.
  ModelFile m = load_model("tangent2d.hc");
  const Algebroid& A = m.algebroid;
  const Connection& c = m.connection("CC");
  Connection h = heap(c, c, c);
  CHECK(h == c);
  TensorR lhs = curvature(A, h);
  TensorR rhs = curvature(A, c);
  CHECK(lhs == rhs);
  const auto& B = *m.bundle;
  for (std::size_t a = 0; a < B.rank(); ++a)
    for (std::size_t b = 0; b < B.rank(); ++b)
      for (std::size_t k = 0; k < B.rank(); ++k)
        CHECK(curvature_formula_rhs(A, {&c, &c, &c}, a, b, k) ==
              [&] {
                Section out(m.bundle);
                for (std::size_t d = 0; d < B.rank(); ++d)
                  out.comps[d] = rhs.at(a, b, k, d);
                return out;
              }());
}

TEST_CASE("cross-term signs alternate with the index sum") {
  CHECK(curvature_cross_sign(1, 2) == -1);
  CHECK(curvature_cross_sign(1, 3) == 1);
  CHECK(curvature_cross_sign(2, 3) == -1);
  CHECK(curvature_cross_sign(2, 1) == -1);
}

TEST_CASE("heap of flat connections on the tangent plane can pick up curvature") {
  ModelFile m = load_model("tangent2d.hc");
  const Algebroid& A = m.algebroid;
  // both summands flat, mixed commutators nonzero
  Connection cx(m.bundle);
  cx.G(0, 1, 0) = SuperScalar::one(m.ring);
  Connection cy(m.bundle);
  cy.G(1, 0, 1) = SuperScalar::one(m.ring);
  if (is_flat(A, cx) && is_flat(A, cy)) {
    Connection h = heap(cx, m.connection("zero"), cy);
    CHECK_FALSE(is_flat(A, h));
  }
}
