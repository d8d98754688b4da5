#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "heapconn/dsl.hpp"
#include "heapconn/random.hpp"
#include "heapconn/verify.hpp"

using namespace heapconn;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ModelFile load_model(const std::string& name) {
  return parse_model(slurp(std::string(HEAPCONN_MODELS_DIR) + "/" + name));
}

}  // namespace

TEST_CASE("covariant derivative on the tangent plane") {
  ModelFile m = load_model("tangent2d.hc");
  const Algebroid& A = m.algebroid;
  auto r = m.ring;
  auto x = SuperScalar::coordinate(r, "x");
  Section e1 = Section::basis(m.bundle, 0);
  Section e2 = Section::basis(m.bundle, 1);

  const Connection& zero = m.connection("zero");
  // with vanishing Gamma, nabla is the anchor derivative of the coefficients
  CHECK(nabla(A, zero, e1, (x * x) * e2) == (Rational(2) * x) * e2);
  CHECK(nabla(A, zero, e1, e2).is_zero());

  Connection c(m.bundle);
  c.G(0, 1, 0) = x;  // Gamma[e1,e2->e1] = x
  CHECK(nabla(A, c, e1, e2) == x * e1);
  // function-linearity in the lower slot
  auto f = x * x + SuperScalar::coordinate(r, "y");
  CHECK(nabla(A, c, f * e1, e2) == f * nabla(A, c, e1, e2));
  // Leibniz in the upper slot
  CHECK(nabla(A, c, e1, f * e2) ==
        anchor_apply(A, e1).apply(f) * e2 + f * nabla(A, c, e1, e2));
}

TEST_CASE("heap and derived group structure on connections") {
  ModelFile m = load_model("tangent2d.hc");
  const Connection& a = m.connection("CA");
  const Connection& b = m.connection("CB");
  const Connection& c = m.connection("CC");

  CHECK(heap(a, b, b) == a);
  CHECK(heap(b, b, a) == a);
  CHECK(heap(a, b, c) == heap(c, b, a));
  // para-associativity, middle form
  CHECK(heap(heap(a, b, c), m.connection("zero"), a) ==
        heap(a, heap(m.connection("zero"), c, b), a));

  // group retract at base point b: unit, inverses, associativity
  const Connection& e = b;
  CHECK(group_product(e, a, e) == a);
  CHECK(group_product(e, e, a) == a);
  CHECK(group_product(e, a, group_inverse(e, a)) == e);
  CHECK(group_product(e, group_product(e, a, b), c) ==
        group_product(e, a, group_product(e, b, c)));
}

TEST_CASE("difference of connections is a tensor") {
  ModelFile m = load_model("tangent2d.hc");
  const Algebroid& A = m.algebroid;
  const Connection& a = m.connection("CA");
  const Connection& b = m.connection("CB");
  Tensor12 d = decompose_against(a, b);
  CHECK(add_tensor(b, d) == a);
  Rng rng(3);
  for (int i = 0; i < 10; ++i) {
    Section u = rng.section(m.bundle, Parity::Even);
    Section v = rng.section(m.bundle, Parity::Even);
    CHECK(nabla(A, a, u, v) - nabla(A, b, u, v) == contract12(d, u, v));
  }
}

TEST_CASE("torsion components on the tangent plane") {
  ModelFile m = load_model("tangent2d.hc");
  const Algebroid& A = m.algebroid;
  auto r = m.ring;
  auto x = SuperScalar::coordinate(r, "x");
  auto y = SuperScalar::coordinate(r, "y");

  Tensor12 T = torsion(A, m.connection("CA"));
  CHECK(T.at(0, 1, 0) == x);
  CHECK(T.at(0, 1, 1) == -y);
  CHECK(T.at(1, 0, 0) == -x);
  CHECK(T.at(1, 0, 1) == y);
  CHECK(T.at(0, 0, 0).is_zero());

  CHECK(is_torsion_free(A, m.connection("sym")));
  CHECK(is_torsion_free(A, m.connection("zero")));
  CHECK_FALSE(is_torsion_free(A, m.connection("CA")));

  // tensor components agree with the defining formula on random sections
  Rng rng(9);
  for (int i = 0; i < 15; ++i) {
    Section u = rng.section(m.bundle, Parity::Even);
    Section v = rng.section(m.bundle, Parity::Even);
    CHECK(contract12(T, u, v) == torsion_eval(A, m.connection("CA"), u, v));
  }
}

TEST_CASE("over a point the zero connection has torsion -C") {
  ModelFile m = load_model("liealg.hc");
  const Algebroid& A = m.algebroid;
  Tensor12 T = torsion(A, m.connection("zero"));
  const auto& B = *m.bundle;
  for (std::size_t a = 0; a < B.rank(); ++a)
    for (std::size_t b = 0; b < B.rank(); ++b)
      for (std::size_t c = 0; c < B.rank(); ++c)
        CHECK(T.at(a, b, c) == -A.C(a, b, c));
}

TEST_CASE("torsion equivalence classes") {
  ModelFile m = load_model("tangent2d.hc");
  const Algebroid& A = m.algebroid;
  CHECK(torsion_equivalent(A, m.connection("CA"), m.connection("CAshift")));
  CHECK_FALSE(torsion_equivalent(A, m.connection("CA"), m.connection("CB")));
  CHECK(torsion_equivalent(A, m.connection("zero"), m.connection("sym")));

  // shifting by Gamma[e1,e2->e1] += 1 changes the torsion
  Connection shifted = m.connection("CA");
  shifted.G(0, 1, 0) += SuperScalar::one(m.ring);
  CHECK_FALSE(torsion_equivalent(A, m.connection("CA"), shifted));
}

TEST_CASE("levi-civita of the flat metric vanishes") {
  ModelFile m = load_model("tangent2d.hc");
  Connection lc = levi_civita(m.algebroid, m.metric("gflat"));
  CHECK(lc == Connection(m.bundle));
  CHECK(is_metric(m.algebroid, lc, m.metric("gflat")));
}

TEST_CASE("levi-civita of a curved metric") {
  ModelFile m = load_model("tangent2d.hc");
  const Algebroid& A = m.algebroid;
  const Metric& g = m.metric("gU");
  Connection lc = levi_civita(A, g);
  auto r = m.ring;
  auto x = SuperScalar::coordinate(r, "x");

  // hand-computed Christoffel symbols for g = [[1, x], [x, 1+x^2]]
  CHECK(lc.G(0, 0, 0) == -x);
  CHECK(lc.G(0, 0, 1) == SuperScalar::one(r));
  CHECK(lc.G(0, 1, 0) == -(x * x));
  CHECK(lc.G(0, 1, 1) == x);
  CHECK(lc.G(1, 0, 0) == -(x * x));
  CHECK(lc.G(1, 0, 1) == x);
  CHECK(lc.G(1, 1, 0) == -(x * x * x) - x);
  CHECK(lc.G(1, 1, 1) == x * x);

  CHECK(is_torsion_free(A, lc));
  CHECK(is_metric(A, lc, g));
  CHECK_FALSE(is_metric(A, m.connection("CA"), g));
}

TEST_CASE("curvature agrees with the classical component formula") {
  ModelFile m = load_model("tangent2d.hc");
  const Algebroid& A = m.algebroid;
  Rng rng(21);
  for (int iter = 0; iter < 5; ++iter) {
    Connection c = rng.connection(m.bundle);
    TensorR R = curvature(A, c);
    const std::size_t n = 2;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          for (std::size_t l = 0; l < n; ++l) {
            SuperScalar expect = c.G(j, k, l).d_even(i) - c.G(i, k, l).d_even(j);
            for (std::size_t mm = 0; mm < n; ++mm)
              expect += c.G(j, k, mm) * c.G(i, mm, l) - c.G(i, k, mm) * c.G(j, mm, l);
            CHECK(R.at(i, j, k, l) == expect);
          }
  }
}

TEST_CASE("curvature tensor matches its defining formula on sections") {
  ModelFile m = load_model("odd2.hc");
  const Algebroid& A = m.algebroid;
  Rng rng(31);
  const Connection& c = m.connection("DA");
  TensorR R = curvature(A, c);
  for (int i = 0; i < 15; ++i) {
    Parity pu = (i % 2) ? Parity::Odd : Parity::Even;
    Section u = rng.section(m.bundle, pu);
    Section v = rng.section(m.bundle, Parity::Even);
    Section w = rng.homogeneous_section(m.bundle);
    CHECK(curvature_contract(R, u, v, w) == curvature_eval(A, c, u, v, w));
  }
}

TEST_CASE("auto-parallel sections") {
  ModelFile m = load_model("tangent2d.hc");
  const Algebroid& A = m.algebroid;
  Section e1 = Section::basis(m.bundle, 0);
  CHECK(auto_parallel_check(A, m.connection("zero"), e1));
  // CB has Gamma[e1,e1->e1] = x^2, so e1 is not auto-parallel for it
  CHECK_FALSE(auto_parallel_check(A, m.connection("CB"), e1));
  auto y = SuperScalar::coordinate(m.ring, "y");
  // coefficient depending only on y is still killed by nabla_{e1} for zero Gamma
  CHECK(auto_parallel_check(A, m.connection("zero"), y * e1));
}

TEST_CASE("metric constructor validates its inverse") {
  auto r = make_ring({"x", "y"}, {});
  auto one = SuperScalar::one(r);
  auto zero = SuperScalar::zero(r);
  std::vector<SuperScalar> id = {one, zero, zero, one};
  std::vector<SuperScalar> bad = {one, zero, zero, one + SuperScalar::coordinate(r, "x")};
  CHECK_NOTHROW(Metric(r, id, id));
  CHECK_THROWS_AS(Metric(r, id, bad), std::invalid_argument);
}
