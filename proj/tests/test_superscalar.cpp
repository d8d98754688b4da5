#include <catch2/catch_amalgamated.hpp>

#include "heapconn/derivation.hpp"
#include "heapconn/dsl.hpp"
#include "heapconn/random.hpp"
#include "heapconn/superscalar.hpp"

using namespace heapconn;

namespace {

RingPtr ring_xy_tt() { return make_ring({"x", "y"}, {"th1", "th2"}); }

SuperScalar sym(const RingPtr& r, const std::string& name) {
  return SuperScalar::coordinate(r, name);
}

}  // namespace

TEST_CASE("ring signature validation") {
  CHECK_THROWS_AS(make_ring({"x", "x"}, {}), std::invalid_argument);
  CHECK_THROWS_AS(make_ring({"x"}, {"x"}), std::invalid_argument);
  auto r = ring_xy_tt();
  bool even = false;
  std::size_t idx = 99;
  REQUIRE(r->find("th2", even, idx));
  CHECK_FALSE(even);
  CHECK(idx == 1);
  REQUIRE(r->find("y", even, idx));
  CHECK(even);
  CHECK(idx == 1);
  CHECK_FALSE(r->find("z", even, idx));
}

TEST_CASE("additive group and like-term collection") {
  auto r = ring_xy_tt();
  auto x = sym(r, "x");
  CHECK((x + (-x)).is_zero());
  CHECK((x + x) == Rational(2) * x);
  CHECK((x + x - x) == x);
  auto zero = SuperScalar::zero(r);
  CHECK(x + zero == x);
  CHECK(zero.str() == "0");
}

TEST_CASE("odd generators anticommute and square to zero") {
  auto r = ring_xy_tt();
  auto t1 = sym(r, "th1");
  auto t2 = sym(r, "th2");
  CHECK(t1 * t2 == -(t2 * t1));
  CHECK((t1 * t1).is_zero());
  CHECK((t2 * t2).is_zero());
  auto x = sym(r, "x");
  CHECK(x * t1 == t1 * x);  // even-odd commute
}

TEST_CASE("nilpotent difference of squares") {
  auto r = ring_xy_tt();
  auto x = sym(r, "x");
  auto n = sym(r, "th1") * sym(r, "th2");
  CHECK((x + n) * (x - n) == x * x);
}

TEST_CASE("graded commutativity on random homogeneous scalars") {
  auto r = ring_xy_tt();
  Rng rng(7);
  for (int i = 0; i < 40; ++i) {
    Parity pa = (i % 2) ? Parity::Odd : Parity::Even;
    Parity pb = (i % 3) ? Parity::Odd : Parity::Even;
    auto a = rng.scalar(r, pa);
    auto b = rng.scalar(r, pb);
    SuperScalar rhs = b * a;
    if (koszul(pa, pb) < 0) rhs = -rhs;
    CHECK(a * b == rhs);
  }
}

TEST_CASE("associativity and distributivity on random scalars") {
  auto r = ring_xy_tt();
  Rng rng(11);
  for (int i = 0; i < 25; ++i) {
    auto a = rng.homogeneous_scalar(r) + rng.homogeneous_scalar(r);
    auto b = rng.homogeneous_scalar(r);
    auto c = rng.homogeneous_scalar(r) + rng.homogeneous_scalar(r);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a + b) * c == a * c + b * c);
  }
}

TEST_CASE("parity bookkeeping") {
  auto r = ring_xy_tt();
  auto x = sym(r, "x");
  auto t1 = sym(r, "th1");
  CHECK(x.parity() == Parity::Even);
  CHECK(t1.parity() == Parity::Odd);
  CHECK((x * t1).parity() == Parity::Odd);
  CHECK((t1 * sym(r, "th2")).parity() == Parity::Even);
  auto mixed = x + t1;
  CHECK_FALSE(mixed.is_homogeneous());
  CHECK(mixed.part(Parity::Even) == x);
  CHECK(mixed.part(Parity::Odd) == t1);
}

TEST_CASE("left partial derivatives") {
  auto r = ring_xy_tt();
  auto x = sym(r, "x");
  auto y = sym(r, "y");
  auto t1 = sym(r, "th1");
  auto t2 = sym(r, "th2");

  CHECK((x * x * y).d_even(0) == Rational(2) * (x * y));
  CHECK((x * x * y).d_even(1) == x * x);
  CHECK((t1 * t2).d_odd(0) == t2);
  // the derivative acts from the left: moving past th1 costs a sign
  CHECK((t1 * t2).d_odd(1) == -t1);
  CHECK((x * t1).d_odd(0) == x);
  CHECK(x.d_odd(0).is_zero());
  CHECK(t1.d_even(0).is_zero());
}

TEST_CASE("odd derivatives are odd derivations") {
  auto r = ring_xy_tt();
  Rng rng(13);
  for (int i = 0; i < 30; ++i) {
    Parity pf = (i % 2) ? Parity::Odd : Parity::Even;
    auto f = rng.scalar(r, pf);
    auto g = rng.homogeneous_scalar(r);
    for (std::size_t j = 0; j < 2; ++j) {
      // d(fg) = (df)g + (-1)^{f} f (dg)
      SuperScalar lhs = (f * g).d_odd(j);
      SuperScalar rhs = f.d_odd(j) * g + Rational(koszul(pf, Parity::Odd)) * (f * g.d_odd(j));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("coordinate derivations and commutators") {
  auto r = ring_xy_tt();
  auto x = sym(r, "x");
  auto y = sym(r, "y");

  Derivation dx = Derivation::coordinate(r, "x");
  Derivation dy = Derivation::coordinate(r, "y");
  Derivation d1 = Derivation::coordinate(r, "th1");

  // [x d/dy, y d/dx] = x d/dx - y d/dy
  Derivation a = x * dy;
  Derivation b = y * dx;
  Derivation expect = x * dx - y * dy;
  CHECK(commutator(a, b) == expect);

  // [d/dth1, th1 d/dx] = d/dx  (odd-odd bracket is an anticommutator)
  auto t1 = sym(r, "th1");
  CHECK(commutator(d1, t1 * dx) == dx);

  // coordinate derivations commute
  CHECK(commutator(dx, dy).is_zero());
  CHECK(commutator(d1, Derivation::coordinate(r, "th2")).is_zero());
}

TEST_CASE("derivations satisfy the graded Leibniz rule") {
  auto r = ring_xy_tt();
  Rng rng(17);
  Derivation dx = Derivation::coordinate(r, "x");
  Derivation d1 = Derivation::coordinate(r, "th1");
  auto t2 = sym(r, "th2");
  std::vector<std::pair<Derivation, Parity>> ds = {
      {dx, Parity::Even},
      {d1, Parity::Odd},
      {t2 * dx, Parity::Odd},
      {sym(r, "x") * d1 + t2 * dx, Parity::Odd},
  };
  for (int i = 0; i < 20; ++i) {
    Parity pf = (i % 2) ? Parity::Odd : Parity::Even;
    auto f = rng.scalar(r, pf);
    auto g = rng.homogeneous_scalar(r);
    for (const auto& [d, pd] : ds) {
      SuperScalar lhs = d.apply(f * g);
      SuperScalar rhs = d.apply(f) * g + Rational(koszul(pd, pf)) * (f * d.apply(g));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("canonical strings") {
  auto r = ring_xy_tt();
  auto x = sym(r, "x");
  auto y = sym(r, "y");
  auto t1 = sym(r, "th1");
  auto t2 = sym(r, "th2");

  CHECK(SuperScalar::zero(r).str() == "0");
  CHECK(SuperScalar::one(r).str() == "1");
  CHECK((x * x + x).str() == "x^2 + x");
  CHECK((-(t1 * t2)).str() == "-th1*th2");
  CHECK((Rational(3, 2) * (x * x * y * t1 * t2)).str() == "3/2*x^2*y*th1*th2");
  CHECK((x - y).str() == "x - y");
  CHECK((Rational(-1) * x).str() == "-x");
}

TEST_CASE("string round trip through the expression parser") {
  // Canonical strings are valid expressions in the model language; feed them
  // back through a minimal model and compare.
  Rng rng(23);
  auto r = ring_xy_tt();
  for (int i = 0; i < 30; ++i) {
    auto f = rng.homogeneous_scalar(r, 3) + rng.homogeneous_scalar(r, 3);
    std::string model_text =
        "ring { even: x y odd: th1 th2 }\n"
        "bundle { basis even: e1 anchor e1 -> 0 }\n"
        "section s = (" + f.str() + ")*e1\n";
    ModelFile m = parse_model(model_text);
    CHECK(m.section("s").comps[0] == f);
  }
}
