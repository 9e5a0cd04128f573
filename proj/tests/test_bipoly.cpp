#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "bidisk/bipoly.hpp"
#include "bidisk/errors.hpp"
#include "bidisk/rng.hpp"
#include "test_util.hpp"

using namespace bidisk;
using testutil::ceq;
using testutil::coeff_dev;
using testutil::random_int_bipoly;
using testutil::random_int_trigpoly;

namespace {

BiPoly z1() { return BiPoly::variable(1); }
BiPoly z2() { return BiPoly::variable(2); }
BiPoly one() { return BiPoly::constant(1.0); }

}  // namespace

TEST_CASE("Point2 requires strict interior points") {
  CHECK_NOTHROW(Point2(Complex(0.99, 0.0), Complex(0.0, -0.5)));
  CHECK_THROWS_AS(Point2(Complex(1.0, 0.0), Complex(0.0, 0.0)), std::invalid_argument);
  CHECK_THROWS_AS(Point2(Complex(0.0, 0.0), Complex(0.8, 0.8)), std::invalid_argument);
}

TEST_CASE("eval matches direct arithmetic") {
  CHECK(ceq(one().eval(Complex(0.3, 0.0), Complex(0.0, -0.4)), Complex(1.0, 0.0)));

  const BiPoly half_shift = (one() + z1()) * Complex(0.5, 0.0);
  CHECK(ceq(half_shift.eval(Complex(0.5, 0.0), Complex(0.2, 0.0)), Complex(0.75, 0.0)));

  const BiPoly p = z1() * z2() + z1() * z1();
  CHECK(ceq(p.eval(Complex(0.5, 0.0), Complex(0.5, 0.0)), Complex(0.5, 0.0)));
}

TEST_CASE("arithmetic basics") {
  CHECK((z1() + z2()).coeff(1, 0) == Complex(1.0, 0.0));
  CHECK((z1() + z2()).coeff(0, 1) == Complex(1.0, 0.0));

  const BiPoly prod = (z1() - z2()) * (z1() + z2());
  CHECK(prod == z1() * z1() - z2() * z2());

  Rng rng(11);
  const BiPoly p = random_int_bipoly(rng, 4, 4);
  CHECK((p * BiPoly{}).is_zero());
}

TEST_CASE("ring axioms, exact on Gaussian-integer coefficients") {
  Rng rng(12);
  for (int t = 0; t < 25; ++t) {
    const BiPoly a = random_int_bipoly(rng, 3, 3);
    const BiPoly b = random_int_bipoly(rng, 3, 3);
    const BiPoly c = random_int_bipoly(rng, 3, 3);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK(a + b == b + a);
  }
}

TEST_CASE("canonical form never stores exact zeros") {
  Rng rng(13);
  for (int t = 0; t < 25; ++t) {
    const BiPoly a = random_int_bipoly(rng, 4, 4);
    const BiPoly diff = a - a;
    CHECK(diff.is_zero());
    const BiPoly sq = a * a;
    for (const auto& [k, c] : sq.terms()) CHECK(c != Complex(0.0, 0.0));
  }
}

TEST_CASE("compose expands through the pair with a box cap") {
  // p = z1 z2, B = ((1+z1)/2, z2) -> (z2 + z1 z2)/2
  const BiPoly phi = (one() + z1()) * Complex(0.5, 0.0);
  const BiPoly r = compose(z1() * z2(), phi, z2(), 4);
  CHECK(coeff_dev(r, (z2() + z1() * z2()) * Complex(0.5, 0.0)) == 0.0);

  // monomial substitution through (z1, z1)
  for (int i = 0; i <= 3; ++i) {
    for (int j = 0; j <= 3; ++j) {
      const BiPoly m = compose(BiPoly::monomial(i, j), z1(), z1(), 10);
      CHECK(m == BiPoly::monomial(i + j, 0));
    }
  }

  // p = z1^2, B = ((1+z1)/2, 0), cap 2 -> 1/4 + z1/2 + z1^2/4
  const BiPoly sq = compose(z1() * z1(), phi, BiPoly{}, 2);
  BiPoly expect;
  expect.add_term(0, 0, 0.25);
  expect.add_term(1, 0, 0.5);
  expect.add_term(2, 0, 0.25);
  CHECK(coeff_dev(sq, expect) == 0.0);
}

TEST_CASE("compose truncation drops only out-of-box monomials") {
  // cap 1 keeps the box part of ((1+z1)/2)^2 exactly
  const BiPoly phi = (one() + z1()) * Complex(0.5, 0.0);
  const BiPoly r = compose(z1() * z1(), phi, BiPoly{}, 1);
  BiPoly expect;
  expect.add_term(0, 0, 0.25);
  expect.add_term(1, 0, 0.5);
  CHECK(coeff_dev(r, expect) == 0.0);
}

TEST_CASE("backward shift per the projection formula") {
  CHECK(backward_shift(z1() * z2() + z1() * z1(), 1) == z2() + z1());

  const BiPoly only_z2 = z2() * z2() + z2() * Complex(3.0, 0.0);
  CHECK(backward_shift(only_z2, 1).is_zero());
}

TEST_CASE("backward-shift identity: z_j * T_j(p) + p o P_j = p") {
  Rng rng(14);
  for (int t = 0; t < 40; ++t) {
    const BiPoly p = random_int_bipoly(rng, 6, 6);
    for (int j : {1, 2}) {
      const BiPoly rebuilt = BiPoly::variable(j) * backward_shift(p, j) + project(p, j);
      CHECK(rebuilt == p);
    }
  }
}

TEST_CASE("project zeroes the chosen coordinate") {
  CHECK(project(z1() * z2() + z2() * z2(), 1) == z2() * z2());
  const BiPoly c = BiPoly::constant(Complex(2.0, -1.0));
  CHECK(project(c, 1) == c);
  CHECK(project(c, 2) == c);

  Rng rng(15);
  const BiPoly p = random_int_bipoly(rng, 5, 5);
  const BiPoly pp = project(project(p, 1), 2);
  CHECK(pp == (p.coeff(0, 0) == Complex(0.0, 0.0)
                   ? BiPoly{}
                   : BiPoly::constant(p.coeff(0, 0))));
}

TEST_CASE("divide_exact quotients and failures") {
  CHECK(divide_exact(z1() * z1() - z2() * z2(), z1() - z2()) == z1() + z2());
  CHECK(divide_exact(z1() * z2() - z1() * z1(), z1() - z2()) == -z1());
  CHECK_THROWS_AS(divide_exact(z1() * z2(), z1() - z2()), NotDivisible);
}

TEST_CASE("divide_exact round-trips against re-expansion") {
  Rng rng(16);
  const BiPoly divisors[] = {z1() - one(), z1() - z2(), z1() * z2() - one()};
  for (int t = 0; t < 30; ++t) {
    const BiPoly q = random_int_bipoly(rng, 4, 4);
    for (const BiPoly& d : divisors) {
      const BiPoly p = q * d;
      const BiPoly got = divide_exact(p, d);
      CHECK(got == q);
      CHECK(got * d == p);  // re-expansion oracle
    }
  }
}

TEST_CASE("trig conjugation and embedding") {
  const TrigPoly cz1 = conj(embed(z1()));
  CHECK(cz1.coeff(-1, 0) == Complex(1.0, 0.0));
  CHECK(cz1.terms().size() == 1);

  // |(1+z1)/2|^2 + |(1-z1)/2|^2 = 1 on the torus
  const TrigPoly tphi = embed((one() + z1()) * Complex(0.5, 0.0));
  const TrigPoly ta = embed((one() - z1()) * Complex(0.5, 0.0));
  const TrigPoly s = tphi * conj(tphi) + ta * conj(ta);
  CHECK((s - TrigPoly::constant(1.0)).max_abs_coeff() <= 1e-15);

  Rng rng(17);
  for (int t = 0; t < 20; ++t) {
    const TrigPoly r = random_int_trigpoly(rng, 3);
    const TrigPoly back = conj(conj(r));
    CHECK((back - r).max_abs_coeff() == 0.0);
  }
}

TEST_CASE("grid sup norm") {
  CHECK(sup_norm_grid(z1() + z2(), 64) == doctest::Approx(2.0).epsilon(1e-3));
  CHECK(sup_norm_grid(BiPoly::constant(Complex(-3.0, 4.0)), 8) == doctest::Approx(5.0));
  const BiPoly phi = (one() + z1()) * Complex(0.5, 0.0);
  CHECK(sup_norm_grid(phi, 64) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("grid sup norm is monotone under nested refinement") {
  Rng rng(18);
  for (int t = 0; t < 10; ++t) {
    const BiPoly p = random_int_bipoly(rng, 4, 4);
    for (int n : {4, 8, 16, 32}) {
      CHECK(sup_norm_grid(p, 2 * n) >= sup_norm_grid(p, n) - 1e-14);
    }
  }
}
