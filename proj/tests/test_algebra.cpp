#include <random>

#include "doctest.h"
#include "thetak/poly.hpp"

using namespace thetak;

namespace {

RingPtr ring4() { return Ring::make_unit({"x", "y", "z", "w"}); }

QPoly rand_poly(const RingPtr& ring, std::mt19937& rng, int max_terms = 4,
                int max_exp = 2) {
  std::uniform_int_distribution<int> nt(0, max_terms);
  std::uniform_int_distribution<int> ex(0, max_exp);
  std::uniform_int_distribution<long> cf(-4, 4);
  QPoly p(ring);
  int terms = nt(rng);
  for (int t = 0; t < terms; ++t) {
    Mono m(ring->nvars());
    for (size_t v = 0; v < ring->nvars(); ++v) m[v] = ex(rng);
    long c = cf(rng);
    if (c != 0) p += QPoly::monomial(ring, m, Rational(c));
  }
  return p;
}

}  // namespace

TEST_CASE("parse basic forms") {
  auto R = ring4();
  QPoly p = QPoly::parse("x*y - z*w", R);
  CHECK(p.nterms() == 2);
  CHECK(p.is_homogeneous());
  CHECK(p.degree() == 2);

  QPoly z = QPoly::parse("0", R);
  CHECK(z.is_zero());
  CHECK(z.nterms() == 0);

  auto W = Ring::make({"x", "y", "z"}, {3, 3, 2});
  QPoly q = QPoly::parse("x^2+y^2+z^3", W);
  CHECK(q.is_homogeneous());
  CHECK(q.degree() == 6);
}

TEST_CASE("parse rational literals and signs") {
  auto R = ring4();
  CHECK(QPoly::parse("3/2*x", R) == QPoly::parse("x*3/2", R));
  CHECK(QPoly::parse("-x + x", R).is_zero());
  CHECK(QPoly::parse("x - (y - z)", R) == QPoly::parse("x - y + z", R));
  CHECK(QPoly::parse("(x+y)^2", R) == QPoly::parse("x^2 + 2*x*y + y^2", R));
}

TEST_CASE("parse errors") {
  auto R = ring4();
  CHECK_THROWS_AS(QPoly::parse("x + q", R), ParseError);
  CHECK_THROWS_AS(QPoly::parse("x +", R), ParseError);
  CHECK_THROWS_AS(QPoly::parse("x^", R), ParseError);
  CHECK_THROWS_AS(QPoly::parse("(x", R), ParseError);
  CHECK_THROWS_AS(QPoly::parse("1/x", R), ParseError);
  CHECK_THROWS_AS(QPoly::parse("y/(x-x)", R), ParseError);
}

TEST_CASE("arithmetic examples") {
  auto R = ring4();
  QPoly xy = QPoly::parse("x+y", R);
  CHECK(xy * xy == QPoly::parse("x^2+2*x*y+y^2", R));

  QPoly cubes = QPoly::parse("x^3+y^3", R);
  CHECK(cubes.derivative(0) == QPoly::parse("3*x^2", R));

  QPoly f = QPoly::parse("x*y - z*w", R);
  CHECK(f.derivative(2) == QPoly::parse("-w", R));
}

TEST_CASE("ring mismatch rejected") {
  auto R = ring4();
  auto S = Ring::make_unit({"x", "y"});
  QPoly a = QPoly::parse("x", R);
  QPoly b = QPoly::parse("y", S);
  CHECK_THROWS_AS(a + b, RingMismatch);
  CHECK_THROWS_AS(a * b, RingMismatch);
}

TEST_CASE("ring axioms on random polynomials") {
  auto R = ring4();
  std::mt19937 rng(20240811);
  for (int trial = 0; trial < 60; ++trial) {
    QPoly a = rand_poly(R, rng), b = rand_poly(R, rng), c = rand_poly(R, rng);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * b == b * a);
    CHECK(a * (b + c) == a * b + a * c);
  }
}

TEST_CASE("parse-format round trip on random polynomials") {
  auto R = ring4();
  std::mt19937 rng(77);
  for (int trial = 0; trial < 60; ++trial) {
    QPoly a = rand_poly(R, rng);
    CHECK(QPoly::parse(a.str(), R) == a);
  }
}

TEST_CASE("Leibniz rule on random polynomials") {
  auto R = ring4();
  std::mt19937 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    QPoly a = rand_poly(R, rng), b = rand_poly(R, rng);
    for (size_t v = 0; v < R->nvars(); ++v) {
      QPoly lhs = (a * b).derivative(v);
      QPoly rhs = a.derivative(v) * b + a * b.derivative(v);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("weighted degree additive on homogeneous products") {
  auto W = Ring::make({"x", "y", "z"}, {3, 3, 2});
  QPoly f = QPoly::parse("x^2+y^2+z^3", W);
  QPoly g = QPoly::parse("z", W);
  QPoly h = f * g;
  CHECK(h.is_homogeneous());
  CHECK(h.degree() == f.degree() + g.degree());
}

TEST_CASE("cyclotomic relations") {
  // p = 3: z^2 + z + 1 = 0
  Cyclotomic z3 = Cyclotomic::zeta(3);
  CHECK((z3 * z3 + z3 + Cyclotomic(1)).is_zero());
  // p = 2: z = -1
  CHECK(Cyclotomic::zeta(2) == Cyclotomic(-1));
  // p = 5: z * z^4 = 1
  Cyclotomic z5 = Cyclotomic::zeta(5);
  CHECK(z5 * Cyclotomic::zeta_pow(5, 4) == Cyclotomic(1));
  CHECK_THROWS_AS(Cyclotomic::zeta(4), ArithmeticError);
  CHECK_THROWS_AS(Cyclotomic::zeta(1), ArithmeticError);
}

TEST_CASE("cyclotomic field arithmetic") {
  Cyclotomic z = Cyclotomic::zeta(3);
  Cyclotomic a = z + Cyclotomic(2);
  CHECK(a * a.inv() == Cyclotomic(1));
  CHECK((z * z * z) == Cyclotomic(1));
  // mixing distinct primes is rejected
  CHECK_THROWS_AS(Cyclotomic::zeta(3) + Cyclotomic::zeta(5), ArithmeticError);
  // rational literals embed into any extension
  CHECK(Cyclotomic(2) * z + z == Cyclotomic(3) * z);
  // projector denominators: (1/3)*(3*z) = z
  Cyclotomic third = Cyclotomic(1) / Cyclotomic(3);
  CHECK(third * Cyclotomic(3) * z == z);
  for (int p : {2, 3, 5, 7}) {
    // sum over all p-th roots of unity vanishes except the trivial one
    Cyclotomic sum(0);
    for (int k = 0; k < p; ++k) sum += Cyclotomic::zeta_pow(p, k);
    CHECK(sum.is_zero());
  }
}

TEST_CASE("cyclotomic polynomial coefficients") {
  auto R = Ring::make_unit({"x"});
  CPoly p = to_cyclotomic(QPoly::parse("x^2 - 1", R));
  Cyclotomic z = Cyclotomic::zeta(3);
  CPoly q = CPoly::monomial(R, Mono::from_exps({1}), z);
  CPoly prod = q * q * q;  // z^3 * x^3 = x^3
  CHECK(prod == to_cyclotomic(QPoly::parse("x^3", R)));
  CHECK(p * q == q * p);
}
