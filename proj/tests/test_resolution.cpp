#include "doctest.h"
#include "oracle.hpp"
#include "thetak/resolution.hpp"

using namespace thetak;

namespace {

RingPtr ring2() { return Ring::make_unit({"x", "y"}); }

ModulePresentation<Rational> residue_field(const RingPtr& R, RingMode mode,
                                           const QPoly& f) {
  std::vector<QPoly> vars;
  for (size_t v = 0; v < R->nvars(); ++v) vars.push_back(QPoly::variable(R, v));
  return ModulePresentation<Rational>::cyclic(R, mode, f, vars);
}

}  // namespace

TEST_CASE("ambient resolution of the residue field is the koszul complex") {
  auto R = ring2();
  auto M = residue_field(R, RingMode::ambient, QPoly::zero(R));
  auto res = resolve(M, RingMode::ambient, 6);
  CHECK(res.finite);
  CHECK(res.computed_to == 2);
  CHECK(res.rank(0) == 1);
  CHECK(res.rank(1) == 2);
  CHECK(res.rank(2) == 1);
  CHECK(res.complex.twists(2) == std::vector<long>{2});
  // H0 of the resolution presents the same module: equal Hilbert functions
  auto H0 = homology(res.complex, 0);
  for (long d = 0; d <= 8; ++d)
    CHECK(oracle::piece_dim(H0, d) == oracle::piece_dim(M, d));
}

TEST_CASE("ambient resolutions terminate by the number of variables") {
  auto R = Ring::make_unit({"x", "y", "z"});
  auto M = ModulePresentation<Rational>::cyclic(
      R, RingMode::ambient, QPoly::zero(R),
      {QPoly::parse("x*y", R), QPoly::parse("y*z", R), QPoly::parse("x*z", R)});
  auto res = resolve(M, RingMode::ambient, 12);
  CHECK(res.finite);
  CHECK(res.computed_to <= 3);
  res.complex.require_valid("resolution");
}

TEST_CASE("residue field over the node has betti numbers 1,2,2,2,...") {
  auto R = ring2();
  QPoly f = QPoly::parse("x*y", R);
  auto M = residue_field(R, RingMode::mod_f, f);
  auto res = resolve(M, RingMode::mod_f, 10);
  CHECK(!res.finite);
  CHECK(res.computed_to == 10);
  auto b = betti_table(res);
  CHECK(b.total(0) == 1);
  for (long i = 1; i <= 10; ++i) CHECK(b.total(i) == 2);
}

TEST_CASE("period detection on the node residue field") {
  auto R = ring2();
  QPoly f = QPoly::parse("x*y", R);
  auto M = residue_field(R, RingMode::mod_f, f);
  auto res = resolve(M, RingMode::mod_f, 10);
  auto period = detect_period(res);
  REQUIRE(period.outcome == PeriodOutcome::found);
  REQUIRE(period.info.has_value());
  CHECK(period.info->strength == PeriodStrength::strict);
  CHECK(period.info->start <= 2);
  // the repeating pair multiplies to f * identity on the stable range
  Mat<Rational> prod = period.info->repeat_even * period.info->repeat_odd;
  Mat<Rational> fid =
      Mat<Rational>::scalar(R, prod.rows(), f);
  CHECK(prod == fid);
}

TEST_CASE("maximal Cohen-Macaulay module is periodic from the start") {
  auto R = ring2();
  QPoly f = QPoly::parse("x*y", R);
  auto M = ModulePresentation<Rational>::cyclic(R, RingMode::mod_f, f,
                                                {QPoly::parse("x", R)});
  auto res = resolve(M, RingMode::mod_f, 8);
  auto period = detect_period(res);
  REQUIRE(period.outcome == PeriodOutcome::found);
  CHECK(period.info->start == 1);
  auto b = betti_table(res);
  for (long i = 0; i <= 8; ++i) CHECK(b.total(i) == 1);
}

TEST_CASE("free modules resolve to themselves") {
  auto R = ring2();
  QPoly f = QPoly::parse("x*y", R);
  auto M = ModulePresentation<Rational>::free_module(R, RingMode::mod_f, f, {0});
  auto res = resolve(M, RingMode::mod_f, 8);
  CHECK(res.finite);
  CHECK(res.computed_to == 0);
  CHECK(res.rank(0) == 1);
  CHECK(detect_period(res).outcome == PeriodOutcome::not_periodic);
}

TEST_CASE("finite ambient resolutions are not periodic") {
  auto R = ring2();
  auto M = residue_field(R, RingMode::ambient, QPoly::zero(R));
  auto res = resolve(M, RingMode::ambient, 8);
  CHECK(detect_period(res).outcome == PeriodOutcome::not_periodic);
}

TEST_CASE("insufficient window is distinguished from aperiodicity") {
  auto R = ring2();
  QPoly f = QPoly::parse("x*y", R);
  auto M = residue_field(R, RingMode::mod_f, f);
  auto res = resolve(M, RingMode::mod_f, 3);
  CHECK(detect_period(res, 4).outcome == PeriodOutcome::insufficient_length);
}

TEST_CASE("direct sum doubles betti numbers") {
  auto R = ring2();
  QPoly f = QPoly::parse("x*y", R);
  // k (+) k presented as a rank-2 cokernel
  ModulePresentation<Rational> M2;
  M2.ring = R;
  M2.mode = RingMode::mod_f;
  M2.f = f;
  M2.twists = {0, 0};
  M2.relations = Mat<Rational>(R, 2, 4);
  M2.relations.at(0, 0) = QPoly::parse("x", R);
  M2.relations.at(0, 1) = QPoly::parse("y", R);
  M2.relations.at(1, 2) = QPoly::parse("x", R);
  M2.relations.at(1, 3) = QPoly::parse("y", R);
  auto res2 = resolve(M2, RingMode::mod_f, 6);
  auto M1 = residue_field(R, RingMode::mod_f, f);
  auto res1 = resolve(M1, RingMode::mod_f, 6);
  auto b1 = betti_table(res1);
  auto b2 = betti_table(res2);
  for (long i = 0; i <= 6; ++i) CHECK(b2.total(i) == 2 * b1.total(i));
}

TEST_CASE("graded betti refinement matches the dense oracle on a syzygy") {
  // resolution of Q/(x^2, xy) over the ambient ring: 0 -> Q(-3) -> Q(-2)^2 -> Q
  auto R = ring2();
  auto M = ModulePresentation<Rational>::cyclic(
      R, RingMode::ambient, QPoly::zero(R),
      {QPoly::parse("x^2", R), QPoly::parse("x*y", R)});
  auto res = resolve(M, RingMode::ambient, 6);
  CHECK(res.finite);
  auto b = betti_table(res);
  CHECK(b.entries.at({0, 0}) == 1);
  CHECK(b.entries.at({1, 2}) == 2);
  CHECK(b.entries.at({2, 3}) == 1);
  CHECK(b.entries.size() == 3);
}

TEST_CASE("resolving the zero module yields the zero complex") {
  auto R = ring2();
  ModulePresentation<Rational> Z;
  Z.ring = R;
  Z.mode = RingMode::ambient;
  Z.f = QPoly::zero(R);
  Z.twists = {0};
  Z.relations = Mat<Rational>::identity(R, 1);
  auto res = resolve(Z, RingMode::ambient, 4);
  CHECK(res.complex.is_zero());
  CHECK(res.finite);
}

TEST_CASE("non-homogeneous input is rejected") {
  auto R = ring2();
  auto M = ModulePresentation<Rational>::cyclic(R, RingMode::ambient, QPoly::zero(R),
                                                {QPoly::parse("x + x^2", R)});
  CHECK_THROWS_AS(resolve(M, RingMode::ambient, 4), HomogeneityError);
}
