#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gaplab/cocycle.hpp"
#include "gaplab/ids.hpp"

using namespace gaplab;

namespace {

const double kGolden = 0.6180339887498949;

SamplingFn one() { return SamplingFn::identity(TrigPoly::constant(1, 1.0)); }
SamplingFn zero() { return SamplingFn::identity(TrigPoly::constant(1, 0.0)); }

Matrix2c unscale(const ScaledMatrix& s) {
  Matrix2c m = s.m;
  const double f = std::exp(s.log_scale);
  for (Complex& c : m.e) c *= f;
  return m;
}

}  // namespace

TEST_CASE("free cocycle matrices") {
  const auto sys = SystemSpec::rotation(kGolden);
  const PhasePoint w{{0.3}};
  const auto B3 = cocycle_matrix(3.0, sys, one(), zero(), w);
  CHECK(B3.at(0, 0) == Complex{3.0, 0.0});
  CHECK(B3.at(0, 1) == Complex{-1.0, 0.0});
  CHECK(B3.at(1, 0) == Complex{1.0, 0.0});
  CHECK(B3.at(1, 1) == Complex{0.0, 0.0});
  const auto B0 = cocycle_matrix(0.0, sys, one(), zero(), w);
  CHECK(B0.at(0, 0) == Complex{0.0, 0.0});  // rotation by pi/2
}

TEST_CASE("complex p conjugation convention") {
  const auto sys = SystemSpec::rotation(kGolden);
  const auto p = SamplingFn::identity(TrigPoly::harmonic(1, {1}));
  const PhasePoint w{{0.0}};
  const auto B = cocycle_matrix(1.0, sys, p, zero(), w);
  // entry (1,2) = -conj(p(-alpha)) = -e^{2 pi i alpha}
  const Complex expect = -std::polar(1.0, 2.0 * M_PI * kGolden);
  CHECK(std::abs(B.at(0, 1) - expect) < 1e-12);
  CHECK(B.at(1, 0) == Complex{1.0, 0.0});
}

TEST_CASE("det B = p(w) conj(p(T^-1 w))") {
  const auto sys = SystemSpec::skew_shift(kGolden);
  const auto p = SamplingFn::identity(TrigPoly::harmonic(2, {1, 1}));
  const auto q = SamplingFn::identity(TrigPoly::cosine(2, {0, 1}, 1.0));
  std::mt19937_64 rng(2);
  for (const auto& w : sample_points(sys, 9, 25)) {
    const auto B = cocycle_matrix(1.3, sys, p, q, w);
    const Complex expect = eval(p, sys, w) *
                           std::conj(eval(p, sys, iterate(sys, w, -1)));
    CHECK(std::abs(B.det() - expect) < 1e-12);
  }
}

TEST_CASE("cocycle iterate: identity, single step, dense product") {
  const auto sys = SystemSpec::rotation(kGolden);
  const PhasePoint w{{0.2}};
  const auto I = cocycle_iterate(3.0, sys, one(), zero(), w, 0);
  CHECK(I.m.at(0, 0) == Complex{1.0, 0.0});
  CHECK(I.log_scale == 0.0);

  const auto B1 = cocycle_iterate(3.0, sys, one(), zero(), w, 1);
  const auto direct = cocycle_matrix(3.0, sys, one(), zero(), w);
  for (int i = 0; i < 4; ++i) CHECK(std::abs(B1.m.e[i] - direct.e[i]) < 1e-15);

  // 5-fold product against direct multiplication.
  Matrix2c prod;
  PhasePoint cur = w;
  for (int i = 0; i < 5; ++i) {
    prod = cocycle_matrix(3.0, sys, one(), zero(), cur) * prod;
    cur = iterate(sys, cur, 1);
  }
  const auto B5 = unscale(cocycle_iterate(3.0, sys, one(), zero(), w, 5));
  for (int i = 0; i < 4; ++i)
    CHECK(std::abs(B5.e[i] - prod.e[i]) <= 1e-9 * prod.max_abs());
}

TEST_CASE("renormalization keeps long hyperbolic products finite") {
  const auto sys = SystemSpec::rotation(kGolden);
  const auto B = cocycle_iterate(3.0, sys, one(), zero(), PhasePoint{{0.1}}, 2000);
  CHECK(std::isfinite(B.m.max_abs()));
  CHECK(B.log_scale > 100.0);  // genuine growth happened
}

TEST_CASE("solution action matches the recurrence and flags zeros") {
  JacobiCoeffs c;
  c.window = {0, 4};
  c.a = {{1, 0}, {1, 0}, {0, 0}, {1, 0}, {1, 0}};
  c.b = {0, 0, 0, 0, 0};
  const auto step = solution_action(1.0, c, 0, 1.0, 0.0);
  REQUIRE(step.has_value());
  CHECK(step->first == doctest::Approx(1.0));
  CHECK(step->second == doctest::Approx(1.0));
  CHECK(!solution_action(1.0, c, 2, 1.0, 1.0).has_value());
}

TEST_CASE("solution action reproduces the Dirichlet solution") {
  const auto sys = SystemSpec::rotation(kGolden);
  const auto q = SamplingFn::identity(TrigPoly::cosine(1, {1}, 0.75));
  const auto coeffs =
      coefficients(sys, one(), q, PhasePoint{{0.4}}, Window{0, 20});
  const auto blk = build_block(coeffs, Window{0, 19});
  JacobiBlock red = gauge_reduce(blk);
  const auto sol = dirichlet_solution(red, 0.8, 1.0);
  double u_prev = 0.0, u_cur = 1.0;
  for (long long n = 0; n < 19; ++n) {
    const auto next = solution_action(0.8, coeffs, n, u_cur, u_prev);
    REQUIRE(next.has_value());
    u_prev = next->second;
    u_cur = next->first;
    CHECK(u_cur == doctest::Approx(sol.at(n + 1)).epsilon(1e-10));
  }
}

TEST_CASE("rotation number of the free operator") {
  const auto sys = SystemSpec::rotation(kGolden);
  const PhasePoint w{{0.77}};
  CHECK(rotation_number(3.0, sys, one(), zero(), w, 10000) == 0.0);
  CHECK(rotation_number(-3.0, sys, one(), zero(), w, 10000) == 1.0);
  CHECK(std::abs(rotation_number(0.0, sys, one(), zero(), w, 10000) - 0.5) <
        1e-2);
}

TEST_CASE("free dominated splitting verdicts") {
  const auto sys = SystemSpec::rotation(kGolden);
  const auto d3 = dominated_splitting_test(3.0, sys, one(), zero());
  CHECK(d3.status == DsStatus::Dominated);
  // Per-step rate approx (3+sqrt(5))/(3-sqrt(5)) ... singular ratio of B itself
  CHECK(d3.rate > 1.05);
  const auto d0 = dominated_splitting_test(0.0, sys, one(), zero());
  CHECK(d0.status == DsStatus::NotDominated);
}

TEST_CASE("ds test rejects non-invertible systems and singular p") {
  const auto dbl = SystemSpec::doubling(2);
  CHECK_THROWS_AS(dominated_splitting_test(3.0, dbl, one(), zero()),
                  NonInvertible);
  const auto sys = SystemSpec::rotation(kGolden);
  TrigPoly cosine(1, true);
  cosine.add_term({1}, {0.5, 0.0}).add_term({-1}, {0.5, 0.0});
  const auto clamped = SamplingFn::clamp_below(cosine, 0.5);
  CHECK_THROWS_AS(dominated_splitting_test(5.0, sys, clamped, zero()),
                  SingularCocycle);
}

TEST_CASE("unstable section of the free operator at E = 3") {
  const auto sys = SystemSpec::rotation(kGolden);
  const auto res = unstable_section(3.0, sys, one(), zero(), PhasePoint{{0.5}});
  // Expanding eigenvector of [[3,-1],[1,0]] is ((3+sqrt 5)/2, 1).
  const double lam = 0.5 * (3.0 + std::sqrt(5.0));
  const auto expect = ProjectivePoint::from({lam, 0.0}, {1.0, 0.0});
  CHECK(res.direction.distance(expect) < 1e-10);
  CHECK(res.residual < 1e-10);
}

TEST_CASE("stable section of the free operator is invariant") {
  const auto sys = SystemSpec::rotation(kGolden);
  const auto res = stable_section(3.0, sys, one(), zero(), PhasePoint{{0.5}});
  const double lam = 0.5 * (3.0 - std::sqrt(5.0));
  const auto expect = ProjectivePoint::from({lam, 0.0}, {1.0, 0.0});
  CHECK(res.direction.distance(expect) < 1e-10);
  CHECK(res.residual < 1e-8);
}

TEST_CASE("unstable section anchors at span(e1) after an offdiag zero") {
  const auto sys = SystemSpec::rotation(kGolden);
  TrigPoly cosine(1, true);
  cosine.add_term({1}, {0.5, 0.0}).add_term({-1}, {0.5, 0.0});
  const auto p = SamplingFn::clamp_below(cosine, 0.5);
  const auto q = zero();
  // Find a base point whose previous step has p = 0 (zero off-diagonal).
  PhasePoint anchor{{0.0}};
  bool found = false;
  for (const auto& w : sample_points(sys, 21, 64)) {
    const auto prev = iterate(sys, w, -1);
    if (eval(p, sys, prev).real() == 0.0) {
      anchor = w;
      found = true;
      break;
    }
  }
  REQUIRE(found);
  const auto res = unstable_section(10.0, sys, p, q, anchor, 40);
  CHECK(res.direction.v[1] == Complex{0.0, 0.0});
  CHECK(std::abs(res.direction.v[0]) == doctest::Approx(1.0));
}

TEST_CASE("shifted cocycle variant works on the doubling map") {
  const auto dbl = SystemSpec::doubling(2);
  const auto q = SamplingFn::identity(TrigPoly::cosine(1, {1}, 1.0));
  const PhasePoint w{{0.3}};
  const auto B = cocycle_matrix(4.0, dbl, one(), q, w, true);
  const PhasePoint next = iterate(dbl, w, 1);
  const Complex expect_q = eval(q, dbl, next);
  CHECK(std::abs(B.at(0, 0) - (Complex{4.0, 0.0} - expect_q)) < 1e-12);
  CHECK(B.at(0, 1) == Complex{-1.0, 0.0});
  const auto prod = cocycle_iterate(4.0, dbl, one(), q, w, 100, true);
  CHECK(std::isfinite(prod.m.max_abs()));
  CHECK_THROWS_AS(cocycle_matrix(4.0, dbl, one(), q, w, false), NonInvertible);
}
