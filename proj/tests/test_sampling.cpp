#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gaplab/sampling.hpp"

using namespace gaplab;

namespace {
const double kGolden = 0.6180339887498949;
}

TEST_CASE("cosine evaluation") {
  const auto q = SamplingFn::identity(TrigPoly::cosine(1, {1}, 1.0));
  const auto sys = SystemSpec::rotation(kGolden);
  CHECK(eval(q, sys, PhasePoint{{0.0}}).real() == doctest::Approx(2.0));
  CHECK(eval(q, sys, PhasePoint{{0.0}}).imag() == 0.0);
}

TEST_CASE("harmonic evaluation at quarter turn") {
  const auto p = SamplingFn::identity(TrigPoly::harmonic(1, {1}));
  const auto sys = SystemSpec::rotation(kGolden);
  const Complex v = eval(p, sys, PhasePoint{{0.25}});
  CHECK(v.real() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(v.imag() == doctest::Approx(1.0));
}

TEST_CASE("clamp below cuts negative part to exact zero") {
  TrigPoly cosine(1, true);
  cosine.add_term({1}, {0.5, 0.0}).add_term({-1}, {0.5, 0.0});  // cos(2 pi w)
  const auto f = SamplingFn::clamp_below(cosine, 0.5);
  const auto sys = SystemSpec::rotation(kGolden);
  CHECK(eval(f, sys, PhasePoint{{0.5}}).real() == 0.0);
  CHECK(eval(f, sys, PhasePoint{{0.0}}).real() == doctest::Approx(0.5));
}

TEST_CASE("coefficients along a golden rotation orbit") {
  const auto sys = SystemSpec::rotation(kGolden);
  const auto p = SamplingFn::identity(TrigPoly::constant(1, 1.0));
  const auto q = SamplingFn::identity(TrigPoly::cosine(1, {1}, 1.0));
  const auto c = coefficients(sys, p, q, PhasePoint{{0.0}}, Window{0, 2});
  CHECK(c.a_at(0).real() == doctest::Approx(1.0));
  CHECK(c.b_at(0) == doctest::Approx(2.0));
  CHECK(c.b_at(1) == doctest::Approx(2.0 * std::cos(2 * M_PI * kGolden)));
  CHECK(c.b_at(2) == doctest::Approx(2.0 * std::cos(4 * M_PI * kGolden)));
}

TEST_CASE("negative window start rejected on the doubling map") {
  const auto sys = SystemSpec::doubling(2);
  const auto p = SamplingFn::identity(TrigPoly::constant(1, 1.0));
  const auto q = SamplingFn::identity(TrigPoly::constant(1, 0.0));
  CHECK_THROWS_AS(coefficients(sys, p, q, PhasePoint{{0.3}}, Window{-1, 5}),
                  NonInvertible);
}

TEST_CASE("solenoid lift reproduces doubling coefficients exactly") {
  const auto sol = SystemSpec::solenoid(0.25);
  const auto dbl = SystemSpec::doubling(2);
  const auto p = SamplingFn::identity(TrigPoly::cosine(1, {1}, 0.5));
  const auto q = SamplingFn::identity(TrigPoly::cosine(1, {2}, 1.0));
  const auto base = sample_points(sol, 11, 4);
  for (const auto& pt : base) {
    const auto cs = coefficients(sol, p, q, pt, Window{0, 50});
    const auto cd =
        coefficients(dbl, p, q, PhasePoint{{pt.torus[0]}}, Window{0, 50});
    for (long long n = 0; n <= 50; ++n) {
      CHECK(cs.a_at(n) == cd.a_at(n));
      CHECK(cs.b_at(n) == cd.b_at(n));
    }
  }
}

TEST_CASE("shift covariance") {
  const auto sys = SystemSpec::skew_shift(kGolden);
  const auto p = SamplingFn::identity(TrigPoly::harmonic(2, {1, 0}));
  const auto q = SamplingFn::identity(TrigPoly::cosine(2, {0, 1}, 1.0));
  const PhasePoint w{{0.1, 0.9}};
  const auto shifted = coefficients(sys, p, q, iterate(sys, w, 1), Window{0, 20});
  const auto moved = coefficients(sys, p, q, w, Window{1, 21});
  for (long long n = 0; n <= 20; ++n) {
    CHECK(std::abs(shifted.a_at(n) - moved.a_at(n + 1)) < 1e-12);
    CHECK(std::abs(shifted.b_at(n) - moved.b_at(n + 1)) < 1e-12);
  }
}

TEST_CASE("modulus gauge pair") {
  const auto sys = SystemSpec::rotation(kGolden);
  const auto p = SamplingFn::identity(TrigPoly::harmonic(1, {1}));
  const auto pabs = SamplingFn::modulus(TrigPoly::harmonic(1, {1}));
  const auto q = SamplingFn::identity(TrigPoly::constant(1, 0.0));
  const PhasePoint w{{0.37}};
  const auto c = coefficients(sys, p, q, w, Window{0, 30});
  const auto cabs = coefficients(sys, pabs, q, w, Window{0, 30});
  for (long long n = 0; n <= 30; ++n)
    CHECK(cabs.a_at(n).real() == std::abs(c.a_at(n)));
}

TEST_CASE("clamp output nonnegative and zero on an interval") {
  TrigPoly cosine(1, true);
  cosine.add_term({1}, {0.5, 0.0}).add_term({-1}, {0.5, 0.0});
  const auto f = SamplingFn::clamp_below(cosine, 0.2);
  const auto sys = SystemSpec::rotation(kGolden);
  int zeros = 0;
  for (int i = 0; i < 1000; ++i) {
    const double w = i / 1000.0;
    const double v = eval(f, sys, PhasePoint{{w}}).real();
    CHECK(v >= 0.0);
    if (v == 0.0) ++zeros;
  }
  CHECK(zeros > 100);
}

TEST_CASE("real flag violation detected") {
  TrigPoly bad(1, true);
  bad.add_term({1}, {1.0, 0.0});  // missing conjugate mirror
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}
