#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "gaplab/dynamics.hpp"

using namespace gaplab;

TEST_CASE("cat map single step") {
  const auto sys = SystemSpec::cat_map();
  PhasePoint pt{{0.5, 0.5}};
  const auto next = iterate(sys, pt, 1);
  CHECK(next.torus[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(next.torus[1] == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("doubling two steps") {
  const auto sys = SystemSpec::doubling(2);
  PhasePoint pt{{0.3}};
  const auto out = iterate(sys, pt, 2);
  CHECK(out.torus[0] == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("solenoid step at fixed angle 0") {
  const auto sys = SystemSpec::solenoid(0.25);
  PhasePoint pt{{0.0}, true, 0.0, 0.0};
  const auto out = iterate(sys, pt, 1);
  CHECK(out.torus[0] == 0.0);
  CHECK(out.x == doctest::Approx(0.5));
  CHECK(out.y == doctest::Approx(0.0));
}

TEST_CASE("backward iteration errors on non-invertible maps") {
  PhasePoint pt{{0.3}};
  CHECK_THROWS_AS(iterate(SystemSpec::doubling(2), pt, -1), NonInvertible);
  PhasePoint spt{{0.3}, true, 0.0, 0.0};
  CHECK_THROWS_AS(iterate(SystemSpec::solenoid(0.25), spt, -1), NonInvertible);
}

TEST_CASE("dimension mismatch is rejected") {
  const auto sys = SystemSpec::cat_map();
  PhasePoint pt{{0.5}};
  CHECK_THROWS_AS(iterate(sys, pt, 1), DimensionMismatch);
}

TEST_CASE("affine torus round trip T then T^{-1}") {
  const auto sys = SystemSpec::cat_map();
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    const auto pts = sample_points(sys, rng(), 1);
    const auto back = iterate(sys, iterate(sys, pts[0], 1), -1);
    for (int c = 0; c < 2; ++c) {
      double diff = std::abs(back.torus[c] - pts[0].torus[c]);
      diff = std::min(diff, 1.0 - diff);
      CHECK(diff < 1e-12);
    }
  }
}

TEST_CASE("composition law j+k") {
  const auto sys = SystemSpec::skew_shift(0.6180339887498949);
  PhasePoint pt{{0.2, 0.7}};
  const auto direct = iterate(sys, pt, 7);
  const auto split = iterate(sys, iterate(sys, pt, 3), 4);
  for (int c = 0; c < 2; ++c)
    CHECK(direct.torus[c] == doctest::Approx(split.torus[c]).epsilon(1e-12));
}

TEST_CASE("sampler determinism and range") {
  const auto sys = SystemSpec::cat_map();
  const auto a = sample_points(sys, 7, 3);
  const auto b = sample_points(sys, 7, 3);
  REQUIRE(a.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    for (int c = 0; c < 2; ++c) {
      CHECK(a[i].torus[c] == b[i].torus[c]);
      CHECK(a[i].torus[c] >= 0.0);
      CHECK(a[i].torus[c] < 1.0);
    }
  }
}

TEST_CASE("solenoid samples stay in the disk fiber") {
  const auto sys = SystemSpec::solenoid(0.25);
  const auto pts = sample_points(sys, 1, 1000);
  for (const auto& p : pts) {
    REQUIRE(p.has_disk);
    CHECK(p.x * p.x + p.y * p.y <= 1.0 + 1e-12);
  }
}

TEST_CASE("doubling pushforward preserves Lebesgue (KS check)") {
  const auto sys = SystemSpec::doubling(2);
  const int n = 100000;
  const auto pts = sample_points(sys, 99, n);
  std::vector<double> pushed(n);
  for (int i = 0; i < n; ++i) pushed[i] = iterate(sys, pts[i], 1).torus[0];
  std::sort(pushed.begin(), pushed.end());
  double ks = 0.0;
  for (int i = 0; i < n; ++i) {
    ks = std::max(ks, std::abs(pushed[i] - static_cast<double>(i) / n));
    ks = std::max(ks, std::abs(pushed[i] - static_cast<double>(i + 1) / n));
  }
  // critical value at significance 0.01: 1.63 / sqrt(n)
  CHECK(ks < 1.63 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("solenoid first coordinate is the doubling map") {
  const auto sol = SystemSpec::solenoid(0.3);
  const auto dbl = SystemSpec::doubling(2);
  const auto pts = sample_points(sol, 5, 20);
  for (const auto& p : pts) {
    PhasePoint circle{{p.torus[0]}};
    auto cur_s = p;
    auto cur_d = circle;
    for (int k = 0; k < 30; ++k) {
      cur_s = iterate(sol, cur_s, 1);
      cur_d = iterate(dbl, cur_d, 1);
      CHECK(std::abs(cur_s.torus[0] - cur_d.torus[0]) <= 1e-15);
    }
  }
}

TEST_CASE("non-unimodular matrix rejected") {
  CHECK_THROWS_AS(SystemSpec::affine_torus({{2, 0}, {0, 1}}, {0.0, 0.0}),
                  ConfigError);
}
