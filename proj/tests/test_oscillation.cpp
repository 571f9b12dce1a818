#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gaplab/oscillation.hpp"
#include "oracles.hpp"

using namespace gaplab;

namespace {

JacobiBlock free_block(int m) {
  auto blk = make_block(std::vector<double>(m, 0.0),
                        std::vector<Complex>(m - 1, {1.0, 0.0}));
  blk.gauge_reduced = true;
  return blk;
}

JacobiCoeffs coeffs_from(std::vector<double> a, std::vector<double> b) {
  JacobiCoeffs c;
  c.window = {0, static_cast<long long>(b.size()) - 1};
  for (double v : a) c.a.push_back({v, 0.0});
  c.b = std::move(b);
  return c;
}

}  // namespace

TEST_CASE("free 3x3 Dirichlet solution at E = 1") {
  const auto sol = dirichlet_solution(free_block(3), 1.0, 1.0);
  const std::vector<double> expect{0.0, 1.0, 1.0, 0.0, -1.0};
  REQUIRE(sol.u.size() == expect.size());
  for (std::size_t i = 0; i < expect.size(); ++i)
    CHECK(sol.u[i] == doctest::Approx(expect[i]));
  CHECK(count_interpolated_zeros(sol) == 1);
}

TEST_CASE("huge E gives a positive increasing solution") {
  std::mt19937_64 rng(5);
  const auto blk = gauge_reduce(oracle::random_complex_block(rng, 15));
  const double E = blk.spectral_bounds().second + 5.0;
  const auto sol = dirichlet_solution(blk, E, 1.0);
  for (std::size_t j = 1; j + 1 < sol.u.size(); ++j) {
    CHECK(sol.u[j] > 0.0);
    CHECK(sol.u[j + 1] > sol.u[j]);
  }
  CHECK(count_interpolated_zeros(sol) == 0);
}

TEST_CASE("interpolated zero count matches the brute-force oracle") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> edist(-3.0, 3.0);
  for (int it = 0; it < 300; ++it) {
    const auto blk = oracle::random_real_block(rng, 12, true);
    const double E = edist(rng);
    const auto sol = dirichlet_solution(blk, E, 1.0);
    std::vector<double> nodes(sol.u.begin() + 1, sol.u.end());  // u(0..m)
    CHECK(count_interpolated_zeros(sol) == oracle::interp_zero_count(nodes));
  }
}

TEST_CASE("alternating-sign solution example") {
  // u nodes (0): 1, -1, 1 -> one crossing per segment
  DirichletSolution sol;
  sol.u = {0.0, 1.0, -1.0, 1.0};  // u(-1..2), m = 2
  CHECK(count_interpolated_zeros(sol) == 2);
  std::vector<double> nodes{1.0, -1.0, 1.0};
  CHECK(oracle::interp_zero_count(nodes) == 2);
}

TEST_CASE("oscillation theorem on the free 3x3 block") {
  auto rep = verify_oscillation(free_block(3), 1.0);
  CHECK(rep.zeros == 1);
  CHECK(rep.eigencount_above == 1);
  CHECK(rep.equal);
  rep = verify_oscillation(free_block(3), -3.0);
  CHECK(rep.zeros == 3);
  CHECK(rep.eigencount_above == 3);
  CHECK(rep.equal);
}

TEST_CASE("oscillation identity on seeded random blocks (exact)") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> edist(-5.0, 5.0);
  int done = 0;
  while (done < 200) {
    const auto blk = oracle::random_real_block(rng, 12, true);
    const double E = edist(rng);
    bool near = false;
    for (double v : oracle::dense_eigenvalues(blk))
      if (std::abs(v - E) < 1e-6) near = true;
    if (near) continue;
    const auto rep = verify_oscillation(blk, E);
    CHECK(rep.equal);
    CHECK(rep.eigencount_above == oracle::dense_count_above(blk, E));
    ++done;
  }
}

TEST_CASE("trailing coefficient independence") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> edist(-5.0, 5.0);
  for (int it = 0; it < 100; ++it) {
    const auto blk = oracle::random_real_block(rng, 12, true);
    const double E = edist(rng);
    const int f1 = count_interpolated_zeros(dirichlet_solution(blk, E, 0.1));
    const int f2 = count_interpolated_zeros(dirichlet_solution(blk, E, 1.0));
    const int f3 = count_interpolated_zeros(dirichlet_solution(blk, E, 10.0));
    CHECK(f1 == f2);
    CHECK(f2 == f3);
  }
}

TEST_CASE("split blocks on a =(1,0,1,0)") {
  const auto coeffs = coeffs_from({1.0, 0.0, 1.0, 0.0, 1.0},
                                  {0.0, 0.0, 0.0, 0.0, 0.0});
  const auto dec = split_blocks(coeffs);
  REQUIRE(dec.singular_positions.size() == 2);
  CHECK(dec.singular_positions[0] == 1);
  CHECK(dec.singular_positions[1] == 3);
  REQUIRE(dec.blocks.size() == 3);
  CHECK(dec.ranges[0].lo == 0);
  CHECK(dec.ranges[0].hi == 1);
  CHECK(dec.ranges[1].lo == 2);
  CHECK(dec.ranges[1].hi == 3);
  CHECK(dec.ranges[2].lo == 4);
  CHECK(dec.ranges[2].hi == 4);
}

TEST_CASE("split blocks with all-positive a") {
  const auto coeffs = coeffs_from({1.0, 0.5, 0.2}, {1.0, 2.0, 3.0});
  const auto dec = split_blocks(coeffs);
  CHECK(dec.singular_positions.empty());
  REQUIRE(dec.blocks.size() == 1);
  CHECK(dec.blocks[0].size() == 3);
}

TEST_CASE("split blocks with all-zero a") {
  const auto coeffs = coeffs_from({0.0, 0.0, 0.0}, {1.0, 2.0, 3.0});
  const auto dec = split_blocks(coeffs);
  CHECK(dec.blocks.size() == 3);
  for (const auto& b : dec.blocks) CHECK(b.size() == 1);
}

TEST_CASE("block sign flips on 1x1 and 2x2 blocks") {
  auto b1 = make_block({0.0}, {});
  b1.gauge_reduced = true;
  CHECK(block_sign_flips(b1, 1.0) == 0);
  CHECK(block_sign_flips(b1, -1.0) == 1);
  CHECK(block_sign_flips(free_block(2), 0.0) == 1);
}

TEST_CASE("block sign flips equal the eigencount above E") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> edist(-5.0, 5.0);
  int done = 0;
  while (done < 300) {
    const auto blk = oracle::random_real_block(rng, 10, true);
    const double E = edist(rng);
    int flips;
    try {
      flips = block_sign_flips(blk, E);
    } catch (const EnergyTooCloseToBlockSpectrum&) {
      continue;
    }
    CHECK(flips == oracle::dense_count_above(blk, E));
    ++done;
  }
}

TEST_CASE("energy at a block eigenvalue is rejected") {
  auto b1 = make_block({0.5}, {});
  b1.gauge_reduced = true;
  CHECK_THROWS_AS(block_sign_flips(b1, 0.5), EnergyTooCloseToBlockSpectrum);
}

TEST_CASE("nonpositive interior offdiag rejected") {
  auto blk = make_block({0.0, 0.0, 0.0}, {{1.0, 0.0}, {0.0, 0.0}});
  blk.gauge_reduced = true;
  CHECK_THROWS_AS(dirichlet_solution(blk, 1.0, 1.0), NonPositiveOffdiag);
  CHECK_THROWS_AS(dirichlet_solution(free_block(3), 1.0, 0.0),
                  NonPositiveOffdiag);
}
