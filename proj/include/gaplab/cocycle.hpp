#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gaplab/sampling.hpp"

namespace gaplab {

struct Matrix2c {
  // Row-major 2x2 complex
  std::array<Complex, 4> e{Complex{1, 0}, Complex{0, 0}, Complex{0, 0},
                           Complex{1, 0}};

  static Matrix2c identity() { return {}; }
  Complex& at(int r, int c) { return e[2 * r + c]; }
  const Complex& at(int r, int c) const { return e[2 * r + c]; }
  Complex det() const { return e[0] * e[3] - e[1] * e[2]; }
  Matrix2c operator*(const Matrix2c& o) const;
  std::array<Complex, 2> apply(const std::array<Complex, 2>& v) const;
  Matrix2c inverse() const;
  double max_abs() const;
  // Singular values, s1 >= s2 >= 0.
  std::pair<double, double> singular_values() const;
};

// Product with overflow guard: the matrix is renormalized periodically and
// the discarded magnitude accumulated in log_scale.
struct ScaledMatrix {
  Matrix2c m;
  double log_scale = 0.0;
};

// Direction in the (real or complex) projective line.
struct ProjectivePoint {
  std::array<Complex, 2> v{Complex{1, 0}, Complex{0, 0}};

  static ProjectivePoint from(Complex a, Complex b);
  // Angle in [0, pi) of a real direction span{(cos t, sin t)}.
  double angle() const;
  // sin of the angle between the two complex lines; 0 iff equal.
  double distance(const ProjectivePoint& other) const;
};

enum class DsStatus { Dominated, NotDominated, Inconclusive };

struct DsVerdict {
  DsStatus status = DsStatus::Inconclusive;
  int horizon = 0;        // N* used
  double rate = 0.0;      // per-step domination rate (Dominated only)
  double min_collision = 0.0;  // closest stable/unstable approach observed
  std::string reason;
  std::optional<PhasePoint> witness;
};

struct DsParams {
  int grid = 64;         // sampled base points
  int horizon = 40;      // N*
  double rho_min = 1.05; // required per-step singular value ratio
  std::uint64_t seed = 1;
};

// B^E(w) = [[E - q(w), -conj(p(T^-1 w))], [p(w), 0]]. The shifted variant
// (for non-invertible half-line systems) uses arguments advanced by one step
// so that no backward iterate is needed.
Matrix2c cocycle_matrix(double E, const SystemSpec& sys, const SamplingFn& p,
                        const SamplingFn& q, const PhasePoint& pt,
                        bool shifted = false);

ScaledMatrix cocycle_iterate(double E, const SystemSpec& sys,
                             const SamplingFn& p, const SamplingFn& q,
                             const PhasePoint& pt, long long n,
                             bool shifted = false);

// One recurrence step through the cocycle: (u(n), u(n-1)) -> (u(n+1), u(n)).
// Returns nullopt when a(n) = 0 (the cocycle image is the zero vector).
std::optional<std::pair<double, double>> solution_action(double E,
                                                         const JacobiCoeffs& coeffs,
                                                         long long n, double u_n,
                                                         double u_prev);

// Sign-flip density of the Dirichlet-type solution on [0, t_max]; estimates
// 1 - k(E). Handles vanishing off-diagonals by per-block counting.
double rotation_number(double E, const SystemSpec& sys, const SamplingFn& p,
                       const SamplingFn& q, const PhasePoint& omega,
                       long long t_max);

DsVerdict dominated_splitting_test(double E, const SystemSpec& sys,
                                   const SamplingFn& p, const SamplingFn& q,
                                   const DsParams& params = {});

struct SectionResult {
  ProjectivePoint direction;
  double residual = 0.0;  // projective distance of B.section(w) from section(Tw)
};

SectionResult unstable_section(double E, const SystemSpec& sys,
                               const SamplingFn& p, const SamplingFn& q,
                               const PhasePoint& omega, int depth = 60);

// Backward pushforward of the inverse cocycle; needs nonvanishing p.
SectionResult stable_section(double E, const SystemSpec& sys,
                             const SamplingFn& p, const SamplingFn& q,
                             const PhasePoint& omega, int depth = 60);

}  // namespace gaplab
