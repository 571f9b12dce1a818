#pragma once

#include <cstdint>
#include <vector>

#include "gaplab/errors.hpp"

namespace gaplab {

enum class SystemKind { AffineTorus, Doubling, Solenoid };

// A base dynamical system: an affine torus map omega -> A*omega + b,
// the m-fold expanding circle map, or the solid-torus solenoid map.
struct SystemSpec {
  SystemKind kind = SystemKind::AffineTorus;
  int dim = 1;

  // AffineTorus
  std::vector<std::vector<long long>> A;  // d x d, |det| = 1
  std::vector<double> b;                  // translation, entries in [0,1)

  // Doubling
  long long multiplier = 2;

  // Solenoid
  double lambda = 0.25;  // contraction, in (0, 1/2)

  static SystemSpec affine_torus(std::vector<std::vector<long long>> A,
                                 std::vector<double> b);
  // Circle rotation omega -> omega + alpha (affine torus with A = I, d = 1).
  static SystemSpec rotation(double alpha);
  static SystemSpec skew_shift(double alpha);
  static SystemSpec cat_map();
  static SystemSpec doubling(long long m = 2);
  static SystemSpec solenoid(double lambda);

  bool invertible() const { return kind == SystemKind::AffineTorus; }
  // Torus dimension of the sampling domain (1 for doubling and solenoid).
  int torus_dim() const { return kind == SystemKind::AffineTorus ? dim : 1; }
};

struct PhasePoint {
  std::vector<double> torus;  // coordinates in [0,1)
  bool has_disk = false;      // solenoid only
  double x = 0.0;
  double y = 0.0;
};

// Reduce to [0,1); the canonical reduction used by every map step.
double mod1(double v);

PhasePoint iterate(const SystemSpec& sys, const PhasePoint& pt, long long n);

// Deterministic sampler of the ergodic measure (Lebesgue on tori; for the
// solenoid, uniform angle plus an attractor point from a random backward
// symbol sequence pulled forward through F).
std::vector<PhasePoint> sample_points(const SystemSpec& sys, std::uint64_t seed,
                                      int count, int solenoid_depth = 40);

}  // namespace gaplab
