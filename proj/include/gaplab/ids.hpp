#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gaplab/oscillation.hpp"
#include "gaplab/tridiag.hpp"

namespace gaplab {

// Weighted eigenvalue multiset aggregated over (omega, N) samples.
struct DosEstimate {
  std::vector<double> values;   // sorted
  std::vector<double> weights;  // same length, sum 1
  std::vector<double> cumulative;  // prefix sums of weights

  int truncation = 0;  // N
  int samples = 0;     // S
  std::uint64_t seed = 0;

  void finalize();  // sort atoms, rebuild prefix sums
  std::pair<double, double> support_hull() const;
};

struct Gap {
  double lo = 0.0;
  double hi = 0.0;
  double label = 0.0;  // IDS value at the midpoint
  double width() const { return hi - lo; }
};

DosEstimate dos_estimate(const SystemSpec& sys, const SamplingFn& p,
                         const SamplingFn& q, std::uint64_t seed, int samples,
                         int truncation);

// k(E): total weight of atoms <= E; right-continuous, monotone.
double ids_eval(const DosEstimate& dos, double E);

// Union of delta-fattened atoms, merged into closed intervals.
std::vector<std::pair<double, double>> spectrum_approx(const DosEstimate& dos,
                                                       double delta);

// Gap candidates between spectrum intervals, labeled at midpoints. When a
// doubled-N estimate is supplied, gaps whose midpoint falls within delta of
// one of its atoms are discarded (finite-size stability filter).
std::vector<Gap> detect_gaps(const DosEstimate& dos, double delta,
                             double min_width,
                             const DosEstimate* doubled = nullptr);

// IDS via the singular block route: 1 - (sum of block sign flips)/(total
// length), for gauge-reduced coefficients whose a has exact zeros.
double block_route_ids(const BlockDecomposition& dec, double E);

}  // namespace gaplab
