#pragma once

#include <string>
#include <vector>

#include "gaplab/ids.hpp"

namespace gaplab {

// Schwartzman label group of an affine torus map: {m.b + n} with
// m in Z^d intersect ker(I - A^T).
struct LabelGroup {
  std::vector<double> freq;                     // translation vector b
  std::vector<std::vector<long long>> kernel;   // integer basis vectors
  int coeff_bound = 100;                        // |m coefficients| <= M

  int rank() const { return static_cast<int>(kernel.size()); }
  static LabelGroup for_system(const SystemSpec& sys, int coeff_bound = 100);
};

struct LabelMatch {
  double target = 0.0;
  std::vector<long long> coeffs;  // kernel-basis coefficients of best m
  long long n = 0;
  double value = 0.0;
  double residual = 0.0;
  bool matched = false;
};

struct GapLabelReport {
  Gap gap;
  LabelMatch match;
};

struct GapLabelSummary {
  std::vector<GapLabelReport> reports;
  int matched = 0;
  int unmatched = 0;
};

struct ConnectednessVerdict {
  bool connected = false;
  std::vector<Gap> offending;
};

// Integer basis of ker(I - A^T) by exact column elimination.
std::vector<std::vector<long long>> integer_kernel(
    const std::vector<std::vector<long long>>& A);

LabelMatch match_label(double k, const LabelGroup& group, double tol);

GapLabelSummary verify_gap_labels(const std::vector<Gap>& gaps,
                                  const LabelGroup& group, double tol);

// Requires an integer-only label group (trivial kernel), or a doubling map
// with nonvanishing p (caller asserts via integer_only).
ConnectednessVerdict connectedness_verdict(const std::vector<Gap>& gaps,
                                           const LabelGroup& group,
                                           double min_width,
                                           bool doubling_nonvanishing_p = false);

}  // namespace gaplab
