#include "gaplab/labelling.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

namespace gaplab {

namespace {

long long vec_gcd(const std::vector<long long>& v) {
  long long g = 0;
  for (long long x : v) g = std::gcd(g, std::llabs(x));
  return g;
}

}  // namespace

std::vector<std::vector<long long>> integer_kernel(
    const std::vector<std::vector<long long>>& A) {
  const int d = static_cast<int>(A.size());
  if (d > 8) throw ConfigError("integer_kernel supports d <= 8");
  // M = I - A^T; eliminate columns with unimodular operations tracked in U.
  std::vector<std::vector<long long>> M(d, std::vector<long long>(d, 0));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) M[i][j] = (i == j ? 1 : 0) - A[j][i];

  std::vector<std::vector<long long>> U(d, std::vector<long long>(d, 0));
  for (int i = 0; i < d; ++i) U[i][i] = 1;

  std::vector<bool> pivot(d, false);
  auto col_op = [&](int dst, int src, long long f) {
    for (int r = 0; r < d; ++r) M[r][dst] -= f * M[r][src];
    for (int r = 0; r < d; ++r) U[r][dst] -= f * U[r][src];
  };

  for (int row = 0; row < d; ++row) {
    for (;;) {
      int best = -1;
      for (int c = 0; c < d; ++c)
        if (!pivot[c] && M[row][c] != 0 &&
            (best == -1 || std::llabs(M[row][c]) < std::llabs(M[row][best])))
          best = c;
      if (best == -1) break;
      bool reduced_all = true;
      for (int c = 0; c < d; ++c) {
        if (c == best || pivot[c] || M[row][c] == 0) continue;
        const long long f = M[row][c] / M[row][best];
        col_op(c, best, f);
        if (M[row][c] != 0) reduced_all = false;
      }
      if (reduced_all) {
        pivot[best] = true;
        break;
      }
    }
  }

  std::vector<std::vector<long long>> kernel;
  for (int c = 0; c < d; ++c) {
    bool zero = true;
    for (int r = 0; r < d; ++r)
      if (M[r][c] != 0) zero = false;
    if (!zero) continue;
    std::vector<long long> v(d);
    for (int r = 0; r < d; ++r) v[r] = U[r][c];
    const long long g = vec_gcd(v);
    if (g > 1)
      for (long long& x : v) x /= g;
    // Sign convention: first nonzero entry positive.
    for (long long x : v) {
      if (x == 0) continue;
      if (x < 0)
        for (long long& y : v) y = -y;
      break;
    }
    kernel.push_back(std::move(v));
  }
  return kernel;
}

LabelGroup LabelGroup::for_system(const SystemSpec& sys, int coeff_bound) {
  if (sys.kind != SystemKind::AffineTorus)
    throw PreconditionViolated(
        "label group computed only for affine torus maps; "
        "doubling-map labels are the integers");
  LabelGroup g;
  g.freq = sys.b;
  g.kernel = integer_kernel(sys.A);
  g.coeff_bound = coeff_bound;
  return g;
}

LabelMatch match_label(double k, const LabelGroup& group, double tol) {
  if (k < 0.0 || k > 1.0) throw ConfigError("label must lie in [0, 1]");
  if (tol <= 0.0) throw ConfigError("tolerance must be positive");
  const int rank = group.rank();
  const int M = (rank <= 2) ? group.coeff_bound : std::min(group.coeff_bound, 10);

  std::vector<double> dots(rank, 0.0);
  for (int i = 0; i < rank; ++i)
    for (std::size_t j = 0; j < group.freq.size(); ++j)
      dots[i] += static_cast<double>(group.kernel[i][j]) * group.freq[j];

  LabelMatch best;
  best.target = k;
  best.coeffs.assign(rank, 0);
  best.residual = std::numeric_limits<double>::infinity();

  std::vector<long long> c(rank, 0);
  auto consider = [&](double frac) {
    const long long n = std::llround(k - frac);
    const double value = frac + static_cast<double>(n);
    const double residual = std::abs(value - k);
    long long weight = std::llabs(n);
    for (long long x : c) weight += std::llabs(x);
    long long best_weight = std::llabs(best.n);
    for (long long x : best.coeffs) best_weight += std::llabs(x);
    if (residual < best.residual - 1e-15 ||
        (residual < best.residual + 1e-15 && weight < best_weight)) {
      best.coeffs = c;
      best.n = n;
      best.value = value;
      best.residual = residual;
    }
  };
  // Exhaustive over the coefficient box; sizes here make pruning unnecessary.
  std::function<void(int, double)> rec = [&](int i, double frac) {
    if (i == rank) {
      consider(frac);
      return;
    }
    for (long long ci = -M; ci <= M; ++ci) {
      c[i] = ci;
      rec(i + 1, frac + static_cast<double>(ci) * dots[i]);
    }
  };
  rec(0, 0.0);
  best.matched = best.residual <= tol;
  return best;
}

GapLabelSummary verify_gap_labels(const std::vector<Gap>& gaps,
                                  const LabelGroup& group, double tol) {
  GapLabelSummary summary;
  for (const Gap& g : gaps) {
    GapLabelReport rep;
    rep.gap = g;
    rep.match = match_label(g.label, group, tol);
    if (rep.match.matched)
      ++summary.matched;
    else
      ++summary.unmatched;
    summary.reports.push_back(std::move(rep));
  }
  return summary;
}

ConnectednessVerdict connectedness_verdict(const std::vector<Gap>& gaps,
                                           const LabelGroup& group,
                                           double min_width,
                                           bool doubling_nonvanishing_p) {
  if (!doubling_nonvanishing_p && group.rank() != 0)
    throw PreconditionViolated(
        "connectedness verdict needs an integer-only label group");
  ConnectednessVerdict v;
  for (const Gap& g : gaps)
    if (g.width() > min_width) v.offending.push_back(g);
  v.connected = v.offending.empty();
  return v;
}

}  // namespace gaplab
