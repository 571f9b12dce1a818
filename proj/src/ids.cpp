#include "gaplab/ids.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gaplab/parallel.hpp"

namespace gaplab {

void DosEstimate::finalize() {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return values[i] < values[j]; });
  std::vector<double> v(values.size()), w(values.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    v[i] = values[order[i]];
    w[i] = weights[order[i]];
  }
  values = std::move(v);
  weights = std::move(w);
  cumulative.resize(values.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    cumulative[i] = acc;
  }
}

std::pair<double, double> DosEstimate::support_hull() const {
  if (values.empty()) return {0.0, 0.0};
  return {values.front(), values.back()};
}

DosEstimate dos_estimate(const SystemSpec& sys, const SamplingFn& p,
                         const SamplingFn& q, std::uint64_t seed, int samples,
                         int truncation) {
  if (samples < 1 || truncation < 1)
    throw ConfigError("dos_estimate needs samples >= 1 and N >= 1");
  DosEstimate dos;
  dos.truncation = truncation;
  dos.samples = samples;
  dos.seed = seed;
  dos.values.reserve(static_cast<std::size_t>(samples) * truncation);
  dos.weights.reserve(dos.values.capacity());

  const auto points = sample_points(sys, seed, samples);
  const double w = 1.0 / (static_cast<double>(samples) * truncation);
  std::vector<EigenList> per_sample(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    const Window win{0, truncation - 1};
    const JacobiCoeffs coeffs = coefficients(sys, p, q, points[i], win);
    const JacobiBlock blk = gauge_reduce(build_block(coeffs, win));
    per_sample[i] = eigenvalues(blk, 1e-10);
  });
  for (const EigenList& eigs : per_sample) {
    for (double e : eigs.values) {
      dos.values.push_back(e);
      dos.weights.push_back(w);
    }
  }
  dos.finalize();
  return dos;
}

double ids_eval(const DosEstimate& dos, double E) {
  const auto it = std::upper_bound(dos.values.begin(), dos.values.end(), E);
  if (it == dos.values.begin()) return 0.0;
  const std::size_t idx = static_cast<std::size_t>(it - dos.values.begin()) - 1;
  return dos.cumulative[idx];
}

std::vector<std::pair<double, double>> spectrum_approx(const DosEstimate& dos,
                                                       double delta) {
  if (delta <= 0.0) throw ConfigError("resolution delta must be positive");
  std::vector<std::pair<double, double>> out;
  for (double v : dos.values) {
    const double lo = v - delta;
    const double hi = v + delta;
    if (!out.empty() && lo <= out.back().second)
      out.back().second = std::max(out.back().second, hi);
    else
      out.emplace_back(lo, hi);
  }
  return out;
}

std::vector<Gap> detect_gaps(const DosEstimate& dos, double delta,
                             double min_width, const DosEstimate* doubled) {
  if (min_width <= 2.0 * delta)
    throw ConfigError("min_width must exceed 2*delta");
  const auto bands = spectrum_approx(dos, delta);
  std::vector<Gap> gaps;
  for (std::size_t i = 0; i + 1 < bands.size(); ++i) {
    Gap g;
    g.lo = bands[i].second;
    g.hi = bands[i + 1].first;
    if (g.width() <= min_width) continue;
    const double mid = 0.5 * (g.lo + g.hi);
    if (doubled != nullptr) {
      // Midpoint must stay eigenvalue-free at doubled truncation.
      const auto it = std::lower_bound(doubled->values.begin(),
                                       doubled->values.end(), mid - delta);
      if (it != doubled->values.end() && *it <= mid + delta) continue;
    }
    g.label = ids_eval(dos, mid);
    gaps.push_back(g);
  }
  return gaps;
}

double block_route_ids(const BlockDecomposition& dec, double E) {
  long long flips = 0;
  long long total = 0;
  for (const JacobiBlock& blk : dec.blocks) {
    flips += block_sign_flips(blk, E);
    total += static_cast<long long>(blk.size());
  }
  if (total == 0) throw EmptyBlock("decomposition has no sites");
  return 1.0 - static_cast<double>(flips) / static_cast<double>(total);
}

}  // namespace gaplab
