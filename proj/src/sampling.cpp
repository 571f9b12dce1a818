#include "gaplab/sampling.hpp"

#include <cmath>
#include <numbers>

namespace gaplab {

namespace {
constexpr double kImagTruncation = 1e-12;

std::vector<int> negate(const std::vector<int>& k) {
  std::vector<int> out(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) out[i] = -k[i];
  return out;
}
}  // namespace

TrigPoly& TrigPoly::add_term(std::vector<int> k, Complex c) {
  if (static_cast<int>(k.size()) != dim)
    throw DimensionMismatch("frequency vector dimension mismatch");
  terms[std::move(k)] += c;
  return *this;
}

void TrigPoly::validate() const {
  if (!real) return;
  for (const auto& [k, c] : terms) {
    auto it = terms.find(negate(k));
    const Complex mirror = (it == terms.end()) ? Complex{0.0, 0.0} : it->second;
    if (std::abs(mirror - std::conj(c)) > 1e-12)
      throw ConfigError("real-flagged polynomial violates c_{-k} = conj(c_k)");
  }
}

TrigPoly TrigPoly::constant(int d, double c) {
  TrigPoly p(d, true);
  p.add_term(std::vector<int>(d, 0), {c, 0.0});
  return p;
}

TrigPoly TrigPoly::cosine(int d, const std::vector<int>& k, double amplitude) {
  // amplitude * 2 cos(2 pi k.w) = amplitude (e^{ikw} + e^{-ikw})
  TrigPoly p(d, true);
  p.add_term(k, {amplitude, 0.0});
  p.add_term(negate(k), {amplitude, 0.0});
  return p;
}

TrigPoly TrigPoly::harmonic(int d, const std::vector<int>& k) {
  TrigPoly p(d, false);
  p.add_term(k, {1.0, 0.0});
  return p;
}

Complex TrigPoly::eval(const std::vector<double>& omega) const {
  if (static_cast<int>(omega.size()) != dim)
    throw DimensionMismatch("evaluation point dimension mismatch");
  Complex sum{0.0, 0.0};
  for (const auto& [k, c] : terms) {
    double phase = 0.0;
    for (int i = 0; i < dim; ++i) phase += k[i] * omega[i];
    sum += c * std::polar(1.0, 2.0 * std::numbers::pi * phase);
  }
  if (real && std::abs(sum.imag()) <= kImagTruncation) sum.imag(0.0);
  return sum;
}

double TrigPoly::coeff_norm() const {
  double s = 0.0;
  for (const auto& [k, c] : terms) s += std::abs(c);
  return s;
}

SamplingFn SamplingFn::identity(TrigPoly p) {
  p.validate();
  return {std::move(p), PostMap::Identity, 0.0};
}

SamplingFn SamplingFn::clamp_below(TrigPoly p, double t) {
  if (!p.real) throw ConfigError("clamp_below requires a real-flagged base");
  p.validate();
  return {std::move(p), PostMap::ClampBelow, t};
}

SamplingFn SamplingFn::modulus(TrigPoly p) {
  p.validate();
  return {std::move(p), PostMap::Modulus, 0.0};
}

Complex eval(const SamplingFn& f, const SystemSpec& sys, const PhasePoint& pt) {
  if (f.base.dim != sys.torus_dim())
    throw DimensionMismatch("sampling function dimension does not match system");
  // Solenoid points are sampled through the first coordinate only.
  Complex v = f.base.eval(pt.torus);
  switch (f.post) {
    case PostMap::Identity:
      return v;
    case PostMap::ClampBelow: {
      const double r = std::max(0.0, v.real() - f.threshold);
      return {r, 0.0};
    }
    case PostMap::Modulus:
      return {std::abs(v), 0.0};
  }
  return v;
}

JacobiCoeffs coefficients(const SystemSpec& sys, const SamplingFn& p,
                          const SamplingFn& q, const PhasePoint& omega,
                          const Window& window) {
  if (!q.real_valued())
    throw ConfigError("diagonal sampling function must be real-valued");
  if (window.lo > window.hi) throw ConfigError("empty coefficient window");
  if (window.lo < 0 && !sys.invertible())
    throw NonInvertible("negative window start on a non-invertible system");

  JacobiCoeffs out;
  out.window = window;
  const long long len = window.length();
  out.a.reserve(len);
  out.b.reserve(len);
  PhasePoint cur = iterate(sys, omega, window.lo);
  for (long long n = window.lo; n <= window.hi; ++n) {
    out.a.push_back(eval(p, sys, cur));
    out.b.push_back(eval(q, sys, cur).real());
    if (n < window.hi) cur = iterate(sys, cur, 1);
  }
  return out;
}

}  // namespace gaplab
