#pragma once

#include <complex>
#include <map>
#include <vector>

#include "gaplab/dynamics.hpp"

namespace gaplab {

using Complex = std::complex<double>;

// Finitely supported Fourier series on T^d. With the realness flag set the
// coefficient table must satisfy c_{-k} = conj(c_k).
struct TrigPoly {
  int dim = 1;
  bool real = false;
  std::map<std::vector<int>, Complex> terms;

  TrigPoly() = default;
  TrigPoly(int d, bool real_flag) : dim(d), real(real_flag) {}

  TrigPoly& add_term(std::vector<int> k, Complex c);
  void validate() const;

  // 2 lambda cos(2 pi k.w) style helpers
  static TrigPoly constant(int d, double c);
  static TrigPoly cosine(int d, const std::vector<int>& k, double amplitude);
  static TrigPoly harmonic(int d, const std::vector<int>& k);  // e^{2 pi i k.w}

  Complex eval(const std::vector<double>& omega) const;
  // Bound sum |c_k| >= sup |value|
  double coeff_norm() const;
};

enum class PostMap { Identity, ClampBelow, Modulus };

struct SamplingFn {
  TrigPoly base;
  PostMap post = PostMap::Identity;
  double threshold = 0.0;  // ClampBelow only

  static SamplingFn identity(TrigPoly p);
  static SamplingFn clamp_below(TrigPoly p, double t);
  static SamplingFn modulus(TrigPoly p);

  bool real_valued() const {
    return post != PostMap::Identity || base.real;
  }
};

struct Window {
  long long lo = 0;
  long long hi = 0;  // inclusive
  long long length() const { return hi - lo + 1; }
};

struct JacobiCoeffs {
  Window window;
  std::vector<Complex> a;  // a(n) = p(T^n w), n in [lo, hi]
  std::vector<double> b;   // b(n) = q(T^n w)

  Complex a_at(long long n) const { return a[static_cast<std::size_t>(n - window.lo)]; }
  double b_at(long long n) const { return b[static_cast<std::size_t>(n - window.lo)]; }
};

Complex eval(const SamplingFn& f, const SystemSpec& sys, const PhasePoint& pt);

JacobiCoeffs coefficients(const SystemSpec& sys, const SamplingFn& p,
                          const SamplingFn& q, const PhasePoint& omega,
                          const Window& window);

}  // namespace gaplab
