#include "support/brute.hpp"

#include <cmath>
#include <numbers>

#include "se2recon/fft.hpp"

namespace se2recon::testsupport {

ComplexImage direct_convolve(const ComplexImage& f, const ComplexImage& g) {
  require_same_grid(f.n, g.n, "direct_convolve");
  const int n = f.n;
  ComplexImage out(n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      cplx acc = 0;
      for (int rr = 0; rr < n; ++rr) {
        for (int cc = 0; cc < n; ++cc) {
          acc += f(rr, cc) * g(((r - rr) % n + n) % n, ((c - cc) % n + n) % n);
        }
      }
      out(r, c) = acc;
    }
  }
  return out;
}

Spectrum direct_dft2(const ComplexImage& f) {
  const int n = f.n;
  Spectrum out(n);
  const double w = -2.0 * std::numbers::pi / n;
  for (int k1 = 0; k1 < n; ++k1) {
    for (int k2 = 0; k2 < n; ++k2) {
      cplx acc = 0;
      for (int x1 = 0; x1 < n; ++x1) {
        for (int x2 = 0; x2 < n; ++x2) {
          acc += f(x1, x2) * std::polar(1.0, w * (x1 * k1 + x2 * k2));
        }
      }
      out(k1, k2) = acc;
    }
  }
  return out;
}

ComplexImage spatial_wavelet(const WaveletSystem& sys, int j) {
  return idft2(psi_hat_spectrum(sys, j));
}

std::vector<double> direct_calderon(int n, int m, double s, double p) {
  std::vector<double> out(static_cast<std::size_t>(n) * n, 0.0);
  for (int j = 0; j < m; ++j) {
    const double theta = 2.0 * std::numbers::pi * j / m;
    const double c1 = p * std::cos(theta);
    const double c2 = p * std::sin(theta);
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        const double x1 = signed_freq(r, n) + c1;
        const double x2 = signed_freq(c, n) + c2;
        const double g = std::exp(-(x1 * x1 + x2 * x2) / (2.0 * s * s));
        out[static_cast<std::size_t>(r) * n + c] += g * g;
      }
    }
  }
  return out;
}

}  // namespace se2recon::testsupport
