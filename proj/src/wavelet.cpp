#include "se2recon/wavelet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "se2recon/fft.hpp"

namespace se2recon {
namespace {

void validate_params(const WaveletParams& p) {
  if (p.n <= 0 || p.n % 2 != 0) {
    throw ContractError("wavelet params: n must be positive and even, got " +
                        std::to_string(p.n));
  }
  if (p.m < 1) throw ContractError("wavelet params: m must be >= 1");
  if (!(p.s > 0)) throw ContractError("wavelet params: s must be > 0");
  if (p.p < 0) throw ContractError("wavelet params: p must be >= 0");
  const double rmax = p.n / 2.0 * std::numbers::sqrt2;
  if (!(p.r > 0) || p.r > rmax) {
    throw ContractError("wavelet params: r must be in (0, n/2*sqrt(2)]");
  }
}

void require_stack_dims(const CoefficientStack& stack, const WaveletSystem& sys,
                        const char* what) {
  if (stack.n != sys.params.n || stack.m != sys.params.m) {
    throw DimensionError(std::string(what) + ": stack is " + std::to_string(stack.n) + "x" +
                         std::to_string(stack.n) + "x" + std::to_string(stack.m) +
                         ", system expects " + std::to_string(sys.params.n) + "x" +
                         std::to_string(sys.params.n) + "x" + std::to_string(sys.params.m));
  }
}

}  // namespace

WaveletSystem build_system(const WaveletParams& params) {
  validate_params(params);
  const int n = params.n;
  const std::size_t n2 = static_cast<std::size_t>(n) * n;

  WaveletSystem sys;
  sys.params = params;
  sys.psi_hat.resize(params.m);
  sys.calderon.assign(n2, 0.0);
  sys.mask.assign(n2, 0);
  sys.dual_mult.assign(n2, 0.0);

  const double inv_2s2 = 1.0 / (2.0 * params.s * params.s);
  for (int j = 0; j < params.m; ++j) {
    const double theta = 2.0 * std::numbers::pi * j / params.m;
    const double c1 = params.p * std::cos(theta);
    const double c2 = params.p * std::sin(theta);
    auto& plane = sys.psi_hat[j];
    plane.resize(n2);
    for (int r = 0; r < n; ++r) {
      const double xi1 = signed_freq(r, n);
      for (int c = 0; c < n; ++c) {
        const double xi2 = signed_freq(c, n);
        const double d1 = xi1 + c1;
        const double d2 = xi2 + c2;
        const double v = std::exp(-(d1 * d1 + d2 * d2) * inv_2s2);
        plane[static_cast<std::size_t>(r) * n + c] = v;
        sys.calderon[static_cast<std::size_t>(r) * n + c] += v * v;
      }
    }
  }

  const double r2 = params.r * params.r;
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (int r = 0; r < n; ++r) {
    const double xi1 = signed_freq(r, n);
    for (int c = 0; c < n; ++c) {
      const double xi2 = signed_freq(c, n);
      if (xi1 * xi1 + xi2 * xi2 < r2) {
        const std::size_t k = static_cast<std::size_t>(r) * n + c;
        sys.mask[k] = 1;
        lo = std::min(lo, sys.calderon[k]);
        hi = std::max(hi, sys.calderon[k]);
      }
    }
  }
  sys.frame_lower = lo;
  sys.frame_upper = hi;

  if (!(hi > 0) || !(lo / hi >= 1e-12)) {
    throw IllConditionedError(
        "Calderon lower bound vanishes on the band: r = " + std::to_string(params.r) +
        " is too large for (s, p) = (" + std::to_string(params.s) + ", " +
        std::to_string(params.p) + ")");
  }

  for (std::size_t k = 0; k < n2; ++k) {
    if (sys.mask[k]) sys.dual_mult[k] = 1.0 / sys.calderon[k];
  }
  return sys;
}

FrameReport frame_report(const WaveletSystem& sys) {
  FrameReport rep;
  rep.a = sys.frame_lower;
  rep.b = sys.frame_upper;
  rep.ratio = rep.b / rep.a;
  rep.cond = std::sqrt(rep.ratio);
  return rep;
}

FrameReport frame_report_linear(const WaveletSystem& sys) {
  const std::size_t n2 = sys.calderon.size();
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (std::size_t k = 0; k < n2; ++k) {
    if (!sys.mask[k]) continue;
    double sum = 0;
    for (const auto& plane : sys.psi_hat) sum += plane[k];
    lo = std::min(lo, sum);
    hi = std::max(hi, sum);
  }
  FrameReport rep;
  rep.a = lo;
  rep.b = hi;
  rep.ratio = hi / lo;
  rep.cond = std::sqrt(rep.ratio);
  return rep;
}

Spectrum psi_hat_spectrum(const WaveletSystem& sys, int j) {
  Spectrum spec(sys.params.n);
  const auto& plane = sys.psi_hat.at(j);
  for (std::size_t k = 0; k < plane.size(); ++k) spec.data[k] = plane[k];
  return spec;
}

Spectrum gamma_hat(const WaveletSystem& sys, int j) {
  Spectrum spec(sys.params.n);
  const auto& plane = sys.psi_hat.at(j);
  for (std::size_t k = 0; k < plane.size(); ++k) spec.data[k] = sys.dual_mult[k] * plane[k];
  return spec;
}

CoefficientStack forward(const ComplexImage& f, const WaveletSystem& sys) {
  require_same_grid(f.n, sys.params.n, "forward");
  const Spectrum fh = dft2(f);
  const int n = sys.params.n;
  const std::size_t n2 = static_cast<std::size_t>(n) * n;

  CoefficientStack stack(n, sys.params.m);
  for (int j = 0; j < sys.params.m; ++j) {
    auto plane = stack.plane(j);
    const auto& psi = sys.psi_hat[j];
    for (std::size_t k = 0; k < n2; ++k) plane[k] = fh.data[k] * psi[k];
  }
  idft2_planes(stack);
  return stack;
}

CoefficientStack forward(const Image& f, const WaveletSystem& sys) {
  return forward(ComplexImage(f), sys);
}

namespace {

// Shared core of adjoint and inverse: accumulate sum_j F_hat_j * conj(psi_hat_j),
// optionally apply the dual multiplier, and transform back.
ComplexImage synthesize(const CoefficientStack& stack, const WaveletSystem& sys,
                        bool apply_dual) {
  const int n = sys.params.n;
  const std::size_t n2 = static_cast<std::size_t>(n) * n;

  CoefficientStack hat = stack;
  dft2_planes(hat);

  Spectrum acc(n);
  for (int j = 0; j < sys.params.m; ++j) {
    const auto plane = hat.plane(j);
    const auto& psi = sys.psi_hat[j];
    for (std::size_t k = 0; k < n2; ++k) acc.data[k] += plane[k] * psi[k];
  }
  if (apply_dual) {
    for (std::size_t k = 0; k < n2; ++k) acc.data[k] *= sys.dual_mult[k];
  }
  return idft2(acc);
}

}  // namespace

ComplexImage adjoint(const CoefficientStack& stack, const WaveletSystem& sys) {
  require_stack_dims(stack, sys, "adjoint");
  return synthesize(stack, sys, false);
}

ComplexImage inverse(const CoefficientStack& stack, const WaveletSystem& sys) {
  require_stack_dims(stack, sys, "inverse");
  return synthesize(stack, sys, true);
}

ComplexImage bandlimit(const ComplexImage& f, const WaveletSystem& sys) {
  require_same_grid(f.n, sys.params.n, "bandlimit");
  Spectrum fh = dft2(f);
  for (std::size_t k = 0; k < fh.data.size(); ++k) {
    if (!sys.mask[k]) fh.data[k] = 0.0;
  }
  return idft2(fh);
}

ComplexImage bandlimit(const Image& f, const WaveletSystem& sys) {
  return bandlimit(ComplexImage(f), sys);
}

CoefficientStack project(const CoefficientStack& stack, const WaveletSystem& sys) {
  require_stack_dims(stack, sys, "project");
  const int n = sys.params.n;
  const std::size_t n2 = static_cast<std::size_t>(n) * n;

  CoefficientStack hat = stack;
  dft2_planes(hat);

  // S(xi) = dual_mult(xi) * sum_l F_hat_l(xi) * psi_hat_l(xi); spectra are real.
  std::vector<cplx> s(n2, cplx{0.0, 0.0});
  for (int j = 0; j < sys.params.m; ++j) {
    const auto plane = hat.plane(j);
    const auto& psi = sys.psi_hat[j];
    for (std::size_t k = 0; k < n2; ++k) s[k] += plane[k] * psi[k];
  }
  for (std::size_t k = 0; k < n2; ++k) s[k] *= sys.dual_mult[k];

  for (int j = 0; j < sys.params.m; ++j) {
    auto plane = hat.plane(j);
    const auto& psi = sys.psi_hat[j];
    for (std::size_t k = 0; k < n2; ++k) plane[k] = s[k] * psi[k];
  }
  idft2_planes(hat);
  return hat;
}

}  // namespace se2recon
