#pragma once

#include <cstdint>
#include <vector>

#include "se2recon/grid.hpp"

namespace se2recon {

// Parameters of the rotated-Gabor system. s, p and r are measured in
// frequency-grid units and scale linearly with n when changing resolution.
struct WaveletParams {
  int n = 0;     // grid size, even
  int m = 0;     // number of orientations
  double s = 0;  // Gaussian width of the wavelet spectrum
  double p = 0;  // radial carrier frequency
  double r = 0;  // band radius
};

// Frame bounds of the transform restricted to the band: a = min, b = max of
// the Calderon function over the band mask. cond = sqrt(b/a) is the condition
// number of the analysis operator.
struct FrameReport {
  double a = 0;
  double b = 0;
  double ratio = 0;
  double cond = 0;
};

// Precomputed per-angle wavelet spectra and derived multipliers. Immutable
// after build_system and shareable across threads.
struct WaveletSystem {
  WaveletParams params;
  // psi_hat[j][k] = exp(-|xi + p (cos t_j, sin t_j)|^2 / (2 s^2)) with
  // t_j = 2 pi j / m and xi the signed frequency at storage index k.
  std::vector<std::vector<double>> psi_hat;
  std::vector<double> calderon;       // sum_j psi_hat_j^2
  std::vector<std::uint8_t> mask;     // 1 iff xi1^2 + xi2^2 < r^2
  std::vector<double> dual_mult;      // mask / calderon, exactly 0 off-mask
  double frame_lower = 0;             // min of calderon over the mask
  double frame_upper = 0;             // max of calderon over the mask
};

// Builds the wavelet system. Throws IllConditionedError when the Calderon
// lower bound vanishes numerically on the band (frame_lower/frame_upper
// below 1e-12), which signals that r is too large for the chosen (s, p).
WaveletSystem build_system(const WaveletParams& params);

// Frame bounds of the system as built (squared-spectra Calderon function).
FrameReport frame_report(const WaveletSystem& sys);

// Diagnostic alternative: bounds of the plain sum of spectra sum_j psi_hat_j
// over the same mask. Reported alongside frame_report by the inspect command.
FrameReport frame_report_linear(const WaveletSystem& sys);

// Dual wavelet spectrum, gamma_hat_j = dual_mult * psi_hat_j.
Spectrum gamma_hat(const WaveletSystem& sys, int j);

// Wavelet spectrum plane as a Spectrum value.
Spectrum psi_hat_spectrum(const WaveletSystem& sys, int j);

// Forward transform: plane j is idft2(f_hat * psi_hat_j).
CoefficientStack forward(const ComplexImage& f, const WaveletSystem& sys);
CoefficientStack forward(const Image& f, const WaveletSystem& sys);

// Adjoint of forward: spectrum is sum_j F_hat_j * conj(psi_hat_j).
ComplexImage adjoint(const CoefficientStack& stack, const WaveletSystem& sys);

// Inverse on the band: adjoint with the dual wavelet, i.e. the spectrum is
// dual_mult * sum_j F_hat_j * conj(psi_hat_j). Left inverse of forward on
// band-limited inputs.
ComplexImage inverse(const CoefficientStack& stack, const WaveletSystem& sys);

// Restriction of the spectrum to the band mask. Idempotent.
ComplexImage bandlimit(const ComplexImage& f, const WaveletSystem& sys);
ComplexImage bandlimit(const Image& f, const WaveletSystem& sys);

// Orthogonal projection of the coefficient space onto the range of forward
// on band-limited images:
//   proj_hat(xi, j) = dual_mult(xi) * psi_hat_j(xi) * sum_l F_hat_l(xi) * conj(psi_hat_l(xi)).
CoefficientStack project(const CoefficientStack& stack, const WaveletSystem& sys);

}  // namespace se2recon
