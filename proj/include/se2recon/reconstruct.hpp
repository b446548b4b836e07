#pragma once

#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "se2recon/feature_map.hpp"
#include "se2recon/grid.hpp"
#include "se2recon/wavelet.hpp"

namespace se2recon {

enum class StopReason : std::uint8_t { max_iters, tol_delta, stall };

struct IterationConfig {
  int max_iters = 1000;
  // Stop once the recorded error drops below this percentage.
  std::optional<double> tol_delta;
  // Declare a stall when the relative residual decreases by less than this
  // fraction over a 100-iteration span.
  std::optional<double> tol_stall;
  int record_every = 1;
  // Invoked at every iteration with (n, H_n, F_n); used by invariant checks.
  std::function<void(int, const CoefficientStack&, const CoefficientStack&)> observer;
};

struct RunReport {
  std::vector<std::pair<int, double>> deltas;      // (n, error vs band-limited source), %
  std::vector<std::pair<int, double>> deltas_raw;  // (n, error vs raw source), %
  std::vector<std::pair<int, double>> residuals;   // (n, |F_n - F_{n-1}| / |F_0|)
  StopReason stop_reason = StopReason::max_iters;
  Image first_image;   // real part of inverse(H_1)
  Image final_image;   // real part of inverse(H_last)
  double max_imag = 0; // largest |Im| encountered in the recovered images
  int iters_run = 0;
};

// Percent error 100 * |f - g| / (255 * N), Euclidean norm over all pixels.
// Complex reconstructions are compared through their real part.
double delta_error(const Image& f, const Image& g);
double delta_error(const Image& f, const ComplexImage& g);

// One project-and-replace step: H = project(prev), next = select_complement(H) + f0.
// The graph entries of next are assigned from f0, so select(next, map) == f0
// holds bitwise. f0 must itself be graph-supported.
std::pair<CoefficientStack, CoefficientStack> pr_step(const CoefficientStack& prev,
                                                      const CoefficientStack& f0,
                                                      const WaveletSystem& sys,
                                                      const FeatureMap& map);

// Full run from a ground-truth image: bandlimits f, samples its transform on
// the map graph, then iterates. Error telemetry compares against the
// band-limited source (primary) and the raw source (secondary).
RunReport reconstruct(const Image& f, const WaveletSystem& sys, const FeatureMap& map,
                      const IterationConfig& cfg);

// Truth-less run from observed coefficients alone; only residual telemetry.
RunReport reconstruct_from_stack(const CoefficientStack& f0, const WaveletSystem& sys,
                                 const FeatureMap& map, const IterationConfig& cfg);

struct DecayFit {
  double slope = 0;  // log10 units per iteration
  double r2 = 0;
  bool hit_zero = false;  // a sample in the window was exactly 0
};

// Least-squares slope of log10(value) vs iteration over the trailing window
// (default: last quarter of the samples). Needs at least 20 samples.
DecayFit fit_decay_rate(std::span<const std::pair<int, double>> series,
                        double window_frac = 0.25);

}  // namespace se2recon
