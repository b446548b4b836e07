#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "se2recon/grid.hpp"

namespace se2recon {

enum class MapKind : std::uint8_t { random, pinwheel, constant };

// Assignment of one orientation index to each pixel. The graph of the map is
// the observed subset of the coefficient stack.
struct FeatureMap {
  int n = 0;
  int m = 0;
  std::vector<std::uint16_t> theta;  // row-major, entries in [0, m)
  MapKind kind = MapKind::random;
  double rho = 0;                    // pinwheel maps only
  int constant_j = 0;                // constant maps only
  std::uint64_t seed = 0;

  std::uint16_t operator()(int r, int c) const {
    return theta[static_cast<std::size_t>(r) * n + c];
  }
};

// Random superposition of plane waves of wavenumber rho with i.i.d. uniform
// phases, evaluated on centered coordinates x in [-N/2, N/2).
struct PinwheelField {
  int n = 0;
  std::vector<cplx> phi;  // row-major
  double rho = 0;
  int n_alpha = 0;
  std::uint64_t seed = 0;

  cplx operator()(int r, int c) const { return phi[static_cast<std::size_t>(r) * n + c]; }
};

// I.i.d. uniform orientation per pixel, deterministic per seed.
FeatureMap gen_random_map(int n, int m, std::uint64_t seed);

// phi(x) = (2 pi / n_alpha) sum_k exp(i (rho (x1 cos a_k + x2 sin a_k) + gamma_k))
// with a_k = 2 pi k / n_alpha. Quadrature core taking explicit phases.
PinwheelField pinwheel_field_from_phases(int n, double rho, std::span<const double> gamma);

// Seeded wrapper: gamma_k i.i.d. uniform in [0, 2 pi).
PinwheelField gen_pinwheel_field(int n, double rho, int n_alpha, std::uint64_t seed);

// Theta(x) = floor(m / (2 pi) * angle(phi(x))) with angle in [0, 2 pi) and
// angle(0) defined as 0.
FeatureMap quantize_phase(const PinwheelField& field, int m);
FeatureMap gen_pinwheel_map(int n, int m, double rho, int n_alpha, std::uint64_t seed);

// All pixels mapped to orientation j.
FeatureMap constant_map(int n, int m, int j);

// Zeroes every coefficient off the graph of the map: a diagonal orthogonal
// projection of the stack space.
CoefficientStack select(const CoefficientStack& stack, const FeatureMap& map);

// F - select(F, map), the complementary orthogonal projection.
CoefficientStack select_complement(const CoefficientStack& stack, const FeatureMap& map);

}  // namespace se2recon
