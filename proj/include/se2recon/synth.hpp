#pragma once

#include <cstdint>

#include "se2recon/grid.hpp"

namespace se2recon {

// Synthetic natural-image-like texture: seeded white noise shaped by a
// 1/(1+|xi|)^alpha spectral envelope, normalized to the 0..255 range.
// Deterministic per (n, seed, alpha).
Image synth_texture(int n, std::uint64_t seed, double alpha = 1.2);

}  // namespace se2recon
