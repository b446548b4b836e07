#include "se2recon/synth.hpp"

#include <cmath>
#include <random>

#include "se2recon/fft.hpp"

namespace se2recon {

Image synth_texture(int n, std::uint64_t seed, double alpha) {
  if (n <= 0 || n % 2 != 0) throw DimensionError("synth_texture: n must be positive and even");

  // Build-independent uniform doubles: take the top 53 bits of the raw draw.
  std::mt19937_64 rng(seed);
  auto unit = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

  Image noise(n);
  for (double& v : noise.data) v = unit() - 0.5;

  Spectrum hat = dft2(noise);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const double x1 = signed_freq(r, n);
      const double x2 = signed_freq(c, n);
      const double radius = std::sqrt(x1 * x1 + x2 * x2);
      hat(r, c) *= std::pow(1.0 + radius, -alpha);
    }
  }
  const ComplexImage shaped = idft2(hat);

  Image out(n);
  for (std::size_t k = 0; k < out.data.size(); ++k) out.data[k] = shaped.data[k].real();

  double lo = out.data[0];
  double hi = out.data[0];
  for (double v : out.data) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double span = hi - lo;
  if (span > 0) {
    for (double& v : out.data) v = (v - lo) / span * 255.0;
  }
  return out;
}

}  // namespace se2recon
