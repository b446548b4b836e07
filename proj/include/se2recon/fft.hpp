#pragma once

#include "se2recon/grid.hpp"

namespace se2recon {

// Unnormalized forward DFT: f_hat(xi) = sum_x exp(-2 pi i (x1 xi1 + x2 xi2) / N) f(x).
// Parseval then reads sum_x |f|^2 = (1/N^2) sum_xi |f_hat|^2.
Spectrum dft2(const Image& img);
Spectrum dft2(const ComplexImage& img);

// Inverse of dft2: (1/N^2) sum_xi exp(+2 pi i x.xi / N) f_hat(xi).
ComplexImage idft2(const Spectrum& spec);

// Circular convolution via the convolution theorem, idft2(dft2(f) * dft2(g)).
ComplexImage circ_convolve(const ComplexImage& f, const ComplexImage& g);
ComplexImage circ_convolve(const Image& f, const Image& g);

// Batched in-place per-plane transforms for stacks. Forward is unnormalized,
// inverse carries the 1/N^2 factor, matching dft2/idft2 plane by plane.
void dft2_planes(CoefficientStack& stack);
void idft2_planes(CoefficientStack& stack);

}  // namespace se2recon
