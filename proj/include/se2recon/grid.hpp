#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "se2recon/errors.hpp"

namespace se2recon {

using cplx = std::complex<double>;

// N x N real pixel grid, row-major. Intensities are nominally 0..255 at the
// I/O boundary and unconstrained internally.
struct Image {
  int n = 0;
  std::vector<double> data;

  Image() = default;
  explicit Image(int n_) : n(n_), data(static_cast<std::size_t>(n_) * n_, 0.0) {}

  double& operator()(int r, int c) { return data[static_cast<std::size_t>(r) * n + c]; }
  double operator()(int r, int c) const { return data[static_cast<std::size_t>(r) * n + c]; }
};

// N x N complex spatial grid. Wavelet planes and inverse transforms are
// complex even when the source image is real.
struct ComplexImage {
  int n = 0;
  std::vector<cplx> data;

  ComplexImage() = default;
  explicit ComplexImage(int n_) : n(n_), data(static_cast<std::size_t>(n_) * n_) {}
  explicit ComplexImage(const Image& img) : n(img.n), data(img.data.begin(), img.data.end()) {}

  cplx& operator()(int r, int c) { return data[static_cast<std::size_t>(r) * n + c]; }
  cplx operator()(int r, int c) const { return data[static_cast<std::size_t>(r) * n + c]; }
};

// N x N complex frequency grid. Storage index k maps to the signed frequency
// signed_freq(k, n) in [-N/2, N/2).
struct Spectrum {
  int n = 0;
  std::vector<cplx> data;

  Spectrum() = default;
  explicit Spectrum(int n_) : n(n_), data(static_cast<std::size_t>(n_) * n_) {}

  cplx& operator()(int r, int c) { return data[static_cast<std::size_t>(r) * n + c]; }
  cplx operator()(int r, int c) const { return data[static_cast<std::size_t>(r) * n + c]; }
};

// N x N x M complex coefficients F(x, j), plane-major: the angle index j is
// outermost, rows and columns follow the Image layout.
struct CoefficientStack {
  int n = 0;
  int m = 0;
  std::vector<cplx> data;

  CoefficientStack() = default;
  CoefficientStack(int n_, int m_)
      : n(n_), m(m_), data(static_cast<std::size_t>(n_) * n_ * m_) {}

  cplx& operator()(int r, int c, int j) {
    return data[(static_cast<std::size_t>(j) * n + r) * n + c];
  }
  cplx operator()(int r, int c, int j) const {
    return data[(static_cast<std::size_t>(j) * n + r) * n + c];
  }

  std::span<cplx> plane(int j) {
    return {data.data() + static_cast<std::size_t>(j) * n * n,
            static_cast<std::size_t>(n) * n};
  }
  std::span<const cplx> plane(int j) const {
    return {data.data() + static_cast<std::size_t>(j) * n * n,
            static_cast<std::size_t>(n) * n};
  }
};

// Signed frequency coordinate, each component in [-N/2, N/2).
struct FreqCoord {
  int xi1 = 0;
  int xi2 = 0;
};

// Maps a storage index in [0, n) to its signed-frequency representative.
inline int signed_freq(int index, int n) { return index < n / 2 ? index : index - n; }

inline double sq_norm(const Image& f) {
  double s = 0;
  for (double v : f.data) s += v * v;
  return s;
}
inline double sq_norm(std::span<const cplx> v) {
  double s = 0;
  for (const cplx& z : v) s += std::norm(z);
  return s;
}
inline double sq_norm(const ComplexImage& f) { return sq_norm(std::span<const cplx>(f.data)); }
inline double sq_norm(const Spectrum& f) { return sq_norm(std::span<const cplx>(f.data)); }
inline double sq_norm(const CoefficientStack& f) { return sq_norm(std::span<const cplx>(f.data)); }

template <typename T>
double l2_norm(const T& f) {
  return std::sqrt(sq_norm(f));
}

inline cplx inner(std::span<const cplx> a, std::span<const cplx> b) {
  cplx s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * std::conj(b[i]);
  return s;
}
inline cplx inner(const CoefficientStack& a, const CoefficientStack& b) {
  return inner(std::span<const cplx>(a.data), std::span<const cplx>(b.data));
}
inline cplx inner(const ComplexImage& a, const ComplexImage& b) {
  return inner(std::span<const cplx>(a.data), std::span<const cplx>(b.data));
}

inline void require_same_grid(int na, int nb, const char* what) {
  if (na != nb) {
    throw DimensionError(std::string(what) + ": grid sizes differ (" + std::to_string(na) +
                         " vs " + std::to_string(nb) + ")");
  }
}

}  // namespace se2recon
