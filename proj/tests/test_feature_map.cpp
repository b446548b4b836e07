#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "se2recon/feature_map.hpp"
#include "se2recon/wavelet.hpp"
#include "support/pinwheel_stats.hpp"

using namespace se2recon;
using namespace se2recon::testsupport;

namespace {

std::mt19937_64 rng(4242);

double unit() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

CoefficientStack random_stack(int n, int m) {
  CoefficientStack f(n, m);
  for (auto& v : f.data) v = cplx(unit() - 0.5, unit() - 0.5);
  return f;
}

}  // namespace

TEST_CASE("random map with a single angle is all zero") {
  const FeatureMap map = gen_random_map(16, 1, 9);
  for (auto v : map.theta) CHECK(v == 0);
}

TEST_CASE("random map generation is deterministic per seed") {
  const FeatureMap a = gen_random_map(64, 8, 5);
  const FeatureMap b = gen_random_map(64, 8, 5);
  const FeatureMap c = gen_random_map(64, 8, 6);
  CHECK(a.theta == b.theta);
  CHECK(a.theta != c.theta);
}

TEST_CASE("random map entries are in range and roughly uniform") {
  const int n = 512, m = 12;
  const FeatureMap map = gen_random_map(n, m, 17);
  std::vector<int> counts(static_cast<std::size_t>(m), 0);
  for (auto v : map.theta) {
    REQUIRE(v < m);
    ++counts[v];
  }
  const double total = static_cast<double>(n) * n;
  const double expected = total / m;
  const double sigma = std::sqrt(total * (1.0 / m) * (1.0 - 1.0 / m));
  for (int j = 0; j < m; ++j) {
    CHECK(std::abs(counts[static_cast<std::size_t>(j)] - expected) < 4.0 * sigma);
  }
}

TEST_CASE("pinwheel field with zero phases approximates the Bessel profile") {
  // With all quadrature phases zero the angular integral reduces to
  // 2 pi J_0(rho |x|); the rectangle rule is spectrally accurate here.
  const int n = 64;
  const double rho = 0.8;
  const std::vector<double> gamma(256, 0.0);
  const PinwheelField field = pinwheel_field_from_phases(n, rho, gamma);
  for (int r = 0; r < n; r += 7) {
    for (int c = 0; c < n; c += 7) {
      const double x1 = r - n / 2;
      const double x2 = c - n / 2;
      const double want = 2.0 * std::numbers::pi * std::cyl_bessel_j(0, rho * std::hypot(x1, x2));
      CHECK(std::abs(field(r, c) - cplx(want, 0.0)) < 1e-8);
    }
  }
}

TEST_CASE("pinwheel field generation is deterministic per seed") {
  const PinwheelField a = gen_pinwheel_field(64, 0.8, 64, 3);
  const PinwheelField b = gen_pinwheel_field(64, 0.8, 64, 3);
  CHECK(a.phi == b.phi);
}

TEST_CASE("pinwheel field spectrum concentrates on the predicted ring") {
  const int n = 256;
  for (double rho : {0.4, 0.8}) {
    const double ring = n * rho / (2.0 * std::numbers::pi);
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const PinwheelField field = gen_pinwheel_field(n, rho, 64, seed);
      const auto profile = radial_spectrum(field);
      const int peak = radial_peak(profile);
      CHECK(std::abs(peak - ring) <= 0.10 * ring);
      CHECK(ring_energy_fraction(profile, ring, 0.25 * ring) >= 0.60);
    }
  }
}

TEST_CASE("quantized phases land in range and angle(0) maps to zero") {
  // Mid-bin angles (pi/8 + k pi/4 for m = 8) keep the floor away from
  // floating-point bin boundaries.
  const double mid = std::numbers::pi / 8.0;
  const double step = std::numbers::pi / 4.0;
  PinwheelField field;
  field.n = 2;
  field.rho = 0.8;
  field.phi = {cplx(0.0, 0.0), std::polar(1.0, mid + step), std::polar(2.0, mid + 5 * step),
               std::polar(0.5, -mid)};
  const FeatureMap map = quantize_phase(field, 8);
  CHECK(map.theta[0] == 0);  // angle(0) defined as 0
  CHECK(map.theta[1] == 1);
  CHECK(map.theta[2] == 5);
  CHECK(map.theta[3] == 7);  // negative phase wraps into [0, 2 pi)
  for (auto v : map.theta) CHECK(v < 8);
}

TEST_CASE("pinwheel map with a single angle is all zero") {
  const FeatureMap map = gen_pinwheel_map(64, 1, 0.8, 64, 2);
  for (auto v : map.theta) CHECK(v == 0);
}

TEST_CASE("pinwheel map generation is deterministic per seed") {
  const FeatureMap a = gen_pinwheel_map(64, 12, 0.4, 64, 11);
  const FeatureMap b = gen_pinwheel_map(64, 12, 0.4, 64, 11);
  CHECK(a.theta == b.theta);
}

TEST_CASE("pinwheel counts grow with rho") {
  const int n = 256;
  std::vector<std::size_t> counts;
  for (double rho : {0.2, 0.4, 0.8}) {
    const PinwheelField field = gen_pinwheel_field(n, rho, 64, 7);
    counts.push_back(find_pinwheels(field).size());
  }
  CHECK(counts[0] < counts[1]);
  CHECK(counts[1] < counts[2]);
}

TEST_CASE("winding detector finds the singularity of a synthetic vortex") {
  // phi(x) = (x - center) as a complex number: one +1 singularity.
  const int n = 16;
  PinwheelField field;
  field.n = n;
  field.phi.resize(static_cast<std::size_t>(n) * n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      field.phi[static_cast<std::size_t>(r) * n + c] = cplx(r - 7.5, c - 7.5);
    }
  }
  const auto points = find_pinwheels(field);
  REQUIRE(points.size() == 1);
  CHECK(points[0].r == doctest::Approx(7.5));
  CHECK(points[0].c == doctest::Approx(7.5));
}

TEST_CASE("constant map fills with the given angle and validates the range") {
  const FeatureMap map = constant_map(4, 12, 0);
  CHECK(map.n == 4);
  for (auto v : map.theta) CHECK(v == 0);
  CHECK_THROWS_AS((void)constant_map(4, 2, 3), ContractError);
  CHECK_THROWS_AS((void)constant_map(4, 2, -1), ContractError);
}

TEST_CASE("selecting with a constant map keeps exactly one plane") {
  const int n = 16, m = 4, j = 2;
  const WaveletParams wp{n, m, 51.0 * n / 512, 170.0 * n / 512, 252.0 * n / 512};
  const WaveletSystem sys = build_system(wp);
  Image f(n);
  for (auto& v : f.data) v = unit();
  const CoefficientStack stack = forward(f, sys);
  const CoefficientStack sel = select(stack, constant_map(n, m, j));
  for (int plane = 0; plane < m; ++plane) {
    for (std::size_t k = 0; k < sel.plane(plane).size(); ++k) {
      if (plane == j) {
        CHECK(sel.plane(plane)[k] == stack.plane(plane)[k]);
      } else {
        CHECK(sel.plane(plane)[k] == cplx(0.0, 0.0));
      }
    }
  }
}

TEST_CASE("select keeps one entry per pixel") {
  const int n = 8, m = 4;
  CoefficientStack ones(n, m);
  for (auto& v : ones.data) v = 1.0;
  const CoefficientStack sel = select(ones, gen_random_map(n, m, 1));
  int nonzero = 0;
  for (const auto& v : sel.data) nonzero += v != cplx(0.0, 0.0);
  CHECK(nonzero == n * n);
}

TEST_CASE("select is idempotent and self-adjoint") {
  const int n = 8, m = 4;
  const FeatureMap map = gen_random_map(n, m, 2);
  const CoefficientStack f = random_stack(n, m);
  const CoefficientStack g = random_stack(n, m);

  const CoefficientStack once = select(f, map);
  const CoefficientStack twice = select(once, map);
  CHECK(once.data == twice.data);

  const cplx a = inner(once, g);
  const cplx b = inner(f, select(g, map));
  CHECK(std::abs(a - b) <= 1e-12 * std::abs(a));
}

TEST_CASE("select rejects mismatched dimensions") {
  const CoefficientStack f = random_stack(8, 4);
  CHECK_THROWS_AS((void)select(f, gen_random_map(8, 3, 1)), DimensionError);
  CHECK_THROWS_AS((void)select(f, gen_random_map(4, 4, 1)), DimensionError);
}

TEST_CASE("select and its complement split the stack exactly") {
  const int n = 8, m = 4;
  const FeatureMap map = gen_random_map(n, m, 3);
  const CoefficientStack f = random_stack(n, m);
  const CoefficientStack sel = select(f, map);
  const CoefficientStack com = select_complement(f, map);

  for (std::size_t k = 0; k < f.data.size(); ++k) {
    CHECK(sel.data[k] + com.data[k] == f.data[k]);
  }

  // Complement of a graph-supported stack vanishes.
  const CoefficientStack res = select_complement(sel, map);
  for (const auto& v : res.data) CHECK(v == cplx(0.0, 0.0));

  // Pythagoras for the orthogonal split.
  const double total = sq_norm(f);
  CHECK(std::abs(sq_norm(sel) + sq_norm(com) - total) <= 1e-12 * total);
}
