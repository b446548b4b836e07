#include "se2recon/feature_map.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace se2recon {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Unbiased uniform index in [0, m) by rejection.
std::uint32_t uniform_index(std::mt19937_64& rng, std::uint32_t m) {
  const std::uint64_t bound = (UINT64_MAX / m) * m;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= bound);
  return static_cast<std::uint32_t>(x % m);
}

// Uniform double in [0, 1) from the top 53 bits.
double uniform_unit(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

void validate_nm(int n, int m) {
  if (n < 1) throw ContractError("feature map: n must be >= 1");
  if (m < 1) throw ContractError("feature map: m must be >= 1");
  if (m > 65535) throw ContractError("feature map: m exceeds the u16 index range");
}

void require_map_dims(const CoefficientStack& stack, const FeatureMap& map, const char* what) {
  if (stack.n != map.n || stack.m != map.m) {
    throw DimensionError(std::string(what) + ": stack is " + std::to_string(stack.n) + "x" +
                         std::to_string(stack.n) + "x" + std::to_string(stack.m) +
                         ", map is " + std::to_string(map.n) + "x" + std::to_string(map.n) +
                         " with m = " + std::to_string(map.m));
  }
}

}  // namespace

FeatureMap gen_random_map(int n, int m, std::uint64_t seed) {
  validate_nm(n, m);
  FeatureMap map;
  map.n = n;
  map.m = m;
  map.kind = MapKind::random;
  map.seed = seed;
  map.theta.resize(static_cast<std::size_t>(n) * n);
  std::mt19937_64 rng(seed);
  for (auto& t : map.theta) t = static_cast<std::uint16_t>(uniform_index(rng, m));
  return map;
}

PinwheelField pinwheel_field_from_phases(int n, double rho, std::span<const double> gamma) {
  if (n < 1) throw ContractError("pinwheel field: n must be >= 1");
  if (!(rho > 0)) throw ContractError("pinwheel field: rho must be > 0");
  if (gamma.size() < 8) throw ContractError("pinwheel field: need n_alpha >= 8");

  const int n_alpha = static_cast<int>(gamma.size());
  const double weight = kTwoPi / n_alpha;

  std::vector<double> cos_a(n_alpha), sin_a(n_alpha);
  for (int k = 0; k < n_alpha; ++k) {
    const double alpha = kTwoPi * k / n_alpha;
    cos_a[k] = std::cos(alpha);
    sin_a[k] = std::sin(alpha);
  }

  PinwheelField field;
  field.n = n;
  field.rho = rho;
  field.n_alpha = n_alpha;
  field.phi.resize(static_cast<std::size_t>(n) * n);

  // Separable phase: exp(i rho x1 cos a) per row times exp(i (rho x2 sin a + gamma)) per
  // column, accumulated per quadrature node.
  std::vector<cplx> row_phase(static_cast<std::size_t>(n));
  std::vector<cplx> col_phase(static_cast<std::size_t>(n));
  for (int k = 0; k < n_alpha; ++k) {
    for (int r = 0; r < n; ++r) {
      const double x1 = r - n / 2;
      row_phase[r] = std::polar(1.0, rho * x1 * cos_a[k]);
    }
    for (int c = 0; c < n; ++c) {
      const double x2 = c - n / 2;
      col_phase[c] = std::polar(weight, rho * x2 * sin_a[k] + gamma[k]);
    }
    for (int r = 0; r < n; ++r) {
      const cplx rp = row_phase[r];
      cplx* out = field.phi.data() + static_cast<std::size_t>(r) * n;
      for (int c = 0; c < n; ++c) out[c] += rp * col_phase[c];
    }
  }
  return field;
}

PinwheelField gen_pinwheel_field(int n, double rho, int n_alpha, std::uint64_t seed) {
  if (n_alpha < 8) throw ContractError("pinwheel field: need n_alpha >= 8");
  std::mt19937_64 rng(seed);
  std::vector<double> gamma(static_cast<std::size_t>(n_alpha));
  for (auto& g : gamma) g = kTwoPi * uniform_unit(rng);
  PinwheelField field = pinwheel_field_from_phases(n, rho, gamma);
  field.seed = seed;
  return field;
}

FeatureMap quantize_phase(const PinwheelField& field, int m) {
  validate_nm(field.n, m);
  FeatureMap map;
  map.n = field.n;
  map.m = m;
  map.kind = MapKind::pinwheel;
  map.rho = field.rho;
  map.seed = field.seed;
  map.theta.resize(field.phi.size());
  for (std::size_t k = 0; k < field.phi.size(); ++k) {
    const cplx z = field.phi[k];
    double angle = (z == cplx{0.0, 0.0}) ? 0.0 : std::atan2(z.imag(), z.real());
    if (angle < 0) angle += kTwoPi;
    int idx = static_cast<int>(std::floor(m / kTwoPi * angle));
    if (idx >= m) idx = m - 1;  // guards the angle -> 2 pi rounding edge
    map.theta[k] = static_cast<std::uint16_t>(idx);
  }
  return map;
}

FeatureMap gen_pinwheel_map(int n, int m, double rho, int n_alpha, std::uint64_t seed) {
  return quantize_phase(gen_pinwheel_field(n, rho, n_alpha, seed), m);
}

FeatureMap constant_map(int n, int m, int j) {
  validate_nm(n, m);
  if (j < 0 || j >= m) {
    throw ContractError("constant map: j = " + std::to_string(j) + " is out of [0, " +
                        std::to_string(m) + ")");
  }
  FeatureMap map;
  map.n = n;
  map.m = m;
  map.kind = MapKind::constant;
  map.constant_j = j;
  map.theta.assign(static_cast<std::size_t>(n) * n, static_cast<std::uint16_t>(j));
  return map;
}

CoefficientStack select(const CoefficientStack& stack, const FeatureMap& map) {
  require_map_dims(stack, map, "select");
  CoefficientStack out(stack.n, stack.m);
  const std::size_t n2 = static_cast<std::size_t>(stack.n) * stack.n;
  for (std::size_t x = 0; x < n2; ++x) {
    const std::size_t j = map.theta[x];
    out.data[j * n2 + x] = stack.data[j * n2 + x];
  }
  return out;
}

CoefficientStack select_complement(const CoefficientStack& stack, const FeatureMap& map) {
  require_map_dims(stack, map, "select_complement");
  CoefficientStack out = stack;
  const std::size_t n2 = static_cast<std::size_t>(stack.n) * stack.n;
  for (std::size_t x = 0; x < n2; ++x) {
    const std::size_t j = map.theta[x];
    out.data[j * n2 + x] = 0.0;
  }
  return out;
}

}  // namespace se2recon
