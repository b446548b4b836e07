#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "se2recon/feature_map.hpp"
#include "se2recon/oracle.hpp"
#include "se2recon/reconstruct.hpp"
#include "se2recon/synth.hpp"
#include "se2recon/wavelet.hpp"

using namespace se2recon;

namespace {

WaveletParams scaled_params(int n, int m) {
  const double k = n / 512.0;
  return {n, m, 51.0 * k, 170.0 * k, 252.0 * k};
}

struct DenseInstance {
  WaveletSystem sys;
  FeatureMap map;
  DenseOperator p;
  DenseOperator q;
  SolvabilityCertificate cert;
};

DenseInstance make_instance(int n, int m, std::uint64_t seed) {
  DenseInstance inst{build_system(scaled_params(n, m)), gen_random_map(n, m, seed), {}, {}, {}};
  inst.p = materialize([&](const CoefficientStack& x) { return project(x, inst.sys); }, n, m);
  inst.q = materialize([&](const CoefficientStack& x) { return select(x, inst.map); }, n, m);
  inst.cert = certify(inst.p, inst.q);
  return inst;
}

}  // namespace

TEST_CASE("delta metric unit contract") {
  const int n = 32;
  Image f(n), g(n);

  CHECK(delta_error(f, f) == 0.0);

  for (auto& v : f.data) v = 255.0;
  for (auto& v : g.data) v = 0.0;
  CHECK(std::abs(delta_error(f, g) - 100.0) <= 1e-12);

  for (auto& v : f.data) v = 77.0;
  for (auto& v : g.data) v = 77.0 + 25.5;
  CHECK(std::abs(delta_error(f, g) - 10.0) <= 1e-12);
}

TEST_CASE("delta metric compares complex reconstructions through the real part") {
  const int n = 8;
  Image f(n);
  ComplexImage g(n);
  for (auto& v : g.data) v = cplx(0.0, 123.0);  // imaginary part ignored
  CHECK(delta_error(f, g) == 0.0);
}

TEST_CASE("delta metric rejects mismatched grids") {
  CHECK_THROWS_AS((void)delta_error(Image(8), Image(4)), DimensionError);
}

TEST_CASE("pr_step on the zero instance stays zero") {
  const int n = 8, m = 4;
  const WaveletSystem sys = build_system(scaled_params(n, m));
  const FeatureMap map = gen_random_map(n, m, 1);
  const CoefficientStack zero(n, m);
  const auto [h, next] = pr_step(zero, zero, sys, map);
  for (const auto& v : h.data) CHECK(v == cplx(0.0, 0.0));
  for (const auto& v : next.data) CHECK(v == cplx(0.0, 0.0));
}

TEST_CASE("pr_step demands graph-supported data") {
  const int n = 8, m = 4;
  const WaveletSystem sys = build_system(scaled_params(n, m));
  const FeatureMap map = gen_random_map(n, m, 1);
  CoefficientStack off(n, m);
  for (auto& v : off.data) v = 1.0;  // dense stack cannot be graph-supported
  CHECK_THROWS_AS((void)pr_step(off, off, sys, map), ContractError);
}

TEST_CASE("with one angle the map covers everything and the data never moves") {
  // Single isotropic channel: the scaled directional parameters cannot cover
  // the band with one plane, so use a centered Gaussian wide enough for it.
  const int n = 16, m = 1;
  const WaveletSystem sys = build_system({n, m, 5.0, 0.0, 6.0});
  const FeatureMap map = constant_map(n, m, 0);
  const Image src = synth_texture(n, 5);
  const ComplexImage band = bandlimit(src, sys);
  const CoefficientStack f0 = select(forward(band, sys), map);

  const auto [h, next] = pr_step(f0, f0, sys, map);
  CHECK(next.data == f0.data);

  // Full observation solves in one projection: inverse(H_1) is the source.
  const ComplexImage rec = inverse(h, sys);
  double num = 0;
  for (std::size_t k = 0; k < rec.data.size(); ++k) num += std::norm(rec.data[k] - band.data[k]);
  CHECK(std::sqrt(num) <= 1e-8 * l2_norm(band));
}

TEST_CASE("one step matches the dense-operator evaluation") {
  const int n = 8, m = 4;
  const DenseInstance inst = make_instance(n, m, 21);
  const Image src = synth_texture(n, 9);
  const CoefficientStack f0 = select(forward(bandlimit(src, inst.sys), inst.sys), inst.map);

  const auto [h, next] = pr_step(f0, f0, inst.sys, inst.map);
  const Eigen::VectorXcd f0v = to_vector(f0);
  const Eigen::MatrixXcd qperp =
      Eigen::MatrixXcd::Identity(inst.q.mat.rows(), inst.q.mat.cols()) - inst.q.mat;
  const Eigen::VectorXcd want = qperp * (inst.p.mat * f0v) + f0v;
  const Eigen::VectorXcd got = to_vector(next);
  CHECK((got - want).norm() <= 1e-10 * want.norm());
}

TEST_CASE("reconstructing the zero image stays at zero error") {
  const int n = 16, m = 4;
  const WaveletSystem sys = build_system(scaled_params(n, m));
  IterationConfig cfg;
  cfg.max_iters = 5;
  const RunReport report = reconstruct(Image(n), sys, gen_random_map(n, m, 2), cfg);
  REQUIRE(!report.deltas.empty());
  for (const auto& [iter, d] : report.deltas) CHECK(d == 0.0);
}

TEST_CASE("iteration limit matches the dense direct solve") {
  const int n = 8, m = 4;
  const DenseInstance inst = make_instance(n, m, 1);
  REQUIRE(inst.cert.solvable);

  const Image src = synth_texture(n, 31);
  const CoefficientStack f0 = select(forward(bandlimit(src, inst.sys), inst.sys), inst.map);
  const Eigen::VectorXcd want = direct_solve(inst.p, inst.q, to_vector(f0));

  IterationConfig cfg;
  cfg.max_iters = static_cast<int>(std::ceil(std::log(1e-8) / std::log(inst.cert.sigma)));
  cfg.record_every = cfg.max_iters;
  CoefficientStack last;
  cfg.observer = [&last](int, const CoefficientStack&, const CoefficientStack& f) { last = f; };
  (void)reconstruct_from_stack(f0, inst.sys, inst.map, cfg);

  CHECK((to_vector(last) - want).norm() <= 1e-6 * want.norm());
}

TEST_CASE("error contraction respects the operator-norm bound") {
  const int n = 8, m = 4;
  const DenseInstance inst = make_instance(n, m, 2);
  REQUIRE(inst.cert.solvable);
  const double sigma = inst.cert.sigma;

  // A known truth in the range of the projection; its selection is the data.
  const CoefficientStack truth = project(
      [&] {
        CoefficientStack f(n, m);
        std::mt19937_64 gen(99);
        for (auto& v : f.data) {
          v = cplx(static_cast<double>(gen() >> 11) * 0x1.0p-53 - 0.5,
                   static_cast<double>(gen() >> 11) * 0x1.0p-53 - 0.5);
        }
        return f;
      }(),
      inst.sys);
  const CoefficientStack f0 = select(truth, inst.map);
  const double truth_norm = l2_norm(truth);

  IterationConfig cfg;
  cfg.max_iters = 30;
  cfg.record_every = 1;
  std::vector<double> errs;
  cfg.observer = [&](int, const CoefficientStack&, const CoefficientStack& f) {
    double num = 0;
    for (std::size_t k = 0; k < f.data.size(); ++k) num += std::norm(f.data[k] - truth.data[k]);
    errs.push_back(std::sqrt(num));
  };
  (void)reconstruct_from_stack(f0, inst.sys, inst.map, cfg);

  for (std::size_t i = 0; i < errs.size(); ++i) {
    const double bound = std::pow(sigma, static_cast<double>(i) + 2.0) * truth_norm;
    CHECK(errs[i] <= bound * (1.0 + 1e-6));
  }
}

TEST_CASE("iterates stay norm-bounded on a solvable instance") {
  const int n = 8, m = 4;
  const DenseInstance inst = make_instance(n, m, 3);
  REQUIRE(inst.cert.solvable);

  const Image src = synth_texture(n, 13);
  const CoefficientStack f0 = select(forward(bandlimit(src, inst.sys), inst.sys), inst.map);
  const double f0_norm = l2_norm(f0);
  const double cap = f0_norm / (1.0 - inst.cert.sigma) + 1e-6;

  IterationConfig cfg;
  cfg.max_iters = 200;
  cfg.record_every = 1;
  cfg.observer = [&](int, const CoefficientStack&, const CoefficientStack& f) {
    CHECK(l2_norm(f) <= cap);
  };
  (void)reconstruct_from_stack(f0, inst.sys, inst.map, cfg);
}

TEST_CASE("one-iteration runs return identical first and final images") {
  const int n = 16, m = 4;
  const WaveletSystem sys = build_system(scaled_params(n, m));
  IterationConfig cfg;
  cfg.max_iters = 1;
  const RunReport rep = reconstruct(synth_texture(n, 8), sys, gen_random_map(n, m, 4), cfg);
  CHECK(rep.iters_run == 1);
  CHECK(rep.first_image.data == rep.final_image.data);
}

TEST_CASE("telemetry stride records first, strided, and final iterations") {
  const int n = 16, m = 4;
  const WaveletSystem sys = build_system(scaled_params(n, m));
  IterationConfig cfg;
  cfg.max_iters = 25;
  cfg.record_every = 10;
  const RunReport rep = reconstruct(synth_texture(n, 8), sys, gen_random_map(n, m, 4), cfg);
  std::vector<int> iters;
  for (const auto& [it, d] : rep.deltas) iters.push_back(it);
  CHECK(iters == std::vector<int>{1, 10, 20, 25});
}

TEST_CASE("tolerance stop fires once the error is small enough") {
  const int n = 64, m = 8;
  const WaveletSystem sys = build_system(scaled_params(n, m));
  IterationConfig cfg;
  cfg.max_iters = 5000;
  cfg.tol_delta = 5.0;
  const RunReport rep = reconstruct(synth_texture(n, 42), sys, gen_random_map(n, m, 3), cfg);
  CHECK(rep.stop_reason == StopReason::tol_delta);
  CHECK(rep.iters_run < 5000);
  CHECK(rep.deltas.back().second < 5.0);
}

TEST_CASE("stall detection reports lack of progress") {
  const int n = 16, m = 4;
  const WaveletSystem sys = build_system(scaled_params(n, m));
  IterationConfig cfg;
  cfg.max_iters = 2000;
  // Progress below 99.9% per 100 iterations counts as a stall; any
  // geometric decay with a realistic rate trips this immediately.
  cfg.tol_stall = 0.999;
  const RunReport rep = reconstruct(synth_texture(n, 8), sys, gen_random_map(n, m, 4), cfg);
  CHECK(rep.stop_reason == StopReason::stall);
  CHECK(rep.iters_run < 2000);
}

TEST_CASE("decay fit recovers a synthetic exponential") {
  std::vector<std::pair<int, double>> series;
  for (int n = 1; n <= 200; ++n) series.push_back({n, std::pow(10.0, -n / 100.0)});
  const DecayFit fit = fit_decay_rate(series);
  CHECK(fit.slope == doctest::Approx(-0.01).epsilon(1e-9));
  CHECK(fit.r2 == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(!fit.hit_zero);
}

TEST_CASE("decay fit of a constant series is flat") {
  std::vector<std::pair<int, double>> series;
  for (int n = 1; n <= 100; ++n) series.push_back({n, 0.25});
  const DecayFit fit = fit_decay_rate(series);
  CHECK(fit.slope == doctest::Approx(0.0));
  CHECK(fit.r2 == doctest::Approx(1.0));
}

TEST_CASE("decay fit short-circuits on exact zeros") {
  std::vector<std::pair<int, double>> series;
  for (int n = 1; n <= 100; ++n) series.push_back({n, n < 95 ? 1.0 : 0.0});
  const DecayFit fit = fit_decay_rate(series);
  CHECK(fit.hit_zero);
  CHECK(fit.slope == -std::numeric_limits<double>::infinity());
}

TEST_CASE("decay fit requires enough samples") {
  std::vector<std::pair<int, double>> series;
  for (int n = 1; n <= 19; ++n) series.push_back({n, 1.0});
  CHECK_THROWS_AS((void)fit_decay_rate(series), ContractError);
}
