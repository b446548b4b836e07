#include "se2recon/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace se2recon {
namespace {

void require_graph_supported(const CoefficientStack& f0, const FeatureMap& map) {
  const std::size_t n2 = static_cast<std::size_t>(f0.n) * f0.n;
  for (std::size_t j = 0; j < static_cast<std::size_t>(f0.m); ++j) {
    for (std::size_t x = 0; x < n2; ++x) {
      if (j != map.theta[x] && f0.data[j * n2 + x] != cplx{0.0, 0.0}) {
        throw ContractError("pr_step: observed stack has data off the map graph");
      }
    }
  }
}

// next = select_complement(H) + f0, realized by assigning the graph entries
// from f0 so the replace step is exact.
CoefficientStack replace_on_graph(const CoefficientStack& h, const CoefficientStack& f0,
                                  const FeatureMap& map) {
  CoefficientStack next = h;
  const std::size_t n2 = static_cast<std::size_t>(h.n) * h.n;
  for (std::size_t x = 0; x < n2; ++x) {
    const std::size_t j = map.theta[x];
    next.data[j * n2 + x] = f0.data[j * n2 + x];
  }
  return next;
}

double max_abs_imag(const ComplexImage& g) {
  double w = 0;
  for (const cplx& z : g.data) w = std::max(w, std::abs(z.imag()));
  return w;
}

Image real_part(const ComplexImage& g) {
  Image out(g.n);
  for (std::size_t k = 0; k < g.data.size(); ++k) out.data[k] = g.data[k].real();
  return out;
}

struct TruthImages {
  Image bandlimited;
  Image raw;
};

RunReport run_iteration(const CoefficientStack& f0, const WaveletSystem& sys,
                        const FeatureMap& map, const IterationConfig& cfg,
                        const TruthImages* truth) {
  if (cfg.max_iters < 1) throw ContractError("iteration config: max_iters must be >= 1");
  if (cfg.record_every < 1) throw ContractError("iteration config: record_every must be >= 1");
  require_graph_supported(f0, map);

  RunReport report;
  const double f0_norm = l2_norm(f0);

  CoefficientStack prev = f0;
  for (int n = 1; n <= cfg.max_iters; ++n) {
    CoefficientStack h = project(prev, sys);
    CoefficientStack next = replace_on_graph(h, f0, map);

    for (const cplx& z : next.data) {
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw std::runtime_error("iteration diverged: non-finite value at step " +
                                 std::to_string(n));
      }
    }
    if (cfg.observer) cfg.observer(n, h, next);

    const bool last = (n == cfg.max_iters);
    const bool record = (n % cfg.record_every == 0) || n == 1 || last;
    bool stop = false;

    if (record) {
      double diff = 0;
      for (std::size_t k = 0; k < next.data.size(); ++k) {
        diff += std::norm(next.data[k] - prev.data[k]);
      }
      const double residual = f0_norm > 0 ? std::sqrt(diff) / f0_norm : 0.0;
      report.residuals.emplace_back(n, residual);

      if (truth || n == 1 || last) {
        const ComplexImage rec = inverse(h, sys);
        report.max_imag = std::max(report.max_imag, max_abs_imag(rec));
        if (truth) {
          const double d = delta_error(truth->bandlimited, rec);
          report.deltas.emplace_back(n, d);
          report.deltas_raw.emplace_back(n, delta_error(truth->raw, rec));
          if (cfg.tol_delta && d < *cfg.tol_delta) {
            report.stop_reason = StopReason::tol_delta;
            stop = true;
          }
        }
        if (n == 1) report.first_image = real_part(rec);
        if (last || stop) report.final_image = real_part(rec);
      }

      if (!stop && cfg.tol_stall && report.residuals.size() >= 2) {
        for (auto it = report.residuals.rbegin() + 1; it != report.residuals.rend(); ++it) {
          if (n - it->first >= 100) {
            const double old = it->second;
            if (old > 0 && (old - residual) / old < *cfg.tol_stall) {
              report.stop_reason = StopReason::stall;
              stop = true;
            }
            break;
          }
        }
      }
      if (stop && report.final_image.n == 0) {
        report.final_image = real_part(inverse(h, sys));
      }
    }

    prev = std::move(next);
    report.iters_run = n;
    if (stop) break;
  }
  // The last executed iteration always records, so final_image is set by now.
  return report;
}

}  // namespace

double delta_error(const Image& f, const Image& g) {
  require_same_grid(f.n, g.n, "delta_error");
  double s = 0;
  for (std::size_t k = 0; k < f.data.size(); ++k) {
    const double d = f.data[k] - g.data[k];
    s += d * d;
  }
  return 100.0 * std::sqrt(s) / (255.0 * f.n);
}

double delta_error(const Image& f, const ComplexImage& g) {
  require_same_grid(f.n, g.n, "delta_error");
  double s = 0;
  for (std::size_t k = 0; k < f.data.size(); ++k) {
    const double d = f.data[k] - g.data[k].real();
    s += d * d;
  }
  return 100.0 * std::sqrt(s) / (255.0 * f.n);
}

std::pair<CoefficientStack, CoefficientStack> pr_step(const CoefficientStack& prev,
                                                      const CoefficientStack& f0,
                                                      const WaveletSystem& sys,
                                                      const FeatureMap& map) {
  if (prev.n != f0.n || prev.m != f0.m) {
    throw DimensionError("pr_step: iterate and observed stack dimensions differ");
  }
  require_graph_supported(f0, map);
  CoefficientStack h = project(prev, sys);
  CoefficientStack next = replace_on_graph(h, f0, map);
  return {std::move(h), std::move(next)};
}

RunReport reconstruct(const Image& f, const WaveletSystem& sys, const FeatureMap& map,
                      const IterationConfig& cfg) {
  require_same_grid(f.n, sys.params.n, "reconstruct");
  const ComplexImage f_band = bandlimit(f, sys);
  const CoefficientStack f0 = select(forward(f_band, sys), map);

  TruthImages truth;
  truth.bandlimited = Image(f.n);
  for (std::size_t k = 0; k < f_band.data.size(); ++k) {
    truth.bandlimited.data[k] = f_band.data[k].real();
  }
  truth.raw = f;
  return run_iteration(f0, sys, map, cfg, &truth);
}

RunReport reconstruct_from_stack(const CoefficientStack& f0, const WaveletSystem& sys,
                                 const FeatureMap& map, const IterationConfig& cfg) {
  return run_iteration(f0, sys, map, cfg, nullptr);
}

DecayFit fit_decay_rate(std::span<const std::pair<int, double>> series, double window_frac) {
  if (series.size() < 20) {
    throw ContractError("fit_decay_rate: need at least 20 samples, got " +
                        std::to_string(series.size()));
  }
  if (!(window_frac > 0) || window_frac > 1) {
    throw ContractError("fit_decay_rate: window fraction must be in (0, 1]");
  }
  const std::size_t count =
      std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(series.size() * window_frac)));
  const auto window = series.subspan(series.size() - count);

  DecayFit fit;
  for (const auto& [n, v] : window) {
    if (v == 0.0) {
      fit.hit_zero = true;
      fit.slope = -std::numeric_limits<double>::infinity();
      fit.r2 = 1.0;
      return fit;
    }
  }

  double sx = 0, sy = 0;
  for (const auto& [n, v] : window) {
    sx += n;
    sy += std::log10(v);
  }
  const double mx = sx / count;
  const double my = sy / count;
  double sxx = 0, sxy = 0, syy = 0;
  for (const auto& [n, v] : window) {
    const double dx = n - mx;
    const double dy = std::log10(v) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  fit.slope = sxx > 0 ? sxy / sxx : 0.0;
  const double ss_res = syy - (sxx > 0 ? sxy * sxy / sxx : 0.0);
  fit.r2 = syy > 1e-30 ? std::max(0.0, 1.0 - ss_res / syy) : 1.0;
  return fit;
}

}  // namespace se2recon
