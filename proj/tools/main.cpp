// Command-line driver: system inspection, map generation, forward/inverse
// transforms, iterative reconstruction, benchmarking, and the dense oracle.
//
// Exit codes: 0 success, 1 usage error, 2 data/format error, 3 numerical
// (ill-conditioned or not-solvable) error.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "se2recon/config.hpp"
#include "se2recon/container_io.hpp"
#include "se2recon/errors.hpp"
#include "se2recon/feature_map.hpp"
#include "se2recon/image_io.hpp"
#include "se2recon/oracle.hpp"
#include "se2recon/reconstruct.hpp"
#include "se2recon/report_io.hpp"
#include "se2recon/synth.hpp"
#include "se2recon/wavelet.hpp"

namespace fs = std::filesystem;
using namespace se2recon;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumerical = 3;

// Reference parameter set at n = 512; s, p and r scale linearly with n.
WaveletParams resolve_params(int n, int m, double s, double p, double r) {
  const double scale = n / 512.0;
  WaveletParams wp;
  wp.n = n;
  wp.m = m;
  wp.s = s >= 0 ? s : 51.0 * scale;
  wp.p = p >= 0 ? p : 170.0 * scale;
  wp.r = r >= 0 ? r : 252.0 * scale;
  return wp;
}

int run_guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const IllConditionedError& e) {
    std::cerr << "error (numerical): " << e.what() << "\n";
    return kExitNumerical;
  } catch (const NotSolvableError& e) {
    std::cerr << "error (numerical): " << e.what() << "\n";
    return kExitNumerical;
  } catch (const SizeGuardError& e) {
    std::cerr << "error (usage): " << e.what() << "\n";
    return kExitUsage;
  } catch (const ContractError& e) {
    std::cerr << "error (usage): " << e.what() << "\n";
    return kExitUsage;
  } catch (const DimensionError& e) {
    std::cerr << "error (data): " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error (data): " << e.what() << "\n";
    return kExitData;
  }
}

// Rearranges a frequency-indexed scalar field so the origin lands at the
// image center, for display only.
Image center_for_display(const std::vector<double>& vals, int n) {
  Image img(n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      img((r + n / 2) % n, (c + n / 2) % n) = vals[static_cast<std::size_t>(r) * n + c];
    }
  }
  return img;
}

Image map_visualization(const FeatureMap& map) {
  Image img(map.n);
  const double denom = map.m > 1 ? map.m - 1 : 1;
  for (std::size_t k = 0; k < map.theta.size(); ++k) {
    img.data[k] = map.theta[k] * 255.0 / denom;
  }
  return img;
}

FeatureMap make_map(const std::string& kind, int n, int m, double rho, int j, int n_alpha,
                    std::uint64_t seed) {
  if (kind == "random") return gen_random_map(n, m, seed);
  if (kind == "pinwheel") return gen_pinwheel_map(n, m, rho, n_alpha, seed);
  if (kind == "constant") return constant_map(n, m, j);
  throw ContractError("unknown map kind \"" + kind + "\" (expected random|pinwheel|constant)");
}

std::string stop_reason_name(StopReason r) {
  switch (r) {
    case StopReason::max_iters: return "max-iters";
    case StopReason::tol_delta: return "tol-delta";
    case StopReason::stall: return "stall";
  }
  return "?";
}

void print_frame_line(const char* label, const FrameReport& fr) {
  std::printf("%s A=%.6g B=%.6g B/A=%.6g cond=%.6g\n", label, fr.a, fr.b, fr.ratio, fr.cond);
}

// ---------------------------------------------------------------- inspect --

struct InspectOpts {
  int n = 512;
  int m = 12;
  double s = -1, p = -1, r = -1;
  std::string calderon_out, dual_out;
};

int cmd_inspect(const InspectOpts& o) {
  const WaveletParams wp = resolve_params(o.n, o.m, o.s, o.p, o.r);
  const WaveletSystem sys = build_system(wp);
  std::printf("n=%d m=%d s=%g p=%g r=%g\n", wp.n, wp.m, wp.s, wp.p, wp.r);
  print_frame_line("calderon (squared):", frame_report(sys));
  print_frame_line("diagnostic (linear):", frame_report_linear(sys));

  if (!o.calderon_out.empty()) {
    write_image(o.calderon_out, normalize_for_display(center_for_display(sys.calderon, wp.n)));
  }
  if (!o.dual_out.empty()) {
    // log10 of the dual multiplier on the band; off-band pixels are painted
    // with the band minimum so they render as the darkest shade.
    std::vector<double> logs(sys.dual_mult.size(), 0.0);
    double lo = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < logs.size(); ++k) {
      if (sys.mask[k]) lo = std::min(lo, std::log10(sys.dual_mult[k]));
    }
    for (std::size_t k = 0; k < logs.size(); ++k) {
      logs[k] = sys.mask[k] ? std::log10(sys.dual_mult[k]) : lo;
    }
    write_image(o.dual_out, normalize_for_display(center_for_display(logs, wp.n)));
  }
  return kExitOk;
}

// ----------------------------------------------------------------- mapgen --

struct MapgenOpts {
  std::string kind = "random";
  int n = 512;
  int m = 12;
  double rho = 0.8;
  int j = 0;
  int n_alpha = 64;
  std::uint64_t seed = 1;
  std::string out;
  std::string image_out;
};

int cmd_mapgen(const MapgenOpts& o) {
  const FeatureMap map = make_map(o.kind, o.n, o.m, o.rho, o.j, o.n_alpha, o.seed);
  write_map(o.out, map);
  if (!o.image_out.empty()) write_image(o.image_out, map_visualization(map));
  std::printf("wrote %s (n=%d m=%d kind=%s)\n", o.out.c_str(), o.n, o.m, o.kind.c_str());
  return kExitOk;
}

// -------------------------------------------------------------- transform --

struct TransformOpts {
  bool forward_dir = false;
  bool inverse_dir = false;
  bool pre_bandlimit = false;
  int m = 12;
  double s = -1, p = -1, r = -1;
  std::string in, out;
};

int cmd_transform(const TransformOpts& o) {
  if (o.forward_dir == o.inverse_dir) {
    throw ContractError("exactly one of --forward / --inverse is required");
  }
  if (o.forward_dir) {
    const Image img = read_image(o.in);
    const WaveletSystem sys = build_system(resolve_params(img.n, o.m, o.s, o.p, o.r));
    CoefficientStack stack =
        o.pre_bandlimit ? forward(bandlimit(img, sys), sys) : forward(img, sys);
    write_stack(o.out, stack);
    std::printf("wrote %s (n=%d m=%d)\n", o.out.c_str(), stack.n, stack.m);
  } else {
    const CoefficientStack stack = read_stack(o.in);
    const WaveletSystem sys = build_system(resolve_params(stack.n, stack.m, o.s, o.p, o.r));
    const ComplexImage rec = inverse(stack, sys);
    Image img(rec.n);
    double max_imag = 0;
    for (std::size_t k = 0; k < img.data.size(); ++k) {
      img.data[k] = rec.data[k].real();
      max_imag = std::max(max_imag, std::abs(rec.data[k].imag()));
    }
    write_image(o.out, img);
    std::printf("wrote %s (n=%d, max |Im| %.3g)\n", o.out.c_str(), img.n, max_imag);
  }
  return kExitOk;
}

// ------------------------------------------------------------ reconstruct --

struct ReconstructOpts {
  std::string image, map;
  double s = -1, p = -1, r = -1;
  int iters = 1000;
  int record_every = 1;
  double tol_delta = -1;
  double tol_stall = -1;
  std::string report_out, image_out, first_out;
};

int cmd_reconstruct(const ReconstructOpts& o) {
  const Image img = read_image(o.image);
  const FeatureMap map = read_map(o.map);
  require_same_grid(img.n, map.n, "reconstruct");

  const WaveletSystem sys = build_system(resolve_params(img.n, map.m, o.s, o.p, o.r));
  IterationConfig cfg;
  cfg.max_iters = o.iters;
  cfg.record_every = o.record_every;
  if (o.tol_delta >= 0) cfg.tol_delta = o.tol_delta;
  if (o.tol_stall >= 0) cfg.tol_stall = o.tol_stall;

  const RunReport report = reconstruct(img, sys, map, cfg);
  if (!o.report_out.empty()) write_report(o.report_out, report);
  if (!o.image_out.empty()) write_image(o.image_out, report.final_image);
  if (!o.first_out.empty()) write_image(o.first_out, report.first_image);

  const double final_delta = report.deltas.empty() ? std::nan("") : report.deltas.back().second;
  std::printf("iters=%d stop=%s delta=%.6g%% max|Im|=%.3g\n", report.iters_run,
              stop_reason_name(report.stop_reason).c_str(), final_delta, report.max_imag);
  return kExitOk;
}

// ------------------------------------------------------------------ bench --

struct BenchOpts {
  std::string dataset, config, out;
};

struct BenchMapSpec {
  std::string label;
  FeatureMap map;
};

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= csv.size()) {
    std::size_t comma = csv.find(',', start);
    if (comma == std::string::npos) comma = csv.size();
    std::string item = csv.substr(start, comma - start);
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
    start = comma + 1;
  }
  return out;
}

int cmd_bench(const BenchOpts& o) {
  const Config cfg = Config::parse_file(o.config);
  const int n = static_cast<int>(cfg.get_int("n"));
  const int m = static_cast<int>(cfg.get_int("m"));
  const WaveletParams wp = resolve_params(n, m, cfg.find_double("s").value_or(-1),
                                          cfg.find_double("p").value_or(-1),
                                          cfg.find_double("r").value_or(-1));
  const int iters = static_cast<int>(cfg.find_int("iters").value_or(1000));
  const int record_every = static_cast<int>(cfg.find_int("record_every").value_or(10));
  const std::uint64_t seed = static_cast<std::uint64_t>(cfg.find_int("map.seed").value_or(1));
  const int const_j = static_cast<int>(cfg.find_int("map.j").value_or(0));

  // The map grid: every "pinwheel" entry in map.kind expands over map.rho.
  const auto kinds = split_list(cfg.find_string("map.kind").value_or("random"));
  const auto rhos = split_list(cfg.find_string("map.rho").value_or("0.8"));

  std::vector<BenchMapSpec> maps;
  for (const auto& kind : kinds) {
    if (kind == "pinwheel") {
      for (const auto& rho_s : rhos) {
        const double rho = std::stod(rho_s);
        maps.push_back({"pinwheel-" + rho_s, gen_pinwheel_map(n, m, rho, 64, seed)});
      }
    } else if (kind == "random") {
      maps.push_back({"random", gen_random_map(n, m, seed)});
    } else if (kind == "constant") {
      maps.push_back({"constant-" + std::to_string(const_j), constant_map(n, m, const_j)});
    } else {
      throw ContractError("unknown map kind \"" + kind + "\" in config");
    }
  }

  std::vector<fs::path> images;
  if (fs::is_directory(o.dataset)) {
    for (const auto& entry : fs::directory_iterator(o.dataset)) {
      const auto ext = entry.path().extension().string();
      if (ext == ".pgm" || ext == ".png") images.push_back(entry.path());
    }
  }
  std::sort(images.begin(), images.end());

  fs::create_directories(o.out);
  std::ofstream summary(fs::path(o.out) / "summary.csv");
  summary << "image,map,iters_run,final_delta_pct,slope,r2,wall_s,status\n";

  if (images.empty()) {
    std::cerr << "bench: no .pgm/.png images in " << o.dataset << "\n";
    return kExitData;
  }

  const WaveletSystem sys = build_system(wp);
  int ok_count = 0;
  for (const auto& image_path : images) {
    for (const auto& spec : maps) {
      const std::string run_name = image_path.stem().string() + "__" + spec.label;
      try {
        const Image img = read_image(image_path);
        require_same_grid(img.n, n, "bench entry");
        IterationConfig run_cfg;
        run_cfg.max_iters = iters;
        run_cfg.record_every = record_every;

        const auto t0 = std::chrono::steady_clock::now();
        const RunReport report = reconstruct(img, sys, spec.map, run_cfg);
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

        write_report(fs::path(o.out) / (run_name + ".csv"), report);
        const double final_delta =
            report.deltas.empty() ? std::nan("") : report.deltas.back().second;
        double slope = std::nan("");
        double r2 = std::nan("");
        if (report.deltas.size() >= 20) {
          const DecayFit fit = fit_decay_rate(report.deltas);
          slope = fit.slope;
          r2 = fit.r2;
        }
        char row[256];
        std::snprintf(row, sizeof(row), "%s,%s,%d,%.6g,%.6g,%.4f,%.2f,ok\n",
                      image_path.stem().string().c_str(), spec.label.c_str(), report.iters_run,
                      final_delta, slope, r2, wall);
        summary << row;
        std::printf("%s: delta=%.4g%% slope=%.3g wall=%.1fs\n", run_name.c_str(), final_delta,
                    slope, wall);
        ++ok_count;
      } catch (const std::exception& e) {
        std::cerr << run_name << ": " << e.what() << "\n";
        std::string msg = e.what();
        std::replace(msg.begin(), msg.end(), ',', ';');
        summary << image_path.stem().string() << ',' << spec.label << ",0,nan,nan,nan,0,error: "
                << msg << "\n";
      }
    }
  }
  std::printf("summary: %s\n", (fs::path(o.out) / "summary.csv").string().c_str());
  return ok_count > 0 ? kExitOk : kExitData;
}

// ----------------------------------------------------------------- oracle --

struct OracleOpts {
  int n = 8;
  int m = 4;
  double s = -1, p = -1, r = -1;
  std::string map_kind = "random";
  double rho = 0.8;
  int j = 0;
  std::uint64_t seed = 1;
  int check_iters = 0;
};

int cmd_oracle(const OracleOpts& o) {
  const std::size_t dim = static_cast<std::size_t>(o.n) * o.n * o.m;
  if (dim > kOracleDimLimit) {
    throw SizeGuardError("oracle: n^2*m = " + std::to_string(dim) + " exceeds the dense limit " +
                         std::to_string(kOracleDimLimit));
  }
  const WaveletSystem sys = build_system(resolve_params(o.n, o.m, o.s, o.p, o.r));
  const FeatureMap map = make_map(o.map_kind, o.n, o.m, o.rho, o.j, 64, o.seed);

  const DenseOperator p_op =
      materialize([&](const CoefficientStack& x) { return project(x, sys); }, o.n, o.m);
  const DenseOperator q_op =
      materialize([&](const CoefficientStack& x) { return select(x, map); }, o.n, o.m);
  const SolvabilityCertificate cert = certify(p_op, q_op);
  std::fputs(format_certificate(cert).c_str(), stdout);

  if (o.check_iters > 0) {
    if (!cert.solvable) {
      std::printf("cross-check skipped: instance not certified solvable\n");
      return kExitOk;
    }
    // Observed data from a seeded band-limited source, iterated check_iters
    // times; the fixed point from the dense solve is the reference.
    const Image src = synth_texture(o.n, o.seed + 1000);
    const CoefficientStack f0 = select(forward(bandlimit(src, sys), sys), map);

    IterationConfig cfg;
    cfg.max_iters = o.check_iters;
    cfg.record_every = o.check_iters;
    CoefficientStack last;
    cfg.observer = [&last](int, const CoefficientStack&, const CoefficientStack& f) { last = f; };
    reconstruct_from_stack(f0, sys, map, cfg);

    const Eigen::VectorXcd reference = direct_solve(p_op, q_op, to_vector(f0));
    const Eigen::VectorXcd iterated = to_vector(last);
    const double rel = (iterated - reference).norm() / std::max(1.0, reference.norm());
    std::printf("cross-check: |F_%d - F*| / |F*| = %.3g\n", o.check_iters, rel);
  }
  return kExitOk;
}

// ---------------------------------------------------------------- dataset --

struct DatasetOpts {
  std::string out;
  int n = 128;
  int count = 4;
  std::uint64_t seed = 1;
  double alpha = 1.2;
};

int cmd_dataset(const DatasetOpts& o) {
  fs::create_directories(o.out);
  for (int i = 0; i < o.count; ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "texture_%02d.pgm", i);
    write_pgm(fs::path(o.out) / name, synth_texture(o.n, o.seed + static_cast<std::uint64_t>(i),
                                                    o.alpha));
  }
  std::printf("wrote %d textures (n=%d) to %s\n", o.count, o.n, o.out.c_str());
  return kExitOk;
}

void add_param_opts(CLI::App* cmd, double& s, double& p, double& r) {
  cmd->add_option("--s", s, "Gaussian width (default: 51*n/512)");
  cmd->add_option("--p", p, "radial carrier frequency (default: 170*n/512)");
  cmd->add_option("--r", r, "band radius (default: 252*n/512)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orientation-sampled wavelet transforms and image reconstruction"};
  app.require_subcommand(1);

  InspectOpts io_;
  auto* inspect = app.add_subcommand("inspect", "print frame bounds and write diagnostics");
  inspect->add_option("--n", io_.n, "grid size (even)");
  inspect->add_option("--m", io_.m, "number of orientations");
  add_param_opts(inspect, io_.s, io_.p, io_.r);
  inspect->add_option("--calderon-out", io_.calderon_out, "Calderon function image (centered)");
  inspect->add_option("--dual-out", io_.dual_out, "log10 dual multiplier image (centered)");

  MapgenOpts mo;
  auto* mapgen = app.add_subcommand("mapgen", "generate an orientation map file");
  mapgen->add_option("--kind", mo.kind, "random | pinwheel | constant")->required();
  mapgen->add_option("--n", mo.n, "grid size (even)")->required();
  mapgen->add_option("--m", mo.m, "number of orientations")->required();
  mapgen->add_option("--rho", mo.rho, "pinwheel wavenumber");
  mapgen->add_option("--j", mo.j, "constant orientation index");
  mapgen->add_option("--n-alpha", mo.n_alpha, "plane waves in the pinwheel field");
  mapgen->add_option("--seed", mo.seed, "RNG seed");
  mapgen->add_option("--out", mo.out, "output map file")->required();
  mapgen->add_option("--image-out", mo.image_out, "visualization image (index scaled to 0-255)");

  TransformOpts to;
  auto* transform = app.add_subcommand("transform", "forward or inverse wavelet transform");
  transform->add_flag("--forward", to.forward_dir, "image -> coefficient stack");
  transform->add_flag("--inverse", to.inverse_dir, "coefficient stack -> image (real part)");
  transform->add_flag("--bandlimit", to.pre_bandlimit, "band-limit the image before forward");
  transform->add_option("--m", to.m, "number of orientations (forward)");
  add_param_opts(transform, to.s, to.p, to.r);
  transform->add_option("--in", to.in, "input path")->required();
  transform->add_option("--out", to.out, "output path")->required();

  ReconstructOpts ro;
  auto* rec = app.add_subcommand("reconstruct", "iterative reconstruction from a map");
  rec->add_option("--image", ro.image, "ground-truth image (PGM/PNG)")->required();
  rec->add_option("--map", ro.map, "orientation map file")->required();
  add_param_opts(rec, ro.s, ro.p, ro.r);
  rec->add_option("--iters", ro.iters, "iteration count");
  rec->add_option("--record-every", ro.record_every, "telemetry stride");
  rec->add_option("--tol-delta", ro.tol_delta, "stop when delta (%) drops below this");
  rec->add_option("--tol-stall", ro.tol_stall, "declare stall below this relative progress");
  rec->add_option("--report", ro.report_out, "CSV report path");
  rec->add_option("--out", ro.image_out, "final reconstruction image");
  rec->add_option("--first-out", ro.first_out, "first-iteration image");

  BenchOpts bo;
  auto* bench = app.add_subcommand("bench", "run a map x image grid from a config file");
  bench->add_option("--dataset", bo.dataset, "directory of .pgm/.png images")->required();
  bench->add_option("--config", bo.config, "flat key = value config file")->required();
  bench->add_option("--out", bo.out, "output directory")->required();

  OracleOpts oo;
  auto* oracle = app.add_subcommand("oracle", "dense solvability certificate (small n)");
  oracle->add_option("--n", oo.n, "grid size (n^2*m <= 4096)")->required();
  oracle->add_option("--m", oo.m, "number of orientations")->required();
  add_param_opts(oracle, oo.s, oo.p, oo.r);
  oracle->add_option("--map-kind", oo.map_kind, "random | pinwheel | constant");
  oracle->add_option("--rho", oo.rho, "pinwheel wavenumber");
  oracle->add_option("--j", oo.j, "constant orientation index");
  oracle->add_option("--seed", oo.seed, "RNG seed");
  oracle->add_option("--check-iters", oo.check_iters,
                     "also iterate this many steps and compare to the dense solve");

  DatasetOpts dso;
  auto* dataset = app.add_subcommand("dataset", "generate synthetic texture images");
  dataset->add_option("--out", dso.out, "output directory")->required();
  dataset->add_option("--n", dso.n, "image size (even)");
  dataset->add_option("--count", dso.count, "number of images");
  dataset->add_option("--seed", dso.seed, "base RNG seed");
  dataset->add_option("--alpha", dso.alpha, "spectral envelope exponent");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (inspect->parsed()) return run_guarded([&] { return cmd_inspect(io_); });
  if (mapgen->parsed()) return run_guarded([&] { return cmd_mapgen(mo); });
  if (transform->parsed()) return run_guarded([&] { return cmd_transform(to); });
  if (rec->parsed()) return run_guarded([&] { return cmd_reconstruct(ro); });
  if (bench->parsed()) return run_guarded([&] { return cmd_bench(bo); });
  if (oracle->parsed()) return run_guarded([&] { return cmd_oracle(oo); });
  if (dataset->parsed()) return run_guarded([&] { return cmd_dataset(dso); });
  return kExitUsage;
}
