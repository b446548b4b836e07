#include "se2recon/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "se2recon/errors.hpp"

namespace se2recon {
namespace {

std::string format_value(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

}  // namespace

void write_report(const std::filesystem::path& path, const RunReport& report) {
  std::ofstream out(path);
  if (!out) throw FormatError(path.string() + ": cannot open for writing");
  out << "iter,delta_pct,delta_raw_pct,residual\n";

  // The three series are recorded at the same iterations when truth is
  // available; a truth-less run records residuals only.
  const bool has_truth = !report.deltas.empty();
  for (std::size_t i = 0; i < report.residuals.size(); ++i) {
    const auto [iter, residual] = report.residuals[i];
    const double delta = has_truth && i < report.deltas.size()
                             ? report.deltas[i].second
                             : std::nan("");
    const double delta_raw = has_truth && i < report.deltas_raw.size()
                                 ? report.deltas_raw[i].second
                                 : std::nan("");
    out << iter << ',' << format_value(delta) << ',' << format_value(delta_raw) << ','
        << format_value(residual) << '\n';
  }
  if (!out) throw FormatError(path.string() + ": write failed");
}

}  // namespace se2recon
