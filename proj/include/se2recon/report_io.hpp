#pragma once

#include <filesystem>

#include "se2recon/reconstruct.hpp"

namespace se2recon {

// CSV with header `iter,delta_pct,delta_raw_pct,residual`, one row per
// recorded iteration. Delta columns hold "nan" when the run had no ground
// truth to compare against.
void write_report(const std::filesystem::path& path, const RunReport& report);

}  // namespace se2recon
