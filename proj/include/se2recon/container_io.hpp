#pragma once

// Binary containers for coefficient stacks and feature maps.
//
// Both formats share a 16-byte header:
//
//   bytes 0..3    magic ("SE2C" for stacks, "SE2M" for maps)
//   bytes 4..5    version, little-endian u16, currently 1
//   bytes 6..7    reserved, must be zero
//   bytes 8..11   n, little-endian u32
//   bytes 12..15  m, little-endian u32
//
// A stack payload holds n*n*m complex values as little-endian IEEE-754
// double pairs (re, im), plane-major (orientation outermost, then row,
// then column).  A map payload holds n*n little-endian u16 entries in
// row-major order, each required to be < m.  All multi-byte fields are
// packed explicitly so files are bit-identical across hosts.

#include <filesystem>

#include "se2recon/errors.hpp"
#include "se2recon/feature_map.hpp"
#include "se2recon/grid.hpp"

namespace se2recon {

void write_stack(const std::filesystem::path& path, const CoefficientStack& stack);
CoefficientStack read_stack(const std::filesystem::path& path);

void write_map(const std::filesystem::path& path, const FeatureMap& map);
FeatureMap read_map(const std::filesystem::path& path);

}  // namespace se2recon
