#pragma once

#include <filesystem>

#include "se2recon/grid.hpp"

namespace se2recon {

// Readers accept 8-bit grayscale only and require a square, even-sized grid.
// Pixel values pass through unchanged.
Image read_pgm(const std::filesystem::path& path);
Image read_png(const std::filesystem::path& path);

// Dispatches on the file's magic bytes.
Image read_image(const std::filesystem::path& path);

// Writers clamp to [0, 255] and round half to even.
void write_pgm(const std::filesystem::path& path, const Image& img);
void write_png(const std::filesystem::path& path, const Image& img);
void write_image(const std::filesystem::path& path, const Image& img);

// Affine rescale of arbitrary data to the full 0..255 range, for
// visualization outputs (maps, Calderon function, multipliers).
Image normalize_for_display(const Image& img);

}  // namespace se2recon
