#include "se2recon/image_io.hpp"

#include <png.h>

#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <fstream>
#include <limits>
#include <memory>
#include <vector>

namespace se2recon {
namespace {

void require_even_square(int w, int h, const std::filesystem::path& path) {
  if (w != h || w < 2 || w % 2 != 0) {
    throw FormatError(path.string() + ": image must be square with even size, got " +
                      std::to_string(w) + "x" + std::to_string(h));
  }
}

std::uint8_t quantize(double v) {
  if (!(v > 0)) return 0;
  if (v >= 255.0) return 255;
  const double r = std::nearbyint(v);  // round half to even in the default mode
  return static_cast<std::uint8_t>(r);
}

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using unique_file = std::unique_ptr<std::FILE, FileCloser>;

}  // namespace

Image read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(path.string() + ": cannot open");

  std::string magic;
  in >> magic;
  if (magic != "P5") throw FormatError(path.string() + ": not a P5 PGM (magic '" + magic + "')");

  auto next_token = [&in, &path]() {
    // Skips whitespace and '#' comment lines between header fields.
    for (;;) {
      int ch = in.peek();
      if (ch == '#') {
        std::string line;
        std::getline(in, line);
      } else if (std::isspace(ch)) {
        in.get();
      } else {
        break;
      }
    }
    long value = -1;
    in >> value;
    if (!in || value < 0) throw FormatError(path.string() + ": malformed PGM header");
    return value;
  };

  const long w = next_token();
  const long h = next_token();
  const long maxval = next_token();
  if (maxval <= 0 || maxval > 255) {
    throw FormatError(path.string() + ": only 8-bit PGM supported (maxval " +
                      std::to_string(maxval) + ")");
  }
  in.get();  // single whitespace after maxval
  require_even_square(static_cast<int>(w), static_cast<int>(h), path);

  Image img(static_cast<int>(w));
  std::vector<std::uint8_t> row(static_cast<std::size_t>(w));
  for (long r = 0; r < h; ++r) {
    in.read(reinterpret_cast<char*>(row.data()), w);
    if (!in) throw FormatError(path.string() + ": truncated pixel data");
    for (long c = 0; c < w; ++c) img(static_cast<int>(r), static_cast<int>(c)) = row[c];
  }
  return img;
}

void write_pgm(const std::filesystem::path& path, const Image& img) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError(path.string() + ": cannot open for writing");
  out << "P5\n" << img.n << " " << img.n << "\n255\n";
  std::vector<std::uint8_t> row(static_cast<std::size_t>(img.n));
  for (int r = 0; r < img.n; ++r) {
    for (int c = 0; c < img.n; ++c) row[c] = quantize(img(r, c));
    out.write(reinterpret_cast<const char*>(row.data()), img.n);
  }
  if (!out) throw FormatError(path.string() + ": write failed");
}

Image read_png(const std::filesystem::path& path) {
  unique_file fp(std::fopen(path.string().c_str(), "rb"));
  if (!fp) throw FormatError(path.string() + ": cannot open");

  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw FormatError("libpng: failed to create read struct");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw FormatError("libpng: failed to create info struct");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw FormatError(path.string() + ": libpng failed to decode");
  }

  png_init_io(png, fp.get());
  png_read_info(png, info);

  const png_uint_32 w = png_get_image_width(png, info);
  const png_uint_32 h = png_get_image_height(png, info);
  const int depth = png_get_bit_depth(png, info);
  const int color = png_get_color_type(png, info);
  if (color != PNG_COLOR_TYPE_GRAY || depth != 8) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw FormatError(path.string() + ": only 8-bit grayscale PNG supported");
  }

  try {
    require_even_square(static_cast<int>(w), static_cast<int>(h), path);
  } catch (...) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw;
  }

  Image img(static_cast<int>(w));
  std::vector<std::uint8_t> row(w);
  for (png_uint_32 r = 0; r < h; ++r) {
    png_read_row(png, row.data(), nullptr);
    for (png_uint_32 c = 0; c < w; ++c) {
      img(static_cast<int>(r), static_cast<int>(c)) = row[c];
    }
  }
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return img;
}

void write_png(const std::filesystem::path& path, const Image& img) {
  unique_file fp(std::fopen(path.string().c_str(), "wb"));
  if (!fp) throw FormatError(path.string() + ": cannot open for writing");

  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw FormatError("libpng: failed to create write struct");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw FormatError("libpng: failed to create info struct");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw FormatError(path.string() + ": libpng failed to encode");
  }

  png_init_io(png, fp.get());
  png_set_IHDR(png, info, img.n, img.n, 8, PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);

  std::vector<std::uint8_t> row(static_cast<std::size_t>(img.n));
  for (int r = 0; r < img.n; ++r) {
    for (int c = 0; c < img.n; ++c) row[c] = quantize(img(r, c));
    png_write_row(png, row.data());
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

Image read_image(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(path.string() + ": cannot open");
  unsigned char head[2] = {0, 0};
  in.read(reinterpret_cast<char*>(head), 2);
  in.close();
  if (head[0] == 'P' && head[1] == '5') return read_pgm(path);
  if (head[0] == 0x89 && head[1] == 'P') return read_png(path);
  throw FormatError(path.string() + ": unrecognized image format (not PGM P5 or PNG)");
}

void write_image(const std::filesystem::path& path, const Image& img) {
  const auto ext = path.extension().string();
  if (ext == ".png") {
    write_png(path, img);
  } else {
    write_pgm(path, img);
  }
}

Image normalize_for_display(const Image& img) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (double v : img.data) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  Image out(img.n);
  const double span = hi - lo;
  if (span > 0) {
    for (std::size_t k = 0; k < img.data.size(); ++k) {
      out.data[k] = (img.data[k] - lo) / span * 255.0;
    }
  }
  return out;
}

}  // namespace se2recon
