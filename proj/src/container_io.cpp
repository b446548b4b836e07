#include "se2recon/container_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>
#include <vector>

namespace se2recon {
namespace {

constexpr std::size_t kHeaderBytes = 16;
constexpr std::uint16_t kVersion = 1;

void pack_u16(std::uint8_t* p, std::uint16_t v) {
  p[0] = static_cast<std::uint8_t>(v & 0xff);
  p[1] = static_cast<std::uint8_t>(v >> 8);
}

void pack_u32(std::uint8_t* p, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) p[i] = static_cast<std::uint8_t>((v >> (8 * i)) & 0xff);
}

void pack_f64(std::uint8_t* p, double v) {
  static_assert(sizeof(double) == 8 && std::numeric_limits<double>::is_iec559);
  std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
  for (int i = 0; i < 8; ++i) p[i] = static_cast<std::uint8_t>((bits >> (8 * i)) & 0xff);
}

std::uint16_t unpack_u16(const std::uint8_t* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t unpack_u32(const std::uint8_t* p) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(p[i]) << (8 * i);
  return v;
}

double unpack_f64(const std::uint8_t* p) {
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(p[i]) << (8 * i);
  return std::bit_cast<double>(bits);
}

void write_header(std::ofstream& out, const char magic[4], std::uint32_t n, std::uint32_t m) {
  std::uint8_t hdr[kHeaderBytes] = {};
  std::memcpy(hdr, magic, 4);
  pack_u16(hdr + 4, kVersion);
  pack_u16(hdr + 6, 0);  // reserved
  pack_u32(hdr + 8, n);
  pack_u32(hdr + 12, m);
  out.write(reinterpret_cast<const char*>(hdr), kHeaderBytes);
}

struct Header {
  std::uint32_t n = 0;
  std::uint32_t m = 0;
};

Header read_header(std::ifstream& in, const std::filesystem::path& path, const char magic[4]) {
  std::uint8_t hdr[kHeaderBytes];
  in.read(reinterpret_cast<char*>(hdr), kHeaderBytes);
  if (!in) throw FormatError(path.string() + ": truncated header (need 16 bytes)");
  if (std::memcmp(hdr, magic, 4) != 0) {
    throw FormatError(path.string() + ": bad magic at byte offset 0, expected \"" +
                      std::string(magic, 4) + "\"");
  }
  const std::uint16_t version = unpack_u16(hdr + 4);
  if (version != kVersion) {
    throw FormatError(path.string() + ": unsupported version " + std::to_string(version) +
                      " at byte offset 4");
  }
  Header h;
  h.n = unpack_u32(hdr + 8);
  h.m = unpack_u32(hdr + 12);
  if (h.n == 0 || h.m == 0 || h.n % 2 != 0 || h.n > (1u << 16)) {
    throw FormatError(path.string() + ": invalid dimensions n=" + std::to_string(h.n) +
                      " m=" + std::to_string(h.m) + " at byte offset 8");
  }
  return h;
}

}  // namespace

void write_stack(const std::filesystem::path& path, const CoefficientStack& stack) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError(path.string() + ": cannot open for writing");
  write_header(out, "SE2C", static_cast<std::uint32_t>(stack.n),
               static_cast<std::uint32_t>(stack.m));

  // Pack one plane at a time to bound scratch memory.
  const std::size_t plane_vals = static_cast<std::size_t>(stack.n) * stack.n;
  std::vector<std::uint8_t> buf(plane_vals * 16);
  for (int j = 0; j < stack.m; ++j) {
    const auto plane = stack.plane(j);
    for (std::size_t k = 0; k < plane_vals; ++k) {
      pack_f64(buf.data() + 16 * k, plane[k].real());
      pack_f64(buf.data() + 16 * k + 8, plane[k].imag());
    }
    out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  }
  if (!out) throw FormatError(path.string() + ": write failed");
}

CoefficientStack read_stack(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(path.string() + ": cannot open");
  const Header h = read_header(in, path, "SE2C");
  if (h.m > 65535) {
    throw FormatError(path.string() + ": m=" + std::to_string(h.m) + " exceeds map range");
  }

  CoefficientStack stack(static_cast<int>(h.n), static_cast<int>(h.m));
  const std::size_t plane_vals = static_cast<std::size_t>(h.n) * h.n;
  std::vector<std::uint8_t> buf(plane_vals * 16);
  for (std::uint32_t j = 0; j < h.m; ++j) {
    in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (!in) {
      const std::size_t offset = kHeaderBytes + static_cast<std::size_t>(j) * buf.size() +
                                 static_cast<std::size_t>(in.gcount());
      throw FormatError(path.string() + ": truncated payload at byte offset " +
                        std::to_string(offset));
    }
    auto plane = stack.plane(static_cast<int>(j));
    for (std::size_t k = 0; k < plane_vals; ++k) {
      plane[k] = cplx(unpack_f64(buf.data() + 16 * k), unpack_f64(buf.data() + 16 * k + 8));
    }
  }
  return stack;
}

void write_map(const std::filesystem::path& path, const FeatureMap& map) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError(path.string() + ": cannot open for writing");
  write_header(out, "SE2M", static_cast<std::uint32_t>(map.n), static_cast<std::uint32_t>(map.m));

  std::vector<std::uint8_t> buf(map.theta.size() * 2);
  for (std::size_t k = 0; k < map.theta.size(); ++k) pack_u16(buf.data() + 2 * k, map.theta[k]);
  out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  if (!out) throw FormatError(path.string() + ": write failed");
}

FeatureMap read_map(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(path.string() + ": cannot open");
  const Header h = read_header(in, path, "SE2M");
  if (h.m > 65535) {
    throw FormatError(path.string() + ": m=" + std::to_string(h.m) + " exceeds u16 entry range");
  }

  FeatureMap map;
  map.n = static_cast<int>(h.n);
  map.m = static_cast<int>(h.m);
  map.theta.resize(static_cast<std::size_t>(h.n) * h.n);
  std::vector<std::uint8_t> buf(map.theta.size() * 2);
  in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  if (!in) {
    const std::size_t offset = kHeaderBytes + static_cast<std::size_t>(in.gcount());
    throw FormatError(path.string() + ": truncated payload at byte offset " +
                      std::to_string(offset));
  }
  for (std::size_t k = 0; k < map.theta.size(); ++k) {
    const std::uint16_t v = unpack_u16(buf.data() + 2 * k);
    if (v >= h.m) {
      throw FormatError(path.string() + ": map entry " + std::to_string(v) + " at byte offset " +
                        std::to_string(kHeaderBytes + 2 * k) + " is out of range (m=" +
                        std::to_string(h.m) + ")");
    }
    map.theta[k] = v;
  }
  return map;
}

}  // namespace se2recon
