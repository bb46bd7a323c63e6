#include "cocyclem/pis.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <nlohmann/json.hpp>
#include <string>

#include "cocyclem/errors.hpp"

namespace cocyclem {
namespace {

static_assert(std::endian::native == std::endian::little, "PIS I/O assumes a little-endian host");

void put_u32(std::ostream& out, std::uint32_t v) {
  const std::array<char, 4> bytes{static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                                  static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
  out.write(bytes.data(), 4);
}

std::uint32_t get_u32(std::istream& in) {
  std::array<unsigned char, 4> b{};
  in.read(reinterpret_cast<char*>(b.data()), 4);
  if (!in) throw ValidationError("PIS: truncated header length");
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

}  // namespace

void write_pis(std::ostream& out, const ImageStack& stack) {
  stack.validate();
  const nlohmann::json header = {{"n", stack.images.size()},
                                 {"n_r", stack.grid.n_r},
                                 {"n_theta", stack.grid.n_theta},
                                 {"r_max", stack.grid.r_max},
                                 {"dtype", "f32le"}};
  const std::string text = header.dump();
  out.write(kPisMagic, sizeof kPisMagic);
  put_u32(out, static_cast<std::uint32_t>(text.size()));
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  for (const auto& im : stack.images) {
    for (double s : im.samples()) {
      const float f = static_cast<float>(s);
      char raw[4];
      std::memcpy(raw, &f, 4);
      out.write(raw, 4);
    }
  }
  if (!out) throw ValidationError("PIS: write failed");
}

ImageStack read_pis(std::istream& in) {
  char magic[8];
  in.read(magic, 8);
  if (!in || std::memcmp(magic, kPisMagic, 8) != 0) throw ValidationError("PIS: bad magic, expected PISTACK1");
  const std::uint32_t len = get_u32(in);
  std::string text(len, '\0');
  in.read(text.data(), len);
  if (!in) throw ValidationError("PIS: truncated JSON header");

  nlohmann::json header;
  try {
    header = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("PIS: header is not valid JSON: ") + e.what());
  }
  if (header.value("dtype", std::string{}) != "f32le") throw ValidationError("PIS: only dtype f32le is supported");

  ImageStack stack;
  try {
    stack.grid.n_r = header.at("n_r").get<std::size_t>();
    stack.grid.n_theta = header.at("n_theta").get<std::size_t>();
    stack.grid.r_max = header.at("r_max").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("PIS: header field missing or mistyped: ") + e.what());
  }
  stack.grid.validate();
  const auto n = header.at("n").get<std::size_t>();
  const std::size_t per_image = stack.grid.n_r * stack.grid.n_theta;
  stack.images.reserve(n);
  std::vector<char> raw(per_image * 4);
  for (std::size_t i = 0; i < n; ++i) {
    in.read(raw.data(), static_cast<std::streamsize>(raw.size()));
    if (!in) throw ValidationError("PIS: truncated sample data at image " + std::to_string(i));
    std::vector<double> samples(per_image);
    for (std::size_t k = 0; k < per_image; ++k) {
      float f;
      std::memcpy(&f, raw.data() + 4 * k, 4);
      samples[k] = f;
    }
    stack.images.emplace_back(stack.grid, std::move(samples));
  }
  return stack;
}

void write_pis(const std::filesystem::path& path, const ImageStack& stack) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot open " + path.string() + " for writing");
  write_pis(out, stack);
}

ImageStack read_pis(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path.string());
  return read_pis(in);
}

}  // namespace cocyclem
