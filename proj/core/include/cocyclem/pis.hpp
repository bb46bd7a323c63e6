#pragma once

#include <filesystem>
#include <iosfwd>

#include "cocyclem/phantom.hpp"

namespace cocyclem {

// PIS image stack layout:
//   8 bytes   magic "PISTACK1"
//   4 bytes   header length L, unsigned little-endian
//   L bytes   UTF-8 JSON {"n", "n_r", "n_theta", "r_max", "dtype": "f32le"}
//   n*n_r*n_theta little-endian float32 samples, [image][ring][theta]
// Ground truth is not part of the binary; see io.hpp for the sidecar.

inline constexpr char kPisMagic[8] = {'P', 'I', 'S', 'T', 'A', 'C', 'K', '1'};

void write_pis(std::ostream& out, const ImageStack& stack);
ImageStack read_pis(std::istream& in);

void write_pis(const std::filesystem::path& path, const ImageStack& stack);
ImageStack read_pis(const std::filesystem::path& path);

}  // namespace cocyclem
