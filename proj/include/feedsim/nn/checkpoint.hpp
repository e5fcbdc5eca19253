#pragma once

#include <filesystem>
#include <iosfwd>

#include "feedsim/nn/tensor.hpp"

namespace feedsim::nn {

// Layout (all integers little-endian):
//   8 bytes  magic "FSNNCK01"
//   u32      tensor count
//   per tensor:
//     u32 name length, name bytes (UTF-8)
//     u32 rank, rank x u64 dims
//     product(dims) x f64 values, row-major
void write_checkpoint(std::ostream& out, const ParameterList& params);
/// Names, order, and shapes must match `params` exactly.
void read_checkpoint(std::istream& in, const ParameterList& params);

void save_checkpoint(const std::filesystem::path& path, const ParameterList& params);
void load_checkpoint(const std::filesystem::path& path, const ParameterList& params);

}  // namespace feedsim::nn
