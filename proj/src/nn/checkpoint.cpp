#include "feedsim/nn/checkpoint.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "feedsim/core/error.hpp"

namespace feedsim::nn {

namespace {

constexpr std::array<char, 8> kMagic{'F', 'S', 'N', 'N', 'C', 'K', '0', '1'};

template <class U>
void put_le(std::ostream& out, U v) {
  std::array<char, sizeof(U)> bytes;
  for (std::size_t i = 0; i < sizeof(U); ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  out.write(bytes.data(), bytes.size());
}

template <class U>
U get_le(std::istream& in) {
  std::array<unsigned char, sizeof(U)> bytes;
  in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
  if (!in) throw DataError("checkpoint truncated");
  U v = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) v |= static_cast<U>(bytes[i]) << (8 * i);
  return v;
}

}  // namespace

void write_checkpoint(std::ostream& out, const ParameterList& params) {
  out.write(kMagic.data(), kMagic.size());
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(params.size()));
  for (const auto* p : params) {
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(p->name.size()));
    out.write(p->name.data(), static_cast<std::streamsize>(p->name.size()));
    const auto& shape = p->value.shape();
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(shape.size()));
    for (auto d : shape) put_le<std::uint64_t>(out, d);
    for (std::size_t i = 0; i < p->value.size(); ++i) put_le<std::uint64_t>(out, std::bit_cast<std::uint64_t>(p->value[i]));
  }
  if (!out) throw DataError("checkpoint write failed");
}

void read_checkpoint(std::istream& in, const ParameterList& params) {
  std::array<char, 8> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw DataError("not a feedsim checkpoint");
  const auto count = get_le<std::uint32_t>(in);
  if (count != params.size()) throw DataError("checkpoint tensor count mismatch");
  for (auto* p : params) {
    const auto name_len = get_le<std::uint32_t>(in);
    std::string name(name_len, '\0');
    in.read(name.data(), name_len);
    if (!in || name != p->name) throw DataError("checkpoint tensor name mismatch: expected " + p->name);
    const auto rank = get_le<std::uint32_t>(in);
    std::vector<std::size_t> shape(rank);
    for (auto& d : shape) d = static_cast<std::size_t>(get_le<std::uint64_t>(in));
    if (shape != p->value.shape()) throw DataError("checkpoint shape mismatch for " + p->name);
    for (std::size_t i = 0; i < p->value.size(); ++i) p->value[i] = std::bit_cast<double>(get_le<std::uint64_t>(in));
  }
}

void save_checkpoint(const std::filesystem::path& path, const ParameterList& params) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write checkpoint " + path.string());
  write_checkpoint(out, params);
}

void load_checkpoint(const std::filesystem::path& path, const ParameterList& params) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open checkpoint " + path.string());
  read_checkpoint(in, params);
}

}  // namespace feedsim::nn
