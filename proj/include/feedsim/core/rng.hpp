#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

namespace feedsim {

std::uint64_t splitmix64(std::uint64_t x) noexcept;
std::uint64_t fnv1a(std::string_view s, std::uint64_t h = 0xcbf29ce484222325ULL) noexcept;

/// Seed of the named child stream of `master`.
std::uint64_t derive_seed(std::uint64_t master, std::string_view name) noexcept;

// The engine output is fixed by the standard; the transforms below are ours
// so that draws are bit-identical across standard library implementations.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed = 0) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  /// [0, 1) with 53 bits of resolution.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Inclusive range, unbiased.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  double normal();
  double normal(double mean, double sigma) { return mean + sigma * normal(); }
  bool bernoulli(double p) { return uniform() < p; }
  double exponential(double rate);
  std::int64_t geometric(double p);

  /// k distinct indices from [0, n), in ascending order.
  std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k);

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      auto j = static_cast<std::size_t>(uniform_int(0, static_cast<std::int64_t>(i - 1)));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

/// Named, independent streams under one master seed. Adding a stream never
/// perturbs an existing one.
class SeedTree {
 public:
  explicit SeedTree(std::uint64_t master) : master_(master) {}
  std::uint64_t master() const noexcept { return master_; }
  std::uint64_t seed(std::string_view name) const noexcept { return derive_seed(master_, name); }
  RngStream stream(std::string_view name) const { return RngStream(seed(name)); }
  SeedTree child(std::string_view name) const { return SeedTree(seed(name)); }

 private:
  std::uint64_t master_;
};

}  // namespace feedsim
