#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace feedsim::testing {

/// Drives LimitOrderBook and ReferenceBook with the same random operation
/// sequence (submits, full and partial cancels, external executions,
/// id reuse after death) and compares fills, removed quantities, resting
/// orders, and depth snapshots after every step. Returns a description of
/// the first divergence, or nullopt.
std::optional<std::string> fuzz_matcher(std::uint64_t seed, std::size_t max_ops);

}  // namespace feedsim::testing
