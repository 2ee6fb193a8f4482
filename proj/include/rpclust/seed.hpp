#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace rpclust {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Derive a child seed from a parent seed and a path of integer tags.
/// Used for per-block, per-repetition and per-restart streams so that
/// adding a sibling never perturbs existing streams.
std::uint64_t derive_seed(std::uint64_t parent, std::initializer_list<std::uint64_t> tags);

}  // namespace rpclust
