#pragma once

#include <cstdint>
#include <string_view>

namespace udcg {

// 64-bit FNV-1a. Stable across platforms and runs.
constexpr std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Per-item seed from a global seed and an item id (splitmix64 finalizer), so
// results do not depend on processing order.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::string_view id) {
  std::uint64_t z = seed + fnv1a64(id) + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace udcg
