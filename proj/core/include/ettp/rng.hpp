#pragma once

#include <cstdint>
#include <random>

namespace ettp {

using Rng = std::mt19937_64;

// splitmix64 mixing step; the basis of the seed fan-out below.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Deterministic seed fan-out: a master seed plus up to three stream indices
// select an independent seed. Used master -> per-instance -> per-repetition
// so any subset of an experiment can be re-run in isolation.
constexpr std::uint64_t split_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0,
                                   std::uint64_t c = 0) {
    std::uint64_t s = mix64(master);
    s = mix64(s ^ mix64(a + 1));
    s = mix64(s ^ mix64(b + 1));
    s = mix64(s ^ mix64(c + 1));
    return s;
}

}  // namespace ettp
