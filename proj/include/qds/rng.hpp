// Deterministic pseudo-random generator for test-data synthesis.
//
// Reports must be byte-identical across runs and platforms, so we avoid
// std::mt19937 + distributions (libstdc++/libc++ differ) and use a small
// splitmix64 stream with explicit scaling.

#pragma once

#include "qds/core.hpp"

#include <cstdint>
#include <string>

namespace qds {

struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed = 0x9e3779b97f4a7c15ull) : state(seed) {}

    // Derive an independent stream for a named sub-experiment.
    static Rng derive(std::uint64_t seed, const std::string& tag) {
        std::uint64_t h = 1469598103934665603ull ^ seed;
        for (unsigned char c : tag) { h ^= c; h *= 1099511628211ull; }
        return Rng(h);
    }

    std::uint64_t next_u64() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0,1).
    double next_unit() { return double(next_u64() >> 11) * 0x1.0p-53; }
    // Uniform in [-1,1].
    double next_sym() { return 2.0 * next_unit() - 1.0; }
    // Uniform integer in [lo, hi] inclusive.
    int next_int(int lo, int hi) {
        return lo + int(next_u64() % std::uint64_t(hi - lo + 1));
    }
    Cplx next_cplx() { return Cplx(next_sym(), next_sym()); }
    // Complex bounded away from zero (for coefficients that must be invertible).
    Cplx next_cplx_unit_band() {
        double r = 0.5 + 0.5 * next_unit();
        double t = 6.283185307179586 * next_unit();
        return Cplx(r * std::cos(t), r * std::sin(t));
    }
};

} // namespace qds
