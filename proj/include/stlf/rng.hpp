#pragma once

#include <cstdint>

namespace stlf {

/// splitmix64: tiny, portable, byte-stable across platforms; all synthetic
/// data generation routes through it so golden files are reproducible.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, bound); bound > 0.  Modulo bias is irrelevant here.
    uint64_t below(uint64_t bound) { return next() % bound; }

private:
    uint64_t state_;
};

} // namespace stlf
