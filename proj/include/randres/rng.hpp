#pragma once

#include <cstdint>

namespace randres {

// Splittable deterministic generator (splitmix64 core). Every randomized
// component derives its stream from a single 64-bit seed, so runs replay
// byte-identically across platforms.
class SplitRng {
public:
    explicit SplitRng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Independent child stream for a labelled subtask.
    SplitRng split(uint64_t tag) {
        uint64_t z = (state_ + 0x9e3779b97f4a7c15ull * (tag + 1));
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return SplitRng(z ^ (z >> 31));
    }

    /// Uniform value in [0, n) via rejection; n > 0.
    uint64_t below(uint64_t n) {
        uint64_t threshold = (0 - n) % n;
        for (;;) {
            uint64_t r = next();
            if (r >= threshold) return r % n;
        }
    }

    bool flip() { return next() & 1; }

private:
    uint64_t state_;
};

} // namespace randres
