#pragma once

#include <cstdint>
#include <string_view>

namespace opinionshift {

// Splittable counter-based generator (splitmix64). Streams derived from a
// (seed, name/index) pair are statistically independent, which keeps every
// randomized component reproducible from one top-level seed regardless of
// evaluation order or worker count.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform in {0, ..., bound-1} by rejection; bound >= 1.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % bound;
        std::uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return x % bound;
    }

    // Deterministically derives an independent child stream.
    SplitMix64 split() { return SplitMix64(next() ^ 0x6a09e667f3bcc909ULL); }

private:
    std::uint64_t state_;
};

namespace detail {
inline std::uint64_t fnv1a(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}
}  // namespace detail

// Named sub-stream: all CLI randomness flows from one seed through these.
inline SplitMix64 substream(std::uint64_t seed, std::string_view name, std::uint64_t index = 0) {
    SplitMix64 mixer(seed ^ detail::fnv1a(name));
    mixer.next();
    SplitMix64 child(mixer.next() ^ (index * 0x9e3779b97f4a7c15ULL + 0x243f6a8885a308d3ULL));
    child.next();
    return child;
}

}  // namespace opinionshift
