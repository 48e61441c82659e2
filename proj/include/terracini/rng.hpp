#pragma once

#include <cstdint>
#include <string_view>

namespace terracini {

// Deterministic splittable pseudo-randomness. Every random choice in the
// library is drawn from a stream derived from (seed, module, operation,
// counter), so verdicts are bit-reproducible from a single 64-bit seed.
class RngStream {
public:
    explicit RngStream(std::uint64_t state) : state_(state) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound) by rejection; bound > 0.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = bound * (~0ull / bound);
        for (;;) {
            std::uint64_t r = next();
            if (r < limit) return r % bound;
        }
    }

    RngStream split() { return RngStream(next() ^ 0xa5a5a5a5a5a5a5a5ull); }

private:
    std::uint64_t state_;
};

inline std::uint64_t hash_tag(std::string_view tag) {
    // FNV-1a, good enough for stream labelling.
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (char c : tag) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::uint64_t mix_u64(std::uint64_t a, std::uint64_t b) {
    std::uint64_t z = a + 0x9e3779b97f4a7c15ull * (b + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline RngStream derive_stream(std::uint64_t seed, std::string_view module,
                               std::string_view op, std::uint64_t counter) {
    std::uint64_t s = mix_u64(seed, hash_tag(module));
    s = mix_u64(s, hash_tag(op));
    s = mix_u64(s, counter);
    return RngStream(s);
}

}  // namespace terracini
