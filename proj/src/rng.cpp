#include "canon/rng.hpp"

namespace canon {

std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t key) : key_(key), engine_(key) {}

Rng::Rng(std::uint64_t seed, std::string_view tag) : Rng(splitmix64(seed ^ fnv1a64(tag))) {}

Rng Rng::split(std::string_view tag) const { return Rng(splitmix64(key_ ^ fnv1a64(tag))); }

std::uint64_t Rng::below(std::uint64_t bound) {
    // Rejection sampling against the largest multiple of bound.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return x % bound;
}

Vec Rng::vector(std::uint32_t prime, std::size_t n) {
    Vec v;
    v.reserve(n);
    for (std::size_t i = 0; i < n; ++i) v.push_back(element(prime));
    return v;
}

}  // namespace canon
