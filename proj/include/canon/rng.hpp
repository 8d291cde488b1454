#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "canon/field.hpp"

namespace canon {

/// Deterministic random stream keyed by (seed, purpose tag).
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. The stream key mixes the seed with a 64-bit FNV-1a hash of the
/// tag through one SplitMix64 round, so every consumer (curve generation,
/// point sampling, net selection, ...) draws from its own stream and adding
/// draws in one place never perturbs another. Uniform residues are drawn by
/// rejection, not std::uniform_int_distribution, whose algorithm is
/// implementation-defined.
class Rng {
public:
    Rng(std::uint64_t seed, std::string_view tag);

    /// Child stream, e.g. rng.split("attempt-3").
    Rng split(std::string_view tag) const;

    std::uint64_t next_u64() { return engine_(); }
    /// Uniform in [0, bound).
    std::uint64_t below(std::uint64_t bound);
    Fp element(std::uint32_t prime) { return Fp(below(prime), prime); }
    Fp nonzero(std::uint32_t prime) { return Fp(1 + below(prime - 1), prime); }
    Vec vector(std::uint32_t prime, std::size_t n);

    std::uint64_t key() const { return key_; }

private:
    explicit Rng(std::uint64_t key);
    std::uint64_t key_;
    std::mt19937_64 engine_;
};

std::uint64_t fnv1a64(std::string_view s);
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace canon
