#pragma once

#include <cassert>
#include <compare>
#include <cstdint>
#include <ostream>
#include <vector>

namespace canon {

/// Residue class modulo a word-sized odd prime. The modulus travels with the
/// value so that containers of elements need no external context.
class Fp {
public:
    Fp() = default;
    Fp(std::uint64_t value, std::uint32_t prime) : v_(static_cast<std::uint32_t>(value % prime)), p_(prime) {}

    static Fp from_signed(std::int64_t value, std::uint32_t prime) {
        std::int64_t r = value % static_cast<std::int64_t>(prime);
        if (r < 0) r += prime;
        return Fp(static_cast<std::uint64_t>(r), prime);
    }

    std::uint32_t value() const { return v_; }
    std::uint32_t prime() const { return p_; }
    bool is_zero() const { return v_ == 0; }
    explicit operator bool() const { return v_ != 0; }

    Fp operator+(Fp o) const {
        assert(p_ == o.p_);
        std::uint64_t s = std::uint64_t(v_) + o.v_;
        if (s >= p_) s -= p_;
        return raw(static_cast<std::uint32_t>(s), p_);
    }
    Fp operator-(Fp o) const {
        assert(p_ == o.p_);
        return raw(v_ >= o.v_ ? v_ - o.v_ : v_ + (p_ - o.v_), p_);
    }
    Fp operator-() const { return raw(v_ == 0 ? 0 : p_ - v_, p_); }
    Fp operator*(Fp o) const {
        assert(p_ == o.p_);
        return raw(static_cast<std::uint32_t>((std::uint64_t(v_) * o.v_) % p_), p_);
    }
    Fp operator/(Fp o) const { return *this * o.inverse(); }
    Fp& operator+=(Fp o) { return *this = *this + o; }
    Fp& operator-=(Fp o) { return *this = *this - o; }
    Fp& operator*=(Fp o) { return *this = *this * o; }
    Fp& operator/=(Fp o) { return *this = *this / o; }

    Fp pow(std::uint64_t e) const {
        Fp r = raw(1 % p_, p_);
        Fp b = *this;
        while (e) {
            if (e & 1) r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }

    /// Multiplicative inverse; the element must be nonzero.
    Fp inverse() const;

    bool operator==(const Fp& o) const { return v_ == o.v_ && p_ == o.p_; }
    auto operator<=>(const Fp& o) const { return v_ <=> o.v_; }

private:
    static Fp raw(std::uint32_t v, std::uint32_t p) {
        Fp r;
        r.v_ = v;
        r.p_ = p;
        return r;
    }
    std::uint32_t v_ = 0;
    std::uint32_t p_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, Fp x) { return os << x.value(); }

using Vec = std::vector<Fp>;

/// Convenience factory for elements of one fixed prime field.
class PrimeField {
public:
    explicit PrimeField(std::uint32_t prime);

    std::uint32_t prime() const { return p_; }
    Fp zero() const { return Fp(0, p_); }
    Fp one() const { return Fp(1, p_); }
    Fp operator()(std::int64_t v) const { return Fp::from_signed(v, p_); }
    Vec zeros(std::size_t n) const { return Vec(n, zero()); }
    Vec unit(std::size_t n, std::size_t i) const {
        Vec v = zeros(n);
        v[i] = one();
        return v;
    }
    Vec from_ints(const std::vector<std::int64_t>& xs) const;

    bool operator==(const PrimeField& o) const { return p_ == o.p_; }

private:
    std::uint32_t p_;
};

/// Deterministic Miller-Rabin for 32-bit inputs.
bool is_prime(std::uint64_t n);

// Small vector helpers used throughout.
Fp dot(const Vec& a, const Vec& b);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(const Vec& a, Fp s);
bool is_zero(const Vec& a);

/// Scale so that the first nonzero coordinate is 1. Zero vectors are returned unchanged.
Vec normalize_first_nonzero(Vec a);

/// True when a and b span the same line (both nonzero).
bool proportional(const Vec& a, const Vec& b);

}  // namespace canon
