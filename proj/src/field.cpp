#include "canon/field.hpp"

#include <stdexcept>

namespace canon {

Fp Fp::inverse() const {
    if (v_ == 0) throw std::domain_error("inverse of zero in F_p");
    // Extended Euclid on (v, p).
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = p_, new_r = v_;
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        std::int64_t tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    return from_signed(t, p_);
}

PrimeField::PrimeField(std::uint32_t prime) : p_(prime) {
    if (prime < 3 || !is_prime(prime)) throw std::invalid_argument("PrimeField: modulus must be an odd prime");
}

Vec PrimeField::from_ints(const std::vector<std::int64_t>& xs) const {
    Vec out;
    out.reserve(xs.size());
    for (auto x : xs) out.push_back((*this)(x));
    return out;
}

namespace {
std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}
}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

Fp dot(const Vec& a, const Vec& b) {
    assert(a.size() == b.size() && !a.empty());
    std::uint32_t p = a[0].prime();
    // Accumulate in 64 bits with periodic reduction.
    unsigned __int128 acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::uint64_t(a[i].value()) * b[i].value();
    return Fp(static_cast<std::uint64_t>(acc % p), p);
}

Vec add(const Vec& a, const Vec& b) {
    assert(a.size() == b.size());
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Vec sub(const Vec& a, const Vec& b) {
    assert(a.size() == b.size());
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Vec scale(const Vec& a, Fp s) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
    return r;
}

bool is_zero(const Vec& a) {
    for (auto x : a)
        if (!x.is_zero()) return false;
    return true;
}

Vec normalize_first_nonzero(Vec a) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i].is_zero()) {
            Fp inv = a[i].inverse();
            for (std::size_t j = i; j < a.size(); ++j) a[j] *= inv;
            return a;
        }
    }
    return a;
}

bool proportional(const Vec& a, const Vec& b) {
    if (a.size() != b.size() || is_zero(a) || is_zero(b)) return false;
    return normalize_first_nonzero(a) == normalize_first_nonzero(b);
}

}  // namespace canon
