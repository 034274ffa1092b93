#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace polarlab {

// Library-wide error: invalid input or a violated precondition.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

bool is_prime(std::uint32_t n);

// A residue modulo the prime p. Arithmetic between residues with different
// moduli is a logic error and throws.
struct Fp {
    std::uint32_t value = 0;
    std::uint32_t p = 2;

    Fp() = default;
    Fp(std::int64_t v, std::uint32_t prime);

    Fp operator+(Fp o) const;
    Fp operator-(Fp o) const;
    Fp operator*(Fp o) const;
    Fp operator-() const;
    Fp inverse() const;
    bool operator==(const Fp&) const = default;
};

// Scalar arithmetic on raw residues for the dense kernels. Vectors and
// matrices store std::uint32_t residues and carry the field separately.
class PrimeField {
public:
    explicit PrimeField(std::uint32_t p);

    std::uint32_t p() const { return p_; }
    std::uint32_t reduce(std::int64_t v) const
    {
        auto r = v % static_cast<std::int64_t>(p_);
        return static_cast<std::uint32_t>(r < 0 ? r + p_ : r);
    }
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const
    {
        auto s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return a >= b ? a - b : a + p_ - b; }
    std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p_ - a; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const
    {
        return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) % p_);
    }
    std::uint32_t inv(std::uint32_t a) const;
    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;
    // (-1)^k as a residue.
    std::uint32_t sign(long long k) const { return (k % 2 == 0) ? 1 : neg(1); }

private:
    std::uint32_t p_;
};

using FpVector = std::vector<std::uint32_t>;

// Generalized binomial coefficient m(m-1)...(m-n+1)/n! reduced mod p.
// Valid for negative m; zero for negative n.
Fp binom_mod_p(long long m, long long n, std::uint32_t p);

// p-adic valuation of a nonzero integer.
int p_valuation(long long n, std::uint32_t p);

long long ipow(long long base, unsigned exp);

}  // namespace polarlab
