#include "polarlab/field.hpp"

namespace polarlab {

bool is_prime(std::uint32_t n)
{
    if (n < 2)
        return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

Fp::Fp(std::int64_t v, std::uint32_t prime) : p(prime)
{
    auto r = v % static_cast<std::int64_t>(prime);
    value = static_cast<std::uint32_t>(r < 0 ? r + prime : r);
}

namespace {
void same_field(const Fp& a, const Fp& b)
{
    if (a.p != b.p)
        throw Error("Fp: mixed moduli " + std::to_string(a.p) + " and " + std::to_string(b.p));
}
}  // namespace

Fp Fp::operator+(Fp o) const
{
    same_field(*this, o);
    return Fp(static_cast<std::int64_t>(value) + o.value, p);
}

Fp Fp::operator-(Fp o) const
{
    same_field(*this, o);
    return Fp(static_cast<std::int64_t>(value) - o.value, p);
}

Fp Fp::operator*(Fp o) const
{
    same_field(*this, o);
    return Fp(static_cast<std::int64_t>(static_cast<std::uint64_t>(value) * o.value % p), p);
}

Fp Fp::operator-() const { return Fp(-static_cast<std::int64_t>(value), p); }

Fp Fp::inverse() const
{
    if (value == 0)
        throw Error("Fp: inverse of zero");
    return Fp(PrimeField(p).inv(value), p);
}

PrimeField::PrimeField(std::uint32_t p) : p_(p)
{
    if (!is_prime(p))
        throw Error("not a prime: " + std::to_string(p));
}

std::uint32_t PrimeField::pow(std::uint32_t a, std::uint64_t e) const
{
    std::uint32_t r = 1 % p_;
    while (e) {
        if (e & 1)
            r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

std::uint32_t PrimeField::inv(std::uint32_t a) const
{
    if (a % p_ == 0)
        throw Error("PrimeField: inverse of zero");
    return pow(a, p_ - 2);
}

namespace {

// Lucas' theorem for 0 <= n.
std::uint32_t lucas(unsigned long long m, unsigned long long n, std::uint32_t p)
{
    PrimeField f(p);
    std::uint32_t result = 1;
    while (m || n) {
        auto mi = m % p, ni = n % p;
        if (ni > mi)
            return 0;
        // small binomial C(mi, ni) mod p, with mi < p
        std::uint32_t num = 1, den = 1;
        for (unsigned long long k = 0; k < ni; ++k) {
            num = f.mul(num, static_cast<std::uint32_t>((mi - k) % p));
            den = f.mul(den, static_cast<std::uint32_t>((k + 1) % p));
        }
        result = f.mul(result, f.mul(num, f.inv(den)));
        m /= p;
        n /= p;
    }
    return result;
}

}  // namespace

Fp binom_mod_p(long long m, long long n, std::uint32_t p)
{
    if (n < 0)
        return Fp(0, p);
    if (m >= 0)
        return Fp(lucas(static_cast<unsigned long long>(m), static_cast<unsigned long long>(n), p), p);
    // C(m, n) = (-1)^n C(n - m - 1, n) for m < 0
    auto v = lucas(static_cast<unsigned long long>(n - m - 1), static_cast<unsigned long long>(n), p);
    Fp r(v, p);
    return (n % 2 == 0) ? r : -r;
}

int p_valuation(long long n, std::uint32_t p)
{
    if (n == 0)
        throw Error("p_valuation of zero");
    int v = 0;
    while (n % static_cast<long long>(p) == 0) {
        n /= static_cast<long long>(p);
        ++v;
    }
    return v;
}

long long ipow(long long base, unsigned exp)
{
    long long r = 1;
    while (exp--)
        r *= base;
    return r;
}

}  // namespace polarlab
