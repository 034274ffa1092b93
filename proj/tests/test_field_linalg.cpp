#include "polarlab/abelian.hpp"
#include "polarlab/field.hpp"
#include "polarlab/matrix.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace polarlab;

namespace {

// Size of the row span, by enumerating all combinations.
std::size_t span_size(const FpMatrix& m)
{
    const auto p = m.p();
    std::set<FpVector> seen;
    std::vector<std::uint32_t> coef(m.rows(), 0);
    while (true) {
        FpVector v(m.cols(), 0);
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c)
                v[c] = (v[c] + coef[r] * m.at(r, c)) % p;
        seen.insert(v);
        std::size_t k = 0;
        while (k < coef.size() && ++coef[k] == p)
            coef[k++] = 0;
        if (k == coef.size())
            break;
    }
    return seen.size();
}

long long exact_binomial(long long n, long long k)
{
    if (k < 0 || k > n)
        return 0;
    long long r = 1;
    for (long long i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

}  // namespace

TEST_CASE("prime field arithmetic")
{
    for (std::uint32_t p : {2u, 3u, 5u, 7u, 101u}) {
        const PrimeField f(p);
        for (std::uint32_t a = 1; a < std::min(p, 40u); ++a) {
            CHECK(f.mul(a, f.inv(a)) == 1);
            CHECK(f.pow(a, p - 1) == 1);
            CHECK(f.add(a, f.neg(a)) == 0);
        }
        CHECK(f.sign(3) == f.neg(1));
        CHECK(f.reduce(-1) == p - 1);
    }
    CHECK_THROWS_AS(PrimeField(4), Error);
    CHECK_THROWS_AS(Fp(1, 2) + Fp(1, 3), Error);
    CHECK(is_prime(97));
    CHECK_FALSE(is_prime(91));
}

TEST_CASE("binomials mod p match exact integers")
{
    for (std::uint32_t p : {2u, 3u, 5u})
        for (long long n = 0; n < 30; ++n)
            for (long long k = -1; k <= n + 1; ++k) {
                const long long e = exact_binomial(n, k) % p;
                CHECK(binom_mod_p(n, k, p).value == static_cast<std::uint32_t>(e));
            }
    // (-1 choose k) = (-1)^k
    CHECK(binom_mod_p(-1, 3, 5).value == 4);
    CHECK(binom_mod_p(-1, 4, 5).value == 1);
}

TEST_CASE("rank agrees with brute-force span size")
{
    std::mt19937_64 rng(7);
    for (std::uint32_t p : {2u, 3u, 5u})
        for (int trial = 0; trial < 40; ++trial) {
            const std::size_t r = 1 + rng() % 4, c = 1 + rng() % 5;
            auto m = FpMatrix::random(r, c, p, rng);
            if (trial % 3 == 0 && r > 1)
                for (std::size_t j = 0; j < c; ++j)
                    m.at(r - 1, j) = m.at(0, j);
            CHECK(static_cast<long long>(span_size(m)) == ipow(p, static_cast<unsigned>(m.rank())));
        }
}

TEST_CASE("kernel, inverse and solve")
{
    std::mt19937_64 rng(11);
    for (std::uint32_t p : {2u, 3u, 7u})
        for (int trial = 0; trial < 30; ++trial) {
            const std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
            const auto m = FpMatrix::random(r, c, p, rng);
            const auto rk = rank_kernel(m);
            CHECK(rk.rank == m.rank());
            CHECK(rk.kernel_basis.size() == c - rk.rank);
            for (const auto& k : rk.kernel_basis)
                CHECK(m.apply(k) == FpVector(r, 0));
            FpVector x(c);
            for (auto& v : x)
                v = static_cast<std::uint32_t>(rng() % p);
            const auto b = m.apply(x);
            const auto sol = m.solve(b);
            REQUIRE(sol.has_value());
            CHECK(m.apply(*sol) == b);

            const auto sq = FpMatrix::random(r, r, p, rng);
            const auto inv = sq.inverse();
            CHECK(inv.has_value() == (sq.rank() == r));
            if (inv) {
                CHECK(sq * *inv == FpMatrix::identity(r, p));
                CHECK(*inv * sq == FpMatrix::identity(r, p));
            }
        }
}

TEST_CASE("transpose reverses products")
{
    std::mt19937_64 rng(3);
    const auto a = FpMatrix::random(3, 4, 5, rng), b = FpMatrix::random(4, 2, 5, rng);
    CHECK((a * b).transpose() == b.transpose() * a.transpose());
    CHECK(a.transpose().rank() == a.rank());
}

TEST_CASE("row space basis is echelon and spans")
{
    const std::vector<FpVector> vs{{1, 2, 0}, {2, 4, 0}, {0, 1, 1}};
    const auto b = row_space_basis(vs, 3, 5);
    CHECK(b.size() == 2);
    CHECK(span_size(FpMatrix::from_rows(b, 3, 5)) == span_size(FpMatrix::from_rows(vs, 3, 5)));
}

TEST_CASE("finite abelian p-groups from relations")
{
    // Z^2 / <(4, 0), (2, 2)> at p = 2: order 8, Z/2 + Z/4
    const auto g = smith_p_group({{4, 0}, {2, 2}}, 2, 2, 6);
    auto e = g.exponents;
    std::sort(e.begin(), e.end());
    CHECK(e == std::vector<unsigned>{1, 2});
    // Z / 9 at p = 3
    const auto h = smith_p_group({{9}}, 1, 3, 4);
    CHECK(h.exponents == std::vector<unsigned>{2});
    CHECK(h.order(0) == 9);
    const auto x = h.coordinates({10});
    CHECK(x == std::vector<long long>{1});
    // relations that kill everything
    CHECK(smith_p_group({{1}}, 1, 5, 3).exponents.empty());
}

TEST_CASE("p-group order agrees with brute-force quotient counting")
{
    // |Z^2 / (relations + p^M Z^2)| counted by enumerating cosets
    std::mt19937_64 rng(5);
    for (std::uint32_t p : {2u, 3u, 5u}) {
        const long long q = ipow(p, 3);
        for (int trial = 0; trial < 60; ++trial) {
            IntMatrix rel{{static_cast<long long>(rng() % q), static_cast<long long>(rng() % q)},
                          {static_cast<long long>(rng() % q), static_cast<long long>(rng() % q)},
                          {q, 0},
                          {0, q}};
            std::set<std::pair<long long, long long>> sub;
            for (long long a = 0; a < q; ++a)
                for (long long b = 0; b < q; ++b)
                    sub.insert({mod_floor(a * rel[0][0] + b * rel[1][0], q), mod_floor(a * rel[0][1] + b * rel[1][1], q)});
            const long long order = q * q / static_cast<long long>(sub.size());
            const auto g = smith_p_group(rel, 2, p, 5);
            long long got = 1;
            for (auto e : g.exponents)
                got *= ipow(p, e);
            CHECK(got == order);
            // relations map to zero, chosen generators to unit coordinates
            for (const auto& row : rel)
                CHECK(g.coordinates(row) == std::vector<long long>(g.exponents.size(), 0));
            for (std::size_t k = 0; k < g.exponents.size(); ++k) {
                std::vector<long long> unit(g.exponents.size(), 0);
                unit[k] = 1;
                CHECK(g.coordinates(g.generators[k]) == unit);
            }
        }
    }
}
