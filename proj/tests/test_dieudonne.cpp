#include "polarlab/cowitt.hpp"
#include "polarlab/dieudonne.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace polarlab;

namespace {

long long mod(long long a, long long q) { return ((a % q) + q) % q; }

long long inverse(long long a, long long q)
{
    for (long long b = 1; b < q; ++b)
        if (mod(a * b, q) == 1)
            return b;
    FAIL("not a unit");
    return 0;
}

unsigned brute_image_length(const IntMatrix& t, const std::vector<unsigned>& src, const std::vector<unsigned>& tgt,
                            std::uint32_t p)
{
    std::set<std::vector<long long>> images;
    std::vector<long long> x(src.size(), 0);
    while (true) {
        std::vector<long long> y(tgt.size(), 0);
        for (std::size_t r = 0; r < tgt.size(); ++r) {
            const long long q = ipow(p, tgt[r]);
            for (std::size_t c = 0; c < src.size(); ++c)
                y[r] = mod(y[r] + t[r][c] * x[c], q);
        }
        images.insert(y);
        std::size_t k = 0;
        while (k < x.size() && ++x[k] == ipow(p, src[k]))
            x[k++] = 0;
        if (k == x.size())
            break;
    }
    unsigned len = 0;
    for (std::size_t s = images.size(); s > 1; s /= p)
        ++len;
    return len;
}

// Z/p^{i+1} in degree 2p^i, F = p, V = 1.
DieudonneModule witt_tower(std::uint32_t p, unsigned top)
{
    DieudonneModule m;
    m.p = p;
    m.max_degree = 2 * static_cast<int>(ipow(p, top));
    for (unsigned i = 0; i <= top; ++i)
        m.exponents[2 * static_cast<int>(ipow(p, i))] = {i + 1};
    for (unsigned i = 0; i < top; ++i) {
        const int d = 2 * static_cast<int>(ipow(p, i));
        m.F[d] = {{static_cast<long long>(p)}};
        m.V[d] = {{1}};
    }
    return m;
}

}  // namespace

TEST_CASE("image lengths agree with enumeration")
{
    std::mt19937_64 rng(61);
    for (std::uint32_t p : {2u, 3u})
        for (int trial = 0; trial < 40; ++trial) {
            std::vector<unsigned> src(1 + rng() % 2), tgt(1 + rng() % 2);
            for (auto& e : src)
                e = 1 + static_cast<unsigned>(rng() % 2);
            for (auto& e : tgt)
                e = 1 + static_cast<unsigned>(rng() % 3);
            IntMatrix t(tgt.size(), std::vector<long long>(src.size()));
            for (auto& row : t)
                for (auto& x : row)
                    x = static_cast<long long>(rng() % 27);
            // keep the map well defined: p^{src} x = 0 must map to 0
            for (std::size_t r = 0; r < tgt.size(); ++r)
                for (std::size_t c = 0; c < src.size(); ++c)
                    if (tgt[r] > src[c])
                        t[r][c] *= ipow(p, tgt[r] - src[c]);
            CHECK(image_length(t, src, tgt, p) == brute_image_length(t, src, tgt, p));
        }
}

TEST_CASE("the Witt tower is a Dieudonne module")
{
    for (std::uint32_t p : {2u, 3u, 5u}) {
        auto m = witt_tower(p, 3);
        CHECK(check_dieudonne(m).ok());
        CHECK(m.total_length() == 10);
        // F V = p fails if V is multiplication by p as well
        auto bad = m;
        bad.V[2] = {{static_cast<long long>(p)}};
        bad.normalize();
        CHECK_FALSE(check_dieudonne(bad).ok());
    }
}

TEST_CASE("co-Witt vectors of the free p-polar algebra on a degree-2 class")
{
    for (std::uint32_t p : {2u, 3u}) {
        const int d = 2 * static_cast<int>(ipow(p, 3));
        const auto a = free_polar(GradedModule(p, d, {{"x", 2}}), d);
        auto got = cowitt_dieudonne(WittCarrier::from_polar(a), std::nullopt);
        auto want = witt_tower(p, 3);
        want.normalize();
        CHECK(got == want);
        CHECK(is_isomorphic(got, want).verdict == Verdict::Yes);
    }
}

TEST_CASE("co-Witt group orders count Witt digits")
{
    const auto b = truncated_polynomial({{"x", 2, 0}, {"y", 4, 0}}, 2, 16);
    const auto c = WittCarrier::from_algebra(b);
    const CoWitt cw(c, 2);
    const auto m = cowitt_dieudonne(c, 2);
    CHECK(check_dieudonne(m).ok());
    const auto& mod = b.module();
    for (int d = 1; d <= 16; ++d) {
        int a = d;
        while (a % 2 == 0)
            a /= 2;
        std::size_t digits = 0;
        for (int e = a; e <= d; e *= 2)
            digits += mod.dim_in_degree(e);
        CHECK(m.length(d) == digits);
    }
    CHECK(cw.n_max() == 2);
}

TEST_CASE("conjugated modules are isomorphic with a verified witness")
{
    std::mt19937_64 rng(67);
    for (std::uint32_t p : {2u, 3u}) {
        const auto m = witt_tower(p, 2);
        for (int trial = 0; trial < 5; ++trial) {
            std::map<int, long long> u;
            for (const auto& [d, e] : m.exponents) {
                const long long q = ipow(p, e[0]);
                do
                    u[d] = static_cast<long long>(rng() % q);
                while (u[d] % p == 0);
            }
            auto n = m;
            for (auto& [d, f] : n.F) {
                const int t = d * static_cast<int>(p);
                const long long q = ipow(p, m.exponents.at(t)[0]);
                f[0][0] = mod(u[t] * f[0][0] * inverse(mod(u[d], q), q), q);
            }
            for (auto& [d, v] : n.V) {
                const int s = d * static_cast<int>(p);
                const long long q = ipow(p, m.exponents.at(d)[0]);
                v[0][0] = mod(u[d] * v[0][0] * inverse(mod(u[s], q), q), q);
            }
            n.normalize();
            CHECK(check_dieudonne(n).ok());
            const auto r = is_isomorphic(m, n);
            REQUIRE(r.verdict == Verdict::Yes);
            CHECK(verify_isomorphism(m, n, r.witness));
        }
    }
}

TEST_CASE("different modules are told apart, large ones are inconclusive")
{
    const auto m = witt_tower(3, 2);
    auto n = m;
    n.F.erase(2);
    n.V[2] = {{3}};
    n.exponents[2] = {1};
    n.normalize();
    const auto r = is_isomorphic(m, n);
    CHECK(r.verdict == Verdict::No);
    CHECK_FALSE(r.reason.empty());

    IsomorphismOptions small;
    small.max_total_length = 2;
    CHECK(is_isomorphic(m, m, small).verdict == Verdict::Inconclusive);
    CHECK(to_string(Verdict::Inconclusive) == "inconclusive");
}
