#include "oracles.hpp"

#include "polarlab/polar.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace polarlab;

namespace {

std::vector<GradedAlgebra> small_presets()
{
    return {
        truncated_polynomial({{"x", 2, 0}}, 2, 8),
        truncated_polynomial({{"x", 2, 0}}, 3, 18),
        truncated_polynomial({{"x", 1, 0}}, 2, 8),
        truncated_polynomial({{"x", 2, 0}, {"y", 2, 0}}, 2, 8),
        exterior({{"x", 1, 0}, {"y", 1, 0}}, 3, 9),
        dual_of({{"x", 2, 0}}, 3, 18),
        truncated_polynomial({{"x", 2, 3}}, 3, 18),
    };
}

}  // namespace

TEST_CASE("polarization remembers exactly the p-fold products")
{
    for (const auto& b : small_presets()) {
        const auto a = polarize(b);
        const auto& m = a.module();
        const auto p = a.p();
        for (int j : m.degrees())
            oracle::for_each_tuple(m.in_degree(j), p, [&](const std::vector<std::size_t>& t) {
                FpVector prod = b.one();
                std::vector<FpVector> args;
                for (auto i : t) {
                    prod = b.multiply(prod, b.basis_vector(i));
                    args.push_back(m.unit_vector(i));
                }
                CHECK(a.mu(args) == prod);
            });
    }
}

TEST_CASE("polarized algebras are p-polar")
{
    for (const auto& b : small_presets()) {
        const auto a = polarize(b);
        CHECK(check_assoc(a).ok());
        CHECK(is_p_polar(a));
        CHECK(oracle::sigma_invariant(a));
    }
}

TEST_CASE("mu is graded symmetric")
{
    const auto a = polarize(exterior({{"x", 1, 0}, {"y", 1, 0}, {"z", 1, 0}}, 3, 3));
    const auto& m = a.module();
    const std::vector<std::size_t> xyz{m.index_of("x"), m.index_of("y"), m.index_of("z")};
    std::vector<std::size_t> perm{0, 1, 2};
    const auto base = a.mu({m.unit_vector(xyz[0]), m.unit_vector(xyz[1]), m.unit_vector(xyz[2])});
    do {
        auto v = a.mu({m.unit_vector(xyz[perm[0]]), m.unit_vector(xyz[perm[1]]), m.unit_vector(xyz[perm[2]])});
        if (oracle::permutation_sign(perm) < 0)
            v = scale_vector(a.field(), v, 2);
        CHECK(v == base);
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK_THROWS_AS(PolarAlgebra(m).set_mu({0, 0}, {}), Error);
}

TEST_CASE("perturbed mu tables are rejected whenever symmetry breaks")
{
    std::mt19937_64 rng(17);
    int broken = 0;
    for (int trial = 0; trial < 60; ++trial) {
        auto a = polarize(trial % 2 ? truncated_polynomial({{"x", 2, 0}}, 2, 8)
                                    : truncated_polynomial({{"x", 1, 0}, {"y", 2, 0}}, 2, 8));
        const auto& m = a.module();
        // change mu on a random pair in a random degree j with 4j <= 8
        std::vector<std::size_t> low;
        for (std::size_t i = 0; i < m.dim(); ++i)
            if (m.degree(i) >= 1 && m.degree(i) <= 2)
                low.push_back(i);
        const auto u = low[rng() % low.size()], v = low[rng() % low.size()];
        if (m.degree(u) != m.degree(v))
            continue;
        const auto& target = m.in_degree(2 * m.degree(u));
        SparseVec value;
        for (auto t : target)
            if (rng() % 2)
                value.emplace_back(static_cast<std::uint32_t>(t), 1);
        a.set_mu({static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v)}, value);
        const bool invariant = oracle::sigma_invariant(a);
        CHECK(check_assoc(a).ok() == invariant);
        broken += invariant ? 0 : 1;
    }
    CHECK(broken >= 10);
}

TEST_CASE("a degree-0 table that collapses in the hull")
{
    // mu(e,e) = f, mu(e,f) = e, mu(f,f) = 0 forces e = e^3 = ... = 0
    PolarAlgebra a(GradedModule(2, 4, {{"e", 0}, {"f", 0}}));
    a.set_mu({0, 0}, {{1, 1}});
    a.set_mu({0, 1}, {{0, 1}});
    CHECK_FALSE(check_assoc(a).ok());
    CHECK_FALSE(oracle::sigma_invariant(a));
    CHECK_FALSE(is_p_polar(a));
}

TEST_CASE("p-typical split partitions the basis")
{
    const auto a = polarize(truncated_polynomial({{"x", 2, 0}}, 3, 54));
    const auto s = p_typical_split(a);
    std::set<std::size_t> seen(s.degree_zero_indices.begin(), s.degree_zero_indices.end());
    for (const auto& [j, idx] : s.block_indices) {
        CHECK(j % 3 != 0);
        for (auto i : idx) {
            CHECK(block_of(a.module().degree(i), 3) == j);
            CHECK(seen.insert(i).second);
        }
    }
    CHECK(seen.size() == a.dim());
    CHECK(reassemble(s, a.module()) == a);
    CHECK(block_of(54, 3) == 2);
    CHECK(block_of(20, 2) == 5);
}

TEST_CASE("free p-polar algebra on a degree-2 class")
{
    for (std::uint32_t p : {2u, 3u}) {
        const int d = 2 * static_cast<int>(p * p * p);
        const auto a = free_polar(GradedModule(p, d, {{"x", 2}}), d);
        std::vector<int> want;
        for (int k = 2; k <= d; k *= static_cast<int>(p))
            want.push_back(k);
        CHECK(a.module().degrees() == want);
        for (int k : want)
            CHECK(a.module().dim_in_degree(k) == 1);
        CHECK(check_assoc(a).ok());
        CHECK(is_p_polar(a));
        const auto h = hull(a, d);
        for (const auto& [deg, r] : unit_map_ranks(a, h))
            CHECK(r == a.module().dim_in_degree(deg));
        // the hull is the polynomial algebra on x
        for (int k = 0; k <= d; ++k)
            CHECK(h.algebra.module().dim_in_degree(k) == (k % 2 == 0 ? 1u : 0u));
    }
}

TEST_CASE("restriction keeps the mu table")
{
    const auto a = polarize(truncated_polynomial({{"x", 2, 0}}, 2, 16));
    const auto& m = a.module();
    const auto r = restrict_polar(a, {m.index_of("x"), m.index_of("x^2"), m.index_of("x^4")}, 4);
    CHECK(r.dim() == 2);
    CHECK(r.max_degree() == 4);
    const auto& rm = r.module();
    CHECK(r.power(rm.unit_vector(rm.index_of("x"))) == rm.unit_vector(rm.index_of("x^2")));
}

TEST_CASE("odd-degree mu: zero on the diagonal and below p classes, not in general")
{
    const auto two = polarize(exterior({{"x", 3, 0}, {"y", 3, 0}}, 3, 12));
    for (int j : two.module().degrees()) {
        if (j % 2 == 0)
            continue;
        const auto& idx = two.module().in_degree(j);
        CHECK(idx.size() < 3);
        oracle::for_each_tuple(idx, 3, [&](const std::vector<std::size_t>& t) {
            std::vector<std::uint32_t> args(t.begin(), t.end());
            CHECK(two.mu_basis(args).empty());
        });
    }

    const auto three = polarize(exterior({{"x", 3, 0}, {"y", 3, 0}, {"z", 3, 0}}, 3, 9));
    const auto& m = three.module();
    const std::vector<std::uint32_t> xyz{static_cast<std::uint32_t>(m.index_of("x")),
                                         static_cast<std::uint32_t>(m.index_of("y")),
                                         static_cast<std::uint32_t>(m.index_of("z"))};
    CHECK_FALSE(three.mu_basis(xyz).empty());
    for (auto i : xyz)
        CHECK(three.mu_basis({i, i, i}).empty());
}
