#include "polarlab/hopf.hpp"

#include <doctest.h>

using namespace polarlab;

namespace {

// Multisets of the given letters by total degree; for odd p an odd letter
// is used at most once. Plain recursion over letters.
std::map<int, std::size_t> multiset_count(const std::vector<int>& degrees, std::uint32_t p, int max_degree)
{
    std::vector<std::size_t> count(max_degree + 1, 0);
    count[0] = 1;
    for (int d : degrees) {
        const bool once = p > 2 && d % 2 != 0;
        std::vector<std::size_t> next(max_degree + 1, 0);
        for (int s = 0; s <= max_degree; ++s)
            for (int k = 0; s + k * d <= max_degree && (!once || k <= 1); ++k)
                next[s + k * d] += count[s];
        count = next;
    }
    std::map<int, std::size_t> out;
    for (int s = 0; s <= max_degree; ++s)
        if (count[s])
            out[s] = count[s];
    return out;
}

std::map<int, std::size_t> dims(const GradedModule& m)
{
    std::map<int, std::size_t> out;
    for (int d : m.degrees())
        out[d] = m.dim_in_degree(d);
    return out;
}

std::map<int, std::size_t> primitive_dims(const HopfAlgebra& h)
{
    return dims(primitives(h));
}

std::uint32_t coefficient(const HopfAlgebra& h, const std::string& x, const std::string& l, const std::string& r)
{
    const auto& m = h.module();
    const auto& t = h.coproduct(m.index_of(x));
    auto it = t.find({static_cast<std::uint32_t>(m.index_of(l)), static_cast<std::uint32_t>(m.index_of(r))});
    return it == t.end() ? 0 : it->second;
}

}  // namespace

TEST_CASE("Lambda_p has the Witt coproduct and partition dimensions")
{
    for (std::uint32_t p : {2u, 3u}) {
        const int d = 2 * static_cast<int>(p * p * p);
        const auto h = lambda_p(2, p, lambda_top_index(2, p, d), d);
        CHECK(check_hopf(h).ok());
        std::vector<int> parts;
        for (int k = 2; k <= d; k *= static_cast<int>(p))
            parts.push_back(k);
        auto want = multiset_count(parts, p, d);
        want.erase(0);
        auto got = dims(h.module());
        got.erase(0);
        for (auto it = got.begin(); it != got.end();)
            it = it->second == 0 ? got.erase(it) : std::next(it);
        CHECK(got == want);
    }
    // p = 3: Delta theta_1 = theta_1 (x) 1 + 1 (x) theta_1 - theta_0^2 (x) theta_0 - theta_0 (x) theta_0^2
    const auto h = lambda_p(2, 3, 1, 6);
    CHECK(coefficient(h, "theta2_1", "theta2_1", "1") == 1);
    CHECK(coefficient(h, "theta2_1", "1", "theta2_1") == 1);
    CHECK(coefficient(h, "theta2_1", "theta2_0^2", "theta2_0") == 2);
    CHECK(coefficient(h, "theta2_1", "theta2_0", "theta2_0^2") == 2);
    CHECK(primitive_dims(h) == std::map<int, std::size_t>{{2, 1}, {6, 1}});
    CHECK_THROWS_AS(lambda_p(1, 3, 1, 6), Error);
}

TEST_CASE("Lambda_p is cofree")
{
    CHECK(verify_cofree(lambda_p(2, 3, 3, 54), 54).passed());
    CHECK(verify_cofree(lambda_p(2, 2, 3, 16), 16).passed());
    CHECK(verify_cofree(lambda_p(1, 2, 4, 16), 16).passed());
    // truncating the generators breaks the dimension count
    CHECK_FALSE(verify_cofree(lambda_p(2, 3, 1, 54), 54).passed());
}

TEST_CASE("symmetric tensor coalgebras")
{
    const GradedModule v(3, 12, {{"a", 2}, {"b", 3}, {"c", 4}});
    const auto s = symmetric_tensor_coalgebra(v, 12);
    CHECK(check_hopf(s).ok());
    CHECK(dims(s.module()) == multiset_count({2, 3, 4}, 3, 12));
    CHECK(dims(primitives(s)) == dims(v));
    const auto sd = symmetric_dimensions({2, 3, 4}, 3, 12);
    for (int d = 0; d <= 12; ++d) {
        const auto want = multiset_count({2, 3, 4}, 3, 12);
        CHECK(sd[d] == (want.count(d) ? want.at(d) : 0));
    }
}

TEST_CASE("cofree Hopf algebras on algebras")
{
    const std::vector<GradedAlgebra> inputs{
        truncated_polynomial({{"x", 2, 0}}, 3, 18),
        truncated_polynomial({{"x", 2, 3}}, 3, 18),
        truncated_polynomial({{"x", 1, 0}}, 2, 8),
        exterior({{"x", 1, 0}, {"y", 3, 0}}, 3, 12),
        truncated_polynomial({{"x", 2, 0}, {"y", 2, 0}}, 2, 8),
    };
    for (const auto& a : inputs) {
        const auto h = cof_u(a, a.max_degree());
        CHECK(check_hopf(h).ok());
        // primitives are the length-one words: a copy of A_+
        auto want = dims(a.module());
        want.erase(0);
        CHECK(primitive_dims(h) == want);
        std::vector<int> letters;
        for (std::size_t i = 0; i < a.dim(); ++i)
            if (a.module().degree(i) > 0)
                letters.push_back(a.module().degree(i));
        CHECK(dims(h.module()) == multiset_count(letters, a.p(), a.max_degree()));
        CHECK(verify_cofree(h, a.max_degree()).passed());
    }
    CHECK_THROWS_AS(cof_u(truncated_polynomial({{"e", 0, 2}}, 2, 4), 4), Error);
}

TEST_CASE("exterior Hopf algebras")
{
    const auto h = exterior_hopf(GradedModule(3, 12, {{"x", 1}, {"y", 3}, {"z", 5}}));
    CHECK(check_hopf(h).ok());
    CHECK(h.module().dim() == 8);
    CHECK(primitive_dims(h) == std::map<int, std::size_t>{{1, 1}, {3, 1}, {5, 1}});
    CHECK(verify_cofree(h, 12).passed());
    CHECK_THROWS_AS(exterior_hopf(GradedModule(3, 12, {{"x", 2}})), Error);
}

TEST_CASE("graded duals")
{
    const auto h = lambda_p(2, 3, 2, 18);
    const auto d = dual_hopf(h);
    CHECK(check_hopf(d).ok());
    CHECK(dims(d.module()) == dims(h.module()));
    const auto dd = dual_hopf(d);
    CHECK(check_hopf(dd).ok());
    CHECK(dims(primitives(dd)) == dims(primitives(h)));
    // primitives of the dual see the indecomposables of H
    auto q = indecomposable_dimensions(h);
    for (auto it = q.begin(); it != q.end();)
        it = it->second == 0 ? q.erase(it) : std::next(it);
    CHECK(primitive_dims(d) == q);
}

TEST_CASE("the non-cofree pair")
{
    const auto pair = counterexample_pair(3, 2, 18);
    CHECK(check_hopf(pair.h).ok());
    CHECK(check_hopf(pair.h_prime).ok());
    CHECK(check_hopf(pair.h_dual).ok());
    CHECK(primitives(pair.h_dual).dim_in_degree(18) == 1);
    CHECK(primitives(pair.h_prime_dual).dim_in_degree(18) == 2);
    const auto r = verify_cofree(pair.h, 18);
    CHECK_FALSE(r.passed());
    CHECK(r.dimensions_match);
    CHECK_FALSE(r.indecomposables_match);
    CHECK(verify_cofree(pair.h_prime, 18).passed());
}

TEST_CASE("check_hopf catches a broken coproduct")
{
    auto h = lambda_p(2, 3, 1, 6);
    auto delta = h.coproducts();
    const auto& m = h.module();
    const auto t = static_cast<std::uint32_t>(m.index_of("theta2_1"));
    delta[t].erase({static_cast<std::uint32_t>(m.index_of("theta2_0^2")), static_cast<std::uint32_t>(m.index_of("theta2_0"))});
    const HopfAlgebra broken(h.algebra(), delta);
    const auto r = check_hopf(broken);
    CHECK_FALSE(r.ok());
    CHECK_FALSE(r.violations.empty());
}
