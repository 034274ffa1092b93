// One line per acceptance criterion; exit status 1 if any fails.

#include "oracles.hpp"

#include "polarlab/cowitt.hpp"
#include "polarlab/dieudonne.hpp"
#include "polarlab/dyer_lashof.hpp"
#include "polarlab/fmodule.hpp"
#include "polarlab/hopf.hpp"
#include "polarlab/polar.hpp"
#include "polarlab/witt.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

using namespace polarlab;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;

    // Records the first failure only.
    void require(bool cond, const std::string& what)
    {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

struct Criterion {
    int id;
    std::string name;
    double budget_seconds;  // 0: no limit
    std::function<Outcome()> run;
};

long long mod(long long a, long long q) { return ((a % q) + q) % q; }

// ---------------------------------------------------------------- Witt

Outcome witt_ghost_identity()
{
    Outcome out;
    for (std::uint32_t p : {2u, 3u, 5u})
        for (unsigned n = 0; n <= 3; ++n) {
            const auto& s = witt_sum_polys(p, n);
            auto vars = witt_variables("a", n);
            const auto bv = witt_variables("b", n);
            vars.insert(vars.end(), bv.begin(), bv.end());
            std::vector<IntPoly> a, b;
            for (unsigned i = 0; i <= n; ++i) {
                a.push_back(IntPoly::variable(vars, i));
                b.push_back(IntPoly::variable(vars, n + 1 + i));
            }
            const auto ga = ghost(a, p), gb = ghost(b, p), gs = ghost(s.sum, p);
            for (unsigned m = 0; m <= n; ++m)
                out.require(gs[m] == ga[m] + gb[m],
                            "ghost identity fails for p = " + std::to_string(p) + ", component " + std::to_string(m));
        }
    return out;
}

GradedAlgebra prime_field(std::uint32_t p) { return truncated_polynomial({}, p, 0); }

WittVector scalar_vector(const WittCarrier& c, const std::vector<long long>& digits)
{
    WittVector w{0, {}};
    for (auto d : digits)
        w.entries.push_back({static_cast<std::uint32_t>(mod(d, c.p()))});
    return w;
}

Outcome witt_group_law()
{
    Outcome out;
    for (std::uint32_t p : {2u, 3u, 5u}) {
        const auto c = WittCarrier::from_algebra(prime_field(p));
        const long long q = static_cast<long long>(p) * p;
        // exhaustive addition table
        std::vector<WittVector> all;
        for (long long a0 = 0; a0 < p; ++a0)
            for (long long a1 = 0; a1 < p; ++a1)
                all.push_back(scalar_vector(c, {a0, a1}));
        std::map<std::pair<std::size_t, std::size_t>, std::size_t> table;
        auto index = [&](const WittVector& w) {
            for (std::size_t i = 0; i < all.size(); ++i)
                if (all[i] == w)
                    return i;
            return all.size();
        };
        for (std::size_t i = 0; i < all.size(); ++i)
            for (std::size_t j = 0; j < all.size(); ++j) {
                const auto k = index(witt_add(c, all[i], all[j]));
                out.require(k < all.size(), "W_1(F_p) is not closed under addition");
                table[{i, j}] = k;
            }
        // commutative, associative, with identity (0, 0)
        for (std::size_t i = 0; i < all.size(); ++i) {
            out.require(table[{0, i}] == i, "(0, 0) is not the identity");
            for (std::size_t j = 0; j < all.size(); ++j) {
                out.require(table[{i, j}] == table[{j, i}], "addition table is not commutative");
                for (std::size_t k = 0; k < all.size(); ++k)
                    out.require(table[{table[{i, j}], k}] == table[{i, table[{j, k}]}],
                                "addition table is not associative");
            }
        }
        // the Teichmuller unit generates a cyclic group of order p^2
        const auto t = teichmuller(c, {1}, 0, 1);
        std::set<std::size_t> seen;
        std::size_t cur = 0;
        long long order = 0;
        do {
            seen.insert(cur);
            cur = table[{cur, index(t)}];
            ++order;
        } while (cur != 0 && order <= q);
        out.require(order == q, "Teichmuller unit has order " + std::to_string(order) + " for p = " +
                                    std::to_string(p));
        out.require(seen.size() == all.size(), "Teichmuller unit does not generate W_1(F_p)");
    }
    return out;
}

WittVector random_witt(const WittCarrier& c, int degree, unsigned n, std::mt19937_64& rng)
{
    auto w = witt_zero(c, degree, n);
    const auto& m = c.module();
    for (unsigned i = 0; i <= n; ++i) {
        const long long d = degree * ipow(c.p(), i);
        if (d > m.max_degree())
            continue;
        for (auto b : m.in_degree(static_cast<int>(d)))
            w.entries[i][b] = static_cast<std::uint32_t>(rng() % c.p());
    }
    return w;
}

std::vector<PolarAlgebra> polar_carriers()
{
    return {
        free_polar(GradedModule(3, 54, {{"x", 2}}), 54),
        free_polar(GradedModule(2, 16, {{"x", 2}, {"y", 4}}), 16),
        polarize(truncated_polynomial({{"x", 2, 0}}, 2, 16)),
        polarize(truncated_polynomial({{"x", 2, 0}, {"y", 4, 0}}, 2, 16)),
        polarize(dual_of({{"x", 2, 0}}, 3, 54)),
        polarize(truncated_polynomial({{"x", 2, 3}}, 3, 18)),
    };
}

Outcome witt_fv()
{
    Outcome out;
    std::mt19937_64 rng(101);
    std::size_t checked = 0, nontrivial = 0;
    const auto carriers = polar_carriers();
    for (const auto& a : carriers) {
        const auto c = WittCarrier::from_polar(a);
        const auto p = static_cast<int>(a.p());
        std::vector<int> low;
        for (int j : a.module().degrees())
            if (j > 0 && j * p <= a.max_degree())
                low.push_back(j);
        for (int trial = 0; trial < 20; ++trial) {
            const int j = low[rng() % low.size()];
            const unsigned n = static_cast<unsigned>(rng() % 3);
            const auto u = random_witt(c, j, n + 1, rng);
            if (witt_multiple(c, u, p) != witt_zero(c, j, n + 1))
                ++nontrivial;
            out.require(verschiebung(c, frobenius(c, u)) == witt_multiple(c, u, p), "VF != p in degree " +
                                                                                        std::to_string(j));
            const auto w = random_witt(c, j * p, n, rng);
            out.require(frobenius(c, verschiebung(c, w)) == witt_multiple(c, w, p), "FV != p in degree " +
                                                                                        std::to_string(j * p));
            ++checked;
        }
    }
    out.require(carriers.size() >= 5 && checked >= 100, "too few samples");
    if (out.ok)
        out.detail = std::to_string(checked) + " vectors of each kind over " + std::to_string(carriers.size()) +
                     " carriers, " + std::to_string(nontrivial) + " with p u != 0";
    return out;
}

std::vector<GradedAlgebra> algebra_presets()
{
    return {
        truncated_polynomial({{"x", 2, 0}}, 2, 16),
        truncated_polynomial({{"x", 2, 0}}, 3, 18),
        truncated_polynomial({{"x", 1, 0}, {"y", 2, 2}}, 2, 8),
        exterior({{"x", 1, 0}, {"y", 3, 0}}, 3, 12),
        dual_of({{"x", 2, 0}}, 3, 18),
        quotient_monomial_ideal({{"x", 2, 0}, {"y", 2, 0}}, {{1, 1}}, 2, 8),
        tensor_product(truncated_polynomial({{"x", 2, 3}}, 3, 18), exterior({{"e", 1, 0}}, 3, 18)),
    };
}

Outcome factorization()
{
    Outcome out;
    std::mt19937_64 rng(103);
    for (const auto& b : algebra_presets()) {
        const auto ca = WittCarrier::from_algebra(b);
        const auto cp = WittCarrier::from_polar(polarize(b));
        const auto p = static_cast<int>(b.p());
        for (int j : b.module().degrees()) {
            if (j == 0)
                continue;
            for (unsigned n = 0; n <= 2; ++n) {
                const auto u = random_witt(ca, j, n, rng), v = random_witt(ca, j, n, rng);
                out.require(witt_add(ca, u, v) == witt_add(cp, u, v),
                            "witt_add differs in degree " + std::to_string(j) + " (p = " + std::to_string(p) + ")");
            }
        }
        const auto da = cowitt_dieudonne(ca, 2), dp = cowitt_dieudonne(cp, 2);
        out.require(da == dp, "cowitt_dieudonne differs (p = " + std::to_string(p) + ")");
    }
    return out;
}

Outcome free_polar_cowitt()
{
    Outcome out;
    for (std::uint32_t p : {2u, 3u}) {
        const int top = 2 * static_cast<int>(ipow(p, 3));
        const auto a = free_polar(GradedModule(p, top, {{"x", 2}}), top);
        const auto m = cowitt_dieudonne(WittCarrier::from_polar(a), std::nullopt);
        out.require(check_dieudonne(m).ok(), "not a Dieudonne module");
        for (unsigned i = 0; i <= 3; ++i) {
            const int d = 2 * static_cast<int>(ipow(p, i));
            const auto it = m.exponents.find(d);
            out.require(it != m.exponents.end() && it->second == std::vector<unsigned>{i + 1},
                        "CW_" + std::to_string(d) + " is not Z/p^" + std::to_string(i + 1));
            if (i < 3) {
                out.require(m.f_matrix(d) == IntMatrix{{static_cast<long long>(p)}},
                            "F is not multiplication by p on CW_" + std::to_string(d));
                out.require(m.v_matrix(d) == IntMatrix{{1}}, "V is not the restriction into CW_" + std::to_string(d));
            }
        }
        out.require(m.degrees().size() == 4, "extra degrees in CW^u");
    }
    return out;
}

// W(k[u]) = W(k)[u], |u| = 2: c -> c [u^m] (component i times u^{m p^i}).
Outcome polynomial_witt()
{
    Outcome out;
    const std::uint32_t p = 3;
    const int top = 54;
    const auto b = truncated_polynomial({{"u", 2, 0}}, p, top);
    const auto cb = WittCarrier::from_algebra(b);
    const auto ck = WittCarrier::from_algebra(prime_field(p));
    const auto& mb = b.module();
    std::mt19937_64 rng(107);

    auto phi = [&](const WittVector& c, int m) {
        WittVector w{2 * m, {}};
        for (std::size_t i = 0; i < c.entries.size(); ++i) {
            auto v = mb.zero();
            const long long e = m * ipow(p, static_cast<unsigned>(i));
            if (2 * e <= top)
                v[mb.index_of(e == 1 ? std::string("u") : "u^" + std::to_string(e))] = c.entries[i][0];
            w.entries.push_back(v);
        }
        return w;
    };
    auto random_scalar = [&](unsigned n) {
        std::vector<long long> d(n + 1);
        for (auto& x : d)
            x = static_cast<long long>(rng() % p);
        return scalar_vector(ck, d);
    };

    for (int m = 1; 2 * m <= top; ++m)
        for (unsigned n = 0; n <= 3; ++n) {
            const int j = 2 * m;
            // cardinality: p^{sum_i dim B_{j p^i}} against the image of W_n(k)
            unsigned log_card = 0;
            for (unsigned i = 0; i <= n; ++i)
                if (j * ipow(p, i) <= top)
                    log_card += static_cast<unsigned>(mb.dim_in_degree(static_cast<int>(j * ipow(p, i))));
            std::set<std::vector<FpVector>> image;
            const long long count = ipow(p, n + 1);
            for (long long code = 0; code < count; ++code) {
                std::vector<long long> d;
                for (long long x = code, i = 0; i <= n; ++i, x /= p)
                    d.push_back(x % p);
                image.insert(phi(scalar_vector(ck, d), m).entries);
            }
            out.require(static_cast<long long>(image.size()) == ipow(p, log_card),
                        "cardinality mismatch in degree " + std::to_string(j));
            for (int trial = 0; trial < 8; ++trial) {
                const auto c = random_scalar(n), d = random_scalar(n);
                out.require(witt_add(cb, phi(c, m), phi(d, m)) == phi(witt_add(ck, c, d), m),
                            "addition does not correspond in degree " + std::to_string(j));
                if (n >= 1)
                    out.require(frobenius(cb, phi(c, m)) == phi(frobenius(ck, c), m * static_cast<int>(p)),
                                "F does not correspond in degree " + std::to_string(j));
                if (2 * m * static_cast<int>(p) <= top && n <= 2)
                    out.require(verschiebung(cb, phi(c, m * static_cast<int>(p))) == phi(verschiebung(ck, c), m),
                                "V does not correspond in degree " + std::to_string(j));
            }
        }
    return out;
}

// ---------------------------------------------------------------- Hopf

// Partitions of d into parts from `parts`, by dynamic programming.
std::vector<std::size_t> partition_counts(const std::vector<int>& parts, int max_degree)
{
    std::vector<std::size_t> c(max_degree + 1, 0);
    c[0] = 1;
    for (int part : parts)
        for (int s = part; s <= max_degree; ++s)
            c[s] += c[s - part];
    return c;
}

Outcome lambda_cofree()
{
    Outcome out;
    for (std::uint32_t p : {2u, 3u}) {
        const int top = 2 * static_cast<int>(p * p * p);
        const auto h = lambda_p(2, p, lambda_top_index(2, p, top), top);
        const auto r = verify_cofree(h, top);
        out.require(r.passed(), "verify_cofree fails on Lambda_" + std::to_string(p) +
                                    (r.messages.empty() ? std::string() : ": " + r.messages.front()));
        std::vector<int> parts;
        for (int k = 2; k <= top; k *= static_cast<int>(p))
            parts.push_back(k);
        const auto want = partition_counts(parts, top);
        for (int d = 1; d <= top; ++d) {
            out.require(h.module().dim_in_degree(d) == want[d],
                        "dim (Lambda_" + std::to_string(p) + ")_" + std::to_string(d) + " is not a partition count");
            const auto s = r.symmetric_dims.count(d) ? r.symmetric_dims.at(d) : 0;
            out.require(s == want[d], "dim S(P)_" + std::to_string(d) + " is not a partition count");
        }
    }
    return out;
}

Outcome counterexample()
{
    Outcome out;
    const std::uint32_t p = 3;
    const int j = 2, d = 18;
    const auto pair = counterexample_pair(p, j, d);
    const auto ph = primitives(pair.h_dual).dim_in_degree(d);
    const auto php = primitives(pair.h_prime_dual).dim_in_degree(d);
    out.require(ph == 1, "dim P(H*)_18 = " + std::to_string(ph));
    out.require(php == 2, "dim P(H'*)_18 = " + std::to_string(php));
    out.require(!verify_cofree(pair.h, d).passed(), "verify_cofree passes on H");
    out.require(verify_cofree(pair.h_prime, d).passed(), "verify_cofree fails on H'");
    return out;
}

// ---------------------------------------------------------------- F-modules

Outcome fmodule_structure()
{
    Outcome out;
    std::mt19937_64 rng(109);
    int count = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const std::uint32_t p = trial % 3 == 0 ? 2 : trial % 3 == 1 ? 3 : 5;
        const int top = 2 * static_cast<int>(p * p * p);
        const auto m = random_fmodule(p, top, 20, rng);
        out.require(m.module.dim() <= 20, "random F-module too large");
        const auto b = decompose(m);
        const auto r = reconstruct(b);
        out.require(rank_profile(r) == rank_profile(m), "reconstruction changes the rank profile");
        const auto phi = isomorphism_witness(m, r, rng);
        out.require(phi && is_f_isomorphism(m, r, *phi), "no isomorphism to the reconstruction");
        const auto lifted = lift_to_polar(m);
        out.require(decompose(u_f(lifted.algebra)) == b, "u_f of the lift has a different barcode");
        ++count;
    }
    if (out.ok)
        out.detail = std::to_string(count) + " modules";
    return out;
}

// ---------------------------------------------------------------- polar

Outcome cp_infinity_split()
{
    Outcome out;
    const std::uint32_t p = 3;
    const int top = 54;
    const auto a = polarize(truncated_polynomial({{"x", 2, 0}}, p, top));
    const auto s = p_typical_split(a);
    out.require(reassemble(s, a.module()) == a, "blocks do not reassemble to A");
    auto exponent = [&](std::size_t i) { return a.module().degree(i) / 2; };
    for (int i = 0; i < static_cast<int>(p) - 1; ++i) {
        std::set<int> got, want;
        if (i == 0)
            for (auto k : s.degree_zero_indices)
                got.insert(exponent(k));
        for (const auto& [j, idx] : s.block_indices) {
            out.require(j % static_cast<int>(p) != 0, "block index divisible by p");
            if ((j / 2) % (static_cast<int>(p) - 1) != i)
                continue;
            for (auto k : idx)
                got.insert(exponent(k));
        }
        for (int m = 0; 2 * m <= top; ++m)
            if (m % (static_cast<int>(p) - 1) == i)
                want.insert(m);
        out.require(got == want, "block union for i = " + std::to_string(i) + " is not {x^m : m = i mod p-1}");
    }
    for (const auto& [j, blk] : s.blocks)
        out.require(check_assoc(blk).ok(), "block " + std::to_string(j) + " is not p-polar");
    return out;
}

Outcome polarity_decision()
{
    Outcome out;
    for (const auto& b : algebra_presets()) {
        const auto a = polarize(b);
        out.require(check_assoc(a).ok(), "a polarized preset fails check_assoc");
        out.require(is_p_polar(a), "a polarized preset is not p-polar");
        out.require(oracle::sigma_invariant(a), "the brute-force oracle rejects a polarized preset");
    }
    std::mt19937_64 rng(113);
    const std::vector<GradedAlgebra> bases{
        truncated_polynomial({{"x", 2, 0}}, 2, 8),
        truncated_polynomial({{"x", 1, 0}, {"y", 2, 0}}, 2, 8),
        truncated_polynomial({{"x", 2, 0}}, 3, 18),
    };
    int rejected = 0, trials = 0;
    for (int trial = 0; trial < 90; ++trial) {
        auto a = polarize(bases[trial % bases.size()]);
        const auto& m = a.module();
        const auto p = a.p();
        std::vector<int> degs;
        for (int j : m.degrees())
            if (j > 0 && static_cast<long long>(p) * p * j <= m.max_degree())
                degs.push_back(j);
        const int j = degs[rng() % degs.size()];
        const auto& pool = m.in_degree(j);
        std::vector<std::uint32_t> args;
        for (std::uint32_t k = 0; k < p; ++k)
            args.push_back(static_cast<std::uint32_t>(pool[rng() % pool.size()]));
        SparseVec value;
        for (auto t : m.in_degree(static_cast<int>(p) * j)) {
            const auto c = static_cast<std::uint32_t>(rng() % p);
            if (c)
                value.emplace_back(static_cast<std::uint32_t>(t), c);
        }
        a.set_mu(args, value);
        ++trials;
        const bool invariant = oracle::sigma_invariant(a);
        const bool accepted = check_assoc(a).ok();
        out.require(accepted == invariant, "check_assoc disagrees with permutation enumeration");
        if (!invariant)
            ++rejected;
    }
    out.require(rejected >= 10, "only " + std::to_string(rejected) + " perturbations broke the symmetry");
    if (out.ok)
        out.detail = std::to_string(rejected) + " of " + std::to_string(trials) + " perturbations rejected";
    return out;
}

// ---------------------------------------------------------------- Dyer-Lashof

// Every operation strictly above the instability line, operations inside
// all p-th power layers.
bool fully_reduced(const BoundTerm& t, const GradedAlgebra& a, std::uint32_t p)
{
    long long d = a.module().degree(t.base);
    bool seen_power = false;
    for (const auto& layer : t.layers) {
        if (layer.eps < 0) {
            seen_power = true;
            d *= p;
            continue;
        }
        if (seen_power || 2 * layer.r <= d)
            return false;
        d += 2 * layer.r * static_cast<long long>(p - 1) - layer.eps;
    }
    return true;
}

Outcome dyer_lashof()
{
    Outcome out;
    std::mt19937_64 rng(127);
    for (int trial = 0; trial < 500; ++trial) {
        const std::uint32_t p = trial % 2 ? 5 : 3;
        const int q = 1 + static_cast<int>(rng() % 6);
        DLWord w(1 + rng() % 3);
        for (auto& op : w) {
            op.eps = static_cast<int>(rng() % 2);
            op.r = 1 + static_cast<long long>(rng() % 12);
        }
        const DLContext ctx{p, q, std::nullopt, SignConvention::CohenLadaMay};
        const DLExpression e{{w, 1}};
        const auto nf = adem_rewrite(e, ctx, RewriteStrategy::Leftmost);
        const auto deg = dl_degree(w, p, q, std::nullopt).degree;
        for (const auto& [v, c] : nf) {
            out.require(is_admissible(v, p), "inadmissible output for " + format_dl_word(w));
            out.require(dl_degree(v, p, q, std::nullopt).degree == deg, "degree changed for " + format_dl_word(w));
        }
        out.require(adem_rewrite(nf, ctx) == nf, "rewriting is not idempotent on " + format_dl_word(w));
        out.require(adem_rewrite(e, ctx, RewriteStrategy::Rightmost) == nf,
                    "leftmost and rightmost rewriting differ on " + format_dl_word(w));

        // bound to x of degree q in k[x] (exterior when q is odd)
        const auto a = q % 2 == 0 ? truncated_polynomial({{"x", q, 0}}, p, 2000) : exterior({{"x", q, 0}}, p, 2000);
        const auto x = a.basis_vector(a.module().index_of("x"));
        const auto bound = bound_normal_form(bind_expression(e, a, x), a, ctx);
        out.require(bound_normal_form(bind_expression(nf, a, x), a, ctx) == bound,
                    "rewriting before and after instability differ on " + format_dl_word(w));
        for (const auto& [t, c] : bound)
            out.require(fully_reduced(t, a, p), "unreduced term " + format_bound(t, a));
        const auto& inner = w.back();
        if (2 * inner.r < q || (inner.eps == 1 && 2 * inner.r == q)) {
            out.require(bound.empty(), "Q^r x != 0 below the line for " + format_dl_word(w));
        } else if (inner.eps == 0 && 2 * inner.r == q) {
            const DLWord rest(w.begin(), w.end() - 1);
            const auto xp = a.power(x, p);
            BoundExpression want;
            if (xp != a.module().zero())
                want = bound_normal_form(bind_expression(DLExpression{{rest, 1}}, a, xp), a, ctx);
            out.require(bound == want, "Q^r x != x^p on the line for " + format_dl_word(w));
        }
    }

    // admissible bases against exhaustive filtering
    for (std::uint32_t p : {3u, 5u})
        for (int q = 1; q <= 6; ++q)
            for (std::optional<int> n : {std::optional<int>{}, std::optional<int>{0}, std::optional<int>{3}}) {
                const long long dmax = 40;
                // all words of length <= 3 (length 4 already exceeds degree 40)
                std::set<DLWord> want{DLWord{}};
                const long long rmax = dmax / (2 * (p - 1)) + 1;
                std::function<void(DLWord&)> rec = [&](DLWord& word) {
                    if (!word.empty()) {
                        long long d = q;
                        bool ok = is_admissible(word, p);
                        for (auto it = word.rbegin(); it != word.rend() && ok; ++it) {
                            ok = 2 * it->r > d && (!n || 2 * it->r <= d + *n);
                            d += 2 * it->r * static_cast<long long>(p - 1) - it->eps;
                        }
                        if (ok && d <= dmax)
                            want.insert(word);
                    }
                    if (word.size() == 3)
                        return;
                    for (int eps = 0; eps <= 1; ++eps)
                        for (long long r = 0; r <= rmax; ++r) {
                            word.push_back({eps, r});
                            rec(word);
                            word.pop_back();
                        }
                };
                DLWord start;
                rec(start);
                const auto basis = admissible_basis(q, n, p, dmax);
                const std::set<DLWord> got(basis.words.begin(), basis.words.end());
                out.require(got == want && got.size() == basis.words.size(),
                            "admissible basis differs for p = " + std::to_string(p) + ", q = " + std::to_string(q));
            }
    return out;
}

}  // namespace

int main()
{
    const std::vector<Criterion> criteria{
        {1, "Witt sum polynomials: ghost(S) = ghost(a) + ghost(b), p in {2,3,5}, n <= 3", 10, witt_ghost_identity},
        {2, "W_1(F_p) is cyclic of order p^2, generated by the Teichmuller unit", 1, witt_group_law},
        {3, "FV = p and VF = p on random Witt vectors over polar carriers", 0, witt_fv},
        {4, "Witt addition and co-Witt modules factor through polarization", 0, factorization},
        {5, "free p-polar algebra on a degree-2 class: CW_{2p^i} = Z/p^{i+1}, F = p, V = 1", 5, free_polar_cowitt},
        {6, "W(k[u]) = W(k)[u] for |u| = 2, p = 3, D = 54", 0, polynomial_witt},
        {7, "Lambda_p (j = 2) is cofree, dimensions are partition counts", 30, lambda_cofree},
        {8, "non-cofree pair: P(H*)_18 = 1, P(H'*)_18 = 2; H fails, H' passes", 0, counterexample},
        {9, "F-modules: barcode reconstruction and u_f of the lift, 200 samples", 30, fmodule_structure},
        {10, "p-typical blocks of pol(F_3[x]) recover {x^m : m = i mod 2}", 0, cp_infinity_split},
        {11, "p-polarity: presets accepted, symmetry-breaking perturbations rejected", 0, polarity_decision},
        {12, "Dyer-Lashof rewriting, instability and admissible bases", 60, dyer_lashof},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (o.ok && c.budget_seconds > 0 && secs > c.budget_seconds) {
            o.ok = false;
            std::ostringstream ss;
            ss << "took longer than " << c.budget_seconds << " s";
            o.detail = ss.str();
        }
        failures += o.ok ? 0 : 1;
        std::printf("%s  %2d  %s  (%.2f s)%s%s\n", o.ok ? "PASS" : "FAIL", c.id, c.name.c_str(), secs,
                    o.detail.empty() ? "" : "  -- ", o.detail.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
