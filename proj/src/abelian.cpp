#include "polarlab/abelian.hpp"

#include "polarlab/field.hpp"

#include <tuple>
#include <utility>

namespace polarlab {

long long mod_floor(long long a, long long m)
{
    auto r = a % m;
    return r < 0 ? r + m : r;
}

long long PGroupStructure::order(std::size_t k) const
{
    return ipow(p, exponents.at(k));
}

std::vector<long long> PGroupStructure::coordinates(const std::vector<long long>& x) const
{
    if (x.size() != rank)
        throw Error("coordinates: wrong number of components");
    std::vector<long long> y(exponents.size(), 0);
    for (std::size_t k = 0; k < exponents.size(); ++k) {
        const auto q = order(k);
        long long s = 0;
        for (std::size_t i = 0; i < rank; ++i)
            s = mod_floor(s + mod_floor(x[i], q) * mod_floor(to_invariant[i][k], q), q);
        y[k] = s;
    }
    return y;
}

namespace {

long long inverse_mod(long long a, long long q)
{
    long long t = 0, nt = 1, r = q, nr = mod_floor(a, q);
    while (nr != 0) {
        const long long f = r / nr;
        std::tie(t, nt) = std::make_pair(nt, t - f * nt);
        std::tie(r, nr) = std::make_pair(nr, r - f * nr);
    }
    if (r != 1)
        throw Error("inverse_mod: not a unit");
    return mod_floor(t, q);
}

}  // namespace

PGroupStructure smith_p_group(const IntMatrix& relations, std::size_t rank, std::uint32_t p,
                              unsigned modulus_exponent)
{
    const long long q = ipow(p, modulus_exponent);
    if (q > (1LL << 30))
        throw Error("smith_p_group: modulus too large");
    IntMatrix a = relations;
    for (auto& row : a) {
        if (row.size() != rank)
            throw Error("smith_p_group: relation of the wrong length");
        for (auto& x : row)
            x = mod_floor(x, q);
    }
    const std::size_t rows = a.size();
    IntMatrix w(rank, std::vector<long long>(rank, 0));
    IntMatrix winv = w;
    for (std::size_t i = 0; i < rank; ++i)
        w[i][i] = winv[i][i] = 1;

    auto valuation = [&](long long x) {
        unsigned v = 0;
        while (x % p == 0 && v < modulus_exponent) {
            x /= p;
            ++v;
        }
        return v;
    };
    auto swap_cols = [&](std::size_t c1, std::size_t c2) {
        for (auto& row : a)
            std::swap(row[c1], row[c2]);
        for (auto& row : w)
            std::swap(row[c1], row[c2]);
        std::swap(winv[c1], winv[c2]);
    };
    // column c2 += f * column c1
    auto add_col = [&](std::size_t c2, std::size_t c1, long long f) {
        for (auto& row : a)
            row[c2] = mod_floor(row[c2] + f * row[c1], q);
        for (auto& row : w)
            row[c2] = mod_floor(row[c2] + f * row[c1], q);
        for (std::size_t k = 0; k < rank; ++k)
            winv[c1][k] = mod_floor(winv[c1][k] - f * winv[c2][k], q);
    };
    auto scale_col = [&](std::size_t c, long long u) {
        const long long ui = inverse_mod(u, q);
        for (auto& row : a)
            row[c] = mod_floor(row[c] * u, q);
        for (auto& row : w)
            row[c] = mod_floor(row[c] * u, q);
        for (auto& x : winv[c])
            x = mod_floor(x * ui, q);
    };

    std::vector<unsigned> diag(rank, modulus_exponent);
    for (std::size_t t = 0; t < rank && t < rows; ++t) {
        std::size_t br = rows, bc = rank;
        unsigned best = modulus_exponent;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < rank; ++j)
                if (a[i][j] != 0) {
                    const auto v = valuation(a[i][j]);
                    if (v < best) {
                        best = v;
                        br = i;
                        bc = j;
                    }
                }
        if (br == rows)
            break;
        std::swap(a[t], a[br]);
        if (bc != t)
            swap_cols(t, bc);
        const long long pv = ipow(p, best);
        scale_col(t, inverse_mod(a[t][t] / pv, q));
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == t || a[i][t] == 0)
                continue;
            const long long f = a[i][t] / pv;
            for (std::size_t j = 0; j < rank; ++j)
                a[i][j] = mod_floor(a[i][j] - f * a[t][j], q);
        }
        for (std::size_t j = t + 1; j < rank; ++j)
            if (a[t][j] != 0)
                add_col(j, t, -(a[t][j] / pv));
        diag[t] = best;
    }
    PGroupStructure g;
    g.p = p;
    g.rank = rank;
    for (std::size_t t = 0; t < rank; ++t) {
        if (diag[t] >= modulus_exponent)
            throw Error("smith_p_group: group is infinite or has exponent >= p^" +
                        std::to_string(modulus_exponent));
        if (diag[t] == 0)
            continue;
        g.exponents.push_back(diag[t]);
        std::vector<long long> gen(rank);
        for (std::size_t i = 0; i < rank; ++i)
            gen[i] = winv[t][i];
        g.generators.push_back(std::move(gen));
    }
    g.to_invariant.assign(rank, {});
    for (std::size_t i = 0; i < rank; ++i)
        for (std::size_t t = 0; t < rank; ++t)
            if (diag[t] > 0)
                g.to_invariant[i].push_back(w[i][t]);
    return g;
}

}  // namespace polarlab
