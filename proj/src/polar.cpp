#include "polarlab/polar.hpp"

#include "polarlab/sym.hpp"

#include <algorithm>
#include <functional>

namespace polarlab {

namespace {

std::vector<int> degree_list(const GradedModule& m)
{
    std::vector<int> d;
    for (const auto& b : m.basis())
        d.push_back(b.degree);
    return d;
}

// Sorted p-multisets (strict sets for odd degree when p > 2) of `pool`.
void for_each_multiset(const std::vector<std::size_t>& pool, std::size_t size, bool strict,
                       const std::function<void(const std::vector<std::uint32_t>&)>& fn)
{
    std::vector<std::uint32_t> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (cur.size() == size) {
            fn(cur);
            return;
        }
        for (std::size_t k = start; k < pool.size(); ++k) {
            cur.push_back(static_cast<std::uint32_t>(pool[k]));
            rec(strict ? k + 1 : k);
            cur.pop_back();
        }
    };
    rec(0);
}

std::string tuple_names(const GradedModule& m, const std::vector<std::uint32_t>& t)
{
    std::string s = "(";
    for (std::size_t i = 0; i < t.size(); ++i)
        s += (i ? "," : "") + m.name(t[i]);
    return s + ")";
}

}  // namespace

PolarAlgebra::PolarAlgebra(GradedModule module) : module_(std::move(module)), field_(module_.p()) {}

void PolarAlgebra::set_mu(std::vector<std::uint32_t> args, const SparseVec& value)
{
    const auto p = this->p();
    if (args.size() != p)
        throw Error("mu takes exactly p = " + std::to_string(p) + " arguments");
    for (auto a : args)
        if (a >= dim())
            throw Error("mu: basis index out of range");
    const int j = module_.degree(args[0]);
    for (auto a : args)
        if (module_.degree(a) != j)
            throw Error("mu arguments " + tuple_names(module_, args) + " have different degrees");
    const auto degrees = degree_list(module_);
    const int sign = sort_with_sign(args, degrees, p);
    SparseVec clean;
    for (auto [i, c] : value) {
        if (i >= dim())
            throw Error("mu: value index out of range");
        if (c % p == 0)
            continue;
        if (module_.degree(i) != static_cast<int>(p) * j)
            throw Error("mu" + tuple_names(module_, args) + " has a term outside degree " +
                        std::to_string(static_cast<int>(p) * j));
        clean.emplace_back(i, field_.mul(c % p, field_.reduce(sign)));
    }
    std::sort(clean.begin(), clean.end());
    for (std::size_t k = 1; k < clean.size(); ++k)
        if (clean[k].first == clean[k - 1].first)
            throw Error("mu: repeated basis element in value");
    if (sign == 0) {
        if (!clean.empty())
            throw Error("mu" + tuple_names(module_, args) + " must vanish (repeated odd argument)");
        return;
    }
    if (clean.empty())
        mu_.erase(args);
    else
        mu_[args] = std::move(clean);
}

SparseVec PolarAlgebra::mu_basis(std::vector<std::uint32_t> args) const
{
    if (args.size() != p())
        throw Error("mu takes exactly p arguments");
    const int sign = sort_with_sign(args, degree_list(module_), p());
    if (sign == 0)
        return {};
    auto it = mu_.find(args);
    if (it == mu_.end())
        return {};
    SparseVec out = it->second;
    if (sign < 0)
        for (auto& t : out)
            t.second = field_.neg(t.second);
    return out;
}

FpVector PolarAlgebra::mu(const std::vector<FpVector>& args) const
{
    if (args.size() != p())
        throw Error("mu takes exactly p arguments");
    FpVector out(dim(), 0);
    std::vector<std::uint32_t> cur;
    std::function<void(std::size_t, std::uint32_t, int)> rec = [&](std::size_t k, std::uint32_t coef, int deg) {
        if (k == args.size()) {
            for (const auto& [i, c] : mu_basis(cur))
                out[i] = field_.add(out[i], field_.mul(coef, c));
            return;
        }
        for (std::size_t i = 0; i < dim(); ++i) {
            if (args[k][i] == 0 || (deg >= 0 && module_.degree(i) != deg))
                continue;
            cur.push_back(static_cast<std::uint32_t>(i));
            rec(k + 1, field_.mul(coef, args[k][i]), module_.degree(i));
            cur.pop_back();
        }
    };
    rec(0, 1, -1);
    return out;
}

FpVector PolarAlgebra::power(const FpVector& x) const
{
    return mu(std::vector<FpVector>(p(), x));
}

PolarAlgebra polarize(const GradedAlgebra& a)
{
    const auto& m = a.module();
    const auto p = a.p();
    const auto& f = a.field();
    PolarAlgebra out(m);
    for (int j : m.degrees()) {
        if (static_cast<long long>(j) * p > m.max_degree())
            continue;
        const bool strict = p > 2 && j % 2 != 0;
        for_each_multiset(m.in_degree(j), p, strict, [&](const std::vector<std::uint32_t>& t) {
            SparseVec acc{{t[0], 1}};
            for (std::size_t k = 1; k < t.size() && !acc.empty(); ++k) {
                FpVector next(a.dim(), 0);
                for (const auto& [i, c] : acc)
                    for (const auto& [l, v] : a.product(i, t[k]))
                        next[l] = f.add(next[l], f.mul(c, v));
                acc = to_sparse(next);
            }
            out.set_mu(t, acc);
        });
    }
    return out;
}

PolarAlgebra restrict_polar(const PolarAlgebra& a, const std::vector<std::size_t>& keep, int max_degree)
{
    if (max_degree < 0)
        max_degree = a.max_degree();
    std::vector<BasisElement> basis;
    std::vector<std::int64_t> pos(a.dim(), -1);
    for (auto i : keep) {
        if (a.module().degree(i) > max_degree)
            continue;
        pos[i] = static_cast<std::int64_t>(basis.size());
        basis.push_back(a.module().element(i));
    }
    PolarAlgebra out(GradedModule(a.p(), max_degree, std::move(basis)));
    for (const auto& [args, value] : a.mu_table()) {
        std::vector<std::uint32_t> t;
        for (auto x : args)
            if (pos[x] >= 0)
                t.push_back(static_cast<std::uint32_t>(pos[x]));
        if (t.size() != args.size())
            continue;
        SparseVec v;
        for (const auto& [i, c] : value) {
            if (pos[i] < 0) {
                if (a.module().degree(i) > max_degree)
                    continue;
                throw Error("restrict_polar: subset is not closed under mu");
            }
            v.emplace_back(static_cast<std::uint32_t>(pos[i]), c);
        }
        out.set_mu(t, v);
    }
    return out;
}

int block_of(int degree, std::uint32_t p)
{
    if (degree <= 0)
        throw Error("block_of: degree must be positive");
    while (degree % static_cast<int>(p) == 0)
        degree /= static_cast<int>(p);
    return degree;
}

PTypicalSplit p_typical_split(const PolarAlgebra& a)
{
    PTypicalSplit s;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        const int d = a.module().degree(i);
        if (d == 0)
            s.degree_zero_indices.push_back(i);
        else
            s.block_indices[block_of(d, a.p())].push_back(i);
    }
    s.degree_zero = restrict_polar(a, s.degree_zero_indices);
    for (const auto& [j, idx] : s.block_indices)
        s.blocks.emplace(j, restrict_polar(a, idx));
    return s;
}

PolarAlgebra reassemble(const PTypicalSplit& split, const GradedModule& original)
{
    PolarAlgebra out(original);
    auto add = [&](const PolarAlgebra& factor, const std::vector<std::size_t>& idx) {
        if (factor.dim() != idx.size())
            throw Error("reassemble: factor does not match its index list");
        for (std::size_t k = 0; k < idx.size(); ++k)
            if (!(factor.module().element(k) == original.element(idx[k])))
                throw Error("reassemble: basis mismatch at " + factor.module().name(k));
        for (const auto& [args, value] : factor.mu_table()) {
            std::vector<std::uint32_t> t;
            for (auto x : args)
                t.push_back(static_cast<std::uint32_t>(idx[x]));
            SparseVec v;
            for (const auto& [i, c] : value)
                v.emplace_back(static_cast<std::uint32_t>(idx[i]), c);
            out.set_mu(t, v);
        }
    };
    add(split.degree_zero, split.degree_zero_indices);
    for (const auto& [j, factor] : split.blocks)
        add(factor, split.block_indices.at(j));
    return out;
}

PolarReport check_assoc(const PolarAlgebra& a)
{
    PolarReport r;
    const auto& m = a.module();
    const auto p = a.p();
    const auto& f = a.field();
    auto report = [&](std::string s) {
        if (r.violations.size() < 50)
            r.violations.push_back(std::move(s));
    };
    auto vec = [&](const SparseVec& s) { return to_dense(s, a.dim()); };
    auto basis = [&](std::uint32_t i) { return m.unit_vector(i); };

    // degree 0
    const auto& zero = m.in_degree(0);
    for_each_multiset(zero, p, false, [&](const std::vector<std::uint32_t>& x) {
        for_each_multiset(zero, p - 1, false, [&](const std::vector<std::uint32_t>& y) {
            std::vector<FpVector> lhs{vec(a.mu_basis(x))};
            for (auto v : y)
                lhs.push_back(basis(v));
            auto x2 = x;
            x2.back() = y[0];
            std::vector<FpVector> rhs{vec(a.mu_basis(x2)), basis(x.back())};
            for (std::size_t k = 1; k < y.size(); ++k)
                rhs.push_back(basis(y[k]));
            if (a.mu(lhs) != a.mu(rhs))
                report("degree 0: swapping x_p and y_2 changes mu(mu" + tuple_names(m, x) + "," +
                       tuple_names(m, y) + ")");
        });
    });

    // positive degrees
    for (int j : m.degrees()) {
        const long long pj = static_cast<long long>(p) * j;
        if (j == 0 || pj * p > m.max_degree())
            continue;
        const bool odd = p > 2 && j % 2 != 0;
        const auto& pool = m.in_degree(j);
        const auto& ypool = m.in_degree(static_cast<int>(pj));
        for_each_multiset(pool, p, odd, [&](const std::vector<std::uint32_t>& x1) {
            for_each_multiset(pool, p, odd, [&](const std::vector<std::uint32_t>& x2) {
                for_each_multiset(ypool, p - 2, false, [&](const std::vector<std::uint32_t>& y) {
                    std::vector<FpVector> lhs{vec(a.mu_basis(x1)), vec(a.mu_basis(x2))};
                    auto s1 = x1, s2 = x2;
                    std::swap(s1.back(), s2.front());
                    std::vector<FpVector> rhs{vec(a.mu_basis(s1)), vec(a.mu_basis(s2))};
                    for (auto v : y) {
                        lhs.push_back(basis(v));
                        rhs.push_back(basis(v));
                    }
                    auto l = a.mu(lhs);
                    if (odd)
                        l = scale_vector(f, l, f.neg(1));
                    if (l != a.mu(rhs))
                        report("degree " + std::to_string(j) + ": swapping x_p and x_{p+1} changes mu(mu" +
                               tuple_names(m, x1) + ",mu" + tuple_names(m, x2) + "," + tuple_names(m, y) + ")");
                });
            });
        });
    }
    return r;
}

}  // namespace polarlab
