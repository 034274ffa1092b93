#include "polarlab/hopf.hpp"

#include "polarlab/sym.hpp"
#include "polarlab/cowitt.hpp"
#include "polarlab/witt.hpp"

#include <algorithm>
#include <functional>
#include <tuple>

namespace polarlab {

namespace {

void accumulate(const PrimeField& f, Tensor& t, std::uint32_t l, std::uint32_t r, std::uint32_t c)
{
    if (c == 0)
        return;
    auto [it, inserted] = t.try_emplace({l, r}, c);
    if (!inserted) {
        it->second = f.add(it->second, c);
        if (it->second == 0)
            t.erase(it);
    }
}

using Triple = std::map<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>, std::uint32_t>;

void accumulate(const PrimeField& f, Triple& t, std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t v)
{
    if (v == 0)
        return;
    auto [it, inserted] = t.try_emplace({a, b, c}, v);
    if (!inserted) {
        it->second = f.add(it->second, v);
        if (it->second == 0)
            t.erase(it);
    }
}

}  // namespace

HopfAlgebra::HopfAlgebra(GradedAlgebra algebra, std::vector<Tensor> coproduct, bool has_product)
    : algebra_(std::move(algebra)), coproduct_(std::move(coproduct)), has_product_(has_product)
{
    if (coproduct_.size() != algebra_.dim())
        throw Error("coproduct table has the wrong size");
    if (algebra_.module().dim_in_degree(0) != 1)
        throw Error("Hopf algebras here must be connected (one basis element in degree 0)");
    const auto& m = algebra_.module();
    for (std::size_t i = 0; i < coproduct_.size(); ++i)
        for (const auto& [lr, c] : coproduct_[i]) {
            if (lr.first >= m.dim() || lr.second >= m.dim())
                throw Error("coproduct of " + m.name(i) + " refers to an unknown basis element");
            if (m.degree(lr.first) + m.degree(lr.second) != m.degree(i))
                throw Error("coproduct of " + m.name(i) + " is not homogeneous");
        }
}

Tensor HopfAlgebra::coproduct(const FpVector& x) const
{
    const auto& f = algebra_.field();
    Tensor t;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] != 0)
            for (const auto& [lr, c] : coproduct_[i])
                accumulate(f, t, lr.first, lr.second, f.mul(x[i], c));
    return t;
}

Tensor HopfAlgebra::reduced_coproduct(const FpVector& x) const
{
    const auto& f = algebra_.field();
    auto t = coproduct(x);
    const auto u = static_cast<std::uint32_t>(unit_index());
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] != 0 && i != u) {
            accumulate(f, t, static_cast<std::uint32_t>(i), u, f.neg(x[i]));
            accumulate(f, t, u, static_cast<std::uint32_t>(i), f.neg(x[i]));
        }
    return t;
}

Tensor tensor_multiply(const GradedAlgebra& a, const Tensor& x, const Tensor& y)
{
    const auto& f = a.field();
    const auto& m = a.module();
    Tensor out;
    for (const auto& [lr1, c1] : x)
        for (const auto& [lr2, c2] : y) {
            const auto& left = a.product(lr1.first, lr2.first);
            if (left.empty())
                continue;
            const auto& right = a.product(lr1.second, lr2.second);
            if (right.empty())
                continue;
            const auto c = f.mul(f.mul(c1, c2), koszul(f, m.degree(lr1.second), m.degree(lr2.first)));
            for (const auto& [l, cl] : left)
                for (const auto& [r, cr] : right)
                    accumulate(f, out, l, r, f.mul(c, f.mul(cl, cr)));
        }
    return out;
}

HopfReport check_hopf(const HopfAlgebra& h)
{
    HopfReport rep;
    const auto& m = h.module();
    const auto& f = h.algebra().field();
    const auto u = static_cast<std::uint32_t>(h.unit_index());
    auto fail = [&](bool& flag, std::string msg) {
        flag = false;
        if (rep.violations.size() < 20)
            rep.violations.push_back(std::move(msg));
    };
    for (std::size_t i = 0; i < h.dim(); ++i) {
        const auto& d = h.coproduct(i);
        const auto ii = static_cast<std::uint32_t>(i);
        if (i == u) {
            if (d != Tensor{{{u, u}, 1}})
                fail(rep.counit, "coproduct of the unit is not 1(x)1");
            continue;
        }
        for (const auto& [lr, c] : d) {
            const bool left_unit = lr.first == u, right_unit = lr.second == u;
            if ((left_unit && (lr.second != ii || c != 1)) || (right_unit && (lr.first != ii || c != 1)))
                fail(rep.counit, "counit axiom fails on " + m.name(i));
        }
        if (!d.count({ii, u}) || !d.count({u, ii}))
            fail(rep.counit, "counit axiom fails on " + m.name(i));
        // coassociativity
        Triple lhs, rhs;
        for (const auto& [lr, c] : d) {
            for (const auto& [lr2, c2] : h.coproduct(lr.first))
                accumulate(f, lhs, lr2.first, lr2.second, lr.second, f.mul(c, c2));
            for (const auto& [lr2, c2] : h.coproduct(lr.second))
                accumulate(f, rhs, lr.first, lr2.first, lr2.second, f.mul(c, c2));
        }
        if (lhs != rhs)
            fail(rep.coassociative, "coassociativity fails on " + m.name(i));
        Tensor swapped;
        for (const auto& [lr, c] : d)
            accumulate(f, swapped, lr.second, lr.first, f.mul(c, koszul(f, m.degree(lr.first), m.degree(lr.second))));
        if (swapped != d)
            fail(rep.cocommutative, "cocommutativity fails on " + m.name(i));
    }
    rep.conilpotent = rep.counit;
    if (!h.has_product())
        return rep;
    const auto& a = h.algebra();
    for (std::size_t x = 0; x < h.dim(); ++x)
        for (std::size_t y = x; y < h.dim(); ++y) {
            if (m.degree(x) + m.degree(y) > h.max_degree())
                continue;
            const auto& xy = a.product(x, y);
            auto yx = a.product(y, x);
            for (auto& [k, c] : yx)
                c = f.mul(c, koszul(f, m.degree(x), m.degree(y)));
            if (xy != yx)
                fail(rep.commutative, "commutativity fails on " + m.name(x) + ", " + m.name(y));
            const auto lhs = h.coproduct(to_dense(xy, h.dim()));
            const auto rhs = tensor_multiply(a, h.coproduct(x), h.coproduct(y));
            if (lhs != rhs)
                fail(rep.bialgebra, "bialgebra compatibility fails on " + m.name(x) + ", " + m.name(y));
        }
    return rep;
}

namespace {

std::string word_name(const Word& w, const std::vector<std::string>& letters)
{
    if (w.empty())
        return "1";
    std::string s;
    for (std::size_t i = 0; i < w.size();) {
        std::size_t j = i;
        while (j < w.size() && w[j] == w[i])
            ++j;
        if (!s.empty())
            s += "*";
        s += "[" + letters[w[i]] + "]";
        if (j - i > 1)
            s += "^" + std::to_string(j - i);
        i = j;
    }
    return s;
}

struct WordCoalgebra {
    std::vector<Word> words;
    std::map<Word, std::uint32_t> index;
    GradedModule module;
    std::vector<Tensor> coproduct;
};

WordCoalgebra word_coalgebra(const std::vector<int>& degrees, const std::vector<std::string>& letters, std::uint32_t p,
                             int max_degree)
{
    for (int d : degrees)
        if (d <= 0)
            throw Error("symmetric tensor coalgebras need generators in positive degrees");
    WordCoalgebra wc;
    wc.words = enumerate_words(degrees, p, max_degree, 0);
    std::vector<BasisElement> basis;
    for (std::uint32_t i = 0; i < wc.words.size(); ++i) {
        wc.index.emplace(wc.words[i], i);
        basis.push_back({word_name(wc.words[i], letters), word_degree(wc.words[i], degrees)});
    }
    wc.module = GradedModule(p, max_degree, basis);
    const PrimeField f(p);
    for (const auto& w : wc.words) {
        Tensor t;
        // distinct letters with multiplicities
        std::vector<std::pair<std::uint32_t, unsigned>> runs;
        for (auto l : w) {
            if (!runs.empty() && runs.back().first == l)
                ++runs.back().second;
            else
                runs.emplace_back(l, 1);
        }
        std::vector<unsigned> take(runs.size(), 0);
        while (true) {
            Word left, right;
            for (std::size_t r = 0; r < runs.size(); ++r) {
                left.insert(left.end(), take[r], runs[r].first);
                right.insert(right.end(), runs[r].second - take[r], runs[r].first);
            }
            Word cat = left;
            cat.insert(cat.end(), right.begin(), right.end());
            const int s = sort_with_sign(cat, degrees, p);
            accumulate(f, t, wc.index.at(left), wc.index.at(right), s > 0 ? 1 : f.neg(1));
            std::size_t r = 0;
            while (r < runs.size() && take[r] == runs[r].second)
                take[r++] = 0;
            if (r == runs.size())
                break;
            ++take[r];
        }
        wc.coproduct.push_back(std::move(t));
    }
    return wc;
}

}  // namespace

HopfAlgebra symmetric_tensor_coalgebra(const GradedModule& v, int max_degree)
{
    std::vector<int> degrees;
    std::vector<std::string> letters;
    for (std::size_t i = 0; i < v.dim(); ++i) {
        degrees.push_back(v.degree(i));
        letters.push_back(v.name(i));
    }
    auto wc = word_coalgebra(degrees, letters, v.p(), max_degree);
    const auto u = wc.index.at(Word{});
    GradedAlgebra a(wc.module, u);
    for (std::size_t i = 0; i < wc.words.size(); ++i) {
        a.set_product(u, i, {{static_cast<std::uint32_t>(i), 1}});
        a.set_product(i, u, {{static_cast<std::uint32_t>(i), 1}});
    }
    return HopfAlgebra(std::move(a), std::move(wc.coproduct), false);
}

GradedAlgebra monomial_algebra(const std::vector<Generator>& gens, std::uint32_t p, int max_degree,
                               std::vector<std::vector<unsigned>>& exponents)
{
    const auto n = gens.size();
    auto bound = [&](std::size_t i) -> unsigned {
        unsigned h = gens[i].height;
        if (p > 2 && gens[i].degree % 2 != 0)
            h = h == 0 ? 2 : std::min(h, 2u);
        return h;  // 0: unbounded
    };
    for (const auto& g : gens)
        if (g.degree <= 0)
            throw Error("generator " + g.name + " must have positive degree");
    exponents.clear();
    std::vector<unsigned> e(n, 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int deg) {
        if (i == n) {
            exponents.push_back(e);
            return;
        }
        for (unsigned k = 0;; ++k) {
            if (bound(i) != 0 && k >= bound(i))
                break;
            const long long d = deg + static_cast<long long>(k) * gens[i].degree;
            if (d > max_degree)
                break;
            e[i] = k;
            rec(i + 1, static_cast<int>(d));
        }
        e[i] = 0;
    };
    rec(0, 0);
    auto degree_of = [&](const std::vector<unsigned>& x) {
        long long d = 0;
        for (std::size_t i = 0; i < n; ++i)
            d += static_cast<long long>(x[i]) * gens[i].degree;
        return static_cast<int>(d);
    };
    std::stable_sort(exponents.begin(), exponents.end(),
                     [&](const auto& a, const auto& b) { return degree_of(a) < degree_of(b); });
    std::vector<BasisElement> basis;
    std::map<std::vector<unsigned>, std::uint32_t> index;
    for (std::uint32_t k = 0; k < exponents.size(); ++k) {
        std::string name;
        for (std::size_t i = 0; i < n; ++i)
            if (exponents[k][i] > 0) {
                if (!name.empty())
                    name += "*";
                name += gens[i].name;
                if (exponents[k][i] > 1)
                    name += "^" + std::to_string(exponents[k][i]);
            }
        basis.push_back({name.empty() ? "1" : name, degree_of(exponents[k])});
        index.emplace(exponents[k], k);
    }
    GradedAlgebra a(GradedModule(p, max_degree, basis), index.at(std::vector<unsigned>(n, 0)));
    const PrimeField f(p);
    for (std::size_t x = 0; x < exponents.size(); ++x)
        for (std::size_t y = 0; y < exponents.size(); ++y) {
            std::vector<unsigned> s(n);
            for (std::size_t i = 0; i < n; ++i)
                s[i] = exponents[x][i] + exponents[y][i];
            auto it = index.find(s);
            if (it == index.end())
                continue;
            long long parity = 0;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < i; ++j)
                    parity += static_cast<long long>(exponents[x][i]) * gens[i].degree * exponents[y][j] * gens[j].degree;
            a.set_product(x, y, {{it->second, f.sign(parity)}});
        }
    return a;
}

namespace {

// Coefficient of the symmetrized word t in s(w1) * s(w2) for the
// quasi-shuffle product over the letter algebra.
class QuasiShuffle {
public:
    QuasiShuffle(const GradedAlgebra& a, const std::vector<std::size_t>& letters, const std::vector<int>& degrees)
        : a_(a), f_(a.field()), letters_(letters), degrees_(degrees)
    {
        for (std::uint32_t i = 0; i < letters.size(); ++i)
            position_.emplace(static_cast<std::uint32_t>(letters[i]), i);
    }

    std::uint32_t coefficient(const Word& w1, const Word& w2, const Word& t)
    {
        const auto n = letters_.size();
        c1_.assign(n, 0);
        c2_.assign(n, 0);
        for (auto l : w1)
            ++c1_[l];
        for (auto l : w2)
            ++c2_[l];
        w1_ = &w1;
        w2_ = &w2;
        t_ = &t;
        u_.clear();
        v_.clear();
        order_.clear();
        total_ = 0;
        recurse(0, 1);
        return total_;
    }

private:
    void recurse(std::size_t k, std::uint32_t coef)
    {
        const auto& t = *t_;
        if (k == t.size()) {
            for (std::size_t i = 0; i < c1_.size(); ++i)
                if (c1_[i] != 0 || c2_[i] != 0)
                    return;
            leaf(coef);
            return;
        }
        const auto z = t[k];
        if (c1_[z] > 0) {
            --c1_[z];
            push(1, z);
            recurse(k + 1, coef);
            pop(1);
            ++c1_[z];
        }
        if (c2_[z] > 0) {
            --c2_[z];
            push(2, z);
            recurse(k + 1, coef);
            pop(2);
            ++c2_[z];
        }
        for (std::uint32_t x = 0; x < c1_.size(); ++x) {
            if (c1_[x] == 0)
                continue;
            for (std::uint32_t y = 0; y < c2_.size(); ++y) {
                if (c2_[y] == 0 || degrees_[x] + degrees_[y] != degrees_[z])
                    continue;
                const auto& prod = a_.product(letters_[x], letters_[y]);
                std::uint32_t c = 0;
                for (const auto& [b, cb] : prod) {
                    auto it = position_.find(b);
                    if (it != position_.end() && it->second == z)
                        c = cb;
                }
                if (c == 0)
                    continue;
                --c1_[x];
                --c2_[y];
                push(1, x);
                push(2, y);
                recurse(k + 1, f_.mul(coef, c));
                pop(2);
                pop(1);
                ++c1_[x];
                ++c2_[y];
            }
        }
    }

    void push(int side, std::uint32_t l)
    {
        (side == 1 ? u_ : v_).push_back(l);
        order_.emplace_back(side, l);
    }
    void pop(int side)
    {
        (side == 1 ? u_ : v_).pop_back();
        order_.pop_back();
    }

    void leaf(std::uint32_t coef)
    {
        const auto p = a_.p();
        Word su = u_, sv = v_;
        const int s1 = sort_with_sign(su, degrees_, p);
        const int s2 = sort_with_sign(sv, degrees_, p);
        if (s1 == 0 || s2 == 0)
            return;
        long long parity = 0;
        int odd_v_seen = 0;
        for (const auto& [side, l] : order_) {
            const bool odd = degrees_[l] % 2 != 0;
            if (side == 2 && odd)
                ++odd_v_seen;
            else if (side == 1 && odd)
                parity += odd_v_seen;
        }
        // a fused pair pushes u before v, so it never counts as a swap
        std::uint32_t c = coef;
        if ((s1 < 0) != (s2 < 0))
            c = f_.neg(c);
        if (parity % 2 != 0)
            c = f_.neg(c);
        total_ = f_.add(total_, c);
    }

    const GradedAlgebra& a_;
    const PrimeField& f_;
    std::vector<std::size_t> letters_;
    std::vector<int> degrees_;
    std::map<std::uint32_t, std::uint32_t> position_;
    std::vector<unsigned> c1_, c2_;
    const Word* w1_ = nullptr;
    const Word* w2_ = nullptr;
    const Word* t_ = nullptr;
    Word u_, v_;
    std::vector<std::pair<int, std::uint32_t>> order_;
    std::uint32_t total_ = 0;
};

}  // namespace

HopfAlgebra cof_u(const GradedAlgebra& a, int max_degree)
{
    const auto& am = a.module();
    if (am.dim_in_degree(0) != 1)
        throw Error("cof_u needs a connected algebra (one basis element in degree 0)");
    if (max_degree > a.max_degree())
        throw Error("cof_u truncation exceeds the algebra's truncation degree");
    std::vector<std::size_t> letters;
    std::vector<int> degrees;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < am.dim(); ++i)
        if (am.degree(i) > 0 && am.degree(i) <= max_degree) {
            letters.push_back(i);
            degrees.push_back(am.degree(i));
            names.push_back(am.name(i));
        }
    auto wc = word_coalgebra(degrees, names, a.p(), max_degree);
    const auto u = wc.index.at(Word{});
    GradedAlgebra prod(wc.module, u);
    QuasiShuffle qs(a, letters, degrees);
    const auto& m = wc.module;
    for (std::size_t x = 0; x < wc.words.size(); ++x)
        for (std::size_t y = 0; y < wc.words.size(); ++y) {
            const int d = m.degree(x) + m.degree(y);
            if (d > max_degree)
                continue;
            SparseVec value;
            for (auto t : m.in_degree(d)) {
                const auto& wt = wc.words[t];
                if (wt.size() < std::max(wc.words[x].size(), wc.words[y].size()) ||
                    wt.size() > wc.words[x].size() + wc.words[y].size())
                    continue;
                const auto c = qs.coefficient(wc.words[x], wc.words[y], wt);
                if (c != 0)
                    value.emplace_back(static_cast<std::uint32_t>(t), c);
            }
            std::sort(value.begin(), value.end());
            prod.set_product(x, y, std::move(value));
        }
    HopfAlgebra h(std::move(prod), std::move(wc.coproduct));
    const auto rep = check_hopf(h);
    if (!rep.ok())
        throw Error("cof_u failed its bialgebra check: " +
                    (rep.violations.empty() ? std::string("unknown") : rep.violations.front()));
    return h;
}

std::map<int, std::vector<FpVector>> primitive_basis(const HopfAlgebra& h)
{
    const auto& m = h.module();
    std::map<int, std::vector<FpVector>> out;
    for (int d : m.degrees()) {
        if (d == 0)
            continue;
        const auto& idx = m.in_degree(d);
        std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t> rows;
        std::vector<Tensor> images;
        for (auto i : idx) {
            images.push_back(h.reduced_coproduct(m.unit_vector(i)));
            for (const auto& [lr, c] : images.back())
                rows.try_emplace(lr, rows.size());
        }
        std::vector<FpVector> kernel;
        if (rows.empty()) {
            for (std::size_t k = 0; k < idx.size(); ++k) {
                FpVector e(idx.size(), 0);
                e[k] = 1;
                kernel.push_back(std::move(e));
            }
        } else {
            FpMatrix r(rows.size(), idx.size(), h.p());
            for (std::size_t k = 0; k < idx.size(); ++k)
                for (const auto& [lr, c] : images[k])
                    r.at(rows.at(lr), k) = c;
            kernel = row_space_basis(rank_kernel(r).kernel_basis, idx.size(), h.p());
        }
        for (const auto& v : kernel) {
            FpVector full = m.zero();
            for (std::size_t k = 0; k < idx.size(); ++k)
                full[idx[k]] = v[k];
            out[d].push_back(std::move(full));
        }
    }
    return out;
}

namespace {

std::vector<BasisElement> primitive_names(const HopfAlgebra& h, const std::map<int, std::vector<FpVector>>& prim)
{
    std::vector<BasisElement> basis;
    for (const auto& [d, vs] : prim)
        for (std::size_t k = 0; k < vs.size(); ++k) {
            std::string name;
            std::size_t nonzero = 0, at = 0;
            for (std::size_t i = 0; i < vs[k].size(); ++i)
                if (vs[k][i] != 0) {
                    ++nonzero;
                    at = i;
                }
            if (nonzero == 1 && vs[k][at] == 1)
                name = h.module().name(at);
            else
                name = "P" + std::to_string(d) + "_" + std::to_string(k);
            basis.push_back({name, d});
        }
    return basis;
}

}  // namespace

GradedModule primitives(const HopfAlgebra& h)
{
    return GradedModule(h.p(), h.max_degree(), primitive_names(h, primitive_basis(h)));
}

std::map<int, std::size_t> indecomposable_dimensions(const HopfAlgebra& h)
{
    const auto& m = h.module();
    const auto& a = h.algebra();
    std::map<int, std::size_t> out;
    for (int d : m.degrees()) {
        if (d == 0)
            continue;
        const auto& idx = m.in_degree(d);
        std::map<std::uint32_t, std::size_t> local;
        for (std::size_t k = 0; k < idx.size(); ++k)
            local.emplace(static_cast<std::uint32_t>(idx[k]), k);
        std::vector<FpVector> span;
        for (int e : m.degrees()) {
            if (e <= 0 || 2 * e > d)
                continue;
            for (auto x : m.in_degree(e))
                for (auto y : m.in_degree(d - e)) {
                    const auto& xy = a.product(x, y);
                    if (xy.empty())
                        continue;
                    FpVector v(idx.size(), 0);
                    for (const auto& [b, c] : xy)
                        v[local.at(b)] = c;
                    span.push_back(std::move(v));
                }
        }
        const auto r = span.empty() ? 0 : row_space_basis(span, idx.size(), h.p()).size();
        out[d] = idx.size() - r;
    }
    return out;
}

namespace {

// Delta of every monomial from the generator coproducts, multiplicatively.
std::vector<Tensor> multiplicative_coproduct(const GradedAlgebra& a, const std::vector<std::vector<unsigned>>& exps,
                                             const std::vector<Tensor>& generator_coproducts)
{
    const auto n = generator_coproducts.size();
    std::map<std::vector<unsigned>, std::uint32_t> index;
    for (std::uint32_t k = 0; k < exps.size(); ++k)
        index.emplace(exps[k], k);
    const auto& f = a.field();
    std::vector<Tensor> delta(exps.size());
    // basis is sorted by degree, so factors are always computed first
    for (std::size_t k = 0; k < exps.size(); ++k) {
        const auto& e = exps[k];
        std::size_t last = n;
        for (std::size_t i = 0; i < n; ++i)
            if (e[i] > 0)
                last = i;
        if (last == n) {
            const auto u = static_cast<std::uint32_t>(k);
            delta[k] = {{{u, u}, 1}};
            continue;
        }
        auto rest = e;
        --rest[last];
        std::vector<unsigned> g(n, 0);
        g[last] = 1;
        const auto r = index.at(rest), gi = index.at(g);
        if (k == gi) {
            delta[k] = generator_coproducts[last];
            continue;
        }
        std::uint32_t c = 0;
        for (const auto& [b, cb] : a.product(r, gi))
            if (b == k)
                c = cb;
        if (c == 0)
            throw Error("monomial basis is not multiplicatively generated");
        auto t = tensor_multiply(a, delta[r], delta[gi]);
        const auto ci = f.inv(c);
        for (auto& [lr, v] : t)
            v = f.mul(v, ci);
        delta[k] = std::move(t);
    }
    return delta;
}

}  // namespace

HopfAlgebra exterior_hopf(const GradedModule& m)
{
    if (m.p() == 2)
        throw Error("exterior Hopf algebras need p > 2");
    std::vector<Generator> gens;
    for (std::size_t i = 0; i < m.dim(); ++i) {
        if (m.degree(i) % 2 == 0)
            throw Error("generator " + m.name(i) + " has even degree");
        gens.push_back({m.name(i), m.degree(i), 0});
    }
    std::vector<std::vector<unsigned>> exps;
    auto a = monomial_algebra(gens, m.p(), m.max_degree(), exps);
    const auto u = static_cast<std::uint32_t>(a.unit_index());
    std::vector<Tensor> gen_delta;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        const auto g = static_cast<std::uint32_t>(a.module().index_of(gens[i].name));
        gen_delta.push_back({{{g, u}, 1}, {{u, g}, 1}});
    }
    auto delta = multiplicative_coproduct(a, exps, gen_delta);
    return HopfAlgebra(std::move(a), std::move(delta));
}

unsigned lambda_top_index(int j, std::uint32_t p, int max_degree)
{
    if (j <= 0)
        throw Error("lambda_p needs j > 0");
    unsigned n = 0;
    for (long long d = static_cast<long long>(j) * p; d <= max_degree; d *= p)
        ++n;
    return n;
}

HopfAlgebra lambda_p(int j, std::uint32_t p, unsigned n, int max_degree)
{
    if (j < 1)
        throw Error("lambda_p needs j >= 1");
    if (p > 2 && j % 2 != 0)
        throw Error("lambda_p needs an even j for odd p (the generators must commute)");
    unsigned top = 0;
    std::vector<Generator> gens;
    for (long long d = j; gens.size() <= n && d <= max_degree; d *= p) {
        gens.push_back({"theta" + std::to_string(j) + "_" + std::to_string(gens.size()), static_cast<int>(d), 0});
        top = static_cast<unsigned>(gens.size()) - 1;
    }
    std::vector<std::vector<unsigned>> exps;
    auto a = monomial_algebra(gens, p, max_degree, exps);
    std::map<std::vector<unsigned>, std::uint32_t> index;
    for (std::uint32_t k = 0; k < exps.size(); ++k)
        index.emplace(exps[k], k);
    const PrimeField f(p);
    std::vector<Tensor> gen_delta;
    if (!gens.empty()) {
        const auto& polys = witt_sum_polys(p, top);
        const auto& vars = polys.sum[0].variables();
        for (unsigned m = 0; m <= top; ++m) {
            Tensor t;
            for (const auto& [e, c] : polys.sum[m].terms()) {
                std::vector<unsigned> left(gens.size(), 0), right(gens.size(), 0);
                for (std::size_t v = 0; v < vars.size(); ++v) {
                    const auto i = std::stoul(vars[v].substr(1));
                    (vars[v][0] == 'a' ? left : right)[i] = e[v];
                }
                const auto cm = static_cast<std::uint32_t>(mpz_fdiv_ui(c.get_mpz_t(), p));
                accumulate(f, t, index.at(left), index.at(right), cm);
            }
            gen_delta.push_back(std::move(t));
        }
    }
    auto delta = multiplicative_coproduct(a, exps, gen_delta);
    return HopfAlgebra(std::move(a), std::move(delta));
}

HopfAlgebra dual_hopf(const HopfAlgebra& h)
{
    if (!h.has_product())
        throw Error("the dual of a coalgebra without product is not a Hopf algebra here");
    const auto& m = h.module();
    const auto& f = h.algebra().field();
    std::vector<BasisElement> basis;
    for (const auto& b : m.basis())
        basis.push_back({b.name == "1" ? "1" : "[" + b.name + "]", b.degree});
    GradedAlgebra a(GradedModule(h.p(), h.max_degree(), basis), h.unit_index());
    std::map<std::pair<std::uint32_t, std::uint32_t>, SparseVec> products;
    std::vector<Tensor> delta(h.dim());
    for (std::uint32_t z = 0; z < h.dim(); ++z)
        for (const auto& [lr, c] : h.coproduct(z)) {
            const auto s = koszul(f, m.degree(lr.first), m.degree(lr.second));
            products[lr].emplace_back(z, f.mul(c, s));
        }
    for (auto& [lr, v] : products) {
        std::sort(v.begin(), v.end());
        a.set_product(lr.first, lr.second, std::move(v));
    }
    const auto& ha = h.algebra();
    for (std::uint32_t x = 0; x < h.dim(); ++x)
        for (std::uint32_t y = 0; y < h.dim(); ++y)
            for (const auto& [z, c] : ha.product(x, y))
                accumulate(f, delta[z], x, y, f.mul(c, koszul(f, m.degree(x), m.degree(y))));
    return HopfAlgebra(std::move(a), std::move(delta));
}

std::vector<std::size_t> symmetric_dimensions(const std::vector<int>& degrees, std::uint32_t p, int max_degree)
{
    std::vector<std::size_t> dims(static_cast<std::size_t>(std::max(max_degree, 0)) + 1, 0);
    dims[0] = 1;
    for (int g : degrees) {
        if (g <= 0)
            throw Error("symmetric dimensions need positive degrees");
        if (p > 2 && g % 2 != 0) {
            for (int d = max_degree; d >= g; --d)
                dims[d] += dims[d - g];
        } else {
            for (int d = g; d <= max_degree; ++d)
                dims[d] += dims[d - g];
        }
    }
    return dims;
}

std::optional<PolarAlgebra> primitive_polar(const HopfAlgebra& h)
{
    if (!h.has_product())
        throw Error("primitive p-polar structure needs a product");
    const auto prim = primitive_basis(h);
    const auto names = primitive_names(h, prim);
    PolarAlgebra out(GradedModule(h.p(), h.max_degree(), names));
    const auto p = h.p();
    // flat list of primitive vectors, matching the order of names
    std::vector<const FpVector*> vecs;
    std::map<int, std::vector<std::uint32_t>> by_degree;
    for (const auto& [d, vs] : prim)
        for (const auto& v : vs) {
            by_degree[d].push_back(static_cast<std::uint32_t>(vecs.size()));
            vecs.push_back(&v);
        }
    for (const auto& [d, ids] : by_degree) {
        const long long t = static_cast<long long>(d) * p;
        if (t > h.max_degree())
            continue;
        const auto& target = prim.count(static_cast<int>(t)) ? prim.at(static_cast<int>(t)) : std::vector<FpVector>{};
        const auto& tids = by_degree.count(static_cast<int>(t)) ? by_degree.at(static_cast<int>(t))
                                                                : std::vector<std::uint32_t>{};
        std::optional<FpMatrix> basis_matrix;
        if (!target.empty())
            basis_matrix = FpMatrix::from_rows(target, h.dim(), p).transpose();
        std::vector<std::size_t> choice(p, 0);
        while (true) {
            FpVector prod = h.algebra().one();
            for (auto c : choice)
                prod = h.algebra().multiply(prod, *vecs[ids[c]]);
            bool zero = std::all_of(prod.begin(), prod.end(), [](auto c) { return c == 0; });
            if (!zero) {
                if (!basis_matrix)
                    return std::nullopt;
                auto sol = basis_matrix->solve(prod);
                if (!sol)
                    return std::nullopt;
                SparseVec value;
                for (std::size_t k = 0; k < sol->size(); ++k)
                    if ((*sol)[k] != 0)
                        value.emplace_back(tids[k], (*sol)[k]);
                std::vector<std::uint32_t> args;
                for (auto c : choice)
                    args.push_back(ids[c]);
                out.set_mu(args, value);
            }
            // next non-decreasing tuple
            std::size_t k = p;
            while (k > 0 && choice[k - 1] + 1 == ids.size())
                --k;
            if (k == 0)
                break;
            ++choice[k - 1];
            for (std::size_t r = k; r < p; ++r)
                choice[r] = choice[k - 1];
        }
    }
    return out;
}

namespace {

// mu(e, ..., e) = e^p on the primitive basis and zero on mixed tuples.
PolarAlgebra diagonal_polar(const HopfAlgebra& h)
{
    const auto prim = primitive_basis(h);
    PolarAlgebra out(GradedModule(h.p(), h.max_degree(), primitive_names(h, prim)));
    std::vector<FpVector> flat;
    std::vector<int> degs;
    for (const auto& [d, vs] : prim)
        for (const auto& v : vs) {
            flat.push_back(v);
            degs.push_back(d);
        }
    for (std::uint32_t i = 0; i < flat.size(); ++i) {
        const long long t = static_cast<long long>(degs[i]) * h.p();
        if (t > h.max_degree())
            continue;
        const auto pw = h.algebra().power(flat[i], h.p());
        std::vector<FpVector> target;
        std::vector<std::uint32_t> ids;
        for (std::uint32_t k = 0; k < flat.size(); ++k)
            if (degs[k] == t) {
                target.push_back(flat[k]);
                ids.push_back(k);
            }
        if (std::all_of(pw.begin(), pw.end(), [](auto c) { return c == 0; }))
            continue;
        if (target.empty())
            throw Error("p-th power of a primitive is not primitive");
        auto sol = FpMatrix::from_rows(target, h.dim(), h.p()).transpose().solve(pw);
        if (!sol)
            throw Error("p-th power of a primitive is not primitive");
        SparseVec value;
        for (std::size_t k = 0; k < sol->size(); ++k)
            if ((*sol)[k] != 0)
                value.emplace_back(ids[k], (*sol)[k]);
        out.set_mu(std::vector<std::uint32_t>(h.p(), i), value);
    }
    return out;
}

}  // namespace

std::map<int, std::size_t> expected_indecomposables(const DieudonneModule& m)
{
    std::map<int, std::size_t> out;
    for (int d : m.degrees()) {
        if (d <= 0)
            continue;
        const auto len = m.length(d);
        if (d % static_cast<int>(m.p) != 0) {
            out[d] = len;
            continue;
        }
        const int n = d / static_cast<int>(m.p);
        if (!m.exponents.count(n)) {
            out[d] = len;
            continue;
        }
        const auto im = image_length(m.f_matrix(n), m.exponents.at(n), m.exponents.at(d), m.p);
        out[d] = len - im;
    }
    return out;
}

CofreeReport verify_cofree(const HopfAlgebra& h, int max_degree)
{
    CofreeReport rep;
    if (max_degree > h.max_degree())
        throw Error("verification degree exceeds the Hopf algebra's truncation");
    const auto hr = check_hopf(h);
    rep.conilpotent = hr.conilpotent && hr.counit;
    rep.bicommutative = hr.commutative && hr.cocommutative;
    if (!hr.ok())
        rep.messages.insert(rep.messages.end(), hr.violations.begin(), hr.violations.end());
    const auto& m = h.module();
    const auto prim = primitive_basis(h);
    std::vector<int> pdeg;
    for (const auto& [d, vs] : prim)
        if (d <= max_degree) {
            rep.primitive_dims[d] = vs.size();
            pdeg.insert(pdeg.end(), vs.size(), d);
        }
    const auto sym = symmetric_dimensions(pdeg, h.p(), max_degree);
    for (int d = 1; d <= max_degree; ++d) {
        rep.hopf_dims[d] = m.dim_in_degree(d);
        rep.symmetric_dims[d] = sym[d];
        if (rep.hopf_dims[d] != sym[d]) {
            if (rep.dimensions_match)
                rep.messages.push_back("dim H_" + std::to_string(d) + " = " + std::to_string(rep.hopf_dims[d]) +
                                       " but dim S(P(H))_" + std::to_string(d) + " = " + std::to_string(sym[d]));
            rep.dimensions_match = false;
        }
    }
    if (!h.has_product()) {
        rep.messages.push_back("no product: indecomposables not checked");
        return rep;
    }
    auto polar = primitive_polar(h);
    if (!polar) {
        rep.polar_closed = false;
        rep.messages.push_back("P(H) is not closed under p-fold products; using the power-map structure");
        polar = diagonal_polar(h);
    }
    const auto truncated = [&] {
        std::vector<std::size_t> keep;
        for (std::size_t i = 0; i < polar->dim(); ++i)
            if (polar->module().degree(i) <= max_degree)
                keep.push_back(i);
        return restrict_polar(*polar, keep, max_degree);
    }();
    const auto dm = cowitt_dieudonne(WittCarrier::from_polar(truncated), std::nullopt);
    const auto expected = expected_indecomposables(dm);
    const auto actual = indecomposable_dimensions(h);
    for (int d = 1; d <= max_degree; ++d) {
        const auto e = expected.count(d) ? expected.at(d) : 0;
        const auto a = actual.count(d) ? actual.at(d) : 0;
        rep.indecomposable_dims[d] = a;
        rep.expected_indecomposable_dims[d] = e;
        if (a != e) {
            if (rep.indecomposables_match)
                rep.messages.push_back("dim Q(H)_" + std::to_string(d) + " = " + std::to_string(a) +
                                       " but the cofree Hopf algebra on P(H) has " + std::to_string(e));
            rep.indecomposables_match = false;
        }
    }
    return rep;
}

CounterexamplePair counterexample_pair(std::uint32_t p, int j, int max_degree)
{
    if (p == 2)
        throw Error("the counterexample needs p odd");
    if (j < 1 || j % 2 != 0)
        throw Error("the counterexample needs j even and positive");
    if (static_cast<long long>(p) * p * j > max_degree)
        throw Error("the counterexample needs p^2 j <= max degree");
    const std::vector<Generator> gens{{"x", j, 0}, {"y", static_cast<int>(p * p) * j, 0}};
    std::vector<std::vector<unsigned>> exps;
    auto a = monomial_algebra(gens, p, max_degree, exps);
    std::map<std::vector<unsigned>, std::uint32_t> index;
    for (std::uint32_t k = 0; k < exps.size(); ++k)
        index.emplace(exps[k], k);
    const PrimeField f(p);
    const auto u = index.at({0, 0}), x = index.at({1, 0}), y = index.at({0, 1});
    Tensor dx{{{x, u}, 1}, {{u, x}, 1}};
    Tensor dy{{{y, u}, 1}, {{u, y}, 1}};
    auto prim = multiplicative_coproduct(a, exps, {dx, dy});
    std::uint32_t fact = 1;
    std::vector<std::uint32_t> factorial{1};
    for (std::uint32_t i = 1; i < p; ++i)
        factorial.push_back(fact = f.mul(fact, i));
    for (std::uint32_t i = 1; i < p; ++i) {
        const auto c = f.inv(f.mul(factorial[i], factorial[p - i]));
        accumulate(f, dy, index.at({p * i, 0}), index.at({p * (p - i), 0}), c);
    }
    auto psi = multiplicative_coproduct(a, exps, {dx, dy});
    HopfAlgebra hd(a, std::move(psi));
    HopfAlgebra hpd(std::move(a), std::move(prim));
    CounterexamplePair out{dual_hopf(hd), dual_hopf(hpd), std::move(hd), std::move(hpd)};
    return out;
}

}  // namespace polarlab
