#include "polarlab/polar.hpp"

#include "polarlab/sym.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>

namespace polarlab {

namespace {

// Rows in reduced echelon form; the pivot of a row is its first nonzero
// column.
class Echelon {
public:
    Echelon(std::size_t cols, const PrimeField& f) : cols_(cols), f_(f) {}

    void add(FpVector row)
    {
        reduce(row);
        std::size_t piv = 0;
        while (piv < cols_ && row[piv] == 0)
            ++piv;
        if (piv == cols_)
            return;
        const auto inv = f_.inv(row[piv]);
        for (auto& x : row)
            x = f_.mul(x, inv);
        for (auto& [q, other] : rows_) {
            const auto c = other[piv];
            if (c == 0)
                continue;
            for (std::size_t k = piv; k < cols_; ++k)
                if (row[k] != 0)
                    other[k] = f_.sub(other[k], f_.mul(c, row[k]));
        }
        rows_.emplace(piv, std::move(row));
    }

    void reduce(FpVector& v) const
    {
        for (const auto& [piv, row] : rows_) {
            const auto c = v[piv];
            if (c == 0)
                continue;
            for (std::size_t k = piv; k < cols_; ++k)
                if (row[k] != 0)
                    v[k] = f_.sub(v[k], f_.mul(c, row[k]));
        }
    }

    bool is_pivot(std::size_t c) const { return rows_.count(c) != 0; }

private:
    std::size_t cols_;
    const PrimeField& f_;
    std::map<std::size_t, FpVector> rows_;
};

struct DegreeData {
    std::vector<Word> columns;  // longest words first
    std::map<Word, std::size_t> column_of;
    std::unique_ptr<Echelon> relations;
    std::vector<std::size_t> standard;  // non-pivot columns
};

struct Quotient {
    std::map<int, DegreeData> by_degree;
    std::map<int, std::size_t> dims() const
    {
        std::map<int, std::size_t> d;
        for (const auto& [deg, dd] : by_degree)
            d[deg] = dd.standard.size();
        return d;
    }
};

std::string bracket(const std::string& s) { return "[" + s + "]"; }

Quotient build_quotient(const PolarAlgebra& a, int max_degree, unsigned zero_bound)
{
    const auto p = a.p();
    const auto& m = a.module();
    const PrimeField& f = a.field();
    std::vector<int> degrees;
    for (const auto& b : m.basis())
        degrees.push_back(b.degree);
    auto words = enumerate_words(degrees, p, max_degree, zero_bound);
    Quotient q;
    for (auto& w : words)
        q.by_degree[word_degree(w, degrees)].columns.push_back(w);
    for (auto& [d, dd] : q.by_degree) {
        std::stable_sort(dd.columns.begin(), dd.columns.end(),
                         [](const Word& x, const Word& y) { return x.size() > y.size(); });
        for (std::size_t c = 0; c < dd.columns.size(); ++c)
            dd.column_of[dd.columns[c]] = c;
        dd.relations = std::make_unique<Echelon>(dd.columns.size(), f);
    }
    // relation generators x_1...x_p - mu(x_1, ..., x_p), times every word
    for (int j : m.degrees()) {
        const int pj = static_cast<int>(p) * j;
        if (pj > max_degree)
            continue;
        const bool strict = p > 2 && j % 2 != 0;
        const auto& pool = m.in_degree(j);
        std::vector<std::uint32_t> cur;
        std::function<void(std::size_t)> rec = [&](std::size_t start) {
            if (cur.size() == p) {
                Word lead(cur.begin(), cur.end());
                const auto value = a.mu_basis(cur);
                for (const auto& mw : words) {
                    const int d = pj + word_degree(mw, degrees);
                    if (d > max_degree)
                        continue;
                    auto& dd = q.by_degree.at(d);
                    FpVector row(dd.columns.size(), 0);
                    bool inside = true;
                    auto put = [&](const Word& w, std::uint32_t c) {
                        auto it = dd.column_of.find(w);
                        if (it == dd.column_of.end()) {
                            inside = false;
                            return;
                        }
                        row[it->second] = f.add(row[it->second], c);
                    };
                    Word out;
                    int s = multiply_words(lead, mw, degrees, p, out);
                    if (s != 0)
                        put(out, f.reduce(s));
                    for (const auto& [l, c] : value) {
                        s = multiply_words(Word{l}, mw, degrees, p, out);
                        if (s != 0)
                            put(out, f.neg(f.mul(c, f.reduce(s))));
                    }
                    if (!inside)
                        continue;
                    dd.relations->add(std::move(row));
                }
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
    for (auto& [d, dd] : q.by_degree) {
        for (std::size_t c = 0; c < dd.columns.size(); ++c)
            if (!dd.relations->is_pivot(c))
                dd.standard.push_back(c);
        std::sort(dd.standard.begin(), dd.standard.end(), [&](std::size_t x, std::size_t y) {
            const auto& wx = dd.columns[x];
            const auto& wy = dd.columns[y];
            if (wx.size() != wy.size())
                return wx.size() < wy.size();
            return wx < wy;
        });
    }
    return q;
}

}  // namespace

HullResult hull(const PolarAlgebra& a, int max_degree)
{
    const auto p = a.p();
    const auto& m = a.module();
    const PrimeField& f = a.field();
    std::vector<int> degrees;
    for (const auto& b : m.basis())
        degrees.push_back(b.degree);

    // Degree-0 letters make Sym(A) infinite in each degree. Words with at
    // most p-1 letters of each degree span the quotient, so it suffices to
    // grow the allowed number of degree-0 letters until the quotient
    // dimensions are stable for two consecutive steps.
    unsigned bound = 2 * (p - 1);
    Quotient q = build_quotient(a, max_degree, bound);
    if (!m.in_degree(0).empty()) {
        int stable = 0;
        while (stable < 2 && bound < 2 * (p - 1) + 8 * p) {
            Quotient next = build_quotient(a, max_degree, bound + p);
            stable = next.dims() == q.dims() ? stable + 1 : 0;
            q = std::move(next);
            bound += p;
        }
    }

    std::vector<BasisElement> basis;
    std::map<Word, std::size_t> index;
    std::map<int, std::size_t> first_index;
    for (const auto& [d, dd] : q.by_degree) {
        for (auto c : dd.standard) {
            const auto& w = dd.columns[c];
            std::string name;
            for (auto l : w)
                name += (name.empty() ? "" : "*") + bracket(m.name(l));
            if (name.empty())
                name = "1";
            index[w] = basis.size();
            basis.push_back({name, d});
        }
    }
    auto normal_form = [&](const Word& w, std::uint32_t coef, FpVector& acc) {
        const int d = word_degree(w, degrees);
        const auto& dd = q.by_degree.at(d);
        FpVector v(dd.columns.size(), 0);
        v[dd.column_of.at(w)] = 1;
        dd.relations->reduce(v);
        for (auto c : dd.standard)
            if (v[c] != 0) {
                auto& x = acc[index.at(dd.columns[c])];
                x = f.add(x, f.mul(coef, v[c]));
            }
    };

    const std::size_t n = basis.size();
    std::vector<Word> words(n);
    for (const auto& [w, i] : index)
        words[i] = w;
    HullResult result{GradedAlgebra(GradedModule(p, max_degree, std::move(basis)), index.at(Word{})), {}, bound};
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            Word out;
            const int s = multiply_words(words[x], words[y], degrees, p, out);
            if (s == 0 || word_degree(out, degrees) > max_degree)
                continue;
            FpVector acc(n, 0);
            normal_form(out, f.reduce(s), acc);
            result.algebra.set_product(x, y, to_sparse(acc));
        }
    for (std::size_t l = 0; l < m.dim(); ++l) {
        FpVector acc(n, 0);
        if (degrees[l] <= max_degree)
            normal_form(Word{static_cast<std::uint32_t>(l)}, 1, acc);
        result.unit_map.push_back(std::move(acc));
    }
    return result;
}

std::map<int, std::size_t> unit_map_ranks(const PolarAlgebra& a, const HullResult& h)
{
    std::map<int, std::size_t> ranks;
    const auto& m = a.module();
    for (int d : m.degrees()) {
        std::vector<FpVector> rows;
        for (auto i : m.in_degree(d))
            rows.push_back(h.unit_map[i]);
        ranks[d] = FpMatrix::from_rows(rows, h.algebra.dim(), a.p()).rank();
    }
    return ranks;
}

bool is_p_polar(const PolarAlgebra& a)
{
    auto split = p_typical_split(a);
    auto injective = [](const PolarAlgebra& factor, int max_degree) {
        const auto h = hull(factor, max_degree);
        for (const auto& [d, r] : unit_map_ranks(factor, h))
            if (d <= max_degree && r != factor.module().dim_in_degree(d))
                return false;
        return true;
    };
    if (split.degree_zero.dim() > 0 && !injective(split.degree_zero, 0))
        return false;
    for (const auto& [j, block] : split.blocks)
        if (!injective(block, a.max_degree()))
            return false;
    return true;
}

PolarAlgebra free_polar(const GradedModule& m, int max_degree)
{
    const auto p = m.p();
    std::vector<int> degrees;
    for (const auto& b : m.basis()) {
        if (b.degree <= 0)
            throw Error("free_polar: generator " + b.name + " must have positive degree");
        degrees.push_back(b.degree);
    }
    std::map<int, std::vector<bool>> masks;
    for (std::size_t l = 0; l < m.dim(); ++l) {
        auto& mask = masks[block_of(degrees[l], p)];
        mask.resize(m.dim(), false);
        mask[l] = true;
    }
    std::vector<Word> words;
    for (const auto& [j, mask] : masks)
        for (auto& w : enumerate_words(degrees, p, max_degree, 0, mask)) {
            if (w.empty())
                continue;
            const int d = word_degree(w, degrees);
            if (block_of(d, p) == j)
                words.push_back(std::move(w));
        }
    std::stable_sort(words.begin(), words.end(), [&](const Word& x, const Word& y) {
        return word_degree(x, degrees) < word_degree(y, degrees);
    });
    std::vector<BasisElement> basis;
    std::map<Word, std::uint32_t> index;
    for (const auto& w : words) {
        std::string name;
        for (std::size_t k = 0; k < w.size();) {
            std::size_t e = k;
            while (e < w.size() && w[e] == w[k])
                ++e;
            name += (name.empty() ? "" : "*") + m.name(w[k]);
            if (e - k > 1)
                name += "^" + std::to_string(e - k);
            k = e;
        }
        index[w] = static_cast<std::uint32_t>(basis.size());
        basis.push_back({name, word_degree(w, degrees)});
    }
    PolarAlgebra out(GradedModule(p, max_degree, std::move(basis)));
    const auto& om = out.module();
    for (int j : om.degrees()) {
        if (static_cast<long long>(j) * p > max_degree)
            continue;
        const bool strict = p > 2 && j % 2 != 0;
        const auto& pool = om.in_degree(j);
        std::vector<std::uint32_t> cur;
        std::function<void(std::size_t)> rec = [&](std::size_t start) {
            if (cur.size() == p) {
                Word prod;
                int s = 1;
                for (auto x : cur) {
                    Word next;
                    s *= multiply_words(prod, words[x], degrees, p, next);
                    prod = std::move(next);
                }
                if (s != 0)
                    out.set_mu(cur, {{index.at(prod), out.field().reduce(s)}});
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
    return out;
}

}  // namespace polarlab
