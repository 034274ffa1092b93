#include "polarlab/fmodule.hpp"

#include <algorithm>

namespace polarlab {

namespace {

FpMatrix zero_matrix(std::size_t r, std::size_t c, std::uint32_t p) { return FpMatrix(r, c, p); }

FpMatrix random_invertible(std::size_t n, std::uint32_t p, std::mt19937_64& rng)
{
    while (true) {
        auto m = FpMatrix::random(n, n, p, rng);
        if (m.rank() == n)
            return m;
    }
}

}  // namespace

FpMatrix FModule::f_matrix(int q) const
{
    auto it = F.find(q);
    if (it != F.end())
        return it->second;
    return zero_matrix(module.dim_in_degree(q * static_cast<int>(p())), module.dim_in_degree(q), p());
}

FpMatrix VModule::v_matrix(int q) const
{
    auto it = V.find(q);
    if (it != V.end())
        return it->second;
    return zero_matrix(module.dim_in_degree(q), module.dim_in_degree(q * static_cast<int>(p())), p());
}

void validate(const FModule& m)
{
    const auto p = m.p();
    if (!m.module.in_degree(0).empty())
        throw Error("F-modules must be concentrated in positive degrees");
    for (const auto& [q, f] : m.F) {
        const long long t = static_cast<long long>(q) * p;
        if (q <= 0 || t > m.module.max_degree())
            throw Error("F at degree " + std::to_string(q) + " leaves the truncation range");
        if (f.rows() != m.module.dim_in_degree(static_cast<int>(t)) || f.cols() != m.module.dim_in_degree(q))
            throw Error("F at degree " + std::to_string(q) + " has the wrong shape");
        if (f.p() != p)
            throw Error("F at degree " + std::to_string(q) + " has the wrong characteristic");
        if (p > 2 && q % 2 != 0 && !f.is_zero())
            throw Error("F must vanish on odd degree " + std::to_string(q) + " for odd p");
    }
}

std::size_t Barcode::dimension() const
{
    std::size_t d = 0;
    for (const auto& b : bars)
        d += b.length + 1;
    return d;
}

namespace {

// Chains r, rp, rp^2, ... (p not dividing r) inside [1, D].
std::vector<int> roots(std::uint32_t p, int max_degree)
{
    std::vector<int> r;
    for (int d = 1; d <= max_degree; ++d)
        if (d % static_cast<int>(p) != 0)
            r.push_back(d);
    return r;
}

std::vector<int> chain(int r, std::uint32_t p, int max_degree)
{
    std::vector<int> c;
    for (long long d = r; d <= max_degree; d *= p)
        c.push_back(static_cast<int>(d));
    return c;
}

}  // namespace

RankProfile rank_profile(const FModule& m)
{
    validate(m);
    RankProfile prof;
    const auto p = m.p();
    for (int r : roots(p, m.module.max_degree())) {
        const auto c = chain(r, p, m.module.max_degree());
        bool any = false;
        for (int d : c)
            any = any || m.module.dim_in_degree(d) > 0;
        if (!any)
            continue;
        for (unsigned a = 0; a < c.size(); ++a) {
            FpMatrix t = FpMatrix::identity(m.module.dim_in_degree(c[a]), p);
            prof[{r, a, a}] = t.rows();
            for (unsigned b = a + 1; b < c.size(); ++b) {
                t = m.f_matrix(c[b - 1]) * t;
                prof[{r, a, b}] = t.rank();
            }
        }
    }
    return prof;
}

Barcode decompose(const FModule& m)
{
    const auto prof = rank_profile(m);
    const auto p = m.p();
    const int D = m.module.max_degree();
    Barcode bc{p, D, {}};
    for (int r : roots(p, D)) {
        const auto c = chain(r, p, D);
        if (!prof.count({r, 0u, 0u}))
            continue;
        const auto top = static_cast<long long>(c.size()) - 1;
        auto rank = [&](long long a, long long b) -> long long {
            if (a < 0 || b > top)
                return 0;
            return static_cast<long long>(prof.at({r, static_cast<unsigned>(a), static_cast<unsigned>(b)}));
        };
        for (long long a = 0; a <= top; ++a)
            for (long long b = a; b <= top; ++b) {
                const long long mult = rank(a, b) - rank(a - 1, b) - rank(a, b + 1) + rank(a - 1, b + 1);
                for (long long k = 0; k < mult; ++k)
                    bc.bars.push_back({c[a], static_cast<unsigned>(b - a), b == top});
            }
    }
    std::sort(bc.bars.begin(), bc.bars.end());
    return bc;
}

Barcode decompose(const VModule& m) { return decompose(dualize(m)); }

FModule reconstruct(const Barcode& b)
{
    const auto p = b.p;
    std::vector<BasisElement> basis;
    std::vector<std::pair<std::size_t, unsigned>> origin;
    for (std::size_t k = 0; k < b.bars.size(); ++k) {
        const auto& bar = b.bars[k];
        long long d = bar.start;
        for (unsigned i = 0; i <= bar.length; ++i, d *= p) {
            if (d > b.max_degree)
                throw Error("bar starting at " + std::to_string(bar.start) + " exceeds the truncation degree");
            basis.push_back({"e" + std::to_string(k) + "." + std::to_string(i), static_cast<int>(d)});
            origin.emplace_back(k, i);
        }
    }
    FModule m{GradedModule(p, b.max_degree, basis), {}};
    // position of each basis element inside its degree
    std::vector<std::size_t> local(basis.size());
    for (int d : m.module.degrees()) {
        const auto& idx = m.module.in_degree(d);
        for (std::size_t k = 0; k < idx.size(); ++k)
            local[idx[k]] = k;
    }
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const auto [k, step] = origin[i];
        if (step == b.bars[k].length)
            continue;
        const int q = basis[i].degree;
        auto& f = m.F.try_emplace(q, m.f_matrix(q)).first->second;
        f.at(local[i + 1], local[i]) = 1;
    }
    return m;
}

VModule dualize(const FModule& m)
{
    validate(m);
    VModule v{m.module, {}};
    for (const auto& [q, f] : m.F)
        v.V.emplace(q, f.transpose());
    return v;
}

FModule dualize(const VModule& m)
{
    FModule f{m.module, {}};
    for (const auto& [q, v] : m.V)
        f.F.emplace(q, v.transpose());
    validate(f);
    return f;
}

FModule u_f(const PolarAlgebra& a)
{
    const auto& am = a.module();
    std::vector<std::size_t> keep;
    std::vector<BasisElement> basis;
    for (std::size_t i = 0; i < am.dim(); ++i)
        if (am.degree(i) > 0) {
            keep.push_back(i);
            basis.push_back(am.element(i));
        }
    FModule m{GradedModule(a.p(), a.max_degree(), basis), {}};
    const auto p = static_cast<int>(a.p());
    for (int q : m.module.degrees()) {
        if (static_cast<long long>(q) * p > a.max_degree())
            continue;
        const auto& src = m.module.in_degree(q);
        const auto& tgt = m.module.in_degree(q * p);
        FpMatrix f(tgt.size(), src.size(), a.p());
        for (std::size_t c = 0; c < src.size(); ++c) {
            const auto img = a.power(am.unit_vector(keep[src[c]]));
            for (std::size_t r = 0; r < tgt.size(); ++r)
                f.at(r, c) = img[keep[tgt[r]]];
        }
        if (!f.is_zero())
            m.F.emplace(q, std::move(f));
    }
    return m;
}

LiftResult lift_to_polar(const FModule& m)
{
    const auto bc = decompose(m);
    LiftResult res;
    std::vector<BasisElement> basis;
    for (std::size_t k = 0; k < bc.bars.size(); ++k) {
        const auto& bar = bc.bars[k];
        if (bar.ambiguous && bar.length + 1 < 64)
            res.warnings.push_back("bar starting in degree " + std::to_string(bar.start) +
                                   " reaches the truncation degree; resolved to length " +
                                   std::to_string(bar.length));
        long long d = bar.start;
        for (unsigned i = 0; i <= bar.length; ++i, d *= bc.p)
            basis.push_back({"y" + std::to_string(k) + "." + std::to_string(i), static_cast<int>(d)});
    }
    PolarAlgebra a(GradedModule(bc.p, bc.max_degree, basis));
    std::uint32_t pos = 0;
    for (const auto& bar : bc.bars) {
        for (unsigned i = 0; i < bar.length; ++i)
            a.set_mu(std::vector<std::uint32_t>(bc.p, pos + i), {{pos + i + 1, 1}});
        pos += bar.length + 1;
    }
    res.algebra = std::move(a);
    return res;
}


namespace {

std::size_t span_rank(const std::vector<FpVector>& v, std::size_t dim, std::uint32_t p)
{
    return v.empty() ? 0 : row_space_basis(v, dim, p).size();
}

// Columns of B_d are the images in m of the basis of reconstruct(decompose(m)).
std::optional<std::map<int, FpMatrix>> bar_basis(const FModule& m)
{
    const auto p = m.p();
    const int D = m.module.max_degree();
    std::vector<std::pair<Bar, FpVector>> gens;
    for (int r : roots(p, D)) {
        const auto c = chain(r, p, D);
        const auto top = c.size() - 1;
        for (std::size_t a = 0; a <= top; ++a) {
            const auto n = m.module.dim_in_degree(c[a]);
            if (n == 0)
                continue;
            std::vector<FpVector> span;
            if (a > 0) {
                const auto prev = m.f_matrix(c[a - 1]);
                for (std::size_t j = 0; j < prev.cols(); ++j)
                    span.push_back(prev.column(j));
            }
            FpMatrix power = FpMatrix::identity(n, p);
            for (std::size_t L = 0; a + L <= top; ++L) {
                std::vector<FpVector> kernel;
                if (a + L == top) {
                    for (std::size_t i = 0; i < n; ++i) {
                        FpVector e(n, 0);
                        e[i] = 1;
                        kernel.push_back(std::move(e));
                    }
                } else {
                    power = m.f_matrix(c[a + L]) * power;
                    kernel = rank_kernel(power).kernel_basis;
                }
                for (const auto& x : kernel) {
                    auto trial = span;
                    trial.push_back(x);
                    if (span_rank(trial, n, p) > span_rank(span, n, p)) {
                        gens.push_back({Bar{c[a], static_cast<unsigned>(L), a + L == top}, x});
                        span = std::move(trial);
                    }
                }
                span.insert(span.end(), kernel.begin(), kernel.end());
            }
        }
    }
    std::stable_sort(gens.begin(), gens.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    std::map<int, std::vector<FpVector>> columns;
    for (const auto& [bar, x] : gens) {
        FpVector v = x;
        long long d = bar.start;
        for (unsigned i = 0; i <= bar.length; ++i, d *= p) {
            columns[static_cast<int>(d)].push_back(v);
            if (i < bar.length)
                v = m.f_matrix(static_cast<int>(d)).apply(v);
        }
    }
    std::map<int, FpMatrix> out;
    for (int d : m.module.degrees()) {
        const auto n = m.module.dim_in_degree(d);
        const auto& cols = columns[d];
        if (cols.size() != n)
            return std::nullopt;
        auto b = FpMatrix::from_rows(cols, n, p).transpose();
        if (b.rank() != n)
            return std::nullopt;
        out.emplace(d, std::move(b));
    }
    return out;
}

}  // namespace

bool is_f_isomorphism(const FModule& m, const FModule& n, const std::map<int, FpMatrix>& phi)
{
    const auto p = m.p();
    if (n.p() != p || m.module.max_degree() != n.module.max_degree())
        return false;
    for (int d = 1; d <= m.module.max_degree(); ++d) {
        const auto dm = m.module.dim_in_degree(d), dn = n.module.dim_in_degree(d);
        if (dm != dn)
            return false;
        if (dm == 0)
            continue;
        auto it = phi.find(d);
        if (it == phi.end() || it->second.rows() != dn || it->second.cols() != dm || it->second.rank() != dm)
            return false;
    }
    for (int q = 1; static_cast<long long>(q) * p <= m.module.max_degree(); ++q) {
        const int t = q * static_cast<int>(p);
        if (m.module.dim_in_degree(q) == 0 || m.module.dim_in_degree(t) == 0)
            continue;
        if (!(phi.at(t) * m.f_matrix(q) == n.f_matrix(q) * phi.at(q)))
            return false;
    }
    return true;
}

std::optional<std::map<int, FpMatrix>> isomorphism_witness(const FModule& m, const FModule& n, std::mt19937_64& rng,
                                                          unsigned attempts)
{
    const auto p = m.p();
    if (n.p() != p || m.module.max_degree() != n.module.max_degree())
        return std::nullopt;
    const int D = m.module.max_degree();
    std::map<int, std::size_t> offset;
    std::size_t unknowns = 0;
    for (int d = 1; d <= D; ++d) {
        const auto dm = m.module.dim_in_degree(d), dn = n.module.dim_in_degree(d);
        if (dm != dn)
            return std::nullopt;
        if (dm == 0)
            continue;
        offset[d] = unknowns;
        unknowns += dm * dm;
    }
    if (unknowns == 0)
        return std::map<int, FpMatrix>{};
    if (decompose(m).bars != decompose(n).bars)
        return std::nullopt;
    if (auto bm = bar_basis(m)) {
        if (auto bn = bar_basis(n)) {
            std::map<int, FpMatrix> phi;
            for (const auto& [d, b] : *bm)
                phi.emplace(d, bn->at(d) * *b.inverse());
            if (is_f_isomorphism(m, n, phi))
                return phi;
        }
    }
    // unknown phi_d[r][c] at offset[d] + r * dim + c
    auto var = [&](int d, std::size_t r, std::size_t c) { return offset.at(d) + r * m.module.dim_in_degree(d) + c; };
    const PrimeField f(p);
    std::vector<FpVector> rows;
    for (int q = 1; static_cast<long long>(q) * p <= D; ++q) {
        const int t = q * static_cast<int>(p);
        const auto dq = m.module.dim_in_degree(q), dt = m.module.dim_in_degree(t);
        if (dq == 0 || dt == 0)
            continue;
        const auto fm = m.f_matrix(q), fn = n.f_matrix(q);
        for (std::size_t r = 0; r < dt; ++r)
            for (std::size_t c = 0; c < dq; ++c) {
                FpVector row(unknowns, 0);
                for (std::size_t k = 0; k < dt; ++k)
                    row[var(t, r, k)] = f.add(row[var(t, r, k)], fm.at(k, c));
                for (std::size_t k = 0; k < dq; ++k)
                    row[var(q, k, c)] = f.sub(row[var(q, k, c)], fn.at(r, k));
                rows.push_back(std::move(row));
            }
    }
    std::vector<FpVector> kernel;
    if (rows.empty()) {
        for (std::size_t i = 0; i < unknowns; ++i) {
            FpVector e(unknowns, 0);
            e[i] = 1;
            kernel.push_back(std::move(e));
        }
    } else {
        kernel = rank_kernel(FpMatrix::from_rows(rows, unknowns, p)).kernel_basis;
    }
    if (kernel.empty())
        return std::nullopt;
    std::uniform_int_distribution<std::uint32_t> coef(0, p - 1);
    for (unsigned attempt = 0; attempt < attempts; ++attempt) {
        FpVector x(unknowns, 0);
        for (const auto& k : kernel) {
            const auto c = coef(rng);
            for (std::size_t i = 0; i < unknowns; ++i)
                x[i] = f.add(x[i], f.mul(c, k[i]));
        }
        std::map<int, FpMatrix> phi;
        bool invertible = true;
        for (const auto& [d, off] : offset) {
            const auto dim = m.module.dim_in_degree(d);
            FpMatrix t(dim, dim, p);
            for (std::size_t r = 0; r < dim; ++r)
                for (std::size_t c = 0; c < dim; ++c)
                    t.at(r, c) = x[var(d, r, c)];
            if (t.rank() != dim) {
                invertible = false;
                break;
            }
            phi.emplace(d, std::move(t));
        }
        if (invertible)
            return phi;
    }
    return std::nullopt;
}

FModule random_fmodule(std::uint32_t p, int max_degree, std::size_t max_dim, std::mt19937_64& rng)
{
    std::uniform_int_distribution<std::size_t> count(1, max_dim);
    // bias degrees towards long chains
    std::vector<int> degrees;
    for (int d = 1; d <= max_degree; ++d)
        degrees.push_back(d);
    std::vector<int> weighted;
    for (int r : roots(p, max_degree)) {
        const auto c = chain(r, p, max_degree);
        if (c.size() < 2)
            continue;
        for (int d : c)
            for (int k = 0; k < 3; ++k)
                weighted.push_back(d);
    }
    weighted.insert(weighted.end(), degrees.begin(), degrees.end());
    std::uniform_int_distribution<std::size_t> pick(0, weighted.size() - 1);
    const auto n = count(rng);
    std::vector<BasisElement> basis;
    for (std::size_t i = 0; i < n; ++i)
        basis.push_back({"m" + std::to_string(i), weighted[pick(rng)]});
    std::stable_sort(basis.begin(), basis.end(), [](const auto& a, const auto& b) { return a.degree < b.degree; });
    for (std::size_t i = 0; i < n; ++i)
        basis[i].name = "m" + std::to_string(i);
    FModule m{GradedModule(p, max_degree, basis), {}};
    for (int q : m.module.degrees()) {
        const long long t = static_cast<long long>(q) * p;
        if (t > max_degree || (p > 2 && q % 2 != 0))
            continue;
        const auto rows = m.module.dim_in_degree(static_cast<int>(t)), cols = m.module.dim_in_degree(q);
        if (rows == 0)
            continue;
        std::uniform_int_distribution<std::size_t> rk(0, std::min(rows, cols));
        const auto r = rk(rng);
        auto f = FpMatrix::random(rows, r, p, rng) * FpMatrix::random(r, cols, p, rng);
        if (!f.is_zero())
            m.F.emplace(q, std::move(f));
    }
    validate(m);
    return m;
}

FModule conjugate(const FModule& m, std::mt19937_64& rng)
{
    const auto p = m.p();
    std::map<int, FpMatrix> change, inv;
    for (int d : m.module.degrees()) {
        auto c = random_invertible(m.module.dim_in_degree(d), p, rng);
        inv.emplace(d, *c.inverse());
        change.emplace(d, std::move(c));
    }
    FModule out{m.module, {}};
    for (const auto& [q, f] : m.F)
        out.F.emplace(q, change.at(q * static_cast<int>(p)) * f * inv.at(q));
    return out;
}

}  // namespace polarlab
