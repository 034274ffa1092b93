#include "polarlab/witt.hpp"

#include <algorithm>
#include <limits>
#include <mutex>
#include <tuple>

namespace polarlab {

std::vector<std::string> witt_variables(const std::string& prefix, unsigned n)
{
    std::vector<std::string> v;
    for (unsigned i = 0; i <= n; ++i)
        v.push_back(prefix + std::to_string(i));
    return v;
}

IntPoly embed(const IntPoly& f, const std::vector<std::string>& vars)
{
    std::vector<std::size_t> pos;
    for (const auto& name : f.variables()) {
        auto it = std::find(vars.begin(), vars.end(), name);
        if (it == vars.end())
            throw Error("embed: variable " + name + " missing from target list");
        pos.push_back(static_cast<std::size_t>(it - vars.begin()));
    }
    IntPoly out(vars);
    for (const auto& [e, c] : f.terms()) {
        Exponents ne(vars.size(), 0);
        for (std::size_t i = 0; i < e.size(); ++i)
            ne[pos[i]] = e[i];
        out.add_term(ne, c);
    }
    return out;
}

std::vector<IntPoly> ghost(const std::vector<IntPoly>& x, std::uint32_t p)
{
    std::vector<IntPoly> w;
    for (std::size_t m = 0; m < x.size(); ++m) {
        IntPoly s = x[m].scaled(0);
        mpz_class pi = 1;
        for (std::size_t i = 0; i <= m; ++i) {
            s += x[i].pow(static_cast<unsigned>(ipow(p, static_cast<unsigned>(m - i)))).scaled(pi);
            pi *= p;
        }
        w.push_back(std::move(s));
    }
    return w;
}

namespace {

// X_m = (G_m - sum_{i<m} p^i X_i^{p^{m-i}}) / p^m
IntPoly next_component(const IntPoly& target, const std::vector<IntPoly>& prev, std::uint32_t p)
{
    const auto m = static_cast<unsigned>(prev.size());
    IntPoly r = target;
    mpz_class pi = 1;
    for (unsigned i = 0; i < m; ++i) {
        r -= prev[i].pow(static_cast<unsigned>(ipow(p, m - i))).scaled(pi);
        pi *= p;
    }
    auto q = r.divide_exact(pi);
    if (!q)
        throw Error("Witt recursion: inexact division by p^" + std::to_string(m));
    return *q;
}

IntPoly ghost_component(const std::vector<std::string>& vars, const std::string& prefix, unsigned m,
                        std::uint32_t p)
{
    IntPoly s(vars);
    mpz_class pi = 1;
    for (unsigned i = 0; i <= m; ++i) {
        auto idx = static_cast<std::size_t>(std::find(vars.begin(), vars.end(), prefix + std::to_string(i)) -
                                            vars.begin());
        s += IntPoly::variable(vars, idx).pow(static_cast<unsigned>(ipow(p, m - i))).scaled(pi);
        pi *= p;
    }
    return s;
}

enum class Kind { Sum, Neg, Frobenius };

struct PolyCache {
    std::recursive_mutex mutex;
    std::map<std::tuple<Kind, std::uint32_t, unsigned>, std::unique_ptr<std::vector<IntPoly>>> polys;
};

PolyCache& poly_cache()
{
    static PolyCache cache;
    return cache;
}

void check_request(std::uint32_t p, unsigned n, unsigned limit)
{
    if (!is_prime(p))
        throw Error("p = " + std::to_string(p) + " is not prime");
    if (n > limit)
        throw Error("Witt length " + std::to_string(n) + " exceeds the configured limit " + std::to_string(limit));
}

const std::vector<IntPoly>& cached(Kind kind, std::uint32_t p, unsigned n)
{
    auto& cache = poly_cache();
    std::lock_guard lock(cache.mutex);
    auto key = std::make_tuple(kind, p, n);
    auto it = cache.polys.find(key);
    if (it != cache.polys.end())
        return *it->second;

    std::vector<std::string> vars;
    unsigned top = n;
    switch (kind) {
    case Kind::Sum: {
        vars = witt_variables("a", n);
        auto b = witt_variables("b", n);
        vars.insert(vars.end(), b.begin(), b.end());
        break;
    }
    case Kind::Neg:
        vars = witt_variables("a", n);
        break;
    case Kind::Frobenius:
        vars = witt_variables("a", n + 1);
        break;
    }
    std::vector<IntPoly> prev;
    if (n > 0)
        for (const auto& f : cached(kind, p, n - 1))
            prev.push_back(embed(f, vars));
    IntPoly target(vars);
    switch (kind) {
    case Kind::Sum:
        target = ghost_component(vars, "a", top, p) + ghost_component(vars, "b", top, p);
        break;
    case Kind::Neg:
        target = ghost_component(vars, "a", top, p).scaled(-1);
        break;
    case Kind::Frobenius:
        target = ghost_component(vars, "a", top + 1, p);
        break;
    }
    auto next = next_component(target, prev, p);
    prev.push_back(std::move(next));
    auto& slot = cache.polys[key];
    slot = std::make_unique<std::vector<IntPoly>>(std::move(prev));
    return *slot;
}

}  // namespace

std::vector<IntPoly> solve_from_ghost(const std::vector<IntPoly>& targets, std::uint32_t p)
{
    std::vector<IntPoly> out;
    for (const auto& t : targets)
        out.push_back(next_component(t, out, p));
    return out;
}

const WittPolynomialSet& witt_sum_polys(std::uint32_t p, unsigned n, unsigned limit)
{
    check_request(p, n, limit);
    static std::mutex mutex;
    static std::map<std::pair<std::uint32_t, unsigned>, std::unique_ptr<WittPolynomialSet>> sets;
    const auto& polys = cached(Kind::Sum, p, n);
    std::lock_guard lock(mutex);
    auto& slot = sets[{p, n}];
    if (!slot)
        slot = std::make_unique<WittPolynomialSet>(WittPolynomialSet{p, n, polys});
    return *slot;
}

const std::vector<IntPoly>& witt_neg_polys(std::uint32_t p, unsigned n, unsigned limit)
{
    check_request(p, n, limit);
    return cached(Kind::Neg, p, n);
}

const std::vector<IntPoly>& witt_frobenius_polys(std::uint32_t p, unsigned n, unsigned limit)
{
    check_request(p, n + 1, limit + 1);
    return cached(Kind::Frobenius, p, n);
}

struct WittCarrier::Evaluator {
    std::vector<std::size_t> indices;  // block basis inside A
    HullResult hull;
    int max_degree = 0;
    // per degree of the block: block-local indices and the matrix of u
    std::map<int, std::vector<std::size_t>> local;
    std::map<int, FpMatrix> u_matrix;
};

struct WittCarrier::HullCache {
    std::mutex mutex;
    std::map<std::pair<int, int>, std::unique_ptr<Evaluator>> evaluators;
};

WittCarrier WittCarrier::from_algebra(GradedAlgebra a)
{
    WittCarrier c;
    c.algebra_ = std::make_shared<const GradedAlgebra>(std::move(a));
    return c;
}

WittCarrier WittCarrier::from_polar(PolarAlgebra a)
{
    WittCarrier c;
    c.polar_ = std::make_shared<const PolarAlgebra>(std::move(a));
    c.cache_ = std::make_shared<HullCache>();
    return c;
}

const GradedModule& WittCarrier::module() const
{
    return polar_ ? polar_->module() : algebra_->module();
}

const WittCarrier::Evaluator& WittCarrier::evaluator(int j, unsigned top) const
{
    const auto p = this->p();
    const auto& m = module();
    const int block = j == 0 ? 0 : block_of(j, p);
    long long reach = static_cast<long long>(j) * ipow(p, top);
    const int max_degree = static_cast<int>(std::min<long long>(reach, m.max_degree()));
    std::lock_guard lock(cache_->mutex);
    auto& slot = cache_->evaluators[{block, max_degree}];
    if (slot)
        return *slot;
    auto ev = std::make_unique<Evaluator>();
    for (std::size_t i = 0; i < m.dim(); ++i) {
        const int d = m.degree(i);
        if (d > max_degree)
            continue;
        if ((block == 0 && d == 0) || (block != 0 && d != 0 && block_of(d, p) == block))
            ev->indices.push_back(i);
    }
    ev->max_degree = max_degree;
    const auto factor = restrict_polar(*polar_, ev->indices, max_degree);
    ev->hull = hull(factor, max_degree);
    for (std::size_t k = 0; k < ev->indices.size(); ++k)
        ev->local[factor.module().degree(k)].push_back(k);
    for (const auto& [d, loc] : ev->local) {
        FpMatrix u(ev->hull.algebra.dim(), loc.size(), p);
        for (std::size_t c = 0; c < loc.size(); ++c)
            for (std::size_t r = 0; r < u.rows(); ++r)
                u.at(r, c) = ev->hull.unit_map[loc[c]][r];
        if (u.rank() != loc.size())
            throw Error("carrier is not p-polar: u is not injective in degree " + std::to_string(d));
        ev->u_matrix.emplace(d, std::move(u));
    }
    slot = std::move(ev);
    return *slot;
}

FpVector WittCarrier::evaluate(const IntPoly& f, const std::vector<FpVector>& values, int j, unsigned top,
                               int target_degree) const
{
    const auto& m = module();
    if (target_degree > m.max_degree())
        return m.zero();
    if (!polar_)
        return f.evaluate(AlgebraRing{algebra_.get()}, values);

    const auto& ev = evaluator(j, top);
    const auto& h = ev.hull.algebra;
    const PrimeField& fld = h.field();
    std::vector<FpVector> lifted;
    for (const auto& v : values) {
        FpVector x(h.dim(), 0);
        std::vector<bool> seen(m.dim(), false);
        for (std::size_t k = 0; k < ev.indices.size(); ++k) {
            const auto c = v[ev.indices[k]];
            seen[ev.indices[k]] = true;
            if (c == 0)
                continue;
            for (std::size_t r = 0; r < x.size(); ++r)
                x[r] = fld.add(x[r], fld.mul(c, ev.hull.unit_map[k][r]));
        }
        for (std::size_t i = 0; i < m.dim(); ++i)
            if (v[i] != 0 && !seen[i])
                throw Error("Witt entry has a component outside its p-typical block");
        lifted.push_back(std::move(x));
    }
    const auto value = f.evaluate(AlgebraRing{&h}, lifted);
    FpVector out = m.zero();
    auto it = ev.u_matrix.find(target_degree);
    if (it == ev.u_matrix.end()) {
        for (auto c : value)
            if (c != 0)
                throw Error("evaluated Witt entry escapes the image of A in hull(A)");
        return out;
    }
    auto sol = it->second.solve(value);
    if (!sol)
        throw Error("evaluated Witt entry escapes the image of A in hull(A)");
    const auto& loc = ev.local.at(target_degree);
    for (std::size_t c = 0; c < loc.size(); ++c)
        out[ev.indices[loc[c]]] = (*sol)[c];
    return out;
}

void check_witt_vector(const WittCarrier& c, const WittVector& v)
{
    const auto& m = c.module();
    if (v.entries.empty())
        throw Error("Witt vector has no components");
    if (v.degree < 0)
        throw Error("Witt vector has negative degree");
    for (std::size_t i = 0; i < v.entries.size(); ++i) {
        const auto& e = v.entries[i];
        if (e.size() != m.dim())
            throw Error("Witt entry " + std::to_string(i) + " has the wrong dimension");
        const long long d = static_cast<long long>(v.degree) * ipow(c.p(), static_cast<unsigned>(i));
        for (std::size_t k = 0; k < e.size(); ++k) {
            if (e[k] >= c.p())
                throw Error("Witt entry coefficient out of range");
            if (e[k] != 0 && m.degree(k) != d)
                throw Error("Witt entry " + std::to_string(i) + " must lie in degree " + std::to_string(d));
        }
    }
}

WittVector witt_zero(const WittCarrier& c, int degree, unsigned n)
{
    return WittVector{degree, std::vector<FpVector>(n + 1, c.module().zero())};
}

namespace {

long long entry_degree(const WittCarrier& c, int j, unsigned i)
{
    return static_cast<long long>(j) * ipow(c.p(), i);
}

WittVector apply_polys(const WittCarrier& c, const std::vector<IntPoly>& polys, const std::vector<FpVector>& values,
                       int j, unsigned top, int out_degree)
{
    WittVector r{out_degree, {}};
    for (unsigned m = 0; m < polys.size(); ++m) {
        const long long d = entry_degree(c, out_degree, m);
        if (d > c.module().max_degree())
            r.entries.push_back(c.module().zero());
        else
            r.entries.push_back(c.evaluate(polys[m], values, j, top, static_cast<int>(d)));
    }
    return r;
}

}  // namespace

WittVector witt_add(const WittCarrier& c, const WittVector& u, const WittVector& v)
{
    check_witt_vector(c, u);
    check_witt_vector(c, v);
    if (u.degree != v.degree || u.entries.size() != v.entries.size())
        throw Error("witt_add: vectors differ in degree or length");
    const auto n = u.length();
    const auto& polys = witt_sum_polys(c.p(), n, std::max(4u, n)).sum;
    std::vector<FpVector> values = u.entries;
    values.insert(values.end(), v.entries.begin(), v.entries.end());
    return apply_polys(c, polys, values, u.degree, n, u.degree);
}

WittVector witt_neg(const WittCarrier& c, const WittVector& u)
{
    check_witt_vector(c, u);
    const auto n = u.length();
    return apply_polys(c, witt_neg_polys(c.p(), n, std::max(4u, n)), u.entries, u.degree, n, u.degree);
}

WittVector witt_sub(const WittCarrier& c, const WittVector& u, const WittVector& v)
{
    return witt_add(c, u, witt_neg(c, v));
}

WittVector witt_multiple(const WittCarrier& c, const WittVector& u, long long k)
{
    WittVector base = k < 0 ? witt_neg(c, u) : u;
    unsigned long long e = k < 0 ? static_cast<unsigned long long>(-k) : static_cast<unsigned long long>(k);
    WittVector acc = witt_zero(c, u.degree, u.length());
    while (e > 0) {
        if (e & 1u)
            acc = witt_add(c, acc, base);
        e >>= 1;
        if (e > 0)
            base = witt_add(c, base, base);
    }
    return acc;
}

WittVector teichmuller(const WittCarrier& c, const FpVector& a, int degree, unsigned n)
{
    WittVector v = witt_zero(c, degree, n);
    v.entries[0] = a;
    check_witt_vector(c, v);
    return v;
}

WittVector frobenius(const WittCarrier& c, const WittVector& v)
{
    check_witt_vector(c, v);
    if (v.length() == 0)
        throw Error("frobenius needs a Witt vector with at least two components");
    const auto n = v.length() - 1;
    const auto& polys = witt_frobenius_polys(c.p(), n, std::max(4u, n));
    const long long out = static_cast<long long>(v.degree) * c.p();
    if (out > std::numeric_limits<int>::max() / 2)
        throw Error("frobenius: degree overflow");
    return apply_polys(c, polys, v.entries, v.degree, v.length(), static_cast<int>(out));
}

WittVector verschiebung(const WittCarrier& c, const WittVector& v)
{
    check_witt_vector(c, v);
    if (v.degree % static_cast<int>(c.p()) != 0)
        throw Error("verschiebung: degree " + std::to_string(v.degree) + " is not divisible by p");
    WittVector r{v.degree / static_cast<int>(c.p()), {c.module().zero()}};
    r.entries.insert(r.entries.end(), v.entries.begin(), v.entries.end());
    return r;
}

WittVector truncate(const WittVector& v, unsigned n)
{
    if (n > v.length())
        throw Error("truncate: target length exceeds the vector");
    return WittVector{v.degree, std::vector<FpVector>(v.entries.begin(), v.entries.begin() + n + 1)};
}

}  // namespace polarlab
