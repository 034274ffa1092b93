#include "polarlab/graded.hpp"

#include "polarlab/intpoly.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace polarlab {

GradedModule::GradedModule(std::uint32_t p, int max_degree, std::vector<BasisElement> basis)
    : p_(p), max_degree_(max_degree), basis_(std::move(basis))
{
    if (!is_prime(p))
        throw Error("GradedModule: p = " + std::to_string(p) + " is not prime");
    if (max_degree < 0)
        throw Error("GradedModule: negative truncation degree");
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        const auto& b = basis_[i];
        if (b.degree < 0)
            throw Error("GradedModule: negative degree on " + b.name);
        if (b.degree > max_degree)
            throw Error("GradedModule: " + b.name + " lies above the truncation degree");
        if (!index_.emplace(b.name, i).second)
            throw Error("GradedModule: duplicate basis name " + b.name);
        by_degree_[b.degree].push_back(i);
    }
}

std::size_t GradedModule::index_of(const std::string& name) const
{
    auto it = index_.find(name);
    if (it == index_.end())
        throw Error("unknown basis element " + name);
    return it->second;
}

const std::vector<std::size_t>& GradedModule::in_degree(int d) const
{
    static const std::vector<std::size_t> empty;
    auto it = by_degree_.find(d);
    return it == by_degree_.end() ? empty : it->second;
}

std::vector<int> GradedModule::degrees() const
{
    std::vector<int> out;
    for (const auto& [d, v] : by_degree_)
        out.push_back(d);
    return out;
}

FpVector GradedModule::unit_vector(std::size_t i) const
{
    FpVector v(dim(), 0);
    v.at(i) = 1;
    return v;
}

GradedModule shift(const GradedModule& m, int i)
{
    const auto p = m.p();
    std::vector<BasisElement> basis;
    if (i >= 0) {
        const long long q = ipow(p, static_cast<unsigned>(i));
        for (const auto& b : m.basis())
            if (b.degree % q == 0)
                basis.push_back({b.name, static_cast<int>(b.degree / q)});
        return GradedModule(p, static_cast<int>(m.max_degree() / q), std::move(basis));
    }
    if (i == -1) {
        for (const auto& b : m.basis())
            basis.push_back({b.name, b.degree * static_cast<int>(p)});
        return GradedModule(p, m.max_degree() * static_cast<int>(p), std::move(basis));
    }
    throw Error("shift: only shifts i >= -1 are defined");
}

FpVector to_dense(const SparseVec& v, std::size_t dim)
{
    FpVector out(dim, 0);
    for (const auto& [i, c] : v)
        out.at(i) = c;
    return out;
}

SparseVec to_sparse(const FpVector& v)
{
    SparseVec out;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0)
            out.emplace_back(static_cast<std::uint32_t>(i), v[i]);
    return out;
}

FpVector add_vectors(const PrimeField& f, const FpVector& a, const FpVector& b)
{
    if (a.size() != b.size())
        throw Error("add_vectors: size mismatch");
    FpVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = f.add(a[i], b[i]);
    return out;
}

FpVector scale_vector(const PrimeField& f, const FpVector& a, std::uint32_t c)
{
    FpVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = f.mul(a[i], c);
    return out;
}

GradedAlgebra::GradedAlgebra(GradedModule module, std::size_t unit)
    : module_(std::move(module)), field_(module_.p()), unit_(unit), products_(module_.dim() * module_.dim())
{
    if (unit >= module_.dim())
        throw Error("GradedAlgebra: unit index out of range");
    if (module_.degree(unit) != 0)
        throw Error("GradedAlgebra: unit must have degree 0");
}

void GradedAlgebra::set_product(std::size_t a, std::size_t b, SparseVec value)
{
    std::sort(value.begin(), value.end());
    SparseVec clean;
    for (auto [i, c] : value) {
        if (i >= dim())
            throw Error("GradedAlgebra::set_product: index out of range");
        c %= p();
        if (!clean.empty() && clean.back().first == i)
            clean.back().second = field_.add(clean.back().second, c);
        else
            clean.emplace_back(i, c);
    }
    std::erase_if(clean, [](const auto& t) { return t.second == 0; });
    products_.at(a * dim() + b) = std::move(clean);
}

GradedAlgebra::Element GradedAlgebra::multiply(const Element& x, const Element& y) const
{
    const std::size_t n = dim();
    Element out(n, 0);
    for (std::size_t a = 0; a < n; ++a) {
        if (x[a] == 0)
            continue;
        for (std::size_t b = 0; b < n; ++b) {
            if (y[b] == 0)
                continue;
            const auto c = field_.mul(x[a], y[b]);
            for (const auto& [i, v] : products_[a * n + b])
                out[i] = field_.add(out[i], field_.mul(c, v));
        }
    }
    return out;
}

GradedAlgebra::Element GradedAlgebra::power(const Element& x, unsigned e) const
{
    Element result = one();
    Element base = x;
    while (e > 0) {
        if (e & 1u)
            result = multiply(result, base);
        e >>= 1;
        if (e > 0)
            base = multiply(base, base);
    }
    return result;
}

AlgebraRing::Element AlgebraRing::add(const Element& a, const Element& b) const
{
    return add_vectors(algebra->field(), a, b);
}

AlgebraRing::Element AlgebraRing::scale(const Element& a, const mpz_class& c) const
{
    return scale_vector(algebra->field(), a, mpz_mod_p(c, algebra->p()));
}

namespace {

using Monomial = std::vector<unsigned>;

std::string monomial_name(const std::vector<Generator>& gens, const Monomial& e)
{
    std::string out;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0)
            continue;
        if (!out.empty())
            out += '*';
        out += gens[i].name;
        if (e[i] > 1)
            out += '^' + std::to_string(e[i]);
    }
    return out.empty() ? "1" : out;
}

int monomial_degree(const std::vector<Generator>& gens, const Monomial& e)
{
    int d = 0;
    for (std::size_t i = 0; i < e.size(); ++i)
        d += static_cast<int>(e[i]) * gens[i].degree;
    return d;
}

// Sign of reordering (x^a)(x^b) into generator order.
long long reorder_exponent(const std::vector<Generator>& gens, const Monomial& a, const Monomial& b)
{
    long long s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            s += static_cast<long long>(a[i]) * b[j] * gens[i].degree * gens[j].degree;
    return s;
}

void validate_generators(const std::vector<Generator>& gens, std::uint32_t p)
{
    if (!is_prime(p))
        throw Error("p = " + std::to_string(p) + " is not prime");
    std::vector<std::string> names;
    for (const auto& g : gens) {
        if (g.name.empty() || g.name == "1")
            throw Error("invalid generator name '" + g.name + "'");
        if (g.degree < 0)
            throw Error("generator " + g.name + " has negative degree");
        names.push_back(g.name);
    }
    std::sort(names.begin(), names.end());
    if (std::adjacent_find(names.begin(), names.end()) != names.end())
        throw Error("duplicate generator names");
}

// Builds the algebra with basis the monomials x^e, e[i] < bound[i], deg <= D,
// accepted by `allowed`, and product x^a x^b = coef(a, b) * sign * x^{a+b}.
GradedAlgebra monomial_algebra(const std::vector<Generator>& gens, const std::vector<unsigned>& bound,
                               std::uint32_t p, int max_degree,
                               const std::function<bool(const Monomial&)>& allowed,
                               const std::function<std::uint32_t(const Monomial&, const Monomial&)>& coef,
                               const std::function<std::string(const Monomial&)>& name)
{
    std::vector<Monomial> monos;
    Monomial cur(gens.size(), 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int deg) {
        if (i == gens.size()) {
            if (allowed(cur))
                monos.push_back(cur);
            return;
        }
        for (unsigned k = 0; k < bound[i]; ++k) {
            const int d = deg + static_cast<int>(k) * gens[i].degree;
            if (d > max_degree)
                break;
            cur[i] = k;
            rec(i + 1, d);
        }
        cur[i] = 0;
    };
    rec(0, 0);
    std::stable_sort(monos.begin(), monos.end(), [&](const Monomial& a, const Monomial& b) {
        const int da = monomial_degree(gens, a), db = monomial_degree(gens, b);
        if (da != db)
            return da < db;
        return a > b;
    });
    std::map<Monomial, std::size_t> index;
    std::vector<BasisElement> basis;
    for (const auto& m : monos) {
        index[m] = basis.size();
        basis.push_back({name(m), monomial_degree(gens, m)});
    }
    GradedAlgebra alg(GradedModule(p, max_degree, std::move(basis)), index.at(Monomial(gens.size(), 0)));
    PrimeField f(p);
    for (std::size_t a = 0; a < monos.size(); ++a)
        for (std::size_t b = 0; b < monos.size(); ++b) {
            Monomial s(gens.size());
            for (std::size_t i = 0; i < s.size(); ++i)
                s[i] = monos[a][i] + monos[b][i];
            auto it = index.find(s);
            if (it == index.end())
                continue;
            auto c = f.mul(coef(monos[a], monos[b]), f.sign(reorder_exponent(gens, monos[a], monos[b])));
            if (c != 0)
                alg.set_product(a, b, {{static_cast<std::uint32_t>(it->second), c}});
        }
    return alg;
}

// Exponent bound per generator; odd generators are exterior when p is odd.
std::vector<unsigned> exponent_bounds(const std::vector<Generator>& gens, std::uint32_t p, int max_degree)
{
    std::vector<unsigned> bound;
    for (const auto& g : gens) {
        unsigned b = g.height;
        if (p > 2 && g.degree % 2 != 0)
            b = (b == 0) ? 2 : std::min(b, 2u);
        if (b == 0) {
            if (g.degree == 0)
                throw Error("degree-0 generator " + g.name + " must be nilpotent");
            b = static_cast<unsigned>(max_degree / g.degree) + 1;
        }
        bound.push_back(b);
    }
    return bound;
}

}  // namespace

GradedAlgebra truncated_polynomial(const std::vector<Generator>& gens, std::uint32_t p, int max_degree)
{
    validate_generators(gens, p);
    auto bound = exponent_bounds(gens, p, max_degree);
    return monomial_algebra(
        gens, bound, p, max_degree, [](const Monomial&) { return true; },
        [](const Monomial&, const Monomial&) { return 1u; },
        [&](const Monomial& m) { return monomial_name(gens, m); });
}

GradedAlgebra exterior(const std::vector<Generator>& gens, std::uint32_t p, int max_degree)
{
    auto g2 = gens;
    for (auto& g : g2)
        g.height = 2;
    return truncated_polynomial(g2, p, max_degree);
}

GradedAlgebra quotient_monomial_ideal(const std::vector<Generator>& gens,
                                      const std::vector<std::vector<unsigned>>& monomials, std::uint32_t p,
                                      int max_degree)
{
    validate_generators(gens, p);
    for (const auto& m : monomials) {
        if (m.size() != gens.size())
            throw Error("ideal monomial has the wrong number of exponents");
        if (std::all_of(m.begin(), m.end(), [](unsigned e) { return e == 0; }))
            throw Error("the unit monomial cannot lie in the ideal");
    }
    auto g2 = gens;
    for (std::size_t i = 0; i < g2.size(); ++i) {
        // a pure power x_i^k in the ideal caps the exponent
        for (const auto& m : monomials) {
            bool pure = true;
            for (std::size_t j = 0; j < m.size(); ++j)
                pure = pure && (j == i || m[j] == 0);
            if (pure && (g2[i].height == 0 || m[i] < g2[i].height))
                g2[i].height = m[i];
        }
    }
    auto bound = exponent_bounds(g2, p, max_degree);
    auto allowed = [&](const Monomial& e) {
        for (const auto& m : monomials) {
            bool divides = true;
            for (std::size_t j = 0; j < m.size(); ++j)
                divides = divides && m[j] <= e[j];
            if (divides)
                return false;
        }
        return true;
    };
    return monomial_algebra(
        gens, bound, p, max_degree, allowed, [](const Monomial&, const Monomial&) { return 1u; },
        [&](const Monomial& m) { return monomial_name(gens, m); });
}

GradedAlgebra dual_of(const std::vector<Generator>& gens, std::uint32_t p, int max_degree)
{
    validate_generators(gens, p);
    for (const auto& g : gens) {
        if (g.degree == 0)
            throw Error("dual_of: generator " + g.name + " has degree 0");
        if (g.height == 0 || (p > 2 && g.degree % 2 != 0))
            continue;
        unsigned h = g.height;
        while (h % p == 0)
            h /= p;
        if (h != 1)
            throw Error("dual_of: height of " + g.name + " is not a power of p");
    }
    auto bound = exponent_bounds(gens, p, max_degree);
    auto coef = [p](const Monomial& a, const Monomial& b) {
        Fp c(1, p);
        for (std::size_t i = 0; i < a.size(); ++i)
            c = c * binom_mod_p(a[i] + b[i], a[i], p);
        return c.value;
    };
    return monomial_algebra(
        gens, bound, p, max_degree, [](const Monomial&) { return true; }, coef, [&](const Monomial& m) {
            auto s = monomial_name(gens, m);
            return s == "1" ? s : "[" + s + "]";
        });
}

GradedAlgebra tensor_product(const GradedAlgebra& a, const GradedAlgebra& b)
{
    if (a.p() != b.p())
        throw Error("tensor_product: characteristic mismatch");
    const int D = std::min(a.max_degree(), b.max_degree());
    struct Pair {
        std::size_t i, j;
        int deg;
    };
    std::vector<Pair> pairs;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < b.dim(); ++j) {
            int d = a.module().degree(i) + b.module().degree(j);
            if (d <= D)
                pairs.push_back({i, j, d});
        }
    std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) { return x.deg < y.deg; });
    std::vector<BasisElement> basis;
    std::vector<std::size_t> index(a.dim() * b.dim(), SIZE_MAX);
    std::size_t unit = 0;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        const auto [i, j, d] = pairs[k];
        const bool ui = i == a.unit_index(), uj = j == b.unit_index();
        std::string nm = ui ? (uj ? "1" : b.module().name(j)) : (uj ? a.module().name(i) : a.module().name(i) + "*" + b.module().name(j));
        if (ui && uj)
            unit = k;
        basis.push_back({nm, d});
        index[i * b.dim() + j] = k;
    }
    GradedAlgebra t(GradedModule(a.p(), D, std::move(basis)), unit);
    const auto& f = a.field();
    for (std::size_t x = 0; x < pairs.size(); ++x)
        for (std::size_t y = 0; y < pairs.size(); ++y) {
            const auto& P = pairs[x];
            const auto& Q = pairs[y];
            if (P.deg + Q.deg > D)
                continue;
            auto s = f.sign(static_cast<long long>(b.module().degree(P.j)) * a.module().degree(Q.i));
            SparseVec out;
            for (const auto& [k1, c1] : a.product(P.i, Q.i))
                for (const auto& [k2, c2] : b.product(P.j, Q.j)) {
                    auto k = index[k1 * b.dim() + k2];
                    if (k != SIZE_MAX)
                        out.emplace_back(static_cast<std::uint32_t>(k), f.mul(s, f.mul(c1, c2)));
                }
            t.set_product(x, y, std::move(out));
        }
    return t;
}

AlgebraReport check_algebra(const GradedAlgebra& a)
{
    AlgebraReport r;
    const auto& m = a.module();
    const auto& f = a.field();
    const std::size_t n = a.dim();
    auto report = [&](std::string s) {
        if (r.violations.size() < 50)
            r.violations.push_back(std::move(s));
    };
    for (std::size_t i = 0; i < n; ++i) {
        if (a.product(a.unit_index(), i) != SparseVec{{static_cast<std::uint32_t>(i), 1}} ||
            a.product(i, a.unit_index()) != SparseVec{{static_cast<std::uint32_t>(i), 1}})
            report("unit: 1*" + m.name(i) + " != " + m.name(i));
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const int d = m.degree(i) + m.degree(j);
            for (const auto& [k, c] : a.product(i, j))
                if (m.degree(k) != d)
                    report("grading: " + m.name(i) + "*" + m.name(j) + " has a term in degree " +
                           std::to_string(m.degree(k)));
            auto rev = a.product(j, i);
            auto s = koszul(f, m.degree(i), m.degree(j));
            for (auto& t : rev)
                t.second = f.mul(t.second, s);
            if (rev != a.product(i, j))
                report("commutativity: " + m.name(i) + "*" + m.name(j));
        }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (m.degree(i) + m.degree(j) > a.max_degree())
                continue;
            const auto& ij = a.product(i, j);
            for (std::size_t k = 0; k < n; ++k) {
                if (m.degree(i) + m.degree(j) + m.degree(k) > a.max_degree())
                    continue;
                FpVector lhs(n, 0), rhs(n, 0);
                for (const auto& [l, c] : ij)
                    for (const auto& [t, v] : a.product(l, k))
                        lhs[t] = f.add(lhs[t], f.mul(c, v));
                for (const auto& [l, c] : a.product(j, k))
                    for (const auto& [t, v] : a.product(i, l))
                        rhs[t] = f.add(rhs[t], f.mul(c, v));
                if (lhs != rhs)
                    report("associativity: (" + m.name(i) + "*" + m.name(j) + ")*" + m.name(k));
            }
        }
    return r;
}

}  // namespace polarlab
