#include "polarlab/cowitt.hpp"

#include <numeric>

namespace polarlab {

namespace {

WittVector extend(const WittCarrier& c, const WittVector& w)
{
    WittVector r = w;
    r.entries.push_back(c.module().zero());
    return r;
}

}  // namespace

std::optional<unsigned> degree_zero_nilpotency(const WittCarrier& carrier)
{
    const auto& m = carrier.module();
    const auto& zero = m.in_degree(0);
    if (zero.empty())
        return 0u;
    const auto p = carrier.p();
    IntPoly power(std::vector<std::string>{"a0"});
    Exponents e{static_cast<std::uint16_t>(p)};
    power.add_term(e, 1);
    // F is additive on the degree-0 part; iterate it on a basis
    std::vector<FpVector> current;
    for (auto i : zero)
        current.push_back(m.unit_vector(i));
    for (unsigned k = 1; k <= zero.size() + 1; ++k) {
        bool all_zero = true;
        for (auto& v : current) {
            v = carrier.evaluate(power, {v}, 0, 1, 0);
            for (auto x : v)
                all_zero = all_zero && x == 0;
        }
        if (all_zero)
            return k;
    }
    return std::nullopt;
}

std::pair<int, unsigned> CoWitt::shape(int degree) const
{
    if (degree == 0)
        return {0, n_max_};
    const auto p = carrier_.p();
    // odd degrees carry no Witt extension when p > 2
    if (p > 2 && degree % 2 != 0)
        return {degree, 0};
    const int a = block_of(degree, p);
    unsigned l = 0;
    for (int d = degree; d != a; d /= static_cast<int>(p))
        ++l;
    return {a, l};
}

CoWitt::CoWitt(WittCarrier carrier, std::optional<unsigned> n_max) : carrier_(std::move(carrier))
{
    const auto& m = carrier_.module();
    const auto p = carrier_.p();
    if (!m.in_degree(0).empty()) {
        if (n_max) {
            n_max_ = *n_max;
        } else {
            auto k = degree_zero_nilpotency(carrier_);
            if (!k)
                throw Error("the degree-0 part is not nilpotent under x -> x^p; an explicit n_max is required");
            n_max_ = *k;
        }
    } else if (n_max) {
        n_max_ = *n_max;
    }
    for (int d = 0; d <= m.max_degree(); ++d) {
        if (d == 0 && m.in_degree(0).empty())
            continue;
        const auto [a, l] = shape(d);
        CoWittPiece piece{d, a, l, {}, {}};
        for (unsigned i = 0; i <= l; ++i) {
            const long long deg = static_cast<long long>(a) * ipow(p, i);
            for (auto b : m.in_degree(static_cast<int>(deg))) {
                WittVector h = witt_zero(carrier_, a, l);
                h.entries[i] = m.unit_vector(b);
                piece.digits.push_back(std::move(h));
            }
        }
        if (piece.digits.empty())
            continue;
        pieces_.emplace(d, std::move(piece));
        auto& pc = pieces_.at(d);
        IntMatrix relations;
        for (std::size_t g = 0; g < pc.digits.size(); ++g) {
            auto x = digits_of(d, witt_multiple(carrier_, pc.digits[g], p));
            std::vector<long long> row(pc.digits.size());
            for (std::size_t k = 0; k < row.size(); ++k)
                row[k] = (k == g ? static_cast<long long>(p) : 0) - x[k];
            relations.push_back(std::move(row));
        }
        pc.group = smith_p_group(relations, pc.digits.size(), p, l + 2);
    }
}

const CoWittPiece& CoWitt::piece(int degree) const
{
    auto it = pieces_.find(degree);
    if (it == pieces_.end())
        throw Error("CW^u is zero in degree " + std::to_string(degree));
    return it->second;
}

std::vector<long long> CoWitt::digits_of(int degree, const WittVector& w) const
{
    const auto& pc = piece(degree);
    if (w.degree != pc.witt_degree || w.length() != pc.witt_length)
        throw Error("co-Witt vector has the wrong shape for degree " + std::to_string(degree));
    std::vector<long long> x(pc.digits.size(), 0);
    WittVector r = w;
    for (unsigned i = 0; i <= pc.witt_length; ++i) {
        WittVector t = witt_zero(carrier_, pc.witt_degree, pc.witt_length);
        bool any = false;
        for (std::size_t g = 0; g < pc.digits.size(); ++g) {
            const auto& h = pc.digits[g];
            if (h.entries[i] == carrier_.module().zero())
                continue;
            std::size_t b = 0;
            while (h.entries[i][b] == 0)
                ++b;
            const auto c = r.entries[i][b];
            if (c == 0)
                continue;
            x[g] = c;
            t = witt_add(carrier_, t, witt_multiple(carrier_, h, c));
            any = true;
        }
        if (any)
            r = witt_sub(carrier_, r, t);
        if (r.entries[i] != carrier_.module().zero())
            throw Error("digit expansion failed in degree " + std::to_string(degree));
    }
    return x;
}

std::vector<long long> CoWitt::coordinates(int degree, const WittVector& w) const
{
    return piece(degree).group.coordinates(digits_of(degree, w));
}

WittVector CoWitt::combination(int degree, const std::vector<long long>& x) const
{
    const auto& pc = piece(degree);
    if (x.size() != pc.digits.size())
        throw Error("combination: wrong number of digits");
    const long long q = ipow(carrier_.p(), pc.witt_length + 1);
    WittVector acc = witt_zero(carrier_, pc.witt_degree, pc.witt_length);
    for (std::size_t g = 0; g < x.size(); ++g) {
        const auto c = mod_floor(x[g], q);
        if (c != 0)
            acc = witt_add(carrier_, acc, witt_multiple(carrier_, pc.digits[g], c));
    }
    return acc;
}

WittVector CoWitt::generator(int degree, std::size_t k) const
{
    return combination(degree, piece(degree).group.generators.at(k));
}

WittVector CoWitt::apply_f(int degree, const WittVector& w) const
{
    if (degree == 0)
        return frobenius(carrier_, extend(carrier_, w));
    if (carrier_.p() > 2 && degree % 2 != 0)
        return witt_zero(carrier_, degree * static_cast<int>(carrier_.p()), 0);
    return verschiebung(carrier_, frobenius(carrier_, extend(carrier_, w)));
}

WittVector CoWitt::apply_v(int degree, const WittVector& w) const
{
    if (degree == 0)
        return truncate(verschiebung(carrier_, w), w.length());
    if (degree % static_cast<int>(carrier_.p()) != 0)
        throw Error("V is defined on degrees divisible by p");
    if (carrier_.p() > 2 && degree % 2 != 0)
        return witt_zero(carrier_, degree / static_cast<int>(carrier_.p()), 0);
    if (w.length() == 0)
        throw Error("V: co-Witt vector of length 0 in a degree divisible by p");
    return truncate(w, w.length() - 1);
}

CoWitt cowitt_u(const WittCarrier& carrier, std::optional<unsigned> n_max)
{
    return CoWitt(carrier, n_max);
}

DieudonneModule cowitt_dieudonne(const WittCarrier& carrier, std::optional<unsigned> n_max)
{
    const CoWitt cw(carrier, n_max);
    const auto p = static_cast<int>(carrier.p());
    DieudonneModule m;
    m.p = carrier.p();
    m.max_degree = carrier.module().max_degree();
    for (const auto& [d, pc] : cw.pieces())
        if (!pc.group.exponents.empty())
            m.exponents[d] = pc.group.exponents;
    auto column_map = [&](int src, int tgt, bool is_f) {
        const auto& ps = cw.piece(src);
        const auto& pt = cw.piece(tgt);
        IntMatrix t(pt.group.exponents.size(), std::vector<long long>(ps.group.exponents.size(), 0));
        for (std::size_t k = 0; k < ps.group.exponents.size(); ++k) {
            const auto g = cw.generator(src, k);
            const auto img = is_f ? cw.apply_f(src, g) : cw.apply_v(src, g);
            const auto y = cw.coordinates(tgt, img);
            for (std::size_t r = 0; r < y.size(); ++r)
                t[r][k] = y[r];
        }
        return t;
    };
    for (const auto& [d, pc] : cw.pieces()) {
        if (pc.group.exponents.empty())
            continue;
        const long long pd = static_cast<long long>(d) * p;
        if (pd <= m.max_degree && m.exponents.count(static_cast<int>(pd)))
            m.F[d] = column_map(d, static_cast<int>(pd), true);
        if (d % p == 0 && m.exponents.count(d / p))
            m.V[d / p] = column_map(d, d / p, false);
    }
    m.normalize();
    return m;
}

}  // namespace polarlab
