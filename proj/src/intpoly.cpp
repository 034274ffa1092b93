#include "polarlab/intpoly.hpp"

#include <sstream>
#include <unordered_map>

namespace polarlab {

namespace {
struct ExponentsHash {
    std::size_t operator()(const Exponents& e) const noexcept
    {
        std::size_t h = 1469598103934665603ull;
        for (auto x : e)
            h = (h ^ x) * 1099511628211ull;
        return h;
    }
};
}  // namespace

std::uint32_t mpz_mod_p(const mpz_class& c, std::uint32_t p)
{
    mpz_class r = c % p;
    if (r < 0)
        r += p;
    return static_cast<std::uint32_t>(r.get_ui());
}

FpRing::Element FpRing::scale(Element a, const mpz_class& c) const { return field.mul(a, mpz_mod_p(c, field.p())); }

IntPoly IntPoly::variable(const std::vector<std::string>& vars, std::size_t index)
{
    IntPoly f(vars);
    Exponents e(vars.size(), 0);
    e.at(index) = 1;
    f.terms_[e] = 1;
    return f;
}

IntPoly IntPoly::constant(const std::vector<std::string>& vars, const mpz_class& c)
{
    IntPoly f(vars);
    if (c != 0)
        f.terms_[Exponents(vars.size(), 0)] = c;
    return f;
}

void IntPoly::add_term(const Exponents& e, const mpz_class& c)
{
    if (e.size() != vars_.size())
        throw Error("IntPoly::add_term: exponent length mismatch");
    if (c == 0)
        return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

mpz_class IntPoly::coefficient(const Exponents& e) const
{
    auto it = terms_.find(e);
    return it == terms_.end() ? mpz_class(0) : it->second;
}

void IntPoly::check_compatible(const IntPoly& o) const
{
    if (vars_ != o.vars_)
        throw Error("IntPoly: variable lists differ");
}

IntPoly& IntPoly::operator+=(const IntPoly& o)
{
    check_compatible(o);
    for (const auto& [e, c] : o.terms_)
        add_term(e, c);
    return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& o)
{
    check_compatible(o);
    for (const auto& [e, c] : o.terms_)
        add_term(e, -c);
    return *this;
}

IntPoly IntPoly::operator+(const IntPoly& o) const
{
    IntPoly r = *this;
    r += o;
    return r;
}

IntPoly IntPoly::operator-(const IntPoly& o) const
{
    IntPoly r = *this;
    r -= o;
    return r;
}

IntPoly IntPoly::operator*(const IntPoly& o) const
{
    check_compatible(o);
    std::unordered_map<Exponents, mpz_class, ExponentsHash> acc;
    acc.reserve(terms_.size() * o.terms_.size() / 2 + 1);
    Exponents e(vars_.size());
    mpz_class prod;
    for (const auto& [ea, ca] : terms_)
        for (const auto& [eb, cb] : o.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i)
                e[i] = static_cast<std::uint16_t>(ea[i] + eb[i]);
            prod = ca * cb;
            acc[e] += prod;
        }
    IntPoly r(vars_);
    for (auto& [k, c] : acc)
        if (c != 0)
            r.terms_.emplace(k, std::move(c));
    return r;
}

IntPoly IntPoly::scaled(const mpz_class& c) const
{
    IntPoly r(vars_);
    if (c == 0)
        return r;
    for (const auto& [e, x] : terms_)
        r.terms_.emplace(e, x * c);
    return r;
}

IntPoly IntPoly::pow(unsigned e) const
{
    IntPoly result = constant(vars_, 1);
    IntPoly base = *this;
    while (e) {
        if (e & 1)
            result = result * base;
        e >>= 1;
        if (e)
            base = base * base;
    }
    return result;
}

std::optional<IntPoly> IntPoly::divide_exact(const mpz_class& d) const
{
    IntPoly r(vars_);
    for (const auto& [e, c] : terms_) {
        if (!mpz_divisible_p(c.get_mpz_t(), d.get_mpz_t()))
            return std::nullopt;
        mpz_class q;
        mpz_divexact(q.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
        r.terms_.emplace(e, std::move(q));
    }
    return r;
}

std::optional<long long> IntPoly::weighted_degree(const std::vector<long long>& w) const
{
    std::optional<long long> deg;
    for (const auto& [e, c] : terms_) {
        long long d = 0;
        for (std::size_t i = 0; i < e.size(); ++i)
            d += w.at(i) * e[i];
        if (deg && *deg != d)
            return std::nullopt;
        deg = d;
    }
    return deg ? deg : std::optional<long long>(0);
}

std::string IntPoly::to_string() const
{
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    // highest terms first, for readability
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        mpz_class a = abs(c);
        if (first)
            os << (c < 0 ? "-" : "");
        else
            os << (c < 0 ? " - " : " + ");
        first = false;
        bool constant = true;
        for (auto x : e)
            constant = constant && x == 0;
        bool need_star = false;
        if (a != 1 || constant) {
            os << a.get_str();
            need_star = true;
        }
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0)
                continue;
            if (need_star)
                os << "*";
            os << vars_[i];
            if (e[i] > 1)
                os << "^" << e[i];
            need_star = true;
        }
    }
    return os.str();
}

}  // namespace polarlab
