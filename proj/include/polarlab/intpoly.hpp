#pragma once

#include "polarlab/field.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace polarlab {

using Exponents = std::vector<std::uint16_t>;

// Multivariate polynomial with arbitrary-precision integer coefficients over
// a fixed, named list of variables. Zero coefficients are never stored.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

    static IntPoly variable(const std::vector<std::string>& vars, std::size_t index);
    static IntPoly constant(const std::vector<std::string>& vars, const mpz_class& c);

    const std::vector<std::string>& variables() const { return vars_; }
    const std::map<Exponents, mpz_class>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Exponents& e, const mpz_class& c);
    mpz_class coefficient(const Exponents& e) const;

    IntPoly operator+(const IntPoly& o) const;
    IntPoly operator-(const IntPoly& o) const;
    IntPoly operator*(const IntPoly& o) const;
    IntPoly& operator+=(const IntPoly& o);
    IntPoly& operator-=(const IntPoly& o);
    IntPoly scaled(const mpz_class& c) const;
    IntPoly pow(unsigned e) const;
    bool operator==(const IntPoly& o) const { return vars_ == o.vars_ && terms_ == o.terms_; }

    // Divides every coefficient by d; nullopt if some division is inexact.
    std::optional<IntPoly> divide_exact(const mpz_class& d) const;

    // Total degree where variable i carries weight w[i]; nullopt if not
    // weighted-homogeneous.
    std::optional<long long> weighted_degree(const std::vector<long long>& w) const;

    std::string to_string() const;

    // Evaluation into any ring exposing zero(), one(), add, mul and
    // scale(element, mpz_class). `values` is indexed like variables().
    template <class Ring>
    typename Ring::Element evaluate(const Ring& ring, const std::vector<typename Ring::Element>& values) const;

    // Same, with a name-keyed assignment; throws Error on an unassigned variable.
    template <class Ring>
    typename Ring::Element evaluate(const Ring& ring,
                                    const std::map<std::string, typename Ring::Element>& assignment) const;

private:
    void check_compatible(const IntPoly& o) const;

    std::vector<std::string> vars_;
    std::map<Exponents, mpz_class> terms_;
};

template <class Ring>
typename Ring::Element IntPoly::evaluate(const Ring& ring, const std::vector<typename Ring::Element>& values) const
{
    using Element = typename Ring::Element;
    if (values.size() != vars_.size())
        throw Error("IntPoly::evaluate: wrong number of values");
    // powers[i][k] = values[i]^k, grown lazily
    std::vector<std::vector<Element>> powers(vars_.size());
    std::vector<bool> vanishes(vars_.size());
    const Element zero = ring.zero();
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        powers[i].push_back(ring.one());
        vanishes[i] = values[i] == zero;
    }
    Element result = ring.zero();
    for (const auto& [exps, coef] : terms_) {
        bool skip = false;
        for (std::size_t i = 0; i < exps.size() && !skip; ++i)
            skip = exps[i] != 0 && vanishes[i];
        if (skip)
            continue;
        Element term = ring.one();
        for (std::size_t i = 0; i < exps.size(); ++i) {
            if (exps[i] == 0)
                continue;
            auto& pw = powers[i];
            while (pw.size() <= exps[i])
                pw.push_back(ring.mul(pw.back(), values[i]));
            term = ring.mul(term, pw[exps[i]]);
        }
        result = ring.add(result, ring.scale(term, coef));
    }
    return result;
}

template <class Ring>
typename Ring::Element IntPoly::evaluate(const Ring& ring,
                                         const std::map<std::string, typename Ring::Element>& assignment) const
{
    std::vector<typename Ring::Element> values;
    values.reserve(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        auto it = assignment.find(vars_[i]);
        if (it == assignment.end()) {
            bool used = false;
            for (const auto& [e, c] : terms_)
                used = used || e[i] != 0;
            if (used)
                throw Error("IntPoly::evaluate: unassigned variable " + vars_[i]);
            values.push_back(ring.zero());
        } else {
            values.push_back(it->second);
        }
    }
    return evaluate(ring, values);
}

// F_p as an evaluation target.
struct FpRing {
    using Element = std::uint32_t;
    PrimeField field;
    Element zero() const { return 0; }
    Element one() const { return 1 % field.p(); }
    Element add(Element a, Element b) const { return field.add(a, b); }
    Element mul(Element a, Element b) const { return field.mul(a, b); }
    Element scale(Element a, const mpz_class& c) const;
};

// Z[vars] as an evaluation target (composition of polynomials).
struct IntPolyRing {
    using Element = IntPoly;
    std::vector<std::string> vars;
    Element zero() const { return IntPoly(vars); }
    Element one() const { return IntPoly::constant(vars, 1); }
    Element add(const Element& a, const Element& b) const { return a + b; }
    Element mul(const Element& a, const Element& b) const { return a * b; }
    Element scale(const Element& a, const mpz_class& c) const { return a.scaled(c); }
};

std::uint32_t mpz_mod_p(const mpz_class& c, std::uint32_t p);

}  // namespace polarlab
