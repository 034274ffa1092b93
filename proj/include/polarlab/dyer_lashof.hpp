#pragma once

#include "polarlab/graded.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace polarlab {

// beta^eps Q^r
struct DLOp {
    int eps = 0;
    long long r = 0;
    auto operator<=>(const DLOp&) const = default;
};

// Outermost operation first.
using DLWord = std::vector<DLOp>;

enum class SignConvention { CohenLadaMay, Unsigned };
enum class RewriteStrategy { Leftmost, Rightmost };

struct DLContext {
    std::uint32_t p = 3;
    int q = 0;               // generator degree
    std::optional<int> n;    // loop parameter; nullopt means infinity
    SignConvention sign = SignConvention::CohenLadaMay;
};

using DLExpression = std::map<DLWord, std::uint32_t>;

struct DLDegree {
    long long degree = 0;
    bool in_range = true;
    // Some operation sits below the instability line, so the class is zero.
    bool vanishes = false;
    // Some operation sits on the line (2r equal to the degree): a p-th power.
    bool has_power = false;
};

// Degree of the word applied to a class of degree q, and whether every
// operation satisfies 2r <= (current degree) + n.
DLDegree dl_degree(const DLWord& w, std::uint32_t p, long long q, std::optional<int> n);

// Binomial coefficient used in the Adem relations: binom(n, k) mod p by
// Lucas, zero when k < 0, n < 0 or k > n.
std::uint32_t adem_binomial(long long n, long long k, std::uint32_t p);

// No relation applies to the adjacent pair (outer, inner).
bool admissible_pair(const DLOp& outer, const DLOp& inner, std::uint32_t p);
bool is_admissible(const DLWord& w, std::uint32_t p);

// Expansion of the inadmissible pair (outer, inner); beta^eps of the outer
// operation is carried through.
DLExpression adem_relation(const DLOp& outer, const DLOp& inner, std::uint32_t p, SignConvention sign);

DLExpression adem_rewrite(const DLExpression& e, const DLContext& ctx,
                          RewriteStrategy strategy = RewriteStrategy::Leftmost);

DLWord parse_dl_word(const std::string& text);
std::string format_dl_word(const DLWord& w);
std::string format_dl_expression(const DLExpression& e);

// A term bound to an element of A: starting from basis element `base`,
// apply `layers` from the inside out; a layer is either an operation or
// the p-th power (eps = -1).
struct BoundTerm {
    std::uint32_t base = 0;
    std::vector<DLOp> layers;
    auto operator<=>(const BoundTerm&) const = default;
};
using BoundExpression = std::map<BoundTerm, std::uint32_t>;

inline constexpr DLOp power_layer{-1, 0};

BoundExpression bind_expression(const DLExpression& e, const GradedAlgebra& a, const FpVector& x);

// Zeroes operations below the instability line, turns threshold operations
// into p-th powers (evaluated in A while the class is still an element of
// A), and repeats up the word.
BoundExpression apply_instability(const BoundExpression& e, const GradedAlgebra& a, const DLContext& ctx);

// Adem rewriting of each maximal run of operations.
BoundExpression adem_rewrite(const BoundExpression& e, const GradedAlgebra& a, const DLContext& ctx,
                             RewriteStrategy strategy = RewriteStrategy::Leftmost);

// Alternates instability and rewriting until nothing changes.
BoundExpression bound_normal_form(const BoundExpression& e, const GradedAlgebra& a, const DLContext& ctx);

std::string format_bound(const BoundTerm& t, const GradedAlgebra& a);

// beta^eps Q^r (x y) in the stable range, as a combination of products
// (word on x) * (word on y). Unit factors (degree 0, unit = true) absorb
// only the empty word.
struct CartanFactor {
    int degree = 0;
    bool unit = false;
};
using CartanExpansion = std::map<std::pair<DLWord, DLWord>, std::uint32_t>;
CartanExpansion cartan_expand(const CartanFactor& x, const CartanFactor& y, const DLOp& op, const DLContext& ctx);

struct AdmissibleBasis {
    std::vector<DLWord> words;
    std::map<long long, std::size_t> poincare;
};

// Admissible words with 2r > (current degree) at every step and within the
// range 2r <= (current degree) + n, of degree <= max_degree; the empty
// word is included when q <= max_degree.
AdmissibleBasis admissible_basis(int q, std::optional<int> n, std::uint32_t p, long long max_degree);

}  // namespace polarlab
