#pragma once

#include "polarlab/graded.hpp"
#include "polarlab/intpoly.hpp"
#include "polarlab/polar.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace polarlab {

// Universal integral polynomials of W_n (components 0..n).
struct WittPolynomialSet {
    std::uint32_t p = 2;
    unsigned n = 0;
    // S_m in variables a0..an, b0..bn
    std::vector<IntPoly> sum;
};

// Ghost components w_m = sum_{i<=m} p^i x_i^{p^{m-i}}, m = 0..n.
std::vector<IntPoly> ghost(const std::vector<IntPoly>& x, std::uint32_t p);

// Solves w(X) = targets for X over Z; throws if a division is inexact.
std::vector<IntPoly> solve_from_ghost(const std::vector<IntPoly>& targets, std::uint32_t p);

// Re-expresses f over a larger variable list (matched by name).
IntPoly embed(const IntPoly& f, const std::vector<std::string>& vars);

std::vector<std::string> witt_variables(const std::string& prefix, unsigned n);

// Cached; n <= limit.
const WittPolynomialSet& witt_sum_polys(std::uint32_t p, unsigned n, unsigned limit = 4);
// Negation polynomials in a0..an.
const std::vector<IntPoly>& witt_neg_polys(std::uint32_t p, unsigned n, unsigned limit = 4);
// Frobenius polynomials F_0..F_n in a0..a(n+1): w_m(F(a)) = w_{m+1}(a).
const std::vector<IntPoly>& witt_frobenius_polys(std::uint32_t p, unsigned n, unsigned limit = 4);

// Where Witt vectors live: either a graded algebra (full product available)
// or a p-polar algebra, whose polynomial evaluations go through the hull of
// the relevant p-typical block and are pulled back along u.
class WittCarrier {
public:
    static WittCarrier from_algebra(GradedAlgebra a);
    static WittCarrier from_polar(PolarAlgebra a);

    const GradedModule& module() const;
    std::uint32_t p() const { return module().p(); }
    bool is_polar() const { return polar_ != nullptr; }

    // f(values) for a Witt vector of degree j whose entries reach index
    // top; the result lies in degree target_degree.
    FpVector evaluate(const IntPoly& f, const std::vector<FpVector>& values, int j, unsigned top,
                      int target_degree) const;

private:
    struct HullCache;
    struct Evaluator;
    const Evaluator& evaluator(int j, unsigned top) const;

    std::shared_ptr<const GradedAlgebra> algebra_;
    std::shared_ptr<const PolarAlgebra> polar_;
    std::shared_ptr<HullCache> cache_;
};

struct WittVector {
    int degree = 0;
    // entries[i] is a full-length coordinate vector concentrated in degree
    // degree * p^i (zero when that exceeds the truncation degree)
    std::vector<FpVector> entries;

    unsigned length() const { return static_cast<unsigned>(entries.size()) - 1; }
    bool operator==(const WittVector&) const = default;
};

// Validates degrees and sizes; throws Error on mismatch.
void check_witt_vector(const WittCarrier& c, const WittVector& v);

WittVector witt_zero(const WittCarrier& c, int degree, unsigned n);
WittVector witt_add(const WittCarrier& c, const WittVector& u, const WittVector& v);
WittVector witt_neg(const WittCarrier& c, const WittVector& u);
WittVector witt_sub(const WittCarrier& c, const WittVector& u, const WittVector& v);
WittVector witt_multiple(const WittCarrier& c, const WittVector& u, long long k);
WittVector teichmuller(const WittCarrier& c, const FpVector& a, int degree, unsigned n);
// W_{n+1}, degree j -> W_n, degree pj.
WittVector frobenius(const WittCarrier& c, const WittVector& v);
// W_n, degree pj -> W_{n+1}, degree j.
WittVector verschiebung(const WittCarrier& c, const WittVector& v);
// Drops the last component.
WittVector truncate(const WittVector& v, unsigned n);

}  // namespace polarlab
