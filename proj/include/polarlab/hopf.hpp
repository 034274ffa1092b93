#pragma once

#include "polarlab/dieudonne.hpp"
#include "polarlab/graded.hpp"
#include "polarlab/polar.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace polarlab {

// Element of H (x) H: (left, right) -> coefficient, no zeros.
using Tensor = std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t>;

// Connected (H_0 = k), degreewise finite graded Hopf algebra truncated at
// max_degree. The counit is projection onto the degree-0 unit.
class HopfAlgebra {
public:
    HopfAlgebra() = default;
    HopfAlgebra(GradedAlgebra algebra, std::vector<Tensor> coproduct, bool has_product = true);

    const GradedAlgebra& algebra() const { return algebra_; }
    const GradedModule& module() const { return algebra_.module(); }
    std::uint32_t p() const { return algebra_.p(); }
    int max_degree() const { return algebra_.max_degree(); }
    std::size_t dim() const { return algebra_.dim(); }
    std::size_t unit_index() const { return algebra_.unit_index(); }
    bool has_product() const { return has_product_; }

    const Tensor& coproduct(std::size_t i) const { return coproduct_.at(i); }
    const std::vector<Tensor>& coproducts() const { return coproduct_; }
    Tensor coproduct(const FpVector& x) const;
    // Delta(x) - x(x)1 - 1(x)x
    Tensor reduced_coproduct(const FpVector& x) const;

private:
    GradedAlgebra algebra_;
    std::vector<Tensor> coproduct_;
    bool has_product_ = true;
};

Tensor tensor_multiply(const GradedAlgebra& a, const Tensor& x, const Tensor& y);

struct HopfReport {
    bool counit = true;
    bool coassociative = true;
    bool cocommutative = true;
    bool commutative = true;
    bool bialgebra = true;
    bool conilpotent = true;
    std::vector<std::string> violations;
    bool ok() const { return counit && coassociative && bialgebra && conilpotent; }
};

HopfReport check_hopf(const HopfAlgebra& h);

// Multisets of V-basis elements of degree <= max_degree with
// deconcatenation coproduct; the product is left trivial.
HopfAlgebra symmetric_tensor_coalgebra(const GradedModule& v, int max_degree);

// Symmetric tensor coalgebra on the augmentation ideal of a connected
// algebra, with the quasi-shuffle product.
HopfAlgebra cof_u(const GradedAlgebra& a, int max_degree);

// Basis of the primitives of each positive degree, as vectors in H.
std::map<int, std::vector<FpVector>> primitive_basis(const HopfAlgebra& h);
GradedModule primitives(const HopfAlgebra& h);

// dim H_d / (H_+ H_+)_d for d > 0.
std::map<int, std::size_t> indecomposable_dimensions(const HopfAlgebra& h);

HopfAlgebra exterior_hopf(const GradedModule& m);

// Polynomial algebra on theta_{j,0..n} truncated at max_degree, with the
// Witt addition coproduct.
HopfAlgebra lambda_p(int j, std::uint32_t p, unsigned n, int max_degree);
// Largest n with j p^n <= max_degree.
unsigned lambda_top_index(int j, std::uint32_t p, int max_degree);

// Degreewise dual; products and coproducts swap roles.
HopfAlgebra dual_hopf(const HopfAlgebra& h);

// Free graded-commutative algebra on gens (heights honoured) truncated at
// max_degree; exponents[i] is the exponent vector of basis element i.
GradedAlgebra monomial_algebra(const std::vector<Generator>& gens, std::uint32_t p, int max_degree,
                               std::vector<std::vector<unsigned>>& exponents);

// Counts of multisets (odd multiplicity <= 1 for p > 2) by degree.
std::vector<std::size_t> symmetric_dimensions(const std::vector<int>& degrees, std::uint32_t p, int max_degree);

struct CofreeReport {
    std::string criterion = "cofree (primitive dimension criterion)";
    bool conilpotent = true;
    bool bicommutative = true;
    // informational: when false, P(H) carries mu(e, ..., e) = e^p only
    bool polar_closed = true;
    bool dimensions_match = true;
    bool indecomposables_match = true;
    std::map<int, std::size_t> primitive_dims;
    std::map<int, std::size_t> hopf_dims;
    std::map<int, std::size_t> symmetric_dims;
    std::map<int, std::size_t> indecomposable_dims;
    std::map<int, std::size_t> expected_indecomposable_dims;
    std::vector<std::string> messages;
    bool passed() const
    {
        return conilpotent && bicommutative && dimensions_match && indecomposables_match;
    }
};

// P(H) with mu(x_1, ..., x_p) = x_1 ... x_p; nullopt if not closed.
std::optional<PolarAlgebra> primitive_polar(const HopfAlgebra& h);

// Indecomposable dimensions of the cofree Hopf algebra whose Dieudonne
// module is m: length of M_d / F(M_{d/p}).
std::map<int, std::size_t> expected_indecomposables(const DieudonneModule& m);

CofreeReport verify_cofree(const HopfAlgebra& h, int max_degree);

struct CounterexamplePair {
    HopfAlgebra h;
    HopfAlgebra h_prime;
    // the predual algebras k[x, y] with psi, and with both primitive
    HopfAlgebra h_dual;
    HopfAlgebra h_prime_dual;
};

CounterexamplePair counterexample_pair(std::uint32_t p, int j, int max_degree);

}  // namespace polarlab
