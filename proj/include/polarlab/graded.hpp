#pragma once

#include "polarlab/field.hpp"
#include "polarlab/matrix.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace polarlab {

struct BasisElement {
    std::string name;
    int degree = 0;
    bool operator==(const BasisElement&) const = default;
};

// Sparse F_p-linear combination of basis indices, sorted by index, no zeros.
using SparseVec = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

// Finite-type, nonnegatively graded F_p-module truncated at max_degree.
class GradedModule {
public:
    GradedModule() = default;
    GradedModule(std::uint32_t p, int max_degree, std::vector<BasisElement> basis);

    std::uint32_t p() const { return p_; }
    int max_degree() const { return max_degree_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<BasisElement>& basis() const { return basis_; }
    const BasisElement& element(std::size_t i) const { return basis_.at(i); }
    int degree(std::size_t i) const { return basis_[i].degree; }
    bool is_odd(std::size_t i) const { return basis_[i].degree % 2 != 0; }
    const std::string& name(std::size_t i) const { return basis_[i].name; }

    std::size_t index_of(const std::string& name) const;
    bool contains(const std::string& name) const { return index_.count(name) != 0; }
    const std::vector<std::size_t>& in_degree(int d) const;
    std::size_t dim_in_degree(int d) const { return in_degree(d).size(); }
    // Degrees that carry at least one basis element, ascending.
    std::vector<int> degrees() const;

    FpVector zero() const { return FpVector(dim(), 0); }
    FpVector unit_vector(std::size_t i) const;

    bool operator==(const GradedModule& o) const
    {
        return p_ == o.p_ && max_degree_ == o.max_degree_ && basis_ == o.basis_;
    }

private:
    std::uint32_t p_ = 2;
    int max_degree_ = 0;
    std::vector<BasisElement> basis_;
    std::unordered_map<std::string, std::size_t> index_;
    std::map<int, std::vector<std::size_t>> by_degree_;
};

// M(i) for i >= 0 (M(i)_n = M_{p^i n}) and M(-1) (M(-1)_n = M_{n/p} when p | n).
GradedModule shift(const GradedModule& m, int i);

// Koszul sign (-1)^{ab} as a residue.
inline std::uint32_t koszul(const PrimeField& f, long long a, long long b) { return f.sign(a * b); }

// Graded-commutative F_p-algebra given by structure constants on a
// homogeneous basis; products landing above max_degree are zero.
class GradedAlgebra {
public:
    using Element = FpVector;

    GradedAlgebra() = default;
    GradedAlgebra(GradedModule module, std::size_t unit);

    const GradedModule& module() const { return module_; }
    std::uint32_t p() const { return module_.p(); }
    const PrimeField& field() const { return field_; }
    int max_degree() const { return module_.max_degree(); }
    std::size_t dim() const { return module_.dim(); }
    std::size_t unit_index() const { return unit_; }

    void set_product(std::size_t a, std::size_t b, SparseVec value);
    const SparseVec& product(std::size_t a, std::size_t b) const { return products_[a * dim() + b]; }

    Element multiply(const Element& x, const Element& y) const;
    Element power(const Element& x, unsigned e) const;
    Element one() const { return module_.unit_vector(unit_); }
    Element basis_vector(std::size_t i) const { return module_.unit_vector(i); }

    bool operator==(const GradedAlgebra& o) const
    {
        return module_ == o.module_ && unit_ == o.unit_ && products_ == o.products_;
    }

private:
    GradedModule module_;
    PrimeField field_{2};
    std::size_t unit_ = 0;
    std::vector<SparseVec> products_;
};

// Ring adaptor for polynomial evaluation inside a GradedAlgebra.
struct AlgebraRing {
    using Element = FpVector;
    const GradedAlgebra* algebra;
    Element zero() const { return algebra->module().zero(); }
    Element one() const { return algebra->one(); }
    Element add(const Element& a, const Element& b) const;
    Element mul(const Element& a, const Element& b) const { return algebra->multiply(a, b); }
    Element scale(const Element& a, const mpz_class& c) const;
};

FpVector to_dense(const SparseVec& v, std::size_t dim);
SparseVec to_sparse(const FpVector& v);
FpVector add_vectors(const PrimeField& f, const FpVector& a, const FpVector& b);
FpVector scale_vector(const PrimeField& f, const FpVector& a, std::uint32_t c);

struct Generator {
    std::string name;
    int degree = 0;
    // Nilpotency height: x^height = 0. Zero means no relation beyond the
    // degree truncation.
    unsigned height = 0;
};

GradedAlgebra truncated_polynomial(const std::vector<Generator>& gens, std::uint32_t p, int max_degree);
GradedAlgebra exterior(const std::vector<Generator>& gens, std::uint32_t p, int max_degree);
GradedAlgebra tensor_product(const GradedAlgebra& a, const GradedAlgebra& b);
// Polynomial algebra on gens modulo the monomial ideal generated by the
// given exponent vectors.
GradedAlgebra quotient_monomial_ideal(const std::vector<Generator>& gens,
                                      const std::vector<std::vector<unsigned>>& monomials, std::uint32_t p,
                                      int max_degree);
// Degreewise dual of the Hopf algebra truncated_polynomial(gens) with
// primitive generators (a divided power algebra). Heights must be zero or
// powers of p.
GradedAlgebra dual_of(const std::vector<Generator>& gens, std::uint32_t p, int max_degree);

struct AlgebraReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

AlgebraReport check_algebra(const GradedAlgebra& a);

}  // namespace polarlab
