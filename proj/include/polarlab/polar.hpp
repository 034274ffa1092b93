#pragma once

#include "polarlab/graded.hpp"

#include <map>
#include <string>
#include <vector>

namespace polarlab {

// Graded module with graded-symmetric p-linear maps mu: A_j^{(x)p} -> A_{pj}.
// mu is stored on sorted p-multisets of basis indices; an unsorted tuple is
// evaluated with the Koszul sign of its sorting permutation.
class PolarAlgebra {
public:
    using MuTable = std::map<std::vector<std::uint32_t>, SparseVec>;

    PolarAlgebra() = default;
    explicit PolarAlgebra(GradedModule module);

    const GradedModule& module() const { return module_; }
    std::uint32_t p() const { return module_.p(); }
    const PrimeField& field() const { return field_; }
    int max_degree() const { return module_.max_degree(); }
    std::size_t dim() const { return module_.dim(); }
    const MuTable& mu_table() const { return mu_; }

    // Sets mu on the given tuple (any order); the stored value is adjusted
    // by the sorting sign. Throws on mixed degrees or an inhomogeneous value.
    void set_mu(std::vector<std::uint32_t> args, const SparseVec& value);

    // mu on basis indices, any order.
    SparseVec mu_basis(std::vector<std::uint32_t> args) const;
    // Multilinear extension; only equal-degree components interact.
    FpVector mu(const std::vector<FpVector>& args) const;
    // F(x) = mu(x, ..., x).
    FpVector power(const FpVector& x) const;

    bool operator==(const PolarAlgebra& o) const { return module_ == o.module_ && mu_ == o.mu_; }

private:
    GradedModule module_;
    PrimeField field_{2};
    MuTable mu_;
};

PolarAlgebra polarize(const GradedAlgebra& a);

// Restriction of A to the basis elements `keep`, truncated at max_degree
// (A's own truncation when negative). The kept span must be closed under mu
// below the truncation.
PolarAlgebra restrict_polar(const PolarAlgebra& a, const std::vector<std::size_t>& keep, int max_degree = -1);

struct PTypicalSplit {
    PolarAlgebra degree_zero;
    std::vector<std::size_t> degree_zero_indices;
    // block j (p does not divide j) -> A_(j) = sum_i A_{jp^i}
    std::map<int, PolarAlgebra> blocks;
    std::map<int, std::vector<std::size_t>> block_indices;
};

PTypicalSplit p_typical_split(const PolarAlgebra& a);
// The block index of a positive degree: d / p^{v_p(d)}.
int block_of(int degree, std::uint32_t p);
// Product of the factors with the original basis order.
PolarAlgebra reassemble(const PTypicalSplit& split, const GradedModule& original);

struct HullResult {
    GradedAlgebra algebra;
    // Image of each basis element of A under the unit map u: A -> hull(A).
    std::vector<FpVector> unit_map;
    // Multiplicity bound used for degree-0 letters.
    unsigned zero_bound = 0;
};

// Sym(A) modulo x_1...x_p - mu(x_1, ..., x_p), computed degreewise up to
// max_degree.
HullResult hull(const PolarAlgebra& a, int max_degree);

// Rank of u: A -> hull(A) in each degree of A.
std::map<int, std::size_t> unit_map_ranks(const PolarAlgebra& a, const HullResult& h);

struct PolarReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

// Degree 0: the swap x_p <-> y_2 in mu(mu(x_1..x_p), y_2..y_p).
// Positive degree j with p^2 j <= D: the swap x_p <-> x_{p+1} in
// mu(mu(x_1..x_p), mu(x_{p+1}..x_{2p}), y_3..y_p), twisted by -1 for odd j.
PolarReport check_assoc(const PolarAlgebra& a);

// u: A -> pol(hull(A)) is injective in all degrees <= D.
bool is_p_polar(const PolarAlgebra& a);

// Free p-polar algebra on M (positive degrees), truncated at max_degree.
PolarAlgebra free_polar(const GradedModule& m, int max_degree);

}  // namespace polarlab
