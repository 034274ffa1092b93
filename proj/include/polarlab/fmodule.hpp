#pragma once

#include "polarlab/graded.hpp"
#include "polarlab/matrix.hpp"
#include "polarlab/polar.hpp"

#include <map>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <vector>

namespace polarlab {

// Positively graded module with F: M_q -> M_{pq} (matrix dim(M_pq) x dim(M_q)).
// A missing entry is the zero map. For odd p, F vanishes on odd degrees.
struct FModule {
    GradedModule module;
    std::map<int, FpMatrix> F;

    std::uint32_t p() const { return module.p(); }
    FpMatrix f_matrix(int q) const;
};

// Dual notion: V: M_{pq} -> M_q (matrix dim(M_q) x dim(M_pq)).
struct VModule {
    GradedModule module;
    std::map<int, FpMatrix> V;

    std::uint32_t p() const { return module.p(); }
    FpMatrix v_matrix(int q) const;
};

void validate(const FModule& m);

struct Bar {
    int start = 0;
    unsigned length = 0;
    // The interval reaches the truncation degree: finite length versus an
    // infinite bar cannot be decided below D.
    bool ambiguous = false;
    auto operator<=>(const Bar&) const = default;
};

struct Barcode {
    std::uint32_t p = 2;
    int max_degree = 0;
    std::vector<Bar> bars;  // sorted
    bool operator==(const Barcode&) const = default;
    std::size_t dimension() const;
};

// Ranks of F^{b-a}: M_{r p^a} -> M_{r p^b}, keyed by (r, a, b).
using RankProfile = std::map<std::tuple<int, unsigned, unsigned>, std::size_t>;

RankProfile rank_profile(const FModule& m);
Barcode decompose(const FModule& m);
Barcode decompose(const VModule& m);

// Direct sum of the interval modules N(start, length) truncated at max_degree.
FModule reconstruct(const Barcode& b);

VModule dualize(const FModule& m);
FModule dualize(const VModule& m);

// F(x) = mu(x, ..., x) on the positive-degree part of A.
FModule u_f(const PolarAlgebra& a);

struct LiftResult {
    PolarAlgebra algebra;
    std::vector<std::string> warnings;
};

// Product of the p-polar structures on the interval summands; not functorial.
LiftResult lift_to_polar(const FModule& m);

// Degreewise F-equivariant isomorphism M -> N found by sampling the solution
// space of the intertwining equations; nullopt if none was found.
std::optional<std::map<int, FpMatrix>> isomorphism_witness(const FModule& m, const FModule& n, std::mt19937_64& rng,
                                                          unsigned attempts = 200);

bool is_f_isomorphism(const FModule& m, const FModule& n, const std::map<int, FpMatrix>& phi);

// Random F-module with at most max_dim basis elements in degrees 1..max_degree.
FModule random_fmodule(std::uint32_t p, int max_degree, std::size_t max_dim, std::mt19937_64& rng);
// Conjugate by random invertible degreewise changes of basis.
FModule conjugate(const FModule& m, std::mt19937_64& rng);

}  // namespace polarlab
