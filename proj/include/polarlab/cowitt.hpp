#pragma once

#include "polarlab/abelian.hpp"
#include "polarlab/dieudonne.hpp"
#include "polarlab/witt.hpp"

#include <map>
#include <optional>
#include <vector>

namespace polarlab {

// CW^u(A)_j for j = a p^l (p not dividing a) is W_l(A) in degree a, i.e.
// tuples (a_{-l}, ..., a_0) with a_{-i} in A_{j/p^i}. CW^u(A)_0 is the
// colimit of W_n(A_0) under V, represented by the stage n_max.
struct CoWittPiece {
    int degree = 0;
    int witt_degree = 0;
    unsigned witt_length = 0;
    // V^i(Teichmuller(e_b)) for the basis e_b of each A_{a p^i}
    std::vector<WittVector> digits;
    PGroupStructure group;
};

class CoWitt {
public:
    CoWitt(WittCarrier carrier, std::optional<unsigned> n_max);

    const WittCarrier& carrier() const { return carrier_; }
    unsigned n_max() const { return n_max_; }
    const std::map<int, CoWittPiece>& pieces() const { return pieces_; }
    bool has(int degree) const { return pieces_.count(degree) != 0; }
    const CoWittPiece& piece(int degree) const;

    // Integer digits x with w = sum_i x_i digits[i], 0 <= x_i < p.
    std::vector<long long> digits_of(int degree, const WittVector& w) const;
    std::vector<long long> coordinates(int degree, const WittVector& w) const;
    WittVector combination(int degree, const std::vector<long long>& x) const;
    WittVector generator(int degree, std::size_t k) const;

    // F: CW_d -> CW_{pd}, V: CW_d -> CW_{d/p}.
    WittVector apply_f(int degree, const WittVector& w) const;
    WittVector apply_v(int degree, const WittVector& w) const;

    // Witt degree and length used to represent CW_d.
    std::pair<int, unsigned> shape(int degree) const;

private:
    WittCarrier carrier_;
    unsigned n_max_ = 0;
    std::map<int, CoWittPiece> pieces_;
};

CoWitt cowitt_u(const WittCarrier& carrier, std::optional<unsigned> n_max);
DieudonneModule cowitt_dieudonne(const WittCarrier& carrier, std::optional<unsigned> n_max);

// Nilpotency index of x -> x^p (mu-power) on the degree-0 part; nullopt if
// not nilpotent. Zero for a trivial degree-0 part.
std::optional<unsigned> degree_zero_nilpotency(const WittCarrier& carrier);

}  // namespace polarlab
