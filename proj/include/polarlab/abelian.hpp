#pragma once

#include <cstdint>
#include <vector>

namespace polarlab {

using IntMatrix = std::vector<std::vector<long long>>;

// Finite abelian p-group Z^N / (row span of relations), brought to the form
// (+)_k Z/p^{e_k} by a Smith normal form over Z/p^M.
struct PGroupStructure {
    std::uint32_t p = 2;
    std::size_t rank = 0;  // N
    std::vector<unsigned> exponents;  // e_k >= 1, one per cyclic factor
    // Invariant coordinate k of the element sum_i x_i g_i is
    // sum_i x_i to_invariant[i][k] mod p^{e_k}. N x r.
    IntMatrix to_invariant;
    // Generator k as a combination of the N presentation generators. r x N.
    IntMatrix generators;

    long long order(std::size_t k) const;
    std::vector<long long> coordinates(const std::vector<long long>& x) const;
};

// `modulus_exponent` M must exceed every exponent of the group; relations
// that leave a factor of order >= p^M are reported as an Error.
PGroupStructure smith_p_group(const IntMatrix& relations, std::size_t rank, std::uint32_t p,
                              unsigned modulus_exponent);

long long mod_floor(long long a, long long m);

}  // namespace polarlab
