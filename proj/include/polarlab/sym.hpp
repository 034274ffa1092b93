#pragma once

#include <cstdint>
#include <vector>

namespace polarlab {

// Monomials in a free graded-commutative algebra on letters of given
// degrees. A monomial is the sorted list of its letter indices.
using Word = std::vector<std::uint32_t>;

// Sorts w in place and returns the Koszul sign (+1/-1) of the sorting
// permutation restricted to odd letters; returns 0 when p > 2 and an odd
// letter repeats.
int sort_with_sign(Word& w, const std::vector<int>& degrees, std::uint32_t p);

// out = a * b in normal form; returns the sign as in sort_with_sign.
int multiply_words(const Word& a, const Word& b, const std::vector<int>& degrees, std::uint32_t p, Word& out);

int word_degree(const Word& w, const std::vector<int>& degrees);

// All normal-form monomials of degree <= max_degree using only the letters
// flagged in `use` (all letters when empty). Degree-0 letters appear at most
// zero_bound times in total. Ordered by degree, then by length, then
// lexicographically.
std::vector<Word> enumerate_words(const std::vector<int>& degrees, std::uint32_t p, int max_degree,
                                  unsigned zero_bound, const std::vector<bool>& use = {});

}  // namespace polarlab
