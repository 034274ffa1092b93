#pragma once

#include "polarlab/abelian.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace polarlab {

// Graded finite abelian p-group M with F: M_n -> M_{pn} and V: M_{pn} -> M_n.
// Each M_n is (+)_k Z/p^{e_k} in a fixed generating set; maps are integer
// matrices acting on coordinate columns. A missing F or V entry is the zero
// map; degrees above max_degree are not represented.
struct DieudonneModule {
    std::uint32_t p = 2;
    int max_degree = 0;
    std::map<int, std::vector<unsigned>> exponents;
    std::map<int, IntMatrix> F;  // key n: dim(M_pn) x dim(M_n)
    std::map<int, IntMatrix> V;  // key n: dim(M_n) x dim(M_pn)

    std::size_t rank(int n) const;
    // log_p |M_n|
    unsigned length(int n) const;
    unsigned total_length() const;
    std::vector<int> degrees() const;
    // Matrix of F_n or V_n, zero-filled when absent.
    IntMatrix f_matrix(int n) const;
    IntMatrix v_matrix(int n) const;
    // Reduces entries modulo the orders of the target generators and drops
    // zero maps and trivial degrees.
    void normalize();
    bool operator==(const DieudonneModule&) const = default;
};

struct DieudonneReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

// FV = p and VF = p, well-definedness of F and V, nilpotence of V in degree 0.
DieudonneReport check_dieudonne(const DieudonneModule& m);

// log_p of |image| of the homomorphism with matrix t between groups with the
// given cyclic exponents.
unsigned image_length(const IntMatrix& t, const std::vector<unsigned>& source, const std::vector<unsigned>& target,
                      std::uint32_t p);

struct Fingerprint {
    std::map<int, std::vector<unsigned>> exponents;
    // (word, source degree) -> (log_p |im|, log_p |ker|)
    std::map<std::pair<std::string, int>, std::pair<unsigned, unsigned>> rows;
    bool operator==(const Fingerprint&) const = default;
    // Human-readable description of the first differing row, empty if equal.
    std::string first_difference(const Fingerprint& o) const;
};

// Words in {F, V} of length 1..L, written as operator compositions (the
// rightmost letter acts first).
Fingerprint fingerprint(const DieudonneModule& m, unsigned max_word_length);

enum class Verdict { Yes, No, Inconclusive };
std::string to_string(Verdict v);

struct IsomorphismResult {
    Verdict verdict = Verdict::Inconclusive;
    std::string reason;
    // For Yes: per degree, the matrix of the isomorphism (coordinates in N
    // of the images of M's generators).
    std::map<int, IntMatrix> witness;
};

struct IsomorphismOptions {
    unsigned fingerprint_word_length = 4;
    unsigned max_total_length = 24;  // search only when |M| <= p^24
    std::uint64_t node_budget = 5'000'000;
};

IsomorphismResult is_isomorphic(const DieudonneModule& m, const DieudonneModule& n,
                                const IsomorphismOptions& options = {});

// Checks that `iso` is an F,V-equivariant isomorphism M -> N.
bool verify_isomorphism(const DieudonneModule& m, const DieudonneModule& n, const std::map<int, IntMatrix>& iso);

}  // namespace polarlab
