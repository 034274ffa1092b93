#pragma once

#include "polarlab/field.hpp"

#include <cstddef>
#include <optional>
#include <random>
#include <span>
#include <vector>

namespace polarlab {

// Dense row-major matrix over F_p.
class FpMatrix {
public:
    FpMatrix() : field_(2) {}
    FpMatrix(std::size_t rows, std::size_t cols, std::uint32_t p);

    static FpMatrix identity(std::size_t n, std::uint32_t p);
    static FpMatrix from_rows(const std::vector<FpVector>& rows, std::size_t cols, std::uint32_t p);
    static FpMatrix random(std::size_t rows, std::size_t cols, std::uint32_t p, std::mt19937_64& rng);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::uint32_t p() const { return field_.p(); }
    const PrimeField& field() const { return field_; }

    std::uint32_t& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    std::uint32_t at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    std::span<const std::uint32_t> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    FpVector column(std::size_t c) const;

    FpMatrix operator*(const FpMatrix& o) const;
    FpVector apply(std::span<const std::uint32_t> v) const;
    FpMatrix transpose() const;
    bool is_zero() const;
    bool operator==(const FpMatrix& o) const;

    // Reduced row echelon form in place; returns pivot columns in order.
    std::vector<std::size_t> row_reduce();

    std::size_t rank() const;
    std::optional<FpMatrix> inverse() const;
    // Some x with (*this) x = b, if solvable.
    std::optional<FpVector> solve(std::span<const std::uint32_t> b) const;

private:
    PrimeField field_;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<std::uint32_t> data_;
};

struct RankKernel {
    std::size_t rank = 0;
    std::vector<FpVector> kernel_basis;
};

RankKernel rank_kernel(const FpMatrix& m);

// Basis of the row space of a set of vectors, in reduced echelon form.
std::vector<FpVector> row_space_basis(const std::vector<FpVector>& vectors, std::size_t dim, std::uint32_t p);

}  // namespace polarlab
