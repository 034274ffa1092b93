#include "polarlab/matrix.hpp"

#include <algorithm>

namespace polarlab {

FpMatrix::FpMatrix(std::size_t rows, std::size_t cols, std::uint32_t p)
    : field_(p), rows_(rows), cols_(cols), data_(rows * cols, 0)
{
}

FpMatrix FpMatrix::identity(std::size_t n, std::uint32_t p)
{
    FpMatrix m(n, n, p);
    for (std::size_t i = 0; i < n; ++i)
        m.at(i, i) = 1;
    return m;
}

FpMatrix FpMatrix::from_rows(const std::vector<FpVector>& rows, std::size_t cols, std::uint32_t p)
{
    FpMatrix m(rows.size(), cols, p);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols)
            throw Error("FpMatrix::from_rows: ragged input");
        std::copy(rows[r].begin(), rows[r].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(r * cols));
    }
    return m;
}

FpMatrix FpMatrix::random(std::size_t rows, std::size_t cols, std::uint32_t p, std::mt19937_64& rng)
{
    FpMatrix m(rows, cols, p);
    std::uniform_int_distribution<std::uint32_t> dist(0, p - 1);
    for (auto& x : m.data_)
        x = dist(rng);
    return m;
}

FpVector FpMatrix::column(std::size_t c) const
{
    FpVector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        v[r] = at(r, c);
    return v;
}

FpMatrix FpMatrix::operator*(const FpMatrix& o) const
{
    if (cols_ != o.rows_ || p() != o.p())
        throw Error("FpMatrix: shape or field mismatch in product");
    FpMatrix out(rows_, o.cols_, p());
    const std::uint64_t P = p();
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            std::uint64_t a = at(i, k);
            if (a == 0)
                continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                out.at(i, j) = static_cast<std::uint32_t>((out.at(i, j) + a * o.at(k, j)) % P);
        }
    return out;
}

FpVector FpMatrix::apply(std::span<const std::uint32_t> v) const
{
    if (v.size() != cols_)
        throw Error("FpMatrix::apply: dimension mismatch");
    FpVector out(rows_, 0);
    const std::uint64_t P = p();
    for (std::size_t i = 0; i < rows_; ++i) {
        std::uint64_t acc = 0;
        for (std::size_t j = 0; j < cols_; ++j)
            acc = (acc + static_cast<std::uint64_t>(at(i, j)) * v[j]) % P;
        out[i] = static_cast<std::uint32_t>(acc);
    }
    return out;
}

FpMatrix FpMatrix::transpose() const
{
    FpMatrix t(cols_, rows_, p());
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t.at(j, i) = at(i, j);
    return t;
}

bool FpMatrix::is_zero() const
{
    return std::all_of(data_.begin(), data_.end(), [](auto x) { return x == 0; });
}

bool FpMatrix::operator==(const FpMatrix& o) const
{
    return rows_ == o.rows_ && cols_ == o.cols_ && p() == o.p() && data_ == o.data_;
}

std::vector<std::size_t> FpMatrix::row_reduce()
{
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
        std::size_t piv = r;
        while (piv < rows_ && at(piv, c) == 0)
            ++piv;
        if (piv == rows_)
            continue;
        if (piv != r)
            for (std::size_t j = 0; j < cols_; ++j)
                std::swap(at(piv, j), at(r, j));
        auto inv = field_.inv(at(r, c));
        for (std::size_t j = c; j < cols_; ++j)
            at(r, j) = field_.mul(at(r, j), inv);
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i == r || at(i, c) == 0)
                continue;
            auto f = at(i, c);
            for (std::size_t j = c; j < cols_; ++j)
                if (at(r, j))
                    at(i, j) = field_.sub(at(i, j), field_.mul(f, at(r, j)));
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::size_t FpMatrix::rank() const
{
    FpMatrix copy = *this;
    return copy.row_reduce().size();
}

std::optional<FpMatrix> FpMatrix::inverse() const
{
    if (rows_ != cols_)
        return std::nullopt;
    const auto n = rows_;
    FpMatrix aug(n, 2 * n, p());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            aug.at(i, j) = at(i, j);
        aug.at(i, n + i) = 1;
    }
    auto piv = aug.row_reduce();
    if (piv.size() < n || (n > 0 && piv[n - 1] != n - 1))
        return std::nullopt;
    FpMatrix inv(n, n, p());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            inv.at(i, j) = aug.at(i, n + j);
    return inv;
}

std::optional<FpVector> FpMatrix::solve(std::span<const std::uint32_t> b) const
{
    if (b.size() != rows_)
        throw Error("FpMatrix::solve: dimension mismatch");
    FpMatrix aug(rows_, cols_ + 1, p());
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j)
            aug.at(i, j) = at(i, j);
        aug.at(i, cols_) = b[i];
    }
    auto piv = aug.row_reduce();
    if (!piv.empty() && piv.back() == cols_)
        return std::nullopt;
    FpVector x(cols_, 0);
    for (std::size_t r = 0; r < piv.size(); ++r)
        x[piv[r]] = aug.at(r, cols_);
    return x;
}

RankKernel rank_kernel(const FpMatrix& m)
{
    FpMatrix r = m;
    auto piv = r.row_reduce();
    RankKernel out;
    out.rank = piv.size();
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : piv)
        is_pivot[c] = true;
    const auto& f = m.field();
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free])
            continue;
        FpVector v(m.cols(), 0);
        v[free] = 1;
        for (std::size_t i = 0; i < piv.size(); ++i)
            v[piv[i]] = f.neg(r.at(i, free));
        out.kernel_basis.push_back(std::move(v));
    }
    return out;
}

std::vector<FpVector> row_space_basis(const std::vector<FpVector>& vectors, std::size_t dim, std::uint32_t p)
{
    if (vectors.empty())
        return {};
    FpMatrix m = FpMatrix::from_rows(vectors, dim, p);
    auto piv = m.row_reduce();
    std::vector<FpVector> out;
    for (std::size_t i = 0; i < piv.size(); ++i) {
        auto row = m.row(i);
        out.emplace_back(row.begin(), row.end());
    }
    return out;
}

}  // namespace polarlab
