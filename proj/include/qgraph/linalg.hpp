#pragma once

// Small dense complex matrices and an LU factorization with partial pivoting.
// Sizes here are 2N for a handful of edges, so nothing is blocked or vectorized.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qgraph {

using Complex = std::complex<double>;

class CMatrix {
public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static CMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const Complex> data() const { return data_; }

    CMatrix adjoint() const;

    friend CMatrix operator*(const CMatrix& lhs, const CMatrix& rhs);
    friend CMatrix operator+(const CMatrix& lhs, const CMatrix& rhs);
    friend CMatrix operator-(const CMatrix& lhs, const CMatrix& rhs);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

/// Frobenius norm.
double frobenius_norm(const CMatrix& m);

/// In-place LU with row partial pivoting: P·A = L·U.
class ComplexLU {
public:
    explicit ComplexLU(CMatrix a);

    Complex determinant() const;
    /// True when some pivot is exactly zero; solve() must not be used then.
    bool singular() const { return singular_; }
    /// Smallest |pivot| over largest |pivot|, a cheap conditioning hint.
    double pivot_ratio() const;

    /// Solves A·X = B column by column.
    CMatrix solve(const CMatrix& b) const;

private:
    CMatrix lu_;
    std::vector<std::size_t> perm_;
    int sign_ = 1;
    bool singular_ = false;
};

}  // namespace qgraph
