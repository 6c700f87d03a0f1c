#include "qgraph/linalg.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qgraph {

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::adjoint() const {
    CMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
}

CMatrix operator*(const CMatrix& lhs, const CMatrix& rhs) {
    if (lhs.cols_ != rhs.rows_) throw std::invalid_argument("matrix product: shape mismatch");
    CMatrix out(lhs.rows_, rhs.cols_);
    for (std::size_t r = 0; r < lhs.rows_; ++r)
        for (std::size_t k = 0; k < lhs.cols_; ++k) {
            const Complex a = lhs(r, k);
            if (a == Complex{}) continue;
            for (std::size_t c = 0; c < rhs.cols_; ++c) out(r, c) += a * rhs(k, c);
        }
    return out;
}

CMatrix operator+(const CMatrix& lhs, const CMatrix& rhs) {
    if (lhs.rows_ != rhs.rows_ || lhs.cols_ != rhs.cols_) throw std::invalid_argument("matrix sum: shape mismatch");
    CMatrix out = lhs;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] += rhs.data_[i];
    return out;
}

CMatrix operator-(const CMatrix& lhs, const CMatrix& rhs) {
    if (lhs.rows_ != rhs.rows_ || lhs.cols_ != rhs.cols_) throw std::invalid_argument("matrix difference: shape mismatch");
    CMatrix out = lhs;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] -= rhs.data_[i];
    return out;
}

double frobenius_norm(const CMatrix& m) {
    double sum = 0.0;
    for (const auto& z : m.data()) sum += std::norm(z);
    return std::sqrt(sum);
}

ComplexLU::ComplexLU(CMatrix a) : lu_(std::move(a)), perm_(lu_.rows()) {
    if (lu_.rows() != lu_.cols()) throw std::invalid_argument("LU: matrix must be square");
    const std::size_t n = lu_.rows();
    std::iota(perm_.begin(), perm_.end(), 0);

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        double best = std::abs(lu_(k, k));
        for (std::size_t r = k + 1; r < n; ++r) {
            if (double v = std::abs(lu_(r, k)); v > best) {
                best = v;
                pivot = r;
            }
        }
        if (pivot != k) {
            for (std::size_t c = 0; c < n; ++c) std::swap(lu_(k, c), lu_(pivot, c));
            std::swap(perm_[k], perm_[pivot]);
            sign_ = -sign_;
        }
        if (best == 0.0) {
            singular_ = true;
            continue;
        }
        const Complex inv = 1.0 / lu_(k, k);
        for (std::size_t r = k + 1; r < n; ++r) {
            const Complex factor = lu_(r, k) * inv;
            lu_(r, k) = factor;
            if (factor == Complex{}) continue;
            for (std::size_t c = k + 1; c < n; ++c) lu_(r, c) -= factor * lu_(k, c);
        }
    }
}

Complex ComplexLU::determinant() const {
    Complex det = static_cast<double>(sign_);
    for (std::size_t i = 0; i < lu_.rows(); ++i) det *= lu_(i, i);
    return det;
}

double ComplexLU::pivot_ratio() const {
    const std::size_t n = lu_.rows();
    if (n == 0) return 1.0;
    double lo = std::abs(lu_(0, 0)), hi = lo;
    for (std::size_t i = 1; i < n; ++i) {
        const double v = std::abs(lu_(i, i));
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return hi > 0.0 ? lo / hi : 0.0;
}

CMatrix ComplexLU::solve(const CMatrix& b) const {
    const std::size_t n = lu_.rows();
    if (b.rows() != n) throw std::invalid_argument("LU solve: shape mismatch");
    if (singular_) throw std::domain_error("LU solve: singular matrix");
    CMatrix x(n, b.cols());
    for (std::size_t c = 0; c < b.cols(); ++c) {
        // Forward substitution on the permuted right-hand side (unit lower L).
        for (std::size_t i = 0; i < n; ++i) {
            Complex s = b(perm_[i], c);
            for (std::size_t j = 0; j < i; ++j) s -= lu_(i, j) * x(j, c);
            x(i, c) = s;
        }
        for (std::size_t i = n; i-- > 0;) {
            Complex s = x(i, c);
            for (std::size_t j = i + 1; j < n; ++j) s -= lu_(i, j) * x(j, c);
            x(i, c) = s / lu_(i, i);
        }
    }
    return x;
}

}  // namespace qgraph
