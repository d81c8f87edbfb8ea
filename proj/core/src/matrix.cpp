// SPDX-License-Identifier: MIT

#include "opdiam/matrix.hpp"

#include <cmath>

namespace opdiam {

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch(std::string(op) + ": shapes " + std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) +
                                "x" + std::to_string(b.cols()));
}

} // namespace

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    require_same_shape(*this, other, "operator+=");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += other.a_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    require_same_shape(*this, other, "operator-=");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= other.a_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx scalar) {
    for (auto& v : a_) v *= scalar;
    return *this;
}

ComplexMatrix ComplexMatrix::dagger() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
}

ComplexMatrix ComplexMatrix::conj() const {
    ComplexMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = std::conj(a_[i]);
    return out;
}

cplx ComplexMatrix::trace() const {
    if (!is_square()) throw NonSquare("trace: " + std::to_string(rows_) + "x" + std::to_string(cols_));
    cplx t = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& v : a_) s += std::norm(v);
    return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& v : a_) m = std::max(m, std::abs(v));
    return m;
}

bool ComplexMatrix::is_hermitian(double atol) const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i; j < cols_; ++j)
            if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > atol) return false;
    return true;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
    if (lhs.cols() != rhs.rows())
        throw DimensionMismatch("operator*: " + std::to_string(lhs.rows()) + "x" +
                                std::to_string(lhs.cols()) + " times " +
                                std::to_string(rhs.rows()) + "x" + std::to_string(rhs.cols()));
    ComplexMatrix out(lhs.rows(), rhs.cols());
    for (std::size_t i = 0; i < lhs.rows(); ++i) {
        for (std::size_t k = 0; k < lhs.cols(); ++k) {
            const cplx lik = lhs(i, k);
            if (lik == cplx(0.0, 0.0)) continue;
            for (std::size_t j = 0; j < rhs.cols(); ++j) out(i, j) += lik * rhs(k, j);
        }
    }
    return out;
}

ComplexMatrix operator*(cplx scalar, ComplexMatrix m) { return m *= scalar; }
ComplexMatrix operator*(ComplexMatrix m, cplx scalar) { return m *= scalar; }

ComplexMatrix dagger(const ComplexMatrix& a) { return a.dagger(); }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cplx aij = a(i, j);
            if (aij == cplx(0.0, 0.0)) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return out;
}

ComplexMatrix re_part(const ComplexMatrix& a) {
    if (!a.is_square()) throw NonSquare("re_part");
    ComplexMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            out(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
    return out;
}

ComplexMatrix im_part(const ComplexMatrix& a) {
    if (!a.is_square()) throw NonSquare("im_part");
    ComplexMatrix out(a.rows(), a.cols());
    const cplx half_over_i(0.0, -0.5); // 1/(2i)
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            out(i, j) = half_over_i * (a(i, j) - std::conj(a(j, i)));
    return out;
}

ComplexMatrix block_at(const ComplexMatrix& x, std::size_t inner_dim, std::size_t u,
                       std::size_t v) {
    ComplexMatrix out(inner_dim, inner_dim);
    for (std::size_t i = 0; i < inner_dim; ++i)
        for (std::size_t j = 0; j < inner_dim; ++j)
            out(i, j) = x(u * inner_dim + i, v * inner_dim + j);
    return out;
}

ComplexMatrix block_apply(const std::function<ComplexMatrix(const ComplexMatrix&)>& f,
                          const ComplexMatrix& x, std::size_t inner_dim) {
    if (!x.is_square()) throw NonSquare("block_apply");
    if (inner_dim == 0 || x.rows() % inner_dim != 0)
        throw DimensionMismatch("block_apply: " + std::to_string(x.rows()) +
                                " not divisible into blocks of " + std::to_string(inner_dim));
    const std::size_t k = x.rows() / inner_dim;

    // Probe the first block for the output dimension, then enforce it.
    ComplexMatrix first = f(block_at(x, inner_dim, 0, 0));
    if (!first.is_square()) throw DimensionMismatch("block_apply: image blocks must be square");
    const std::size_t m = first.rows();

    ComplexMatrix out(k * m, k * m);
    for (std::size_t u = 0; u < k; ++u)
        for (std::size_t v = 0; v < k; ++v) {
            ComplexMatrix img =
                (u == 0 && v == 0) ? first : f(block_at(x, inner_dim, u, v));
            if (img.rows() != m || img.cols() != m)
                throw DimensionMismatch("block_apply: image blocks disagree in size");
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < m; ++j) out(u * m + i, v * m + j) = img(i, j);
        }
    return out;
}

cplx hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_shape(a, b, "hs_inner");
    cplx s = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) s += std::conj(a.data()[i]) * b.data()[i];
    return s;
}

cplx rayleigh(const ComplexMatrix& a, const ComplexMatrix& v) {
    if (v.cols() != 1 || v.rows() != a.cols())
        throw DimensionMismatch("rayleigh: vector shape");
    cplx s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        cplx row = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) row += a(i, j) * v(j, 0);
        s += std::conj(v(i, 0)) * row;
    }
    return s;
}

} // namespace opdiam
