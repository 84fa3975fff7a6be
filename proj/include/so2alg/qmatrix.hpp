#pragma once

#include <cassert>
#include <optional>
#include <vector>

#include "so2alg/rational.hpp"

namespace so2alg {

/// Dense matrix over Q.
class QMat {
  public:
    QMat() : rows_(0), cols_(0) {}
    QMat(size_t r, size_t c) : rows_(r), cols_(c), e_(r * c) {}

    static QMat identity(size_t n) {
        QMat m(n, n);
        for (size_t i = 0; i < n; ++i) m(i, i) = Rat(1);
        return m;
    }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    Rat& operator()(size_t i, size_t j) { return e_[i * cols_ + j]; }
    const Rat& operator()(size_t i, size_t j) const { return e_[i * cols_ + j]; }

    bool operator==(const QMat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }

    bool is_zero() const {
        for (const auto& x : e_)
            if (!x.is_zero()) return false;
        return true;
    }

    QMat operator*(const QMat& o) const {
        assert(cols_ == o.rows_);
        QMat r(rows_, o.cols_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t k = 0; k < cols_; ++k) {
                const Rat& a = (*this)(i, k);
                if (a.is_zero()) continue;
                for (size_t j = 0; j < o.cols_; ++j) {
                    const Rat& b = o(k, j);
                    if (!b.is_zero()) r(i, j) += a * b;
                }
            }
        return r;
    }

    QMat operator+(const QMat& o) const {
        assert(rows_ == o.rows_ && cols_ == o.cols_);
        QMat r = *this;
        for (size_t i = 0; i < e_.size(); ++i) r.e_[i] += o.e_[i];
        return r;
    }

    QMat operator-(const QMat& o) const {
        assert(rows_ == o.rows_ && cols_ == o.cols_);
        QMat r = *this;
        for (size_t i = 0; i < e_.size(); ++i) r.e_[i] -= o.e_[i];
        return r;
    }

    QMat scaled(const Rat& s) const {
        QMat r = *this;
        for (auto& x : r.e_) x *= s;
        return r;
    }

    QMat transposed() const {
        QMat r(cols_, rows_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    QMat col(size_t j) const {
        QMat r(rows_, 1);
        for (size_t i = 0; i < rows_; ++i) r(i, 0) = (*this)(i, j);
        return r;
    }

    /// Horizontal concatenation.
    static QMat hcat(const QMat& a, const QMat& b) {
        assert(a.rows_ == b.rows_);
        QMat r(a.rows_, a.cols_ + b.cols_);
        for (size_t i = 0; i < a.rows_; ++i) {
            for (size_t j = 0; j < a.cols_; ++j) r(i, j) = a(i, j);
            for (size_t j = 0; j < b.cols_; ++j) r(i, a.cols_ + j) = b(i, j);
        }
        return r;
    }

    static QMat vcat(const QMat& a, const QMat& b) {
        assert(a.cols_ == b.cols_);
        QMat r(a.rows_ + b.rows_, a.cols_);
        for (size_t i = 0; i < a.rows_; ++i)
            for (size_t j = 0; j < a.cols_; ++j) r(i, j) = a(i, j);
        for (size_t i = 0; i < b.rows_; ++i)
            for (size_t j = 0; j < a.cols_; ++j) r(a.rows_ + i, j) = b(i, j);
        return r;
    }

    /// In-place reduced row echelon form; returns pivot columns.
    std::vector<size_t> rref() {
        std::vector<size_t> pivots;
        size_t row = 0;
        for (size_t col = 0; col < cols_ && row < rows_; ++col) {
            size_t p = row;
            while (p < rows_ && (*this)(p, col).is_zero()) ++p;
            if (p == rows_) continue;
            if (p != row)
                for (size_t j = 0; j < cols_; ++j) std::swap((*this)(p, j), (*this)(row, j));
            Rat inv = Rat(1) / (*this)(row, col);
            for (size_t j = col; j < cols_; ++j) (*this)(row, j) *= inv;
            for (size_t i = 0; i < rows_; ++i) {
                if (i == row) continue;
                Rat f = (*this)(i, col);
                if (f.is_zero()) continue;
                for (size_t j = col; j < cols_; ++j) (*this)(i, j) -= f * (*this)(row, j);
            }
            pivots.push_back(col);
            ++row;
        }
        return pivots;
    }

    size_t rank() const {
        QMat m = *this;
        return m.rref().size();
    }

    /// Basis of the right kernel, one column per basis vector.
    QMat kernel() const {
        QMat m = *this;
        std::vector<size_t> pivots = m.rref();
        std::vector<bool> is_pivot(cols_, false);
        for (size_t p : pivots) is_pivot[p] = true;
        std::vector<size_t> free_cols;
        for (size_t j = 0; j < cols_; ++j)
            if (!is_pivot[j]) free_cols.push_back(j);
        QMat k(cols_, free_cols.size());
        for (size_t fi = 0; fi < free_cols.size(); ++fi) {
            size_t f = free_cols[fi];
            k(f, fi) = Rat(1);
            for (size_t pi = 0; pi < pivots.size(); ++pi) k(pivots[pi], fi) = -m(pi, f);
        }
        return k;
    }

    /// One solution of A x = b, or nullopt if inconsistent.
    std::optional<QMat> solve(const QMat& b) const {
        assert(b.rows_ == rows_);
        QMat aug = hcat(*this, b);
        std::vector<size_t> pivots = aug.rref();
        for (size_t p : pivots)
            if (p >= cols_) return std::nullopt;
        QMat x(cols_, b.cols_);
        for (size_t pi = 0; pi < pivots.size(); ++pi)
            for (size_t j = 0; j < b.cols_; ++j) x(pivots[pi], j) = aug(pi, cols_ + j);
        return x;
    }

    /// Inverse of a square matrix, or nullopt if singular.
    std::optional<QMat> inverse() const {
        assert(rows_ == cols_);
        QMat aug = hcat(*this, identity(rows_));
        std::vector<size_t> pivots = aug.rref();
        if (pivots.size() != rows_) return std::nullopt;
        for (size_t i = 0; i < rows_; ++i)
            if (pivots[i] != i) return std::nullopt;
        QMat inv(rows_, rows_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < rows_; ++j) inv(i, j) = aug(i, rows_ + j);
        return inv;
    }

    /// Column span membership: does v lie in the span of this matrix's columns?
    bool spans(const QMat& v) const { return solve(v).has_value(); }

  private:
    size_t rows_, cols_;
    std::vector<Rat> e_;
};

/// Reduced column echelon form with zero columns dropped: the unique
/// canonical basis of the column span.
inline QMat column_rref(const QMat& a) {
    QMat t = a.transposed();
    t.rref();
    QMat b = t.transposed();
    std::vector<size_t> keep;
    for (size_t j = 0; j < b.cols(); ++j) {
        bool nz = false;
        for (size_t i = 0; i < b.rows(); ++i)
            if (!b(i, j).is_zero()) nz = true;
        if (nz) keep.push_back(j);
    }
    QMat out(b.rows(), keep.size());
    for (size_t k = 0; k < keep.size(); ++k)
        for (size_t i = 0; i < b.rows(); ++i) out(i, k) = b(i, keep[k]);
    return out;
}

/// Intersection of two column spans, returned as a canonical basis (columns).
inline QMat span_intersection(const QMat& a, const QMat& b) {
    assert(a.rows() == b.rows());
    // solve a x = b y: kernel of [a | -b], read off the a-part.
    QMat neg = b.scaled(Rat(-1));
    QMat k = QMat::hcat(a, neg).kernel();
    QMat raw(a.rows(), k.cols());
    for (size_t j = 0; j < k.cols(); ++j) {
        QMat x(a.cols(), 1);
        for (size_t i = 0; i < a.cols(); ++i) x(i, 0) = k(i, j);
        QMat v = a * x;
        for (size_t i = 0; i < a.rows(); ++i) raw(i, j) = v(i, 0);
    }
    return column_rref(raw);
}

}  // namespace so2alg
