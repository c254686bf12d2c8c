#pragma once

// Dense exact linear algebra over Q. Sizes here are the graded pieces of
// small free algebras, so dense Gaussian elimination is adequate.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rational.hpp"

namespace mhp::linalg {

using Vector = std::vector<Rational>;

inline bool is_zero(const Vector& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

/// Row-major matrix.
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Vector row(std::size_t r) const {
        return Vector(data_.begin() + static_cast<long>(r * cols_),
                      data_.begin() + static_cast<long>((r + 1) * cols_));
    }

    Vector column(std::size_t c) const {
        Vector v(rows_);
        for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
        return v;
    }

    Vector apply(const Vector& x) const {
        if (x.size() != cols_) throw std::invalid_argument("dimension mismatch in matrix apply");
        Vector y(rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                if (x[c] != 0 && (*this)(r, c) != 0) y[r] += (*this)(r, c) * x[c];
        return y;
    }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

/// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> rref(Matrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c) == 0) ++p;
        if (p == m.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        Rational inv = 1 / m(r, c);
        for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c) == 0) continue;
            Rational f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline std::size_t rank(Matrix m) { return rref(m).size(); }

/// Basis of {x : m x = 0}, one vector per free column, in column order.
inline std::vector<Vector> nullspace(Matrix m) {
    std::vector<std::size_t> pivots = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<Vector> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        Vector x(m.cols());
        x[f] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = -m(i, f);
        basis.push_back(std::move(x));
    }
    return basis;
}

/// Incrementally built subspace kept in reduced echelon form.
class Span {
  public:
    explicit Span(std::size_t dim) : dim_(dim) {}

    std::size_t dim() const { return rows_.size(); }
    std::size_t ambient() const { return dim_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    Vector reduce(Vector v) const {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const Rational f = v[pivots_[i]];
            if (f == 0) continue;
            for (std::size_t j = 0; j < dim_; ++j)
                if (rows_[i][j] != 0) v[j] -= f * rows_[i][j];
        }
        return v;
    }

    bool contains(const Vector& v) const { return is_zero(reduce(v)); }

    /// Returns false if v already lies in the span.
    bool insert(const Vector& v) {
        if (v.size() != dim_) throw std::invalid_argument("dimension mismatch in span insert");
        Vector r = reduce(v);
        std::size_t p = 0;
        while (p < dim_ && r[p] == 0) ++p;
        if (p == dim_) return false;
        Rational inv = 1 / r[p];
        for (auto& x : r) x *= inv;
        for (auto& row : rows_) {
            const Rational f = row[p];
            if (f == 0) continue;
            for (std::size_t j = 0; j < dim_; ++j) row[j] -= f * r[j];
        }
        rows_.push_back(std::move(r));
        pivots_.push_back(p);
        return true;
    }

  private:
    std::size_t dim_;
    std::vector<Vector> rows_;
    std::vector<std::size_t> pivots_;
};

} // namespace mhp::linalg
