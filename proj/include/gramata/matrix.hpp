#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "rational.hpp"

namespace gramata {

/// Square matrix of exact rationals, row-major.
class ExactMatrix
{
public:
    ExactMatrix() = default;

    explicit ExactMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {}

    ExactMatrix(std::initializer_list<std::initializer_list<Rational>> rows)
        : dim_(rows.size()), entries_()
    {
        entries_.reserve(dim_ * dim_);
        for (const auto& row : rows) {
            if (row.size() != dim_)
                throw Error("not-square", "matrix rows must all have length " + std::to_string(dim_));
            entries_.insert(entries_.end(), row.begin(), row.end());
        }
    }

    static ExactMatrix identity(std::size_t dim)
    {
        ExactMatrix m(dim);
        for (std::size_t i = 0; i < dim; ++i)
            m(i, i) = Rational(1);
        return m;
    }

    static ExactMatrix from_rows(const std::vector<std::vector<Rational>>& rows)
    {
        ExactMatrix m(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != rows.size())
                throw Error("not-square", "row " + std::to_string(i) + " has wrong length");
            for (std::size_t j = 0; j < rows.size(); ++j)
                m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t dim() const { return dim_; }

    const Rational& operator()(std::size_t r, std::size_t c) const { return entries_[r * dim_ + c]; }
    Rational& operator()(std::size_t r, std::size_t c) { return entries_[r * dim_ + c]; }

    bool is_identity() const
    {
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j)
                if (i == j ? !(*this)(i, j).is_one() : !(*this)(i, j).is_zero())
                    return false;
        return true;
    }

    bool is_integral() const
    {
        for (const auto& e : entries_)
            if (!e.is_integer())
                return false;
        return true;
    }

    ExactMatrix operator*(const ExactMatrix& o) const
    {
        if (dim_ != o.dim_)
            throw Error("dimension-mismatch", std::to_string(dim_) + "x" + std::to_string(dim_) +
                                                  " times " + std::to_string(o.dim_) + "x" + std::to_string(o.dim_));
        ExactMatrix out(dim_);
        mpq_class acc, term;
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j) {
                acc = 0;
                for (std::size_t k = 0; k < dim_; ++k) {
                    const auto& a = (*this)(i, k).raw();
                    const auto& b = o(k, j).raw();
                    if (sgn(a) == 0 || sgn(b) == 0)
                        continue;
                    mpq_mul(term.get_mpq_t(), a.get_mpq_t(), b.get_mpq_t());
                    acc += term;
                }
                out(i, j) = Rational::normalize(acc.get_num(), acc.get_den());
            }
        return out;
    }

    friend bool operator==(const ExactMatrix&, const ExactMatrix&) = default;

    /// `[[r,...],[...]]`, rows in order, entries in canonical rational form.
    std::string str() const
    {
        std::string out = "[";
        for (std::size_t i = 0; i < dim_; ++i) {
            out += i ? ",[" : "[";
            for (std::size_t j = 0; j < dim_; ++j) {
                if (j)
                    out += ',';
                out += (*this)(i, j).str();
            }
            out += ']';
        }
        return out + "]";
    }

private:
    std::size_t dim_ = 0;
    std::vector<Rational> entries_;
};

/// Exact determinant by Gaussian elimination over Q.
inline Rational determinant(const ExactMatrix& m)
{
    const std::size_t n = m.dim();
    ExactMatrix a = m;
    Rational det(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a(pivot, col).is_zero())
            ++pivot;
        if (pivot == n)
            return Rational(0);
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(a(pivot, j), a(col, j));
            det = -det;
        }
        det *= a(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            if (a(r, col).is_zero())
                continue;
            const Rational f = a(r, col) / a(col, col);
            for (std::size_t j = col; j < n; ++j)
                a(r, j) -= f * a(col, j);
        }
    }
    return det;
}

/// Gauss-Jordan inverse. Throws "singular-matrix".
inline ExactMatrix inverse(const ExactMatrix& m)
{
    const std::size_t n = m.dim();
    ExactMatrix a = m;
    ExactMatrix inv = ExactMatrix::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a(pivot, col).is_zero())
            ++pivot;
        if (pivot == n)
            throw Error("singular-matrix", "matrix " + m.str() + " is not invertible");
        if (pivot != col)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(pivot, j), a(col, j));
                std::swap(inv(pivot, j), inv(col, j));
            }
        const Rational p = a(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            a(col, j) = a(col, j) / p;
            inv(col, j) = inv(col, j) / p;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a(r, col).is_zero())
                continue;
            const Rational f = a(r, col);
            for (std::size_t j = 0; j < n; ++j) {
                a(r, j) -= f * a(col, j);
                inv(r, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

} // namespace gramata
