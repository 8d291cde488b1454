#pragma once

#include <cstddef>
#include <vector>

#include "canon/field.hpp"

namespace canon {

/// Dense row-major matrix over F_p.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::uint32_t prime, std::size_t rows, std::size_t cols)
        : p_(prime), rows_(rows), cols_(cols), a_(rows * cols, Fp(0, prime)) {}

    static Matrix from_rows(std::uint32_t prime, const std::vector<Vec>& rows, std::size_t cols);
    static Matrix from_rows(const std::vector<Vec>& rows);  // rows must be nonempty
    static Matrix from_columns(std::uint32_t prime, const std::vector<Vec>& cols, std::size_t rows);
    static Matrix identity(std::uint32_t prime, std::size_t n);

    std::uint32_t prime() const { return p_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Fp& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    Fp operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    Vec row(std::size_t i) const;
    Vec col(std::size_t j) const;
    std::vector<Vec> row_list() const;
    void append_row(const Vec& r);

    Matrix transpose() const;
    Matrix select_rows(const std::vector<std::size_t>& idx) const;
    Matrix select_cols(const std::vector<std::size_t>& idx) const;

    Vec operator*(const Vec& v) const;
    Matrix operator*(const Matrix& o) const;
    bool operator==(const Matrix& o) const = default;

private:
    std::uint32_t p_ = 0;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Fp> a_;
};

struct Echelon {
    Matrix reduced;                   // reduced row echelon form, zero rows at the bottom
    std::vector<std::size_t> pivots;  // pivot column of each nonzero row, increasing
    std::size_t rank() const { return pivots.size(); }
};

/// Gauss-Jordan elimination, pivots taken column by column.
Echelon rref(Matrix m);
std::size_t rank(const Matrix& m);

/// Basis of {v : M v = 0}. One vector per free column f: entry 1 at f, 0 at
/// the other free columns. Empty when the kernel is trivial.
std::vector<Vec> kernel_basis(const Matrix& m);

/// Row space basis in reduced echelon form (canonical for the subspace).
std::vector<Vec> row_space_basis(const Matrix& m);

struct Solution {
    Vec particular;
    std::vector<Vec> kernel;
};

/// Solves M x = rhs; throws InconsistentSystem when rhs is outside the column space.
/// The particular solution has all free variables set to zero.
Solution solve_consistent(const Matrix& m, const Vec& rhs);

Fp determinant(Matrix m);
/// Inverse of a square nonsingular matrix; throws InconsistentSystem if singular.
Matrix inverse(const Matrix& m);

/// True when v is in the row space of m.
bool row_space_contains(const Matrix& m, const Vec& v);

/// Indices of a maximal set of linearly independent rows, chosen greedily in order.
std::vector<std::size_t> independent_rows(const Matrix& m);

}  // namespace canon
