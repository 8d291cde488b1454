#include "canon/matrix.hpp"

#include <stdexcept>

#include "canon/errors.hpp"

namespace canon {

Matrix Matrix::from_rows(std::uint32_t prime, const std::vector<Vec>& rows, std::size_t cols) {
    Matrix m(prime, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw std::invalid_argument("Matrix::from_rows: ragged rows");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

Matrix Matrix::from_rows(const std::vector<Vec>& rows) {
    if (rows.empty() || rows[0].empty()) throw std::invalid_argument("Matrix::from_rows: empty input");
    return from_rows(rows[0][0].prime(), rows, rows[0].size());
}

Matrix Matrix::from_columns(std::uint32_t prime, const std::vector<Vec>& cols, std::size_t rows) {
    Matrix m(prime, rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != rows) throw std::invalid_argument("Matrix::from_columns: ragged columns");
        for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
}

Matrix Matrix::identity(std::uint32_t prime, std::size_t n) {
    Matrix m(prime, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Fp(1, prime);
    return m;
}

Vec Matrix::row(std::size_t i) const { return Vec(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_); }

Vec Matrix::col(std::size_t j) const {
    Vec c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
}

std::vector<Vec> Matrix::row_list() const {
    std::vector<Vec> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
    return out;
}

void Matrix::append_row(const Vec& r) {
    if (r.size() != cols_) throw std::invalid_argument("Matrix::append_row: width mismatch");
    a_.insert(a_.end(), r.begin(), r.end());
    ++rows_;
}

Matrix Matrix::transpose() const {
    Matrix t(p_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Matrix Matrix::select_rows(const std::vector<std::size_t>& idx) const {
    Matrix m(p_, idx.size(), cols_);
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(idx[i], j);
    return m;
}

Matrix Matrix::select_cols(const std::vector<std::size_t>& idx) const {
    Matrix m(p_, rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < idx.size(); ++j) m(i, j) = (*this)(i, idx[j]);
    return m;
}

Vec Matrix::operator*(const Vec& v) const {
    if (v.size() != cols_) throw std::invalid_argument("Matrix*Vec: dimension mismatch");
    Vec out(rows_, Fp(0, p_));
    if (cols_ == 0) return out;
    for (std::size_t i = 0; i < rows_; ++i) {
        unsigned __int128 acc = 0;
        for (std::size_t j = 0; j < cols_; ++j) acc += std::uint64_t((*this)(i, j).value()) * v[j].value();
        out[i] = Fp(static_cast<std::uint64_t>(acc % p_), p_);
    }
    return out;
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("Matrix*Matrix: dimension mismatch");
    Matrix r(p_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < o.cols_; ++j) {
            unsigned __int128 acc = 0;
            for (std::size_t k = 0; k < cols_; ++k) acc += std::uint64_t((*this)(i, k).value()) * o(k, j).value();
            r(i, j) = Fp(static_cast<std::uint64_t>(acc % p_), p_);
        }
    return r;
}

Echelon rref(Matrix m) {
    Echelon e;
    const std::size_t R = m.rows(), C = m.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < C && r < R; ++c) {
        std::size_t piv = R;
        for (std::size_t i = r; i < R; ++i)
            if (!m(i, c).is_zero()) {
                piv = i;
                break;
            }
        if (piv == R) continue;
        if (piv != r)
            for (std::size_t j = 0; j < C; ++j) std::swap(m(piv, j), m(r, j));
        Fp inv = m(r, c).inverse();
        for (std::size_t j = c; j < C; ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < R; ++i) {
            if (i == r || m(i, c).is_zero()) continue;
            Fp f = m(i, c);
            for (std::size_t j = c; j < C; ++j) m(i, j) -= f * m(r, j);
        }
        e.pivots.push_back(c);
        ++r;
    }
    e.reduced = std::move(m);
    return e;
}

std::size_t rank(const Matrix& m) { return rref(m).rank(); }

std::vector<Vec> kernel_basis(const Matrix& m) {
    Echelon e = rref(m);
    const std::size_t C = m.cols();
    std::vector<bool> is_pivot(C, false);
    for (auto c : e.pivots) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (std::size_t f = 0; f < C; ++f) {
        if (is_pivot[f]) continue;
        Vec v(C, Fp(0, m.prime()));
        v[f] = Fp(1, m.prime());
        for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<Vec> row_space_basis(const Matrix& m) {
    Echelon e = rref(m);
    std::vector<Vec> out;
    for (std::size_t r = 0; r < e.rank(); ++r) out.push_back(e.reduced.row(r));
    return out;
}

Solution solve_consistent(const Matrix& m, const Vec& rhs) {
    if (rhs.size() != m.rows()) throw std::invalid_argument("solve_consistent: rhs size mismatch");
    const std::size_t R = m.rows(), C = m.cols();
    Matrix aug(m.prime(), R, C + 1);
    for (std::size_t i = 0; i < R; ++i) {
        for (std::size_t j = 0; j < C; ++j) aug(i, j) = m(i, j);
        aug(i, C) = rhs[i];
    }
    Echelon e = rref(std::move(aug));
    if (!e.pivots.empty() && e.pivots.back() == C) throw InconsistentSystem("right-hand side is not in the column space");
    Solution s;
    s.particular = Vec(C, Fp(0, m.prime()));
    for (std::size_t r = 0; r < e.pivots.size(); ++r) s.particular[e.pivots[r]] = e.reduced(r, C);
    s.kernel = kernel_basis(m);
    return s;
}

Fp determinant(Matrix m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix not square");
    const std::size_t n = m.rows();
    Fp det(1, m.prime());
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = n;
        for (std::size_t i = c; i < n; ++i)
            if (!m(i, c).is_zero()) {
                piv = i;
                break;
            }
        if (piv == n) return Fp(0, m.prime());
        if (piv != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(c, j));
            det = -det;
        }
        det *= m(c, c);
        Fp inv = m(c, c).inverse();
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m(i, c).is_zero()) continue;
            Fp f = m(i, c) * inv;
            for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
        }
    }
    return det;
}

Matrix inverse(const Matrix& m) {
    const std::size_t n = m.rows();
    if (n != m.cols()) throw std::invalid_argument("inverse: matrix not square");
    Matrix aug(m.prime(), n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = Fp(1, m.prime());
    }
    Echelon e = rref(std::move(aug));
    if (e.rank() < n || e.pivots[n - 1] != n - 1) throw InconsistentSystem("matrix is singular");
    Matrix inv(m.prime(), n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
    return inv;
}

bool row_space_contains(const Matrix& m, const Vec& v) {
    if (m.rows() == 0) return is_zero(v);
    Matrix ext = m;
    ext.append_row(v);
    return rank(ext) == rank(m);
}

std::vector<std::size_t> independent_rows(const Matrix& m) {
    // Column pivots of the transpose are the independent rows of m.
    return rref(m.transpose()).pivots;
}

}  // namespace canon
