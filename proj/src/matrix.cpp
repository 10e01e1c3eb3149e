#include "mscr/matrix.hpp"

namespace mscr {

Matrix::Matrix(FieldPtr field, size_t rows, size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

Matrix Matrix::identity(FieldPtr field, size_t n) {
    Matrix m(std::move(field), n, n);
    for (size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

Matrix Matrix::diagonal(FieldPtr field, const Row& diag) {
    Matrix m(std::move(field), diag.size(), diag.size());
    for (size_t i = 0; i < diag.size(); ++i) m.set(i, i, diag[i]);
    return m;
}

Matrix Matrix::from_rows(FieldPtr field, const std::vector<Row>& rows) {
    if (rows.empty()) return Matrix(std::move(field), 0, 0);
    Matrix m(std::move(field), rows.size(), rows[0].size());
    for (size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != m.cols_) throw Error("ragged row list");
        for (size_t c = 0; c < m.cols_; ++c) m.set(r, c, rows[r][c]);
    }
    return m;
}

void Matrix::set(size_t r, size_t c, uint32_t v) {
    if (v >= field_->order()) throw FieldError("entry out of range");
    data_[r * cols_ + c] = v;
}

Row Matrix::row(size_t r) const {
    return Row(data_.begin() + static_cast<ptrdiff_t>(r * cols_),
               data_.begin() + static_cast<ptrdiff_t>((r + 1) * cols_));
}

bool Matrix::operator==(const Matrix& o) const {
    return field_->same_as(*o.field_) && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

namespace {

// Forward elimination, in place. Returns the pivot columns.
std::vector<size_t> eliminate(Matrix& m) {
    const Field& f = *m.field();
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        size_t p = r;
        while (p < m.rows() && m.at(p, c) == 0) ++p;
        if (p == m.rows()) continue;
        if (p != r) {
            for (size_t j = 0; j < m.cols(); ++j) {
                uint32_t t = m.at(r, j);
                m.set(r, j, m.at(p, j));
                m.set(p, j, t);
            }
        }
        uint32_t pivinv = f.inv(m.at(r, c));
        for (size_t j = c; j < m.cols(); ++j) m.set(r, j, f.mul(pivinv, m.at(r, j)));
        for (size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m.at(i, c) == 0) continue;
            uint32_t factor = m.at(i, c);
            for (size_t j = c; j < m.cols(); ++j)
                m.set(i, j, f.sub(m.at(i, j), f.mul(factor, m.at(r, j))));
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

size_t mat_rank(Matrix m) { return eliminate(m).size(); }

Matrix mat_inverse(const Matrix& m) {
    if (m.rows() != m.cols()) throw Error("inverse of non-square matrix");
    size_t n = m.rows();
    Matrix aug(m.field(), n, 2 * n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) aug.set(i, j, m.at(i, j));
        aug.set(i, n + i, 1);
    }
    auto pivots = eliminate(aug);
    if (pivots.size() != n || pivots.back() != n - 1)
        throw SingularMatrix("matrix is singular");
    Matrix inv(m.field(), n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) inv.set(i, j, aug.at(i, n + j));
    return inv;
}

Row mat_solve(const Matrix& m, const Row& rhs) {
    if (m.rows() != m.cols() || m.rows() != rhs.size())
        throw Error("mat_solve expects a square system");
    Row sol;
    if (!try_solve(m, rhs, &sol)) throw SingularMatrix("singular linear system");
    return sol;
}

bool try_solve(const Matrix& m, const Row& rhs, Row* sol) {
    if (rhs.size() != m.rows()) throw Error("rhs size mismatch");
    size_t n = m.cols();
    Matrix aug(m.field(), m.rows(), n + 1);
    for (size_t i = 0; i < m.rows(); ++i) {
        for (size_t j = 0; j < n; ++j) aug.set(i, j, m.at(i, j));
        aug.set(i, n, rhs[i]);
    }
    auto pivots = eliminate(aug);
    // Inconsistent iff some pivot lands in the rhs column.
    if (!pivots.empty() && pivots.back() == n) return false;
    sol->assign(n, 0);
    for (size_t r = 0; r < pivots.size(); ++r) (*sol)[pivots[r]] = aug.at(r, n);
    return true;
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw Error("dimension mismatch in mat_mul");
    if (!a.field()->same_as(*b.field())) throw FieldError("mixed-field operands");
    const Field& f = *a.field();
    Matrix c(a.field(), a.rows(), b.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t k = 0; k < a.cols(); ++k) {
            uint32_t aik = a.at(i, k);
            if (aik == 0) continue;
            for (size_t j = 0; j < b.cols(); ++j)
                c.set(i, j, f.add(c.at(i, j), f.mul(aik, b.at(k, j))));
        }
    return c;
}

Row row_mul(const Row& row, const Matrix& m) {
    if (row.size() != m.rows()) throw Error("dimension mismatch in row_mul");
    const Field& f = *m.field();
    Row out(m.cols(), 0);
    for (size_t k = 0; k < row.size(); ++k) {
        if (row[k] == 0) continue;
        for (size_t j = 0; j < m.cols(); ++j)
            out[j] = f.add(out[j], f.mul(row[k], m.at(k, j)));
    }
    return out;
}

uint32_t dot(const Field& f, const Row& a, const Row& b) {
    if (a.size() != b.size()) throw Error("dimension mismatch in dot");
    uint32_t s = 0;
    for (size_t i = 0; i < a.size(); ++i) s = f.add(s, f.mul(a[i], b[i]));
    return s;
}

Row row_scale(const Field& f, uint32_t s, const Row& r) {
    Row out(r.size());
    for (size_t i = 0; i < r.size(); ++i) out[i] = f.mul(s, r[i]);
    return out;
}

bool is_zero_row(const Row& r) {
    for (uint32_t v : r)
        if (v != 0) return false;
    return true;
}

Matrix transpose(const Matrix& m) {
    Matrix t(m.field(), m.cols(), m.rows());
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) t.set(j, i, m.at(i, j));
    return t;
}

}  // namespace mscr
