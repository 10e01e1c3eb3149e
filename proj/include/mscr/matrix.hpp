#pragma once

#include <cstddef>
#include <vector>

#include "mscr/field.hpp"

namespace mscr {

using Row = std::vector<uint32_t>;

/// Dense matrix over one field, row-major. Dimensions are fixed at
/// construction; entries are canonical field values.
class Matrix {
public:
    Matrix(FieldPtr field, size_t rows, size_t cols);
    static Matrix identity(FieldPtr field, size_t n);
    static Matrix diagonal(FieldPtr field, const Row& diag);
    static Matrix from_rows(FieldPtr field, const std::vector<Row>& rows);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    const FieldPtr& field() const { return field_; }

    uint32_t at(size_t r, size_t c) const { return data_[r * cols_ + c]; }
    void set(size_t r, size_t c, uint32_t v);
    Row row(size_t r) const;

    bool operator==(const Matrix& o) const;

private:
    FieldPtr field_;
    size_t rows_, cols_;
    std::vector<uint32_t> data_;
};

/// Rank by exact row reduction (first-nonzero pivoting, no tolerances).
size_t mat_rank(Matrix m);

/// Inverse of a square matrix; throws SingularMatrix when rank-deficient.
Matrix mat_inverse(const Matrix& m);

/// Unique solution of the square full-rank system m*x = rhs; throws
/// SingularMatrix otherwise.
Row mat_solve(const Matrix& m, const Row& rhs);

Matrix mat_mul(const Matrix& a, const Matrix& b);

/// row (1xN) times matrix (NxC) -> 1xC.
Row row_mul(const Row& row, const Matrix& m);

uint32_t dot(const Field& f, const Row& a, const Row& b);

Row row_scale(const Field& f, uint32_t s, const Row& r);

bool is_zero_row(const Row& r);

Matrix transpose(const Matrix& m);

/// Whether the solvable (possibly non-square) system rows*x = rhs is
/// consistent; if so returns one solution via *sol.
bool try_solve(const Matrix& m, const Row& rhs, Row* sol);

}  // namespace mscr
