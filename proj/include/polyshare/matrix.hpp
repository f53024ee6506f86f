#pragma once

#include <cstddef>
#include <vector>

#include "polyshare/field.hpp"
#include "polyshare/rng.hpp"

namespace polyshare {

// Dense row-major matrix over Z_p. Entries are assumed reduced; the ops below
// take the field context explicitly.
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }

    u64& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    u64 at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    const std::vector<u64>& data() const { return data_; }
    std::vector<u64>& data() { return data_; }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    static Matrix random(const FieldContext& ctx, std::size_t rows, std::size_t cols, StreamRng& rng) {
        Matrix m(rows, cols);
        for (auto& v : m.data()) v = rng.field_element(ctx);
        return m;
    }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<u64> data_;
};

Matrix add(const FieldContext& ctx, const Matrix& a, const Matrix& b);
Matrix sub(const FieldContext& ctx, const Matrix& a, const Matrix& b);

// q * A. `mul_count`, when given, accumulates the number of field
// multiplications executed (used by the simulator's per-node counters).
Matrix scale(const FieldContext& ctx, const Matrix& a, u64 q, u64* mul_count = nullptr);

// A^T * B, the protocol's core product shape. Requires rows(A) == rows(B).
Matrix matmul_T(const FieldContext& ctx, const Matrix& a, const Matrix& b, u64* mul_count = nullptr);

// Plain A * B.
Matrix matmul(const FieldContext& ctx, const Matrix& a, const Matrix& b);

Matrix transpose(const Matrix& a);

void add_in_place(const FieldContext& ctx, Matrix& acc, const Matrix& delta);

// Column partition A = [A_0 | A_1 | ... | A_{k-1}], each m x (cols/k).
// Indices are 0-based everywhere in this codebase.
struct ColumnPartition {
    std::size_t source_rows = 0;
    std::size_t source_cols = 0;
    std::size_t k = 0;
    std::vector<Matrix> blocks;
};

ColumnPartition partition_columns(const Matrix& a, std::size_t k);
Matrix concat_columns(const std::vector<Matrix>& blocks);
Matrix concat_rows(const std::vector<Matrix>& blocks);

// Rows [i*(rows/k), (i+1)*(rows/k)) of `a`, 0 <= i < k.
Matrix row_slice(const Matrix& a, std::size_t i, std::size_t k);

}  // namespace polyshare
