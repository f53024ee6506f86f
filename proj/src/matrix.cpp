#include "polyshare/matrix.hpp"

#include <string>

namespace polyshare {

namespace {
void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionMismatch(std::string(op) + ": " + std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                                std::to_string(b.cols()));
    }
}
}  // namespace

Matrix add(const FieldContext& ctx, const Matrix& a, const Matrix& b) {
    require_same_shape(a, b, "add");
    Matrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < r.size(); ++i) r.data()[i] = ctx.add(a.data()[i], b.data()[i]);
    return r;
}

Matrix sub(const FieldContext& ctx, const Matrix& a, const Matrix& b) {
    require_same_shape(a, b, "sub");
    Matrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < r.size(); ++i) r.data()[i] = ctx.sub(a.data()[i], b.data()[i]);
    return r;
}

Matrix scale(const FieldContext& ctx, const Matrix& a, u64 q, u64* mul_count) {
    Matrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < r.size(); ++i) r.data()[i] = ctx.mul(a.data()[i], q);
    if (mul_count) *mul_count += r.size();
    return r;
}

Matrix matmul_T(const FieldContext& ctx, const Matrix& a, const Matrix& b, u64* mul_count) {
    if (a.rows() != b.rows()) {
        throw DimensionMismatch("matmul_T: rows(A)=" + std::to_string(a.rows()) +
                                " != rows(B)=" + std::to_string(b.rows()));
    }
    const u64 p = ctx.modulus();
    Matrix r(a.cols(), b.cols());
    for (std::size_t i = 0; i < a.cols(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            u128 acc = 0;
            for (std::size_t l = 0; l < a.rows(); ++l) {
                acc += static_cast<u128>(a.at(l, i)) * b.at(l, j) % p;
            }
            r.at(i, j) = static_cast<u64>(acc % p);
        }
    }
    if (mul_count) *mul_count += a.cols() * b.cols() * a.rows();
    return r;
}

Matrix matmul(const FieldContext& ctx, const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) {
        throw DimensionMismatch("matmul: cols(A)=" + std::to_string(a.cols()) +
                                " != rows(B)=" + std::to_string(b.rows()));
    }
    const u64 p = ctx.modulus();
    Matrix r(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            u128 acc = 0;
            for (std::size_t l = 0; l < a.cols(); ++l) {
                acc += static_cast<u128>(a.at(i, l)) * b.at(l, j) % p;
            }
            r.at(i, j) = static_cast<u64>(acc % p);
        }
    }
    return r;
}

Matrix transpose(const Matrix& a) {
    Matrix r(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r.at(j, i) = a.at(i, j);
    return r;
}

void add_in_place(const FieldContext& ctx, Matrix& acc, const Matrix& delta) {
    require_same_shape(acc, delta, "add_in_place");
    for (std::size_t i = 0; i < acc.size(); ++i) acc.data()[i] = ctx.add(acc.data()[i], delta.data()[i]);
}

ColumnPartition partition_columns(const Matrix& a, std::size_t k) {
    if (k == 0 || a.cols() % k != 0) {
        throw IndivisibleDimension("partition_columns: k=" + std::to_string(k) +
                                   " does not divide cols=" + std::to_string(a.cols()));
    }
    const std::size_t w = a.cols() / k;
    ColumnPartition part{a.rows(), a.cols(), k, {}};
    part.blocks.reserve(k);
    for (std::size_t j = 0; j < k; ++j) {
        Matrix blk(a.rows(), w);
        for (std::size_t r = 0; r < a.rows(); ++r)
            for (std::size_t c = 0; c < w; ++c) blk.at(r, c) = a.at(r, j * w + c);
        part.blocks.push_back(std::move(blk));
    }
    return part;
}

Matrix concat_columns(const std::vector<Matrix>& blocks) {
    if (blocks.empty()) return Matrix();
    const std::size_t rows = blocks[0].rows();
    std::size_t cols = 0;
    for (const auto& b : blocks) {
        if (b.rows() != rows) throw DimensionMismatch("concat_columns: row count differs");
        cols += b.cols();
    }
    Matrix r(rows, cols);
    std::size_t off = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) r.at(i, off + j) = b.at(i, j);
        off += b.cols();
    }
    return r;
}

Matrix concat_rows(const std::vector<Matrix>& blocks) {
    if (blocks.empty()) return Matrix();
    const std::size_t cols = blocks[0].cols();
    std::size_t rows = 0;
    for (const auto& b : blocks) {
        if (b.cols() != cols) throw DimensionMismatch("concat_rows: column count differs");
        rows += b.rows();
    }
    Matrix r(rows, cols);
    std::size_t off = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < cols; ++j) r.at(off + i, j) = b.at(i, j);
        off += b.rows();
    }
    return r;
}

Matrix row_slice(const Matrix& a, std::size_t i, std::size_t k) {
    if (k == 0 || a.rows() % k != 0) {
        throw IndivisibleDimension("row_slice: k=" + std::to_string(k) +
                                   " does not divide rows=" + std::to_string(a.rows()));
    }
    if (i >= k) {
        throw IndexOutOfRange("row_slice: block index " + std::to_string(i) + " >= k=" + std::to_string(k));
    }
    const std::size_t h = a.rows() / k;
    Matrix r(h, a.cols());
    for (std::size_t rr = 0; rr < h; ++rr)
        for (std::size_t cc = 0; cc < a.cols(); ++cc) r.at(rr, cc) = a.at(i * h + rr, cc);
    return r;
}

}  // namespace polyshare
