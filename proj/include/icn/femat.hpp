#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "icn/galois.hpp"

namespace icn {

/// Dense row-major matrix over a finite field. Value type; operations below
/// are pure.
class Matrix {
public:
    Matrix() = default;
    Matrix(FieldPtr field, std::size_t rows, std::size_t cols);
    /// Throws DomainError on size mismatch or out-of-range entries.
    Matrix(FieldPtr field, std::size_t rows, std::size_t cols, std::vector<Elem> entries);

    static Matrix identity(FieldPtr field, std::size_t n);

    const FieldPtr& field() const noexcept { return field_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    Elem operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }
    Elem& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    Elem at(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, unsigned value);

    std::span<const Elem> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }
    std::span<Elem> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
    const std::vector<Elem>& entries() const noexcept { return data_; }

    bool is_zero() const noexcept;

    /// Rows [r0, r0+nr), columns [c0, c0+nc).
    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    void set_block(std::size_t r0, std::size_t c0, const Matrix& b);
    Matrix transpose() const;

    friend bool operator==(const Matrix& a, const Matrix& b) noexcept;

private:
    FieldPtr field_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Elem> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a);

/// Row vector times matrix.
std::vector<Elem> vec_mul(std::span<const Elem> v, const Matrix& m);

/// Row rank by Gaussian elimination.
std::size_t rank(const Matrix& m);

/// Inverse of a square matrix; throws SingularMatrix (carrying the rank).
Matrix invert(const Matrix& m);

/// Some T with A*T = B, or nullopt when col(B) is not inside col(A).
/// Pivots are taken first-nonzero in column order and free variables are
/// zero, so the witness is deterministic.
std::optional<Matrix> solve_right(const Matrix& a, const Matrix& b);

Matrix hconcat(std::span<const Matrix> parts);
Matrix hconcat(const Matrix& a, const Matrix& b);
Matrix vconcat(std::span<const Matrix> parts);

/// [M_{i1} | ... | M_{id}] for the (0-based) indices in `subset`, taken in
/// increasing order. All matrices must share field and row count; with an
/// empty subset the result has 0 columns and the common row count.
Matrix concat_indexed(std::span<const Matrix> mats, std::span<const std::size_t> subset);
/// Same, with the subset given as a bitmask over the first 64 indices.
Matrix concat_indexed(std::span<const Matrix> mats, std::uint64_t mask);

/// Selector matrix of shape (blocks*n) x n with the identity at block `which`.
Matrix block_selector(FieldPtr field, std::size_t blocks, std::size_t n, std::size_t which);

/// Incremental row-echelon basis of a subspace of F_q^dim (vectors as rows).
/// Used by the search kernels to test span membership without re-running
/// elimination from scratch.
class EchelonBasis {
public:
    EchelonBasis() = default;
    EchelonBasis(FieldPtr field, std::size_t dim);

    std::size_t dim() const noexcept { return dim_; }
    std::size_t rank() const noexcept { return pivots_.size(); }
    /// Reduces v against the basis; returns true (and extends the basis) if
    /// v was independent.
    bool insert(std::span<const Elem> v);
    bool contains(std::span<const Elem> v) const;
    /// Inserts every column of m (treated as vectors of length m.rows()).
    void insert_columns(const Matrix& m);
    /// Number of columns of m not already in the span, counted incrementally.
    std::size_t deficit(const Matrix& m) const;

private:
    void reduce(std::vector<Elem>& v) const;

    FieldPtr field_;
    std::size_t dim_ = 0;
    std::vector<std::vector<Elem>> rows_; // normalized: pivot entry 1
    std::vector<std::size_t> pivots_;
};

} // namespace icn
