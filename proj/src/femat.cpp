#include "icn/femat.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace icn {

namespace {

void require_same_field(const Matrix& a, const Matrix& b)
{
    if (!a.field() || !b.field() || !(*a.field() == *b.field()))
        throw DomainError("matrices over different fields");
}

// Reduced row echelon form of the first `pivot_cols` columns of m, in place.
// Returns the pivot column of each pivot row (in row order).
std::vector<std::size_t> rref(Matrix& m, std::size_t pivot_cols)
{
    const Field& f = *m.field();
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < pivot_cols && r < rows; ++c) {
        std::size_t sel = r;
        while (sel < rows && m(sel, c) == 0)
            ++sel;
        if (sel == rows)
            continue;
        if (sel != r)
            for (std::size_t j = 0; j < cols; ++j)
                std::swap(m(sel, j), m(r, j));
        const Elem s = f.inverse(m(r, c));
        if (s != 1) {
            const Elem* tr = f.times_row(s);
            for (std::size_t j = c; j < cols; ++j)
                m(r, j) = tr[m(r, j)];
        }
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m(i, c) == 0)
                continue;
            const Elem* tr = f.times_row(f.negate(m(i, c)));
            for (std::size_t j = c; j < cols; ++j)
                m(i, j) = f.plus(m(i, j), tr[m(r, j)]);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

} // namespace

Matrix::Matrix(FieldPtr field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, 0)
{
    if (!field_)
        throw DomainError("matrix without a field");
}

Matrix::Matrix(FieldPtr field, std::size_t rows, std::size_t cols, std::vector<Elem> entries)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(std::move(entries))
{
    if (!field_)
        throw DomainError("matrix without a field");
    if (data_.size() != rows * cols)
        throw DomainError("matrix entry count " + std::to_string(data_.size()) + " != " + std::to_string(rows) + "x" +
                          std::to_string(cols));
    for (Elem e : data_)
        if (!field_->contains(e))
            throw DomainError("matrix entry " + std::to_string(e) + " outside GF(" + std::to_string(field_->q()) + ")");
}

Matrix Matrix::identity(FieldPtr field, std::size_t n)
{
    Matrix m(std::move(field), n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

Elem Matrix::at(std::size_t r, std::size_t c) const
{
    if (r >= rows_ || c >= cols_)
        throw DomainError("matrix index out of range");
    return (*this)(r, c);
}

void Matrix::set(std::size_t r, std::size_t c, unsigned value)
{
    if (r >= rows_ || c >= cols_)
        throw DomainError("matrix index out of range");
    if (!field_->contains(value))
        throw DomainError("matrix entry out of range");
    (*this)(r, c) = Elem(value);
}

bool Matrix::is_zero() const noexcept
{
    return std::all_of(data_.begin(), data_.end(), [](Elem e) { return e == 0; });
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const
{
    if (r0 + nr > rows_ || c0 + nc > cols_)
        throw DomainError("block out of range");
    Matrix b(field_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        std::copy_n(data_.begin() + (r0 + i) * cols_ + c0, nc, b.data_.begin() + i * nc);
    return b;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& b)
{
    if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_)
        throw DomainError("block out of range");
    require_same_field(*this, b);
    for (std::size_t i = 0; i < b.rows_; ++i)
        std::copy_n(b.data_.begin() + i * b.cols_, b.cols_, data_.begin() + (r0 + i) * cols_ + c0);
}

Matrix Matrix::transpose() const
{
    Matrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

bool operator==(const Matrix& a, const Matrix& b) noexcept
{
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.data_ != b.data_)
        return false;
    if (!a.field_ || !b.field_)
        return a.field_ == b.field_;
    return *a.field_ == *b.field_;
}

Matrix operator*(const Matrix& a, const Matrix& b)
{
    require_same_field(a, b);
    if (a.cols() != b.rows())
        throw DomainError("matrix product shape mismatch");
    const Field& f = *a.field();
    Matrix c(a.field(), a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto out = c.row(i);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Elem s = a(i, k);
            if (s == 0)
                continue;
            const Elem* tr = f.times_row(s);
            auto br = b.row(k);
            for (std::size_t j = 0; j < b.cols(); ++j)
                out[j] = f.plus(out[j], tr[br[j]]);
        }
    }
    return c;
}

Matrix operator+(const Matrix& a, const Matrix& b)
{
    require_same_field(a, b);
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DomainError("matrix sum shape mismatch");
    const Field& f = *a.field();
    Matrix c(a.field(), a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            c(i, j) = f.plus(a(i, j), b(i, j));
    return c;
}

Matrix operator-(const Matrix& a)
{
    const Field& f = *a.field();
    Matrix c(a.field(), a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            c(i, j) = f.negate(a(i, j));
    return c;
}

Matrix operator-(const Matrix& a, const Matrix& b)
{
    return a + (-b);
}

std::vector<Elem> vec_mul(std::span<const Elem> v, const Matrix& m)
{
    if (v.size() != m.rows())
        throw DomainError("vector-matrix shape mismatch");
    const Field& f = *m.field();
    std::vector<Elem> out(m.cols(), 0);
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (v[k] == 0)
            continue;
        const Elem* tr = f.times_row(v[k]);
        auto mr = m.row(k);
        for (std::size_t j = 0; j < m.cols(); ++j)
            out[j] = f.plus(out[j], tr[mr[j]]);
    }
    return out;
}

std::size_t rank(const Matrix& m)
{
    if (m.empty())
        return 0;
    // Eliminate along the shorter dimension.
    Matrix w = m.rows() <= m.cols() ? m : m.transpose();
    const Field& f = *w.field();
    const std::size_t rows = w.rows();
    const std::size_t cols = w.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t sel = r;
        while (sel < rows && w(sel, c) == 0)
            ++sel;
        if (sel == rows)
            continue;
        if (sel != r)
            for (std::size_t j = c; j < cols; ++j)
                std::swap(w(sel, j), w(r, j));
        const Elem s = f.inverse(w(r, c));
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (w(i, c) == 0)
                continue;
            const Elem* tr = f.times_row(f.negate(f.times(w(i, c), s)));
            for (std::size_t j = c; j < cols; ++j)
                w(i, j) = f.plus(w(i, j), tr[w(r, j)]);
        }
        ++r;
    }
    return r;
}

Matrix invert(const Matrix& m)
{
    if (m.rows() != m.cols())
        throw DomainError("invert: matrix is not square");
    const std::size_t n = m.rows();
    Matrix aug = hconcat(m, Matrix::identity(m.field(), n));
    const auto pivots = rref(aug, n);
    if (pivots.size() < n)
        throw SingularMatrix(pivots.size());
    return aug.block(0, n, n, n);
}

std::optional<Matrix> solve_right(const Matrix& a, const Matrix& b)
{
    if (a.rows() != b.rows())
        throw DomainError("solve_right: row count mismatch");
    require_same_field(a, b);
    Matrix aug = hconcat(a, b);
    const auto pivots = rref(aug, a.cols());
    for (std::size_t r = pivots.size(); r < aug.rows(); ++r)
        for (std::size_t j = 0; j < b.cols(); ++j)
            if (aug(r, a.cols() + j) != 0)
                return std::nullopt;
    Matrix t(a.field(), a.cols(), b.cols());
    for (std::size_t r = 0; r < pivots.size(); ++r)
        for (std::size_t j = 0; j < b.cols(); ++j)
            t(pivots[r], j) = aug(r, a.cols() + j);
    return t;
}

Matrix hconcat(std::span<const Matrix> parts)
{
    if (parts.empty())
        throw DomainError("hconcat of nothing");
    std::size_t cols = 0;
    for (const auto& p : parts) {
        require_same_field(parts[0], p);
        if (p.rows() != parts[0].rows())
            throw DomainError("hconcat: row count mismatch");
        cols += p.cols();
    }
    Matrix out(parts[0].field(), parts[0].rows(), cols);
    std::size_t c0 = 0;
    for (const auto& p : parts) {
        out.set_block(0, c0, p);
        c0 += p.cols();
    }
    return out;
}

Matrix hconcat(const Matrix& a, const Matrix& b)
{
    const Matrix parts[] = {a, b};
    return hconcat(parts);
}

Matrix vconcat(std::span<const Matrix> parts)
{
    if (parts.empty())
        throw DomainError("vconcat of nothing");
    std::size_t rows = 0;
    for (const auto& p : parts) {
        require_same_field(parts[0], p);
        if (p.cols() != parts[0].cols())
            throw DomainError("vconcat: column count mismatch");
        rows += p.rows();
    }
    Matrix out(parts[0].field(), rows, parts[0].cols());
    std::size_t r0 = 0;
    for (const auto& p : parts) {
        out.set_block(r0, 0, p);
        r0 += p.rows();
    }
    return out;
}

Matrix concat_indexed(std::span<const Matrix> mats, std::span<const std::size_t> subset)
{
    if (mats.empty())
        throw DomainError("concat_indexed: no matrices");
    for (const auto& mi : mats) {
        require_same_field(mats[0], mi);
        if (mi.rows() != mats[0].rows())
            throw DomainError("concat_indexed: row count mismatch");
    }
    std::vector<std::size_t> idx(subset.begin(), subset.end());
    std::sort(idx.begin(), idx.end());
    if (std::adjacent_find(idx.begin(), idx.end()) != idx.end())
        throw DomainError("concat_indexed: repeated index");
    std::size_t cols = 0;
    for (std::size_t i : idx) {
        if (i >= mats.size())
            throw DomainError("concat_indexed: index " + std::to_string(i + 1) + " out of range");
        cols += mats[i].cols();
    }
    Matrix out(mats[0].field(), mats[0].rows(), cols);
    std::size_t c0 = 0;
    for (std::size_t i : idx) {
        out.set_block(0, c0, mats[i]);
        c0 += mats[i].cols();
    }
    return out;
}

Matrix concat_indexed(std::span<const Matrix> mats, std::uint64_t mask)
{
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < 64; ++i)
        if (mask >> i & 1U)
            idx.push_back(i);
    return concat_indexed(mats, idx);
}

Matrix block_selector(FieldPtr field, std::size_t blocks, std::size_t n, std::size_t which)
{
    if (which >= blocks)
        throw DomainError("block_selector: block out of range");
    Matrix s(std::move(field), blocks * n, n);
    for (std::size_t i = 0; i < n; ++i)
        s(which * n + i, i) = 1;
    return s;
}

EchelonBasis::EchelonBasis(FieldPtr field, std::size_t dim) : field_(std::move(field)), dim_(dim) {}

void EchelonBasis::reduce(std::vector<Elem>& v) const
{
    const Field& f = *field_;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const Elem c = v[pivots_[i]];
        if (c == 0)
            continue;
        const Elem* tr = f.times_row(f.negate(c));
        const auto& row = rows_[i];
        for (std::size_t j = pivots_[i]; j < dim_; ++j)
            v[j] = f.plus(v[j], tr[row[j]]);
    }
}

bool EchelonBasis::insert(std::span<const Elem> v)
{
    if (v.size() != dim_)
        throw DomainError("EchelonBasis: vector length mismatch");
    std::vector<Elem> w(v.begin(), v.end());
    reduce(w);
    std::size_t p = 0;
    while (p < dim_ && w[p] == 0)
        ++p;
    if (p == dim_)
        return false;
    const Field& f = *field_;
    const Elem* tr = f.times_row(f.inverse(w[p]));
    for (std::size_t j = p; j < dim_; ++j)
        w[j] = tr[w[j]];
    // Keep earlier rows reduced at the new pivot so reduce() stays one pass.
    for (auto& row : rows_) {
        const Elem c = row[p];
        if (c == 0)
            continue;
        const Elem* tc = f.times_row(f.negate(c));
        for (std::size_t j = p; j < dim_; ++j)
            row[j] = f.plus(row[j], tc[w[j]]);
    }
    rows_.push_back(std::move(w));
    pivots_.push_back(p);
    return true;
}

bool EchelonBasis::contains(std::span<const Elem> v) const
{
    if (v.size() != dim_)
        throw DomainError("EchelonBasis: vector length mismatch");
    std::vector<Elem> w(v.begin(), v.end());
    reduce(w);
    return std::all_of(w.begin(), w.end(), [](Elem e) { return e == 0; });
}

void EchelonBasis::insert_columns(const Matrix& m)
{
    std::vector<Elem> col(m.rows());
    for (std::size_t j = 0; j < m.cols(); ++j) {
        for (std::size_t i = 0; i < m.rows(); ++i)
            col[i] = m(i, j);
        insert(col);
    }
}

std::size_t EchelonBasis::deficit(const Matrix& m) const
{
    EchelonBasis copy = *this;
    std::size_t added = 0;
    std::vector<Elem> col(m.rows());
    for (std::size_t j = 0; j < m.cols(); ++j) {
        for (std::size_t i = 0; i < m.rows(); ++i)
            col[i] = m(i, j);
        added += copy.insert(col) ? 1 : 0;
    }
    return added;
}

} // namespace icn
