#include "epsrs/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "epsrs/errors.hpp"

namespace epsrs {

namespace {

bool finite(cplx z) noexcept { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw InputError(std::string("shape mismatch in ") + op + ": " + std::to_string(a.rows()) +
                         "x" + std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
    }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {
    if (rows == 0 || cols == 0) throw InputError("matrix dimensions must be positive");
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (rows == 0 || cols == 0) throw InputError("matrix dimensions must be positive");
    if (data_.size() != rows * cols) {
        throw InputError("expected " + std::to_string(rows * cols) + " entries, got " +
                         std::to_string(data_.size()));
    }
    if (!all_finite()) throw InputError("matrix entries must be finite");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const cplx> diag) {
    ComplexMatrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    if (!m.all_finite()) throw InputError("matrix entries must be finite");
    return m;
}

ComplexMatrix ComplexMatrix::from_rows(std::initializer_list<std::initializer_list<cplx>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r ? rows.begin()->size() : 0;
    std::vector<cplx> entries;
    entries.reserve(r * c);
    for (const auto& row : rows) {
        if (row.size() != c) throw InputError("ragged row list");
        entries.insert(entries.end(), row.begin(), row.end());
    }
    return ComplexMatrix(r, c, std::move(entries));
}

ComplexVector ComplexMatrix::column(std::size_t j) const {
    ComplexVector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = std::conj((*this)(i, j));
    return t;
}

bool ComplexMatrix::all_finite() const noexcept {
    for (const auto& z : data_)
        if (!finite(z)) return false;
    return true;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    require_same_shape(*this, other, "+");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    require_same_shape(*this, other, "-");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx scale) noexcept {
    for (auto& z : data_) z *= scale;
    return *this;
}

ComplexMatrix& ComplexMatrix::add_to_diagonal(cplx shift) noexcept {
    const std::size_t n = rows_ < cols_ ? rows_ : cols_;
    for (std::size_t i = 0; i < n; ++i) (*this)(i, i) += shift;
    return *this;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }

ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
    if (lhs.cols() != rhs.rows()) {
        throw InputError("shape mismatch in *: " + std::to_string(lhs.rows()) + "x" +
                         std::to_string(lhs.cols()) + " times " + std::to_string(rhs.rows()) + "x" +
                         std::to_string(rhs.cols()));
    }
    ComplexMatrix out(lhs.rows(), rhs.cols());
    for (std::size_t i = 0; i < lhs.rows(); ++i) {
        auto out_row = out.row(i);
        for (std::size_t k = 0; k < lhs.cols(); ++k) {
            const cplx a = lhs(i, k);
            if (a == cplx{}) continue;
            auto r = rhs.row(k);
            for (std::size_t j = 0; j < rhs.cols(); ++j) out_row[j] += a * r[j];
        }
    }
    return out;
}

ComplexMatrix operator*(cplx scale, ComplexMatrix m) { return m *= scale; }

ComplexVector operator*(const ComplexMatrix& m, std::span<const cplx> v) {
    if (m.cols() != v.size()) throw InputError("shape mismatch in matrix-vector product");
    ComplexVector out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        cplx acc{};
        auto r = m.row(i);
        for (std::size_t j = 0; j < v.size(); ++j) acc += r[j] * v[j];
        out[i] = acc;
    }
    return out;
}

ComplexMatrix matrix_power(const ComplexMatrix& a, unsigned k) {
    if (!a.is_square()) throw InputError("matrix_power requires a square matrix");
    ComplexMatrix out = ComplexMatrix::identity(a.rows());
    for (unsigned i = 0; i < k; ++i) out = out * a;
    return out;
}

ComplexMatrix outer(std::span<const cplx> u, std::span<const cplx> v) {
    ComplexMatrix m(u.size(), v.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = u[i] * std::conj(v[j]);
    return m;
}

cplx inner(std::span<const cplx> u, std::span<const cplx> v) {
    if (u.size() != v.size()) throw InputError("inner product of vectors with different lengths");
    cplx acc{};
    for (std::size_t i = 0; i < u.size(); ++i) acc += std::conj(u[i]) * v[i];
    return acc;
}

double norm2(std::span<const cplx> v) {
    // scaled accumulation avoids overflow for large back-substituted vectors
    double scale = 0.0;
    for (const auto& z : v) scale = std::max({scale, std::abs(z.real()), std::abs(z.imag())});
    if (scale == 0.0) return 0.0;
    double sum = 0.0;
    for (const auto& z : v) sum += std::norm(z / scale);
    return scale * std::sqrt(sum);
}

ComplexVector normalized(ComplexVector v) {
    const double n = norm2(v);
    if (n == 0.0) return v;
    for (auto& z : v) z /= n;
    return v;
}

}  // namespace epsrs
