#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace epsrs {

using cplx = std::complex<double>;
using ComplexVector = std::vector<cplx>;

/**
 * Dense row-major complex matrix.
 *
 * Entries supplied from outside (the vector constructor, from_rows, JSON) are
 * checked to be finite. Results of arithmetic are not re-checked: resolvents
 * evaluated close to a pole legitimately produce very large entries.
 */
class ComplexMatrix {
public:
    ComplexMatrix() = default;

    /// Zero matrix. Throws InputError if either dimension is zero.
    ComplexMatrix(std::size_t rows, std::size_t cols);

    /// Takes ownership of row-major entries; validates size and finiteness.
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diagonal(std::span<const cplx> diag);
    static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<cplx>> rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool is_square() const noexcept { return rows_ == cols_; }
    bool empty() const noexcept { return data_.empty(); }

    cplx& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

    std::span<cplx> entries() noexcept { return data_; }
    std::span<const cplx> entries() const noexcept { return data_; }

    std::span<cplx> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }
    std::span<const cplx> row(std::size_t i) const noexcept { return {data_.data() + i * cols_, cols_}; }

    ComplexVector column(std::size_t j) const;

    /// Conjugate transpose.
    ComplexMatrix adjoint() const;

    bool all_finite() const noexcept;

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(cplx scale) noexcept;

    /// Adds `shift` to every diagonal entry.
    ComplexMatrix& add_to_diagonal(cplx shift) noexcept;

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(cplx scale, ComplexMatrix m);
ComplexVector operator*(const ComplexMatrix& m, std::span<const cplx> v);

/// a^k by repeated multiplication; a^0 is the identity.
ComplexMatrix matrix_power(const ComplexMatrix& a, unsigned k);

/// Outer product |u><v|.
ComplexMatrix outer(std::span<const cplx> u, std::span<const cplx> v);

/// <u|v> = sum conj(u_i) v_i.
cplx inner(std::span<const cplx> u, std::span<const cplx> v);

double norm2(std::span<const cplx> v);

/// Returns v / ||v||_2; a zero vector is returned unchanged.
ComplexVector normalized(ComplexVector v);

}  // namespace epsrs
