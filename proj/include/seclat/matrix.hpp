#ifndef SECLAT_MATRIX_HPP
#define SECLAT_MATRIX_HPP

#include <cstddef>
#include <vector>

#include "seclat/rational.hpp"

namespace seclat {

using RationalVector = std::vector<Rational>;

// Dense row-major matrix of exact rationals. Dimensions here never exceed a
// few dozen, so plain Gaussian elimination over Q is adequate everywhere.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols);
    explicit RationalMatrix(const std::vector<RationalVector>& rows);

    static RationalMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    RationalVector row(std::size_t i) const;
    void set_row(std::size_t i, const RationalVector& v);

    RationalMatrix transpose() const;
    bool is_integral() const;
    bool operator==(const RationalMatrix& other) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix operator*(const Rational& c, const RationalMatrix& a);
RationalVector operator*(const RationalVector& v, const RationalMatrix& a);

Rational dot(const RationalVector& a, const RationalVector& b);

Rational determinant(RationalMatrix a);
std::size_t rank(RationalMatrix a);

/// Throws InvalidArgument when the matrix is singular or not square.
RationalMatrix inverse(const RationalMatrix& a);

/// Block-diagonal assembly.
RationalMatrix block_diagonal(const RationalMatrix& a, const RationalMatrix& b);

/// Row Hermite normal form of the Z-span of the given integer rows; zero rows
/// are dropped, so the result is a basis of the generated group.
std::vector<std::vector<BigInt>> hermite_basis(std::vector<std::vector<BigInt>> rows);

/// Z-basis of the group generated by rational rows (common denominator cleared,
/// Hermite-reduced, denominator restored).
RationalMatrix integer_span_basis(const std::vector<RationalVector>& generators);

}  // namespace seclat

#endif
