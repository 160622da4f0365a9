#ifndef POLYAUT_MATRIX_HPP
#define POLYAUT_MATRIX_HPP

#include <optional>
#include <vector>

#include "polyaut/scalar.hpp"

namespace polyaut {

// Dense matrices over an exact coefficient field. Used for Jacobians,
// affine word factors, Vandermonde solves and invariant linear algebra.
class Matrix {
public:
    Matrix(FieldSpec field, std::size_t rows, std::size_t cols);
    static Matrix identity(const FieldSpec& field, std::size_t n);

    const FieldSpec& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Scalar& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Scalar& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    Matrix operator*(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    bool operator==(const Matrix& o) const;

    bool is_zero() const;
    bool is_identity() const;

    Scalar det() const;            // square only
    Matrix inverse() const;        // throws SingularSystem
    Matrix pow(unsigned long e) const;

    // Solve A x = b for square A; nullopt when singular.
    std::optional<std::vector<Scalar>> solve(const std::vector<Scalar>& b) const;

private:
    FieldSpec field_;
    std::size_t rows_, cols_;
    std::vector<Scalar> a_;
};

} // namespace polyaut

#endif
