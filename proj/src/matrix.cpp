#include "polyaut/matrix.hpp"

#include "polyaut/errors.hpp"

namespace polyaut {

Matrix::Matrix(FieldSpec field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols),
      a_(rows * cols, Scalar::zero(field_)) {}

Matrix Matrix::identity(const FieldSpec& field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar::one(field);
    return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (cols_ != o.rows_ || field_ != o.field_) fail(Err::ArityMismatch, "matrix product shape");
    Matrix r(field_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Scalar& v = at(i, k);
            if (v.is_zero()) continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                r.at(i, j) = r.at(i, j) + v * o.at(k, j);
        }
    return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || field_ != o.field_)
        fail(Err::ArityMismatch, "matrix difference shape");
    Matrix r(field_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
}

bool Matrix::operator==(const Matrix& o) const {
    return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

bool Matrix::is_zero() const {
    for (const auto& s : a_)
        if (!s.is_zero()) return false;
    return true;
}

bool Matrix::is_identity() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) {
            if (i == j ? !at(i, j).is_one() : !at(i, j).is_zero()) return false;
        }
    return true;
}

namespace {

// Gaussian elimination with partial (first nonzero) pivoting over an exact
// field; transforms in place, returns the determinant scale and rank.
struct Elim {
    Matrix m;
    Scalar det_scale;
    std::size_t rank = 0;

    explicit Elim(Matrix mm) : m(std::move(mm)), det_scale(Scalar::one(m.field())) {}

    void run(Matrix* companion) {
        std::size_t r = 0;
        for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
            std::size_t piv = r;
            while (piv < m.rows() && m.at(piv, c).is_zero()) ++piv;
            if (piv == m.rows()) continue;
            if (piv != r) {
                swap_rows(m, piv, r);
                if (companion) swap_rows(*companion, piv, r);
                det_scale = det_scale.neg();
            }
            Scalar p = m.at(r, c);
            det_scale = det_scale * p;
            Scalar pinv = p.inv();
            scale_row(m, r, pinv);
            if (companion) scale_row(*companion, r, pinv);
            for (std::size_t i = 0; i < m.rows(); ++i) {
                if (i == r || m.at(i, c).is_zero()) continue;
                Scalar f = m.at(i, c);
                sub_scaled(m, i, r, f);
                if (companion) sub_scaled(*companion, i, r, f);
            }
            ++r;
        }
        rank = r;
    }

    static void swap_rows(Matrix& a, std::size_t i, std::size_t j) {
        for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a.at(i, c), a.at(j, c));
    }
    static void scale_row(Matrix& a, std::size_t i, const Scalar& s) {
        for (std::size_t c = 0; c < a.cols(); ++c) a.at(i, c) = a.at(i, c) * s;
    }
    static void sub_scaled(Matrix& a, std::size_t i, std::size_t j, const Scalar& f) {
        for (std::size_t c = 0; c < a.cols(); ++c) a.at(i, c) = a.at(i, c) - f * a.at(j, c);
    }
};

} // namespace

Scalar Matrix::det() const {
    if (rows_ != cols_) fail(Err::ArityMismatch, "determinant of non-square matrix");
    Elim e(*this);
    e.run(nullptr);
    if (e.rank < rows_) return Scalar::zero(field_);
    return e.det_scale;
}

Matrix Matrix::inverse() const {
    if (rows_ != cols_) fail(Err::ArityMismatch, "inverse of non-square matrix");
    Matrix id = identity(field_, rows_);
    Elim e(*this);
    e.run(&id);
    if (e.rank < rows_) fail(Err::SingularSystem, "matrix is singular");
    return id;
}

Matrix Matrix::pow(unsigned long e) const {
    if (rows_ != cols_) fail(Err::ArityMismatch, "power of non-square matrix");
    Matrix r = identity(field_, rows_);
    Matrix b = *this;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

std::optional<std::vector<Scalar>> Matrix::solve(const std::vector<Scalar>& b) const {
    if (rows_ != cols_ || b.size() != rows_) fail(Err::ArityMismatch, "solve shape");
    Matrix rhs(field_, rows_, 1);
    for (std::size_t i = 0; i < rows_; ++i) rhs.at(i, 0) = b[i];
    Elim e(*this);
    e.run(&rhs);
    if (e.rank < rows_) return std::nullopt;
    std::vector<Scalar> x;
    x.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) x.push_back(rhs.at(i, 0));
    return x;
}

} // namespace polyaut
