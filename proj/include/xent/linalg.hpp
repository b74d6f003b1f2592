#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace xent::linalg {

/// Dense row-major matrix of doubles. Small and value-semantic; sized for the
/// block sizes this library needs (up to a few hundred rows).
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<double>& data() const noexcept { return data_; }
    std::vector<double>& data() noexcept { return data_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Lower-triangular Cholesky factor of a symmetric matrix, or nullopt when a
/// nonpositive pivot appears. Failure to factor is this library's working
/// definition of "not positive definite". When factoring fails and
/// `failed_pivot` is non-null, it receives the offending pivot value.
std::optional<Matrix> cholesky(const Matrix& a, double* failed_pivot = nullptr);

/// log det(A) for symmetric positive definite A, from its Cholesky factor.
double logdet_from_cholesky(const Matrix& lower);

/// Solve L L^T x = b in place of the returned vector.
std::vector<double> cholesky_solve(const Matrix& lower, const std::vector<double>& b);

/// Inverse of A = L L^T.
Matrix cholesky_inverse(const Matrix& lower);

/// y = A x.
std::vector<double> matvec(const Matrix& a, const std::vector<double>& x);

/// C = A B.
Matrix matmul(const Matrix& a, const Matrix& b);

/// x^T A y.
double quadratic_form(const Matrix& a, const std::vector<double>& x,
                      const std::vector<double>& y);

/// Solve a general square system A x = b by Gaussian elimination with partial
/// pivoting. Returns nullopt when A is numerically singular.
std::optional<std::vector<double>> solve(Matrix a, std::vector<double> b);

}  // namespace xent::linalg
