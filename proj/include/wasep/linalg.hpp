#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace wasep {

// Dense row-major square/rectangular matrix, just enough for the solvers here.
struct Matrix {
    std::size_t rows = 0, cols = 0;
    std::vector<double> a;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0) {}
    double& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

struct NotPositiveDefinite : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// In-place lower Cholesky factor of a symmetric matrix; throws
// NotPositiveDefinite on a nonpositive pivot.
Matrix cholesky(const Matrix& A);

std::vector<double> cholesky_solve(const Matrix& L, std::vector<double> b);

// Symmetric positive semidefinite solve A x = b via Cholesky of A.
std::vector<double> spd_solve(const Matrix& A, const std::vector<double>& b);

// Largest singular value of A by power iteration on A^T A.
double spectral_norm(const Matrix& A, int iters = 60);

double dot(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace wasep
