#include "wasep/linalg.hpp"

#include <cmath>

namespace wasep {

Matrix cholesky(const Matrix& A) {
    if (A.rows != A.cols) throw std::invalid_argument("cholesky: not square");
    const std::size_t n = A.rows;
    Matrix L(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = A(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= L(i, k) * L(j, k);
            if (i == j) {
                if (s <= 0.0) throw NotPositiveDefinite("cholesky: pivot <= 0");
                L(i, i) = std::sqrt(s);
            } else {
                L(i, j) = s / L(j, j);
            }
        }
    }
    return L;
}

std::vector<double> cholesky_solve(const Matrix& L, std::vector<double> b) {
    const std::size_t n = L.rows;
    for (std::size_t i = 0; i < n; ++i) {
        double s = b[i];
        for (std::size_t k = 0; k < i; ++k) s -= L(i, k) * b[k];
        b[i] = s / L(i, i);
    }
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t k = i + 1; k < n; ++k) s -= L(k, i) * b[k];
        b[i] = s / L(i, i);
    }
    return b;
}

std::vector<double> spd_solve(const Matrix& A, const std::vector<double>& b) {
    return cholesky_solve(cholesky(A), b);
}

double spectral_norm(const Matrix& A, int iters) {
    std::vector<double> v(A.cols, 1.0 / std::sqrt(double(A.cols)));
    std::vector<double> av(A.rows), atav(A.cols);
    double lambda = 0.0;
    for (int it = 0; it < iters; ++it) {
        for (std::size_t i = 0; i < A.rows; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < A.cols; ++j) s += A(i, j) * v[j];
            av[i] = s;
        }
        for (std::size_t j = 0; j < A.cols; ++j) {
            double s = 0.0;
            for (std::size_t i = 0; i < A.rows; ++i) s += A(i, j) * av[i];
            atav[j] = s;
        }
        double norm = 0.0;
        for (double x : atav) norm += x * x;
        norm = std::sqrt(norm);
        if (norm == 0.0) return 0.0;
        lambda = norm;
        for (std::size_t j = 0; j < A.cols; ++j) v[j] = atav[j] / norm;
    }
    return std::sqrt(lambda);
}

double dot(const std::vector<double>& x, const std::vector<double>& y) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

}  // namespace wasep
