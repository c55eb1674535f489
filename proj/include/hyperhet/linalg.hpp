#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace hyperhet {

/// Small dense row-major matrix.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), data(r * c, fill) {}
    static Matrix identity(std::size_t n);

    double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
    std::vector<double> apply(const std::vector<double>& v) const;
    double max_abs() const;
};

/// One eigenvalue (or a cluster of coincident ones) with a basis of its eigenspace.
struct EigenCluster {
    std::complex<double> value;
    int multiplicity = 1;                     ///< algebraic multiplicity
    std::vector<std::vector<double>> basis;   ///< real eigenvectors, unit norm; empty for complex values
};

struct EigenDecomposition {
    std::vector<std::complex<double>> values;  ///< all eigenvalues with repetition, sorted by real part descending
    std::vector<EigenCluster> clusters;
    bool closed_form = false;                  ///< characteristic-polynomial roots rather than an iterative solver
    bool repeated() const;
};

/// True when |a - b| < 1e-9 * max(1, |a|).
bool eigenvalues_coincide(std::complex<double> a, std::complex<double> b);

/**
 * @brief Eigenvalues and real eigenvectors of a square matrix.
 *
 * Up to 3x3 the characteristic polynomial is solved in closed form and the
 * roots are polished by Newton steps; larger matrices use an iterative real
 * Schur solver. Coincident eigenvalues are merged into one cluster with an
 * explicit multiplicity instead of being perturbed apart.
 */
EigenDecomposition eigen_decompose(const Matrix& a);

/// Roots of x^3 + p2 x^2 + p1 x + p0, including complex ones.
std::vector<std::complex<double>> cubic_roots(double p2, double p1, double p0);

/// Solve a x = b for square a (partial pivoting); throws when singular.
std::vector<double> solve_linear(const Matrix& a, const std::vector<double>& b);

} // namespace hyperhet
