#include "hyperhet/linalg.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hyperhet {

namespace {

Eigen::MatrixXd to_eigen(const Matrix& a) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(a.rows), static_cast<Eigen::Index>(a.cols));
    for (std::size_t i = 0; i < a.rows; ++i) {
        for (std::size_t j = 0; j < a.cols; ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = a(i, j);
    }
    return m;
}

// Newton polish of a real root of a monic polynomial given low-to-high coefficients.
double polish(double x, const std::vector<double>& c) {
    for (int it = 0; it < 6; ++it) {
        double v = 0.0, d = 0.0;
        for (std::size_t k = c.size(); k-- > 0;) {
            d = d * x + v;
            v = v * x + c[k];
        }
        if (d == 0.0 || !std::isfinite(d)) break;
        const double step = v / d;
        // Tiny derivatives mean a (near) multiple root; Newton would wander.
        if (std::abs(d) < 1e-6 * std::max(1.0, std::abs(x) * std::abs(x))) break;
        x -= step;
        if (std::abs(step) < 1e-17 * std::max(1.0, std::abs(x))) break;
    }
    return x;
}

std::vector<std::vector<double>> null_basis(const Matrix& a, std::complex<double> lambda) {
    Eigen::MatrixXd m = to_eigen(a);
    m -= lambda.real() * Eigen::MatrixXd::Identity(m.rows(), m.cols());
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const auto& v = svd.matrixV();
    const double tol = 1e-7 * std::max(1.0, a.max_abs());
    std::vector<std::vector<double>> basis;
    const Eigen::Index n = m.cols();
    for (Eigen::Index k = n - 1; k >= 0; --k) {
        if (s(k) > tol && !basis.empty()) break;
        std::vector<double> vec(static_cast<std::size_t>(n));
        // Fix the sign so that the largest entry is positive; keeps output deterministic.
        Eigen::Index arg = 0;
        for (Eigen::Index i = 0; i < n; ++i) {
            if (std::abs(v(i, k)) > std::abs(v(arg, k)) + 1e-12) arg = i;
        }
        const double sign = v(arg, k) < 0 ? -1.0 : 1.0;
        for (Eigen::Index i = 0; i < n; ++i) vec[static_cast<std::size_t>(i)] = sign * v(i, k);
        basis.push_back(vec);
    }
    return basis;
}

} // namespace

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

std::vector<double> Matrix::apply(const std::vector<double>& v) const {
    if (v.size() != cols) throw std::invalid_argument("matrix-vector size mismatch");
    std::vector<double> out(rows, 0.0);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) out[i] += (*this)(i, j) * v[j];
    }
    return out;
}

double Matrix::max_abs() const {
    double m = 0.0;
    for (double x : data) m = std::max(m, std::abs(x));
    return m;
}

bool eigenvalues_coincide(std::complex<double> a, std::complex<double> b) {
    return std::abs(a - b) < 1e-9 * std::max(1.0, std::abs(a));
}

bool EigenDecomposition::repeated() const {
    return std::any_of(clusters.begin(), clusters.end(), [](const EigenCluster& c) { return c.multiplicity > 1; });
}

std::vector<std::complex<double>> cubic_roots(double p2, double p1, double p0) {
    using cd = std::complex<double>;
    const double shift = p2 / 3.0;
    const double P = p1 - p2 * p2 / 3.0;
    const double Q = 2.0 * p2 * p2 * p2 / 27.0 - p2 * p1 / 3.0 + p0;
    const double D = Q * Q / 4.0 + P * P * P / 27.0;
    std::vector<cd> roots;
    if (P == 0.0 && Q == 0.0) {
        roots = {cd(-shift), cd(-shift), cd(-shift)};
    } else if (D < 0.0) {
        const double r = 2.0 * std::sqrt(-P / 3.0);
        const double arg = std::clamp(3.0 * Q / (2.0 * P) * std::sqrt(-3.0 / P), -1.0, 1.0);
        const double theta = std::acos(arg) / 3.0;
        for (int k = 0; k < 3; ++k) roots.emplace_back(r * std::cos(theta - 2.0 * std::numbers::pi * k / 3.0) - shift);
    } else {
        const double sq = std::sqrt(D);
        const double u = std::cbrt(-Q / 2.0 + sq);
        const double v = std::cbrt(-Q / 2.0 - sq);
        roots.emplace_back(u + v - shift);
        const double re = -(u + v) / 2.0 - shift;
        const double im = std::sqrt(3.0) / 2.0 * (u - v);
        roots.emplace_back(re, im);
        roots.emplace_back(re, -im);
    }
    return roots;
}

EigenDecomposition eigen_decompose(const Matrix& a) {
    if (a.rows != a.cols || a.rows == 0) throw std::invalid_argument("eigen_decompose needs a nonempty square matrix");
    using cd = std::complex<double>;
    const std::size_t n = a.rows;
    EigenDecomposition out;
    std::vector<cd> values;
    const double trace = [&] {
        double t = 0.0;
        for (std::size_t i = 0; i < n; ++i) t += a(i, i);
        return t;
    }();
    if (n <= 3) {
        out.closed_form = true;
        if (n == 1) {
            values = {cd(a(0, 0))};
        } else if (n == 2) {
            const double det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
            const double half = trace / 2.0;
            const double disc = half * half - det;
            if (disc >= 0.0) {
                // Stable form avoids cancellation for the smaller root.
                const double big = half + std::copysign(std::sqrt(disc), half == 0.0 ? 1.0 : half);
                const double small = big == 0.0 ? 0.0 : det / big;
                values = {cd(big), cd(small)};
            } else {
                values = {cd(half, std::sqrt(-disc)), cd(half, -std::sqrt(-disc))};
            }
        } else {
            const double m2 = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0) + a(0, 0) * a(2, 2) - a(0, 2) * a(2, 0) +
                              a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1);
            const double det = a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
                               a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
                               a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
            const std::vector<double> charpoly = {-det, m2, -trace, 1.0};
            values = cubic_roots(-trace, m2, -det);
            for (auto& v : values) {
                if (v.imag() == 0.0) v = cd(polish(v.real(), charpoly));
            }
        }
        // A double root of the characteristic polynomial is only resolved to
        // about sqrt(machine epsilon); pin close pairs with the trace identity.
        for (std::size_t i = 0; i < values.size(); ++i) {
            for (std::size_t j = i + 1; j < values.size(); ++j) {
                if (std::abs(values[i] - values[j]) < 1e-6 * std::max(1.0, std::abs(values[i]))) {
                    double others = 0.0;
                    for (std::size_t k = 0; k < values.size(); ++k) {
                        if (k != i && k != j) others += values[k].real();
                    }
                    const double pair = (trace - others) / 2.0;
                    values[i] = values[j] = cd(pair);
                }
            }
        }
    } else {
        Eigen::MatrixXd m = to_eigen(a);
        if (m.isApprox(m.transpose(), 1e-14)) {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
            for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) values.emplace_back(es.eigenvalues()(i));
        } else {
            Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
            for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) values.push_back(es.eigenvalues()(i));
        }
    }
    std::sort(values.begin(), values.end(), [](cd x, cd y) {
        if (x.real() != y.real()) return x.real() > y.real();
        return x.imag() > y.imag();
    });
    out.values = values;
    for (const cd& v : values) {
        bool merged = false;
        for (auto& c : out.clusters) {
            if (eigenvalues_coincide(c.value, v)) {
                ++c.multiplicity;
                merged = true;
                break;
            }
        }
        if (!merged) out.clusters.push_back({v, 1, {}});
    }
    for (auto& c : out.clusters) {
        if (std::abs(c.value.imag()) <= 1e-12 * std::max(1.0, std::abs(c.value))) c.basis = null_basis(a, c.value);
    }
    return out;
}

std::vector<double> solve_linear(const Matrix& a, const std::vector<double>& b) {
    if (a.rows != a.cols || b.size() != a.rows) throw std::invalid_argument("solve_linear: size mismatch");
    Eigen::MatrixXd m = to_eigen(a);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
    if (!lu.isInvertible()) throw std::domain_error("singular matrix");
    Eigen::VectorXd rhs(static_cast<Eigen::Index>(b.size()));
    for (std::size_t i = 0; i < b.size(); ++i) rhs(static_cast<Eigen::Index>(i)) = b[i];
    Eigen::VectorXd x = lu.solve(rhs);
    return std::vector<double>(x.data(), x.data() + x.size());
}

} // namespace hyperhet
