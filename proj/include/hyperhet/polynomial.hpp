#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

namespace hyperhet {

/// Exponent tuple of a monomial, one entry per variable.
using Exponents = std::vector<int>;

/**
 * @brief Sparse multivariate polynomial with real coefficients.
 *
 * Terms are kept in a map keyed by exponent tuple, so two polynomials with
 * the same terms compare equal key by key. Exact zero coefficients are never
 * stored.
 */
class Polynomial {
public:
    explicit Polynomial(std::size_t num_vars = 0);

    std::size_t num_vars() const { return num_vars_; }
    const std::map<Exponents, double>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    /// Accumulate c into the coefficient of the monomial with exponents e.
    void add_term(const Exponents& e, double c);
    double coefficient(const Exponents& e) const;
    int total_degree() const;
    /// Largest exponent of variable v over all terms.
    int degree_in(std::size_t v) const;

    double evaluate(std::span<const double> x) const;
    Polynomial partial(std::size_t var) const;

    /**
     * @brief Rename variables: variable i becomes variable target[i] of a
     * polynomial in new_num_vars variables. Collisions multiply monomials, so
     * this also implements substitution of equal arguments.
     * @param signs optional factor (+1/-1) applied to each source variable.
     */
    Polynomial remap(const std::vector<std::size_t>& target, std::size_t new_num_vars,
                     const std::vector<int>& signs = {}) const;

    /// Substitute x_i = sum_j b[i][j] y_j; b has num_vars rows of equal length.
    Polynomial substitute_linear(const std::vector<std::vector<double>>& b) const;

    /// Exact division by variable v; throws if some term lacks v.
    Polynomial divide_by_variable(std::size_t v) const;
    /// Drop coefficients with magnitude at most tol * max(1, largest magnitude).
    Polynomial pruned(double tol) const;
    double max_abs_coefficient() const;

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(double s) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial& operator+=(const Polynomial& o);

    bool operator==(const Polynomial& o) const = default;

private:
    std::size_t num_vars_;
    std::map<Exponents, double> terms_;
};

/// Univariate polynomial from coefficients c[0] + c[1] z + ...
Polynomial univariate(const std::vector<double>& coeffs);

/**
 * @brief Coefficient-map identity up to floating rounding.
 *
 * Every coefficient of the difference must be at most
 * rel_tol * max(1, largest coefficient magnitude of either operand).
 */
bool coefficient_identity(const Polynomial& p, const Polynomial& q, double rel_tol = 1e-13);

/// Largest coefficient magnitude of p - q.
double coefficient_distance(const Polynomial& p, const Polynomial& q);

/// Real roots of a univariate polynomial (coefficients low to high), sorted ascending.
std::vector<double> real_roots(const std::vector<double>& coeffs);

/// Contiguous copy of a polynomial for fast repeated evaluation.
class FlatPolynomial {
public:
    FlatPolynomial() = default;
    explicit FlatPolynomial(const Polynomial& p);
    /// x must hold num_vars values.
    double evaluate(const double* x) const;

private:
    std::size_t num_vars_ = 0;
    std::vector<double> coeffs_;
    std::vector<unsigned char> exponents_;
};

} // namespace hyperhet
