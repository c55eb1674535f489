#pragma once

#include "hyperhet/coupling.hpp"
#include "hyperhet/hypergraph.hpp"
#include "hyperhet/linalg.hpp"
#include "hyperhet/polynomial.hpp"

#include <span>
#include <vector>

namespace hyperhet {

/// Autonomous vector field x' = f(x) on R^n.
class VectorField {
public:
    virtual ~VectorField() = default;
    virtual std::size_t dimension() const = 0;
    virtual void evaluate(std::span<const double> x, std::span<double> dx) const = 0;
    virtual Matrix jacobian(std::span<const double> x) const = 0;

    std::vector<double> operator()(std::span<const double> x) const;
};

/// Vector field whose components are explicit polynomials; derivatives are symbolic.
class PolynomialField : public VectorField {
public:
    PolynomialField() = default;
    explicit PolynomialField(std::vector<Polynomial> components);

    std::size_t dimension() const override { return components_.size(); }
    void evaluate(std::span<const double> x, std::span<double> dx) const override;
    Matrix jacobian(std::span<const double> x) const override;

    const std::vector<Polynomial>& components() const { return components_; }
    const Polynomial& component(std::size_t i) const { return components_[i]; }

private:
    std::vector<Polynomial> components_;
    std::vector<FlatPolynomial> flat_;
    std::vector<std::vector<FlatPolynomial>> flat_derivatives_;
};

/**
 * @brief The field in coordinates y with x = B y: g(y) = B^{-1} f(B y), computed symbolically.
 * Coefficients at most prune_tol times the largest magnitude are dropped.
 */
PolynomialField change_coordinates(const PolynomialField& f, const std::vector<std::vector<double>>& b,
                                   const std::vector<std::vector<double>>& b_inv, double prune_tol = 0.0);

/// Coefficient-map identity of every component.
bool field_identity(const PolynomialField& f, const PolynomialField& g, double rel_tol = 1e-13);

/**
 * @brief Network vector field x_k' = F(x_k) + sum over edges e with k in head(e) of G_e(x_k; x_tail(e)).
 *
 * Evaluation follows the network structure: each coupling is evaluated on its
 * own arguments and the contributions of a vertex are summed in sorted order.
 * Vertices that see identical inputs therefore get bitwise-identical
 * derivatives, which keeps synchrony subspaces exactly invariant numerically.
 * The assembled polynomial form backs Jacobians and identity checks.
 */
class NetworkSystem : public VectorField {
public:
    NetworkSystem(Hypergraph h, CouplingScheme s);

    std::size_t dimension() const override { return static_cast<std::size_t>(graph_.n()); }
    void evaluate(std::span<const double> x, std::span<double> dx) const override;
    Matrix jacobian(std::span<const double> x) const override;
    std::vector<double> rhs(std::span<const double> x) const { return (*this)(x); }

    const Hypergraph& hypergraph() const { return graph_; }
    const CouplingScheme& scheme() const { return scheme_; }
    /// Symbolic right-hand side, one polynomial in x_1..x_N per vertex.
    const PolynomialField& field() const { return field_; }

private:
    struct Incoming {
        const SymmetricPolynomial* g;
        std::vector<std::size_t> tail;  // 0-based indices
    };

    Hypergraph graph_;
    CouplingScheme scheme_;
    std::vector<std::vector<Incoming>> incoming_;
    PolynomialField field_;
};

/// Assemble the symbolic right-hand side of a network system.
std::vector<Polynomial> assemble_rhs(const Hypergraph& h, const CouplingScheme& s);

/**
 * @brief Exact invariance of the synchrony subspace of p for this concrete field:
 * on the subspace, same-class components coincide as polynomials.
 */
bool is_invariant(const PolynomialField& f, const Partition& p, double rel_tol = 1e-12);

/// Field restricted to a synchrony subspace, one coordinate per class.
class ReducedSystem : public PolynomialField {
public:
    ReducedSystem(std::vector<Polynomial> components, Partition p)
        : PolynomialField(std::move(components)), partition_(std::move(p)) {}

    const Partition& partition() const { return partition_; }
    std::vector<double> lift(std::span<const double> u) const;
    /// Class coordinates of x (value at each class representative).
    std::vector<double> project(std::span<const double> x) const;

private:
    Partition partition_;
};

/// Throws std::invalid_argument when the subspace is not invariant.
ReducedSystem restrict(const PolynomialField& f, const Partition& p);
ReducedSystem restrict(const NetworkSystem& sys, const Partition& p);

} // namespace hyperhet
