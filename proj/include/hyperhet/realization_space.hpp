#pragma once

#include "hyperhet/coupling.hpp"
#include "hyperhet/hypergraph.hpp"
#include "hyperhet/system.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace hyperhet {

/// Linear change of coordinates (G x)_i = sign[i] * x_{perm[i]} (0-based).
struct SignedPermutation {
    std::vector<std::size_t> perm;
    std::vector<int> sign;
};

/// Field f with f(G x) = G f(x) for the given element.
bool is_equivariant(const PolynomialField& f, const SignedPermutation& g, double rel_tol = 1e-13);

/// Which coupling schemes a realization may use.
struct RealizationFamily {
    bool homogeneous = true;
    bool nodeunspecific = false;
    int max_degree = 3;
};

/**
 * @brief Concrete symmetry certificate for a non-realizable target.
 *
 * A linear operator S on vector fields (acting on one vertex's component) that
 * fixes every field the hypergraph can produce within the equivariant class
 * but moves the target. Since the assembled field is linear in the coupling
 * coefficients, this proves the target lies outside the realizable set.
 *
 * kinds: "input-swap" (exchange x_i and x_j in component `vertex`),
 * "mixed-monomial-swap" (exchange the exponents of x_vertex and x_j on
 * monomials containing both), "missing-input" (component `vertex` does not
 * depend on x_j).
 */
struct SymmetryWitness {
    std::string kind;
    Vertex vertex = 0;
    Vertex i = 0;
    Vertex j = 0;
    std::size_t realizable_dimension = 0;
    double realizable_defect = 0.0;  ///< max |S v - v| over an orthonormal basis of realizable fields
    double target_defect = 0.0;      ///< max coefficient of S t - t
    bool verified = false;
    std::string description;
};

/**
 * @brief The linear map from coupling coefficients to assembled right-hand-side
 * coefficients, truncated at a total degree.
 *
 * Degree truncation is exact here: assembly only renames variables, so a
 * monomial of the field only receives contributions from coupling monomials of
 * the same total degree.
 */
class RealizationSpace {
public:
    RealizationSpace(const Hypergraph& h, RealizationFamily family);
    ~RealizationSpace();
    RealizationSpace(const RealizationSpace&) = delete;
    RealizationSpace& operator=(const RealizationSpace&) = delete;

    std::size_t num_parameters() const;
    std::size_t num_coefficients() const;

    struct Solution {
        bool feasible = false;
        double residual = 0.0;
        CouplingScheme scheme;
    };
    /// Minimum-norm least-squares coefficients reproducing the target.
    Solution solve(const PolynomialField& target) const;

    /**
     * @brief Search the witness catalog, restricting to fields equivariant under `group`.
     * The target must itself be equivariant under `group`.
     */
    std::optional<SymmetryWitness> find_witness(const PolynomialField& target,
                                                const std::vector<SignedPermutation>& group) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace hyperhet
