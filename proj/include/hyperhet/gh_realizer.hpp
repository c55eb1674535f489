#pragma once

#include "hyperhet/coupling.hpp"
#include "hyperhet/hypergraph.hpp"
#include "hyperhet/realization_space.hpp"
#include "hyperhet/system.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace hyperhet {

/// Parameters of the cubic three-axis cycle system
/// x_k' = x_k + a x_k^3 + b x_k x_{k+1}^2 + c x_k x_{k+2}^2 (indices mod 3).
struct GHParams {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
};

PolynomialField gh_reference_system(const GHParams& p);

/// a + b + c = -1 (to 1e-12), -1/3 < a < 0 and c < a < b < 0.
bool check_gh_conditions(const GHParams& p);

/// Sign flips tau_1..tau_3 and the cyclic shift rho(x1,x2,x3) = (x2,x3,x1).
enum class GroupElement { tau1, tau2, tau3, rho };
SignedPermutation group_action(GroupElement g);
/// Polynomial identity f(g x) = g f(x).
bool equivariance_check(const PolynomialField& f, GroupElement g);

/// Why a hypergraph cannot carry the cycle; names describe the forcing mechanism.
enum class GHObstruction {
    undirected_input_symmetry,
    nodeunspecific_mixed_monomial,
    four_uniform_input_symmetry,
    symmetric_two_to_one_inputs,
    homogeneous_pairwise_equal_inputs,
    uniform3_profile_mismatch,
    no_cubic_realization,
};
std::string to_string(GHObstruction o);

struct RealizationResult {
    bool realized = false;
    /// Construction used when realized ("two-type-pairwise", "pairwise-plus-two-to-one",
    /// "pairwise-plus-degenerate", "uniform-three", "linear-solve").
    std::string construction;
    GHParams params;
    std::optional<CouplingScheme> scheme;
    /// Edges whose coupling is identically zero in the construction.
    std::vector<Hyperedge> unused_edges;
    /// Largest coefficient of assembled field minus target (realized case).
    double identity_residual = 0.0;
    /// All applicable obstruction tags, most specific mechanism first.
    std::vector<GHObstruction> reasons;
    std::optional<SymmetryWitness> witness;
    std::string detail;
};

/**
 * @brief Decide whether the hypergraph realizes the cycle system with parameters p.
 *
 * Known constructions are tried first so that the familiar coupling functions
 * come out; otherwise the coefficient-linear realization problem (cubic
 * couplings) is solved directly. Every "no" carries a symmetry witness checked
 * against the full space of equivariant realizable fields.
 * @throws std::invalid_argument unless n = 3 and p is admissible.
 */
RealizationResult realize_gh(const Hypergraph& h, const GHParams& p, bool homogeneous = true, bool nodeunspecific = false);

/// Open interval of feasible alpha for the 3-uniform construction.
struct AlphaInterval {
    double lower = 0.0;
    double upper = 0.0;
    bool nonempty() const { return lower < upper; }
    bool contains(double a) const { return lower < a && a < upper; }
};

/// Combinatorial/parametric conditions on a vertex-independent input triple.
bool uniform3_conditions(int pi, int phi, int psi);

/// Feasible alpha interval, or nullopt (pi+phi = 0 or empty interval).
std::optional<AlphaInterval> uniform3_alpha_interval(int pi, int phi, int psi);

struct Uniform3Params {
    double alpha = 0.0;
    double beta = 0.0;
    GHParams gh;
};
/// beta = -(alpha+1)/(2(pi+phi+psi)), a = alpha + beta(phi+psi), b = beta(pi+phi), c = beta(pi+psi).
Uniform3Params uniform3_params(int pi, int phi, int psi, double alpha);

/// F(z) = z + alpha z^3, G(z; y1, y2) = beta z (y1^2 + y2^2) on order-3 edges.
CouplingScheme uniform3_scheme(double alpha, double beta);

/// Triples in {0..4}^3 meeting the conditions with a nonempty interval (ascending).
std::vector<std::array<int, 3>> uniform3_admissible_configs();

/**
 * @brief A 3-uniform hypergraph whose every vertex has input counts (pi, phi, psi).
 * Cyclically symmetric candidates are searched first (fewest edges), then all
 * 2^21 edge subsets. nullopt when no hypergraph exists or conditions fail.
 */
std::optional<Hypergraph> construct_config_hypergraph(int pi, int phi, int psi, bool check_conditions = true);

} // namespace hyperhet
