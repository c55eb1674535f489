#pragma once

#include "hyperhet/coupling.hpp"
#include "hyperhet/hypergraph.hpp"
#include "hyperhet/simulator.hpp"
#include "hyperhet/synchrony.hpp"
#include "hyperhet/system.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hyperhet {

struct ScreenVerdict {
    bool pass = false;
    bool full_sync_balanced = false;
    LocalFieldVerdict local = LocalFieldVerdict::too_few_subspaces;
    std::vector<Subspace> census;
    /// "pass", "not-fully-synchronous", "too-few-subspaces" or "too-many-subspaces".
    std::string reason() const;
};

/// Local screen for the two-equilibrium synchrony cycle on 3 vertices.
ScreenVerdict field_screen(const Hypergraph& h);

/**
 * @brief Coefficients of the search family
 * F(z) = mu1 z + mu2 z^2 + mu3 z^3,
 * G2(z; y) = d0 y + d1 z y + d2 y^2,
 * G3(z; y1, y2) = e0 (y1 + y2) + e1 z (y1 + y2) + e2 y1 y2.
 */
struct FieldCoefficients {
    double mu1 = 0, mu2 = 0, mu3 = 0;
    double d0 = 0, d1 = 0, d2 = 0;
    double e0 = 0, e1 = 0, e2 = 0;
    CouplingScheme scheme() const;
};

/**
 * @brief Derivatives at (z, z, z) for the one-pairwise-plus-one-2-to-1 structure.
 * alpha = F', beta = d_z G2, gamma = d_z G3, delta = d_y G2, epsilon = d_{y_i} G3.
 */
struct FieldDerivatives {
    double alpha = 0, beta = 0, gamma = 0, delta = 0, epsilon = 0;
    double lambda_delta() const { return alpha + beta + gamma + delta + 2 * epsilon; }
    /// Eigenvalue whose eigenvector lies in S3 = {x1 = x2}.
    double lambda_s3() const { return alpha + beta + gamma - epsilon; }
    /// Eigenvalue whose eigenvector lies in S2 = {x1 = x3}.
    double lambda_s2() const { return alpha + beta + gamma - delta - epsilon; }
};
FieldDerivatives field_derivatives(const FieldCoefficients& c, double z);

/// Fully synchronous equilibrium (z, z, z) with its eigenvalues along and across the diagonal.
struct SaddleData {
    double z = 0.0;
    double lambda_delta = 0.0;
    Subspace plane_a = Subspace::s3;  ///< first invariant plane
    Subspace plane_b = Subspace::s2;  ///< second invariant plane
    double lambda_a = 0.0;            ///< transverse eigenvalue with eigenvector in plane_a
    double lambda_b = 0.0;
    bool hyperbolic = false;          ///< every |lambda| > 1e-8
    /// The plane containing the unstable direction, when exactly one transverse eigenvalue is positive.
    std::optional<Subspace> unstable_plane() const;
};

struct ShootingConfig {
    double epsilon = 1e-6;
    double delta_accept = 1e-3;
    double t_max = 1e3;
    double rtol = 1e-10;
    double atol = 1e-13;
};

struct BranchAttempt {
    int branch = 1;                  ///< sign of the offset along the unstable eigenvector
    bool reached = false;
    double time = 0.0;
    double terminal_distance = 0.0;  ///< closest approach to the target
    int side = 0;                    ///< sign of (lone - synchronized) coordinate where it is largest
};

struct ConnectionEvidence {
    Subspace plane = Subspace::s3;
    double epsilon = 0.0;
    double delta_accept = 0.0;
    double t_max = 0.0;
    bool connected = false;
    /// The connecting branch (if any); otherwise the closest one.
    BranchAttempt best;
    std::vector<BranchAttempt> attempts;
};

/**
 * @brief Shoot along the unstable eigenvector of `from` inside `plane` (both
 * signs) in the two-dimensional restricted system and report whether the
 * orbit enters the delta_accept ball of `to` before t_max.
 * @throws std::invalid_argument when the plane is not invariant for sys.
 */
ConnectionEvidence verify_connection(const NetworkSystem& sys, const SaddleData& from, const SaddleData& to, Subspace plane,
                                     const ShootingConfig& cfg = {});

struct FieldSearchConfig {
    std::uint64_t seed = 5;
    std::uint64_t max_draws = 1'000'000;
    double coefficient_range = 2.0;
    double hyperbolicity_margin = 0.05;
    /// Admissible range of the two dwell-time ratios (contraction at one equilibrium over expansion at the other).
    double min_dwell_ratio = 1.05;
    double max_dwell_ratio = 3.0;
    ShootingConfig shooting;
    /// Also demand an alternating 3D itinerary with growing dwell times.
    bool require_itinerary = true;
    int itinerary_episodes = 6;
};

struct ItineraryEvidence {
    std::vector<double> x0;
    double t_end = 0.0;
    double radius = 0.0;
    Itinerary itinerary;
    bool alternating = false;
    bool growing = false;
};

struct FieldRealization {
    bool found = false;
    std::uint64_t seed = 0;
    std::uint64_t draws = 0;
    FieldCoefficients coefficients;
    std::optional<CouplingScheme> scheme;
    SaddleData p;
    SaddleData q;
    ConnectionEvidence p_to_q;
    ConnectionEvidence q_to_p;
    std::optional<ItineraryEvidence> itinerary;
    std::string failure;
    /// Counts of draws rejected at each filter stage.
    std::vector<std::pair<std::string, std::uint64_t>> rejections;
};

/**
 * @brief Seeded random search for a two-equilibrium synchrony cycle.
 * @throws std::invalid_argument when the hypergraph fails field_screen.
 */
FieldRealization realize_field(const Hypergraph& h, const FieldSearchConfig& cfg = {});

/// Re-check a given coefficient set: saddles, both connections and (optionally) the itinerary.
FieldRealization check_field_candidate(const Hypergraph& h, const FieldCoefficients& c, const FieldSearchConfig& cfg = {});

/**
 * @brief Simulate from a generic point near the diagonal and extract the p/q itinerary.
 * Integration runs in coordinates where both planes are coordinate planes, with
 * the two plane distances in logarithmic form.
 */
ItineraryEvidence field_itinerary(const NetworkSystem& sys, const SaddleData& p, const SaddleData& q, int episodes,
                                  double t_max = 1e5);

/**
 * @brief Obstruction report for an m-uniform 3-vertex hypergraph.
 *
 * For 3-uniform hypergraphs with degenerate edges and the right subspaces, the
 * difference of the two transverse eigenvalues at any synchronous point is
 * coefficient * (input derivative of the coupling), with an integer
 * coefficient fixed by the hypergraph.
 */
struct UniformFieldReport {
    int order = 0;
    /// "classical-network", "symmetric-inputs", "not-fully-synchronous", "wrong-subspaces" or "fixed-sign".
    std::string kind;
    int xi = 0;  ///< order-m inputs per vertex
    std::optional<int> coefficient;
    std::optional<Subspace> plane_a;
    std::optional<Subspace> plane_b;
    std::string detail;
};
/// @throws std::invalid_argument unless h is uniform on 3 vertices.
UniformFieldReport uniform_field_obstruction(const Hypergraph& h);

/// Integer count matrix M (M_kl = order-3 edges into k with l in the tail) for a 3-uniform hypergraph.
std::vector<std::vector<int>> tail_count_matrix(const Hypergraph& h, int order);

struct OppositeSaddleSearch {
    int schemes = 0;
    int saddle_pairs = 0;     ///< pairs of synchronous saddles with an attracting diagonal direction
    int opposite_pairs = 0;   ///< of those, pairs whose unstable directions lie in different planes
};
/// Random homogeneous schemes; counts synchronous saddle pairs with opposite unstable planes.
OppositeSaddleSearch search_opposite_saddles(const Hypergraph& h, int schemes, std::uint64_t seed);

/**
 * @brief Certificate that an undirected hypergraph with homogeneous coupling acts
 * identically on two desynchronizing directions.
 *
 * For the designated pair (j, l) of vertices whose all-but-one planes are both
 * balanced, every probe compares alpha = J_jj with gamma = J_ll and
 * beta = J_lj with delta = J_jl at a synchronous point of a random scheme.
 */
struct UndirectedCertificate {
    int n = 0;
    Vertex j = 0;
    Vertex l = 0;
    int probes = 0;
    double max_alpha_gamma = 0.0;
    double max_beta_delta = 0.0;
    double max_asymmetry = 0.0;  ///< max |J - J^T| over probes
    bool certified = false;
    std::string detail;
};
/// @throws std::invalid_argument when h has a directed edge.
UndirectedCertificate undirected_field_obstruction_N(const Hypergraph& h, int probes = 20, std::uint64_t seed = 7);

} // namespace hyperhet
