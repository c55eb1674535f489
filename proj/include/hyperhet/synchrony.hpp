#pragma once

#include "hyperhet/hypergraph.hpp"
#include "hyperhet/linalg.hpp"
#include "hyperhet/system.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hyperhet {

/**
 * @brief Balanced partition test.
 *
 * Same-class vertices must receive, order by order, the same multiset of
 * tail class-multisets. This makes the synchrony subspace invariant for every
 * homogeneous-per-order scheme.
 */
bool is_balanced(const Hypergraph& h, const Partition& p);

/// The four synchrony subspaces of a 3-vertex network: full synchrony and the planes S_j (x_j alone).
enum class Subspace { delta, s1, s2, s3 };

std::string to_string(Subspace s);
Partition partition_of(Subspace s);

/// Subspaces among {delta, S1, S2, S3} that are robustly invariant, in that order.
std::vector<Subspace> robust_subspace_census(const Hypergraph& h);

/**
 * @brief Numerical falsifier for robust invariance: largest relative spread of
 * same-class components of the field at random points of the subspace, over
 * random homogeneous schemes. Near zero when balanced; generically not otherwise.
 */
double invariance_probe(const Hypergraph& h, const Partition& p, std::uint64_t seed, int schemes = 5, int points = 20);

/// Every vertex is in the head of the same number of order-m edges, for every m.
bool full_sync_balance(const Hypergraph& h);

/// Eigenvector tagged with the synchrony subspaces that contain it.
struct TaggedEigenvector {
    double value;
    std::vector<double> vector;
    bool in_delta = false;
    std::vector<Vertex> in_all_but;  ///< vertices j with the vector in {x_i equal for all i != j}
};

/**
 * @brief Linearization at the synchronous point (z, ..., z).
 *
 * transverse[j-1] is the eigenvalue on the plane where every vertex but j is
 * synchronized, present only when that plane is invariant for this system;
 * it equals J_jj - J_ij for any i != j.
 */
struct SyncLinearization {
    double z = 0.0;
    Matrix matrix;
    EigenDecomposition eigen;
    double lambda_delta = 0.0;
    std::vector<std::optional<double>> transverse;
    std::vector<TaggedEigenvector> tagged;
    /// Every eigenvalue has nonzero real part (1e-8 margin).
    bool hyperbolic = false;
};

/// Requires the diagonal to be invariant for the system; throws otherwise.
SyncLinearization sync_linearization(const NetworkSystem& sys, double z);

/// Transverse eigenvalue of the plane with `lone` desynchronized: J_ll - J_il.
double transverse_eigenvalue(const Matrix& j, Vertex lone);

enum class LocalFieldVerdict { ok, too_few_subspaces, too_many_subspaces };
std::string to_string(LocalFieldVerdict v);

/// Field-cycle local test: exactly two of the planes S1, S2, S3 must be robustly invariant.
LocalFieldVerdict local_obstruction_field(const Hypergraph& h);

} // namespace hyperhet
