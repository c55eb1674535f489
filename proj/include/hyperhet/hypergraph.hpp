#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <optional>
#include <vector>

namespace hyperhet {

/// Vertex ids are 1-based, matching the usual labelling x_1..x_N.
using Vertex = int;
/// Sorted, duplicate-free vertex set.
using VertexSet = std::vector<Vertex>;

/**
 * @brief Directed hyperedge: the tail vertices jointly influence every head vertex.
 *
 * The order is |tail| + 1, counting the receiving vertex's own state slot.
 */
struct Hyperedge {
    VertexSet tail;
    VertexSet head;

    Hyperedge() = default;
    Hyperedge(VertexSet tail, VertexSet head);

    int order() const { return static_cast<int>(tail.size()) + 1; }
    bool degenerate() const;
    bool undirected() const { return tail == head; }
    bool targets(Vertex k) const;

    /// Canonical order: lexicographic on tail, then on head.
    auto operator<=>(const Hyperedge&) const = default;
    bool operator==(const Hyperedge&) const = default;
};

/**
 * @brief Hypergraph on vertices 1..n with a canonical, duplicate-free edge list.
 */
class Hypergraph {
public:
    Hypergraph() = default;
    /// Throws on out-of-range vertices or duplicate edges.
    Hypergraph(int n, std::vector<Hyperedge> edges);

    int n() const { return n_; }
    const std::vector<Hyperedge>& edges() const { return edges_; }
    bool contains(const Hyperedge& e) const;

    bool is_uniform(int m) const;
    std::optional<int> uniform_order() const;
    bool is_undirected() const;
    bool has_degenerate_edge() const;
    /// Indices of edges whose head contains k, in canonical order.
    std::vector<std::size_t> in_edges(Vertex k) const;

    bool operator==(const Hypergraph&) const = default;

private:
    int n_ = 0;
    std::vector<Hyperedge> edges_;
};

/**
 * @brief Partition of 1..n into nonempty classes, stored canonically
 * (classes sorted internally and by their smallest element).
 */
class Partition {
public:
    Partition() = default;
    Partition(int n, std::vector<VertexSet> classes);

    static Partition singletons(int n);
    static Partition full(int n);
    /// Every vertex except `lone` synchronized; for n = 3 this is S_lone.
    static Partition all_but(int n, Vertex lone);

    int n() const { return n_; }
    const std::vector<VertexSet>& classes() const { return classes_; }
    std::size_t size() const { return classes_.size(); }
    /// 0-based class index of vertex v.
    std::size_t class_of(Vertex v) const { return class_index_[static_cast<std::size_t>(v - 1)]; }
    Vertex representative(std::size_t c) const { return classes_[c].front(); }

    bool operator==(const Partition&) const = default;

private:
    int n_ = 0;
    std::vector<VertexSet> classes_;
    std::vector<std::size_t> class_index_;
};

/// Number of order-m edges whose head contains k.
int head_count(const Hypergraph& h, int m, Vertex k);

/// All hyperedges on n vertices with order 2..max_order (tail size 1..max_order-1), canonical order.
std::vector<Hyperedge> enumerate_hyperedges(int n, int max_order);

/// Counts of order-3 inputs received by one vertex of a 3-vertex hypergraph.
struct InputCounts {
    int pi = 0;   ///< true 2-to-1 inputs (tail = the two other vertices)
    int phi = 0;  ///< degenerate inputs whose tail is {k, right neighbour}
    int psi = 0;  ///< degenerate inputs whose tail is {k, left neighbour}
    bool operator==(const InputCounts&) const = default;
};
using InputProfile = std::array<InputCounts, 3>;

/// Right neighbour in the cyclic order 1 -> 2 -> 3 -> 1.
Vertex right_neighbour(Vertex k);
Vertex left_neighbour(Vertex k);

/**
 * @brief The three families of order-3 edges that feed vertex k
 * (index 0: true 2-to-1, 1: right degenerate, 2: left degenerate), four edges each.
 */
const std::array<std::vector<Hyperedge>, 3>& omega_sets(Vertex k);

/// Per-vertex (pi, phi, psi) counts; throws unless n = 3 and the hypergraph is 3-uniform.
InputProfile input_profile_3uniform(const Hypergraph& h);

/**
 * @brief Combinatorial image of a hypergraph under a balanced partition.
 *
 * Every edge whose head meets a class representative maps to
 * (classes of tail, classes of head); equal images are merged. weights[i][c]
 * counts original edges mapping to image i whose head contains the
 * representative of class c, i.e. how often class c receives that input.
 */
struct QuotientHypergraph {
    Hypergraph graph;
    std::vector<std::vector<int>> weights;
};

/// Throws std::invalid_argument when p is not balanced for h.
QuotientHypergraph quotient_restrict(const Hypergraph& h, const Partition& p);

/// Hypergraphs that recur throughout the analysis.
namespace catalog {
/// Complete classical network on 3 vertices with self-loops (all 9 pairwise edges).
Hypergraph classical_complete();
/// True 2-to-1 edges only: {2,3}->1, {1,3}->2, {1,2}->3.
Hypergraph two_to_one();
/// Pairwise cycle 2->1, 3->2, 1->3 together with the true 2-to-1 edges.
Hypergraph pairwise_plus_two_to_one();
/// Pairwise cycle 2->1, 3->2, 1->3 together with degenerate edges {1,3}->1, {1,2}->2, {2,3}->3.
Hypergraph pairwise_plus_degenerate();
/// Six-edge 3-uniform hypergraph with input counts (0,1,2) at every vertex.
Hypergraph uniform_012();
/// Smallest hypergraph admitting the two-equilibrium synchrony cycle.
Hypergraph field_minimal();
/// Every nonempty vertex subset A as an undirected edge (A, A).
Hypergraph complete_undirected(int n);
/// The 2^n - 1 undirected edges on n vertices, canonical order.
std::vector<Hyperedge> undirected_edges(int n);
} // namespace catalog

} // namespace hyperhet
