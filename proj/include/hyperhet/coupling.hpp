#pragma once

#include "hyperhet/hypergraph.hpp"
#include "hyperhet/polynomial.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace hyperhet {

/**
 * @brief Coupling polynomial G(z; y_1..y_{m-1}) symmetric in its input slots.
 *
 * Coefficients are stored on canonical exponent tuples (e0; e1 >= e2 >= ...).
 * A canonical key stands for every permutation of its input exponents, all with
 * the same coefficient, so z*y1^2 + z*y2^2 is the single key (1; 2, 0).
 * Terms without input dependence are rejected: an interaction that ignores its
 * inputs is internal dynamics, not coupling.
 */
class SymmetricPolynomial {
public:
    /// arity = m: one node slot plus m-1 input slots.
    explicit SymmetricPolynomial(int arity = 2);

    int arity() const { return arity_; }
    int num_inputs() const { return arity_ - 1; }

    /// Accumulate c on the orbit of e (e is canonicalized first).
    void add(Exponents e, double c);
    double coefficient(Exponents e) const;
    const std::map<Exponents, double>& canonical_terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    int total_degree() const;

    /// Value at (z, y); input values are sorted first, so permuted inputs give bitwise-equal results.
    double evaluate(double z, std::span<const double> y) const;
    /// Full polynomial in arity variables, slot 0 = z.
    const Polynomial& expanded() const { return expanded_; }
    /// True when no term depends on z.
    bool nodeunspecific() const;

    SymmetricPolynomial operator*(double s) const;
    bool operator==(const SymmetricPolynomial& o) const { return arity_ == o.arity_ && terms_ == o.terms_; }

    /// Canonical form of an exponent tuple (inputs sorted descending).
    static Exponents canonical(Exponents e);

    /**
     * @brief Build from a full monomial list by averaging over input permutations.
     * @param symmetrized set to true when the list was not already symmetric.
     */
    static SymmetricPolynomial symmetrize(int arity, const std::vector<std::pair<Exponents, double>>& monomials,
                                          bool& symmetrized);

private:
    void rebuild();

    int arity_;
    std::map<Exponents, double> terms_;
    Polynomial expanded_;
    // Flattened expanded terms for fast evaluation: coefficient then arity exponents.
    std::vector<double> flat_coeffs_;
    std::vector<int> flat_exps_;
    int max_exp_ = 0;
};

/// Derivative with respect to slot (0 = z, i >= 1 = input i) as a full polynomial.
Polynomial partial(const SymmetricPolynomial& g, int slot);

/// True when g is odd in z and even in every input slot.
bool odd_even_symmetry(const SymmetricPolynomial& g);

/**
 * @brief Internal dynamics plus coupling functions, either one per order or one per edge.
 */
struct CouplingScheme {
    enum class Mode { homogeneous, per_edge };

    Polynomial internal = Polynomial(1);
    Mode mode = Mode::homogeneous;
    std::map<int, SymmetricPolynomial> by_order;
    std::map<Hyperedge, SymmetricPolynomial> by_edge;

    /// Coupling used for edge e, or nullptr when none is assigned (contributes zero).
    const SymmetricPolynomial* coupling_for(const Hyperedge& e) const;
    /// Every coupling polynomial ignores the receiving node's own state.
    bool nodeunspecific() const;
    /// Throws if arities disagree with orders or the internal polynomial is not univariate.
    void validate() const;

    static CouplingScheme homogeneous(Polynomial internal, std::map<int, SymmetricPolynomial> by_order);
    static CouplingScheme per_edge(Polynomial internal, std::map<Hyperedge, SymmetricPolynomial> by_edge);
};

/// Internal dynamics odd and every coupling odd in z, even per input (the sign-flip symmetries).
bool odd_even_symmetry_check(const CouplingScheme& s);

/// Every canonical key of the given arity with total degree <= max_degree and some input exponent.
std::vector<Exponents> symmetric_monomial_basis(int arity, int max_degree, bool allow_node_slot = true);

/**
 * @brief Homogeneous scheme with every admissible coefficient nonzero.
 *
 * Orders 2..max_order, canonical monomials up to max_degree; magnitudes are
 * drawn from [0.1, 1] * scale with random signs so no coefficient vanishes.
 * The internal polynomial has degrees 1..max_degree.
 */
CouplingScheme random_generic_scheme(int max_order, int max_degree, std::uint64_t seed, double scale = 1.0);

} // namespace hyperhet
