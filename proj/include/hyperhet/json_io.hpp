#pragma once

#include "hyperhet/coupling.hpp"
#include "hyperhet/field_realizer.hpp"
#include "hyperhet/gh_realizer.hpp"
#include "hyperhet/hypergraph.hpp"
#include "hyperhet/simulator.hpp"
#include "hyperhet/synchrony.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace hyperhet {

using Json = nlohmann::ordered_json;

/// Malformed or inconsistent input document.
class JsonFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Json to_json(const Hyperedge& e);
/// {"n": int, "edges": [{"tail": [...], "head": [...]}]} in canonical edge order.
Json to_json(const Hypergraph& h);
Hypergraph hypergraph_from_json(const Json& j);

/// List of {"exponents", "coeff"}, one entry per term.
Json to_json(const Polynomial& p);
Polynomial polynomial_from_json(const Json& j, std::size_t num_vars);

/// One entry per canonical key (node exponent first, input exponents descending).
Json to_json(const SymmetricPolynomial& g);

/**
 * @brief Read a coupling polynomial.
 *
 * A canonical entry that is the only one of its permutation orbit stands for
 * the whole orbit. When an orbit is listed through other permutations, those
 * entries are read as individual monomials and averaged over the orbit;
 * `symmetrized` is set if that averaging changed any coefficient.
 */
SymmetricPolynomial symmetric_from_json(const Json& j, int arity, bool& symmetrized);

/**
 * @brief Scheme document:
 * {"internal": [...], "mode": "homogeneous" | "per-edge",
 *  "couplings": [{"order": m, "terms": [...]}] or [{"tail", "head", "terms"}]}.
 */
Json to_json(const CouplingScheme& s);
CouplingScheme scheme_from_json(const Json& j, std::vector<std::string>& warnings);

struct SystemDocument {
    Hypergraph hypergraph;
    CouplingScheme scheme;
    std::vector<std::string> warnings;
};
/// {"hypergraph": {...}, "scheme": {...}}
Json to_json(const Hypergraph& h, const CouplingScheme& s);
SystemDocument system_from_json(const Json& j);

/// Parse a file; throws JsonFormatError with the path on failure.
Json read_json_file(const std::string& path);

Json to_json(const GHParams& p);
Json to_json(const SymmetryWitness& w);
Json to_json(const RealizationResult& r);

Json to_json(const FieldCoefficients& c);
FieldCoefficients field_coefficients_from_json(const Json& j);
Json to_json(const SaddleData& s);
Json to_json(const ConnectionEvidence& e);
Json to_json(const Itinerary& it);
Json to_json(const ItineraryEvidence& e);
Json to_json(const FieldRealization& r);

/// Census as lists of partition class arrays, plus the two lemma verdicts.
Json census_to_json(const Hypergraph& h);

/// {triple, feasible, alpha_interval, params, example_hypergraph}
Json uniform3_row(int pi, int phi, int psi);

Json to_json(const Trajectory& t, bool include_states = true);

} // namespace hyperhet
