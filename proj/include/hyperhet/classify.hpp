#pragma once

#include "hyperhet/coupling.hpp"
#include "hyperhet/hypergraph.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hyperhet {

/// A known model class from the literature whose structural form the system matches.
struct ModelSignature {
    /// "edge-types", "edge-types-homogeneous", "incidence-directed", "weighted-directed" or "generalized-laplacian".
    std::string id;
    std::string form;
    /// Whether the model class as a whole admits the cycle (not this particular system).
    bool class_allows_gh = false;
    bool class_allows_field = false;
};

struct Classification {
    bool directed = false;
    bool nodespecific = false;
    /// Edges of equal order carry equal coupling functions.
    bool homogeneous_per_order = false;
    /// Edges of equal order carry scalar multiples of one coupling function.
    bool weighted_homogeneous = false;
    bool uniform = false;
    std::optional<int> uniform_order;
    std::vector<ModelSignature> matches;
};

Classification classify(const Hypergraph& h, const CouplingScheme& s);

} // namespace hyperhet
