#include "hyperhet/classify.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <map>

namespace hyperhet {

namespace {

// Coupling on each edge; edges without an assigned function get an empty polynomial.
std::vector<SymmetricPolynomial> edge_couplings(const Hypergraph& h, const CouplingScheme& s) {
    std::vector<SymmetricPolynomial> out;
    for (const auto& e : h.edges()) {
        const SymmetricPolynomial* g = s.coupling_for(e);
        out.push_back(g ? *g : SymmetricPolynomial(e.order()));
    }
    return out;
}

// g == w * ref for some scalar w (both empty counts as a match).
bool proportional(const SymmetricPolynomial& g, const SymmetricPolynomial& ref) {
    if (ref.empty()) return g.empty();
    const auto& [key, c0] = *ref.canonical_terms().begin();
    const double w = g.coefficient(key) / c0;
    if (g.canonical_terms().size() != ref.canonical_terms().size()) return false;
    for (const auto& [e, c] : ref.canonical_terms()) {
        const double d = g.coefficient(e) - w * c;
        if (std::abs(d) > 1e-12 * std::max(1.0, std::abs(g.coefficient(e)))) return false;
    }
    return true;
}

bool per_order(const Hypergraph& h, const std::vector<SymmetricPolynomial>& g, bool weighted) {
    std::map<int, std::size_t> first;
    for (std::size_t i = 0; i < h.edges().size(); ++i) {
        const int m = h.edges()[i].order();
        auto it = first.find(m);
        if (it == first.end()) {
            first.emplace(m, i);
            continue;
        }
        const auto& ref = g[it->second];
        if (weighted ? !proportional(g[i], ref) && !proportional(ref, g[i]) : !(g[i] == ref)) return false;
    }
    return true;
}

bool singleton_heads(const Hypergraph& h) {
    return std::all_of(h.edges().begin(), h.edges().end(), [](const Hyperedge& e) { return e.head.size() == 1; });
}

// Every edge is (T, {k}) with k in T, and each such T feeds every one of its members.
bool edge_type_shape(const Hypergraph& h) {
    if (h.edges().empty() || !singleton_heads(h)) return false;
    for (const auto& e : h.edges()) {
        if (!std::binary_search(e.tail.begin(), e.tail.end(), e.head.front())) return false;
        for (Vertex k : e.tail) {
            if (!h.contains(Hyperedge(e.tail, {k}))) return false;
        }
    }
    return true;
}

// Every edge is (U \ {k}, {k}) for an undirected set U, and U feeds all of its members this way.
bool incidence_shape(const Hypergraph& h) {
    if (h.edges().empty() || !singleton_heads(h)) return false;
    for (const auto& e : h.edges()) {
        const Vertex k = e.head.front();
        if (std::binary_search(e.tail.begin(), e.tail.end(), k)) return false;
        VertexSet u = e.tail;
        u.insert(std::lower_bound(u.begin(), u.end(), k), k);
        for (Vertex v : u) {
            VertexSet t;
            std::copy_if(u.begin(), u.end(), std::back_inserter(t), [v](Vertex x) { return x != v; });
            if (!h.contains(Hyperedge(t, {v}))) return false;
        }
    }
    return true;
}

// Every monomial depends on exactly one input and not on the node's own state.
bool diffusive(const SymmetricPolynomial& g) {
    for (const auto& [e, c] : g.canonical_terms()) {
        if (e[0] != 0) return false;
        const auto inputs = std::count_if(e.begin() + 1, e.end(), [](int k) { return k > 0; });
        if (inputs != 1) return false;
    }
    return true;
}

} // namespace

Classification classify(const Hypergraph& h, const CouplingScheme& s) {
    Classification c;
    c.directed = !h.is_undirected();
    c.nodespecific = !s.nodeunspecific();
    c.uniform_order = h.uniform_order();
    c.uniform = c.uniform_order.has_value();
    const auto g = edge_couplings(h, s);
    c.homogeneous_per_order = s.mode == CouplingScheme::Mode::homogeneous || per_order(h, g, false);
    c.weighted_homogeneous = c.homogeneous_per_order || per_order(h, g, true);

    if (edge_type_shape(h) && !c.nodespecific) {
        if (c.homogeneous_per_order) {
            c.matches.push_back({"edge-types-homogeneous", "x_k' = F(x_k) + sum_{e ni k} G^(|e|)(x_e)", false, false});
        } else {
            c.matches.push_back({"edge-types", "x_k' = F(x_k) + sum_{e ni k} G_{k;e}(x_e)", false, true});
        }
    }
    if (incidence_shape(h) && c.homogeneous_per_order) {
        c.matches.push_back({"incidence-directed", "x_k' = F(x_k) + sum_{e ni k} G^(|e|)(x_k; x_{e minus k})", true, true});
    }
    if (c.weighted_homogeneous) {
        c.matches.push_back({"weighted-directed", "x_k' = F(x_k) + sum_{k in H(e)} w_e G^(|e|)(x_k; x_T(e))", true, true});
    }
    if (h.is_undirected() && !h.edges().empty() && c.homogeneous_per_order &&
        std::all_of(g.begin(), g.end(), [](const SymmetricPolynomial& p) { return diffusive(p); })) {
        c.matches.push_back(
            {"generalized-laplacian", "x_k' = F(x_k) - eps sum_{e ni k} sum_{j in e} (|e|-1)(G(x_k) - G(x_j))", false, false});
    }
    return c;
}

} // namespace hyperhet
