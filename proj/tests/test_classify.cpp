#include "catch_amalgamated.hpp"

#include "hyperhet/classify.hpp"
#include "hyperhet/gh_realizer.hpp"

#include <algorithm>

using namespace hyperhet;

namespace {
bool has(const Classification& c, const std::string& id) {
    return std::any_of(c.matches.begin(), c.matches.end(), [&](const ModelSignature& m) { return m.id == id; });
}

SymmetricPolynomial linear_inputs(int arity, double w) {
    SymmetricPolynomial g(arity);
    Exponents e(static_cast<std::size_t>(arity), 0);
    e[1] = 1;
    g.add(e, w);
    return g;
}
} // namespace

TEST_CASE("directed two-to-one hypergraph", "[classify]") {
    const Classification c = classify(catalog::two_to_one(), random_generic_scheme(3, 3, 1));
    CHECK(c.directed);
    CHECK(c.nodespecific);
    CHECK(c.homogeneous_per_order);
    CHECK(c.uniform);
    CHECK(c.uniform_order == 3);
    CHECK(has(c, "incidence-directed"));
    CHECK(has(c, "weighted-directed"));
    CHECK_FALSE(has(c, "generalized-laplacian"));
}

TEST_CASE("diffusive undirected coupling", "[classify]") {
    const CouplingScheme s = CouplingScheme::homogeneous(
        univariate({0.0, 1.0, 0.0, -1.0}), {{2, linear_inputs(2, 0.5)}, {3, linear_inputs(3, 0.2)}, {4, linear_inputs(4, 0.1)}});
    const Classification c = classify(catalog::complete_undirected(3), s);
    CHECK_FALSE(c.directed);
    CHECK_FALSE(c.nodespecific);
    CHECK_FALSE(c.uniform);
    CHECK(has(c, "generalized-laplacian"));
    CHECK_FALSE(has(c, "incidence-directed"));

    const Classification general = classify(catalog::complete_undirected(3), random_generic_scheme(4, 3, 2));
    CHECK_FALSE(has(general, "generalized-laplacian"));
}

TEST_CASE("weighted per-edge couplings", "[classify]") {
    const Hypergraph h = catalog::pairwise_plus_two_to_one();
    std::map<Hyperedge, SymmetricPolynomial> by_edge;
    double w = 1.0;
    for (const auto& e : h.edges()) {
        SymmetricPolynomial g(e.order());
        Exponents ex(static_cast<std::size_t>(e.order()), 0);
        ex[0] = 1;
        ex[1] = 2;
        g.add(ex, w);
        by_edge.emplace(e, g);
        w += 0.5;
    }
    const Classification c = classify(h, CouplingScheme::per_edge(univariate({0.0, 1.0}), by_edge));
    CHECK_FALSE(c.homogeneous_per_order);
    CHECK(c.weighted_homogeneous);
    CHECK(has(c, "weighted-directed"));

    by_edge.begin()->second.add({1, 1}, 0.3);
    const Classification d = classify(h, CouplingScheme::per_edge(univariate({0.0, 1.0}), by_edge));
    CHECK_FALSE(d.weighted_homogeneous);
    CHECK(d.matches.empty());
}

TEST_CASE("edge-type hypergraphs", "[classify]") {
    const Hypergraph h(3, {Hyperedge({1, 2}, {1}), Hyperedge({1, 2}, {2})});
    SymmetricPolynomial g(3);
    g.add({0, 1, 1}, 0.4);
    const Classification c = classify(h, CouplingScheme::homogeneous(univariate({0.0, -1.0}), {{3, g}}));
    CHECK(has(c, "edge-types-homogeneous"));
    CHECK_FALSE(c.nodespecific);
}
