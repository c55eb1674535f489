#include "catch_amalgamated.hpp"

#include "hyperhet/hypergraph.hpp"

#include <set>

using namespace hyperhet;

TEST_CASE("edge attributes", "[hypergraph]") {
    const Hyperedge e({1, 3}, {1});
    CHECK(e.order() == 3);
    CHECK(e.degenerate());
    CHECK_FALSE(e.undirected());
    CHECK(Hyperedge({1, 2}, {1, 2}).undirected());
    CHECK_FALSE(Hyperedge({2, 3}, {1}).degenerate());
    CHECK_THROWS_AS(Hyperedge({}, {1}), std::invalid_argument);
}

TEST_CASE("hypergraph validation", "[hypergraph]") {
    CHECK_THROWS_AS(Hypergraph(3, {Hyperedge({4}, {1})}), std::invalid_argument);
    CHECK_THROWS_AS(Hypergraph(3, {Hyperedge({2}, {1}), Hyperedge({2}, {1})}), std::invalid_argument);
    const Hypergraph h(3, {Hyperedge({3}, {2}), Hyperedge({1}, {2})});
    CHECK(h.edges().front() == Hyperedge({1}, {2}));
    CHECK(h.is_uniform(2));
    CHECK_FALSE(h.is_undirected());
}

TEST_CASE("head counts", "[hypergraph]") {
    const Hypergraph empty(3, {});
    CHECK(head_count(empty, 2, 1) == 0);
    CHECK(head_count(catalog::field_minimal(), 2, 1) == 1);
    for (Vertex k = 1; k <= 3; ++k) CHECK(head_count(catalog::uniform_012(), 3, k) == 3);
    CHECK_THROWS(head_count(empty, 2, 4));
}

TEST_CASE("head counts sum to the in-degree", "[hypergraph]") {
    const Hypergraph h = catalog::pairwise_plus_degenerate();
    for (Vertex k = 1; k <= 3; ++k) {
        int total = 0;
        for (int m = 2; m <= 4; ++m) total += head_count(h, m, k);
        CHECK(static_cast<std::size_t>(total) == h.in_edges(k).size());
    }
}

TEST_CASE("hyperedge enumeration", "[hypergraph]") {
    // Order is |tail| + 1; tails of size up to three give the 49 edges on three vertices.
    const auto all = enumerate_hyperedges(3, 4);
    CHECK(all.size() == 49);
    CHECK(std::set<Hyperedge>(all.begin(), all.end()).size() == all.size());
    CHECK(enumerate_hyperedges(3, 3).size() == 42);
    CHECK(enumerate_hyperedges(3, 2).size() == 21);
    const auto one = enumerate_hyperedges(1, 2);
    REQUIRE(one.size() == 1);
    CHECK(one.front() == Hyperedge({1}, {1}));
    for (const auto& e : all) {
        CHECK(e.order() >= 2);
        CHECK_FALSE(e.tail.empty());
    }
}

TEST_CASE("three-uniform input profiles", "[hypergraph]") {
    for (const auto& c : input_profile_3uniform(catalog::uniform_012())) CHECK(c == InputCounts{0, 1, 2});
    for (const auto& c : input_profile_3uniform(catalog::two_to_one())) CHECK(c == InputCounts{1, 0, 0});
    for (const auto& c : input_profile_3uniform(Hypergraph(3, {}))) CHECK(c == InputCounts{0, 0, 0});
    CHECK_THROWS(input_profile_3uniform(catalog::field_minimal()));
}

TEST_CASE("omega sets partition the order-3 edges into each vertex", "[hypergraph]") {
    for (Vertex k = 1; k <= 3; ++k) {
        std::set<Hyperedge> seen;
        for (const auto& family : omega_sets(k)) {
            CHECK(family.size() == 4);
            for (const auto& e : family) {
                CHECK(e.order() == 3);
                CHECK(e.targets(k));
                seen.insert(e);
            }
        }
        int into_k = 0;
        for (const auto& e : enumerate_hyperedges(3, 3)) into_k += (e.order() == 3 && e.targets(k)) ? 1 : 0;
        CHECK(static_cast<int>(seen.size()) == into_k);
    }
}

TEST_CASE("profile sums equal order-3 head counts", "[hypergraph]") {
    const Hypergraph h = catalog::uniform_012();
    const auto prof = input_profile_3uniform(h);
    for (Vertex k = 1; k <= 3; ++k) {
        const auto& c = prof[static_cast<std::size_t>(k - 1)];
        CHECK(c.pi + c.phi + c.psi == head_count(h, 3, k));
    }
}

TEST_CASE("quotient hypergraphs", "[hypergraph]") {
    const Hypergraph h = catalog::field_minimal();
    CHECK(quotient_restrict(h, Partition::singletons(3)).graph == h);

    const Hypergraph k4 = catalog::complete_undirected(4);
    const auto q = quotient_restrict(k4, Partition(4, {{1, 2}, {3}, {4}}));
    CHECK(q.graph.n() == 3);
    CHECK(q.graph.is_undirected());

    CHECK_THROWS_AS(quotient_restrict(h, Partition(3, {{1}, {2, 3}})), std::invalid_argument);
}

TEST_CASE("undirected hypergraphs only have degenerate edges", "[hypergraph]") {
    const Hypergraph h = catalog::complete_undirected(3);
    CHECK(h.is_undirected());
    CHECK(h.edges().size() == 7);
    for (const auto& e : h.edges()) CHECK(e.degenerate());
}
