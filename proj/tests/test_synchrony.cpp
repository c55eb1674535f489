#include "catch_amalgamated.hpp"

#include "hyperhet/field_realizer.hpp"
#include "hyperhet/simulator.hpp"
#include "hyperhet/synchrony.hpp"

#include <algorithm>
#include <cmath>
#include <random>

using namespace hyperhet;
using Catch::Approx;

TEST_CASE("balanced partitions", "[synchrony]") {
    const Hypergraph k3 = catalog::complete_undirected(3);
    for (const auto& p : {Partition::full(3), Partition::all_but(3, 1), Partition::all_but(3, 2), Partition::all_but(3, 3)}) {
        CHECK(is_balanced(k3, p));
    }
    const Hypergraph h = catalog::field_minimal();
    CHECK(is_balanced(h, Partition(3, {{1, 2}, {3}})));
    CHECK_FALSE(is_balanced(h, Partition(3, {{2, 3}, {1}})));
    CHECK(is_balanced(h, Partition::singletons(3)));
}

TEST_CASE("robust subspace census", "[synchrony]") {
    using S = Subspace;
    CHECK(robust_subspace_census(catalog::field_minimal()) == std::vector<S>{S::delta, S::s2, S::s3});
    CHECK(robust_subspace_census(catalog::complete_undirected(3)) == std::vector<S>{S::delta, S::s1, S::s2, S::s3});
    CHECK(robust_subspace_census(catalog::two_to_one()) == std::vector<S>{S::delta, S::s1, S::s2, S::s3});
}

TEST_CASE("census agrees with the numerical probe", "[synchrony]") {
    const Hypergraph h = catalog::field_minimal();
    const auto census = robust_subspace_census(h);
    for (Subspace s : {Subspace::delta, Subspace::s1, Subspace::s2, Subspace::s3}) {
        const double spread = invariance_probe(h, partition_of(s), 3);
        const bool listed = std::find(census.begin(), census.end(), s) != census.end();
        if (listed) {
            CHECK(spread < 1e-9);
        } else {
            CHECK(spread > 1e-6);
        }
    }
}

TEST_CASE("full synchrony balance", "[synchrony]") {
    CHECK(full_sync_balance(catalog::field_minimal()));
    CHECK_FALSE(full_sync_balance(Hypergraph(3, {Hyperedge({2}, {1})})));
    CHECK(full_sync_balance(catalog::complete_undirected(5)));
}

TEST_CASE("balanced partitions stay invariant under integration", "[synchrony]") {
    const Hypergraph h = catalog::field_minimal();
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const NetworkSystem sys(h, random_generic_scheme(3, 3, seed, 0.3));
        IntegratorOptions opt;
        opt.escape_norm = 1e3;
        const Trajectory t = integrate(sys, {0.2, 0.2, -0.1}, 10.0, opt);
        CHECK(invariance_drift(t, Partition::all_but(3, 3)) < 1e-9);
    }
}

TEST_CASE("synchronous linearization", "[synchrony]") {
    const NetworkSystem uncoupled(Hypergraph(3, {}), CouplingScheme::homogeneous(univariate({0.0, 1.0, 0.0, -1.0}), {}));
    const SyncLinearization u = sync_linearization(uncoupled, 1.0);
    for (auto v : u.eigen.values) CHECK(v.real() == Approx(-2.0));

    const NetworkSystem k3(catalog::complete_undirected(3), random_generic_scheme(4, 3, 5));
    const SyncLinearization l = sync_linearization(k3, 0.3);
    REQUIRE(l.transverse[1].has_value());
    REQUIRE(l.transverse[2].has_value());
    CHECK(eigenvalues_coincide(*l.transverse[1], *l.transverse[2]));
    CHECK(l.eigen.repeated());

    CHECK_THROWS_AS(sync_linearization(NetworkSystem(Hypergraph(3, {Hyperedge({2}, {1})}), random_generic_scheme(2, 2, 1)), 0.1),
                    std::invalid_argument);
}

TEST_CASE("closed-form eigenvalues for the minimal two-plane hypergraph", "[synchrony]") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int trial = 0; trial < 100; ++trial) {
        FieldCoefficients c{u(rng), u(rng), u(rng), u(rng), u(rng), u(rng), u(rng), u(rng), u(rng)};
        const double z = u(rng);
        const NetworkSystem sys(catalog::field_minimal(), c.scheme());
        const SyncLinearization l = sync_linearization(sys, z);
        const FieldDerivatives d = field_derivatives(c, z);
        CHECK(l.lambda_delta == Approx(d.lambda_delta()).margin(1e-9));
        REQUIRE(l.transverse[2].has_value());
        REQUIRE(l.transverse[1].has_value());
        CHECK(*l.transverse[2] == Approx(d.lambda_s3()).margin(1e-9));
        CHECK(*l.transverse[1] == Approx(d.lambda_s2()).margin(1e-9));
        CHECK_FALSE(l.transverse[0].has_value());
    }
}

TEST_CASE("transverse eigenvectors lie in the two planes", "[synchrony]") {
    const FieldCoefficients c{0.3, -0.2, -1.0, 0.7, 0.1, -0.4, -0.5, 0.2, 0.3};
    const NetworkSystem sys(catalog::field_minimal(), c.scheme());
    const SyncLinearization l = sync_linearization(sys, 0.25);
    int in_s3 = 0, in_s2 = 0, in_delta = 0;
    for (const auto& t : l.tagged) {
        in_delta += t.in_delta ? 1 : 0;
        if (!t.in_delta) {
            in_s3 += std::count(t.in_all_but.begin(), t.in_all_but.end(), 3) > 0 ? 1 : 0;
            in_s2 += std::count(t.in_all_but.begin(), t.in_all_but.end(), 2) > 0 ? 1 : 0;
        }
    }
    CHECK(in_delta == 1);
    CHECK(in_s3 == 1);
    CHECK(in_s2 == 1);
}

TEST_CASE("local obstruction verdicts", "[synchrony]") {
    CHECK(local_obstruction_field(catalog::field_minimal()) == LocalFieldVerdict::ok);
    CHECK(local_obstruction_field(catalog::complete_undirected(3)) == LocalFieldVerdict::too_many_subspaces);
    // Only full synchrony is balanced here.
    const Hypergraph h(3, {Hyperedge({2}, {1}), Hyperedge({3}, {2}), Hyperedge({1}, {3}), Hyperedge({1, 2}, {1}),
                           Hyperedge({2, 3}, {2}), Hyperedge({1, 3}, {3})});
    CHECK(local_obstruction_field(h) == LocalFieldVerdict::too_few_subspaces);
}
