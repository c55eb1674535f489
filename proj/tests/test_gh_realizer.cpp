#include "catch_amalgamated.hpp"

#include "hyperhet/gh_realizer.hpp"
#include "hyperhet/synchrony.hpp"

#include <cmath>

using namespace hyperhet;
using Catch::Approx;

namespace {
const GHParams kGolden{-0.3, -7.0 / 30, -7.0 / 15};

void check_realized(const Hypergraph& h, const std::string& construction, bool homogeneous = true) {
    const RealizationResult r = realize_gh(h, kGolden, homogeneous);
    INFO(construction);
    REQUIRE(r.realized);
    CHECK(r.construction == construction);
    REQUIRE(r.scheme.has_value());
    const NetworkSystem sys(h, *r.scheme);
    CHECK(field_identity(sys.field(), gh_reference_system(kGolden)));
    CHECK(r.identity_residual < 1e-13);
}
} // namespace

TEST_CASE("parameter conditions", "[gh_realizer]") {
    CHECK(check_gh_conditions(kGolden));
    CHECK_FALSE(check_gh_conditions({-0.5, -0.2, -0.3}));
    CHECK_FALSE(check_gh_conditions({-0.3, -0.2, -0.4}));
    CHECK_FALSE(check_gh_conditions({-0.3, -0.5, -0.2}));
    CHECK_THROWS_AS(realize_gh(catalog::uniform_012(), {-0.5, -0.2, -0.3}), std::invalid_argument);
}

TEST_CASE("reference system equilibria and symmetry", "[gh_realizer]") {
    const PolynomialField f = gh_reference_system(kGolden);
    const double xi = 1.0 / std::sqrt(0.3);
    CHECK(xi == Approx(1.825742).epsilon(1e-6));
    const auto v = f(std::vector<double>{xi, 0.0, 0.0});
    for (double c : v) CHECK(std::abs(c) < 1e-14);
    for (GroupElement g : {GroupElement::tau1, GroupElement::tau2, GroupElement::tau3, GroupElement::rho}) {
        CHECK(equivariance_check(f, g));
    }
    // Jacobian at the first axis equilibrium: radial -2, the neighbours 1 + b xi^2 and 1 + c xi^2.
    const Matrix j = f.jacobian(std::vector<double>{xi, 0.0, 0.0});
    CHECK(j(0, 0) == Approx(-2.0));
    CHECK(j(1, 1) == Approx(1.0 + kGolden.c / 0.3));
    CHECK(j(2, 2) == Approx(1.0 + kGolden.b / 0.3));
}

TEST_CASE("non-equivariant fields are detected", "[gh_realizer]") {
    Polynomial extra(3);
    extra.add_term({2, 0, 0}, 0.1);
    auto comps = gh_reference_system(kGolden).components();
    comps[0] += extra;
    const PolynomialField f(comps);
    CHECK_FALSE(equivariance_check(f, GroupElement::tau1));
    CHECK_FALSE(equivariance_check(f, GroupElement::rho));
}

TEST_CASE("known constructions reproduce the reference field", "[gh_realizer]") {
    check_realized(catalog::classical_complete(), "two-type-pairwise", false);
    check_realized(catalog::pairwise_plus_two_to_one(), "pairwise-plus-two-to-one");
    check_realized(catalog::pairwise_plus_degenerate(), "pairwise-plus-degenerate");
    check_realized(catalog::uniform_012(), "uniform-three");
}

TEST_CASE("obstructions carry verified witnesses", "[gh_realizer]") {
    struct Case {
        Hypergraph h;
        bool homogeneous;
        bool nodeunspecific;
        GHObstruction tag;
    };
    const std::vector<Case> cases{
        {catalog::complete_undirected(3), true, false, GHObstruction::undirected_input_symmetry},
        {catalog::two_to_one(), false, false, GHObstruction::symmetric_two_to_one_inputs},
        {catalog::classical_complete(), true, false, GHObstruction::homogeneous_pairwise_equal_inputs},
        {catalog::pairwise_plus_degenerate(), true, true, GHObstruction::nodeunspecific_mixed_monomial},
        {Hypergraph(3, {Hyperedge({1, 2, 3}, {1}), Hyperedge({1, 2, 3}, {2})}), false, false,
         GHObstruction::four_uniform_input_symmetry},
    };
    for (const auto& c : cases) {
        const RealizationResult r = realize_gh(c.h, kGolden, c.homogeneous, c.nodeunspecific);
        INFO(to_string(c.tag));
        CHECK_FALSE(r.realized);
        REQUIRE_FALSE(r.reasons.empty());
        CHECK(r.reasons.front() == c.tag);
        REQUIRE(r.witness.has_value());
        CHECK(r.witness->verified);
        CHECK(r.witness->realizable_defect < 1e-10);
        CHECK(r.witness->target_defect > 1e-3);
    }
}

TEST_CASE("uniform-three alpha intervals", "[gh_realizer]") {
    const auto iv = uniform3_alpha_interval(0, 1, 2);
    REQUIRE(iv.has_value());
    CHECK(iv->lower == Approx(1.0 / 3).margin(1e-15));
    CHECK(iv->upper == Approx(0.5).margin(1e-15));
    CHECK(iv->contains(0.4));
    const Uniform3Params p = uniform3_params(0, 1, 2, 0.4);
    CHECK(std::abs(p.beta - (-7.0 / 30)) <= 1e-15);
    CHECK(std::abs(p.gh.a - (-0.3)) <= 1e-15);
    CHECK(std::abs(p.gh.b - (-7.0 / 30)) <= 1e-15);
    CHECK(std::abs(p.gh.c - (-7.0 / 15)) <= 1e-15);

    CHECK_FALSE(uniform3_alpha_interval(1, 0, 0).has_value());
    CHECK_FALSE(uniform3_alpha_interval(0, 0, 1).has_value());
    CHECK_FALSE(uniform3_conditions(0, 0, 0));
}

TEST_CASE("uniform-three admissible configurations", "[gh_realizer]") {
    const auto configs = uniform3_admissible_configs();
    CHECK(configs.size() == 20);
    for (const auto& [pi, phi, psi] : configs) {
        const auto iv = uniform3_alpha_interval(pi, phi, psi);
        REQUIRE(iv.has_value());
        const double alpha = 0.5 * (iv->lower + iv->upper);
        CHECK(check_gh_conditions(uniform3_params(pi, phi, psi, alpha).gh));
    }
}

TEST_CASE("configuration hypergraphs have the requested profile", "[gh_realizer]") {
    for (const auto& [pi, phi, psi] : {std::array<int, 3>{0, 1, 2}, std::array<int, 3>{1, 1, 2}, std::array<int, 3>{2, 3, 4}}) {
        const auto h = construct_config_hypergraph(pi, phi, psi);
        REQUIRE(h.has_value());
        for (const auto& c : input_profile_3uniform(*h)) CHECK(c == InputCounts{pi, phi, psi});
        const auto iv = uniform3_alpha_interval(pi, phi, psi);
        REQUIRE(iv.has_value());
        const Uniform3Params p = uniform3_params(pi, phi, psi, 0.5 * (iv->lower + iv->upper));
        const NetworkSystem sys(*h, uniform3_scheme(p.alpha, p.beta));
        CHECK(field_identity(sys.field(), gh_reference_system(p.gh)));
    }
    CHECK_FALSE(construct_config_hypergraph(1, 0, 0).has_value());
}

TEST_CASE("per-edge couplings realize the minimal two-plane hypergraph", "[gh_realizer]") {
    const RealizationResult hom = realize_gh(catalog::field_minimal(), kGolden, true);
    CHECK_FALSE(hom.realized);
    const RealizationResult het = realize_gh(catalog::field_minimal(), kGolden, false);
    REQUIRE(het.realized);
    const NetworkSystem sys(catalog::field_minimal(), *het.scheme);
    CHECK(field_identity(sys.field(), gh_reference_system(kGolden), 1e-10));
}
