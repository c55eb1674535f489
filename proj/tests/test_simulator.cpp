#include "catch_amalgamated.hpp"

#include "hyperhet/gh_realizer.hpp"
#include "hyperhet/simulator.hpp"
#include "hyperhet/synchrony.hpp"

#include <cmath>
#include <sstream>

using namespace hyperhet;
using Catch::Approx;

namespace {
const GHParams kGolden{-0.3, -7.0 / 30, -7.0 / 15};

std::vector<std::vector<double>> axis_equilibria() {
    const double xi = 1.0 / std::sqrt(0.3);
    return {{xi, 0, 0}, {0, xi, 0}, {0, 0, xi}};
}
} // namespace

TEST_CASE("linear decay", "[simulator]") {
    const PolynomialField f({univariate({0.0, -1.0})});
    const Trajectory t = integrate(f, {1.0}, 5.0);
    CHECK(t.times.back() == Approx(5.0));
    CHECK(t.states.back()[0] == Approx(std::exp(-5.0)).epsilon(1e-8));
    CHECK(t.state_at(2.5)[0] == Approx(std::exp(-2.5)).epsilon(1e-6));
    CHECK(t.accepted > 0);
}

TEST_CASE("halving the tolerance changes little", "[simulator]") {
    const PolynomialField f = gh_reference_system(kGolden);
    IntegratorOptions a, b;
    a.rtol = 1e-8;
    a.atol = 1e-10;
    b.rtol = 0.5e-8;
    b.atol = 0.5e-10;
    const Trajectory ta = integrate(f, {0.3, 0.4, 0.5}, 20.0, a);
    const Trajectory tb = integrate(f, {0.3, 0.4, 0.5}, 20.0, b);
    for (std::size_t k = 0; k < 3; ++k) CHECK(ta.states.back()[k] == Approx(tb.states.back()[k]).margin(1e-5));
}

TEST_CASE("bdf agrees with dopri5", "[simulator]") {
    const PolynomialField f = gh_reference_system(kGolden);
    IntegratorOptions a, b;
    a.rtol = b.rtol = 1e-10;
    a.atol = b.atol = 1e-12;
    b.method = Method::bdf;
    const Trajectory ta = integrate(f, {0.3, 0.4, 0.5}, 30.0, a);
    const Trajectory tb = integrate(f, {0.3, 0.4, 0.5}, 30.0, b);
    CHECK(tb.method == "msbdf");
    CHECK(tb.times.back() == Approx(30.0));
    for (std::size_t k = 0; k < 3; ++k) CHECK(tb.states.back()[k] == Approx(ta.states.back()[k]).margin(1e-5));
    CHECK(tb.state_at(15.0)[0] == Approx(ta.state_at(15.0)[0]).margin(1e-4));
}

TEST_CASE("escape stops the run", "[simulator]") {
    const PolynomialField f({univariate({0.0, 0.0, 1.0})});
    IntegratorOptions opt;
    opt.escape_norm = 100.0;
    const Trajectory t = integrate(f, {1.0}, 5.0, opt);
    CHECK(t.escaped);
    CHECK(t.times.back() < 1.0);
}

TEST_CASE("logarithmic coordinates", "[simulator]") {
    const PolynomialField f = gh_reference_system(kGolden);
    const Trajectory lin = integrate(f, {0.3, 0.4, 0.5}, 10.0);
    const Trajectory lg = integrate_log(f, {0.3, 0.4, 0.5}, 10.0);
    CHECK(lg.log_coordinates);
    for (std::size_t k = 0; k < 3; ++k) CHECK(lg.states.back()[k] == Approx(lin.states.back()[k]).epsilon(1e-6));
    const Trajectory neg = integrate_log(f, {-0.3, 0.4, 0.5}, 1.0);
    CHECK(neg.states.back()[0] < 0);

    const PolynomialField g({univariate({1.0, -1.0})});
    CHECK_THROWS_AS(integrate_log(g, {0.5}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(integrate_log(f, {0.0, 0.4, 0.5}, 1.0), std::invalid_argument);
}

TEST_CASE("equilibrium refinement", "[simulator]") {
    const PolynomialField f = gh_reference_system(kGolden);
    const EquilibriumReport r = refine_equilibrium(f, {1.7, 0.01, -0.01});
    CHECK(r.x[0] == Approx(1.0 / std::sqrt(0.3)).epsilon(1e-12));
    CHECK(std::abs(r.x[1]) < 1e-12);
    CHECK(r.residual < 1e-12);
    CHECK(r.hyperbolic);
    CHECK(saddle_ratio(r.eigen) == Approx(2.5).epsilon(1e-9));
    CHECK_THROWS(saddle_ratio(refine_equilibrium(f, {0.1, 0.1, 0.1}).eigen));
}

TEST_CASE("diagonal stays invariant", "[synchrony][simulator]") {
    const NetworkSystem sys(catalog::complete_undirected(3), random_generic_scheme(4, 3, 6, 0.3));
    IntegratorOptions opt;
    opt.escape_norm = 1e3;
    const Trajectory t = integrate(sys, {0.25, 0.25, 0.25}, 20.0, opt);
    CHECK(invariance_drift(t, Partition::full(3)) < 1e-10);
}

TEST_CASE("itinerary extraction", "[simulator]") {
    const PolynomialField f = gh_reference_system(kGolden);
    const auto eq = axis_equilibria();
    const double radius = default_dwell_radius(eq);
    CHECK(radius == Approx(0.05 * std::sqrt(2.0) / std::sqrt(0.3)));
    const Trajectory t = integrate_log(f, {0.3, 0.4, 0.5}, 600.0);
    const Itinerary it = extract_itinerary(t, eq, radius);
    REQUIRE(it.episodes.size() >= 4);
    const auto ids = it.ids();
    // The unstable direction at the first axis equilibrium is x3, so the cycle runs 1 -> 3 -> 2.
    for (std::size_t k = 1; k < ids.size(); ++k) CHECK(ids[k] == (ids[k - 1] + 1) % 3 + 1);
    const DwellGrowth g = dwell_growth(it);
    CHECK(g.attracting);

    ItineraryTracker tr(eq, radius);
    IntegratorOptions opt;
    opt.store_every = 1000000;
    opt.observer = [&](const DenseSegment& s) { tr.feed(s); };
    tr.start(0.0, std::vector<double>{0.3, 0.4, 0.5});
    integrate_log(f, {0.3, 0.4, 0.5}, 600.0, opt);
    const Itinerary online = tr.finish(600.0);
    REQUIRE(online.episodes.size() == it.episodes.size());
    for (std::size_t k = 0; k < it.episodes.size(); ++k) {
        CHECK(online.episodes[k].id == it.episodes[k].id);
        CHECK(online.episodes[k].dwell == Approx(it.episodes[k].dwell).epsilon(1e-6));
    }

    CHECK_THROWS_AS(extract_itinerary(t, eq, 10.0), std::invalid_argument);
}

TEST_CASE("dwell growth needs four complete episodes", "[simulator]") {
    Itinerary it;
    it.episodes = {{1, 0.0, 1.0, true}, {2, 2.0, 2.0, true}, {3, 5.0, 4.0, true}};
    CHECK_THROWS_AS(dwell_growth(it), std::invalid_argument);
    it.episodes.push_back({1, 10.0, 8.0, true});
    const DwellGrowth g = dwell_growth(it);
    CHECK(g.ratios.size() == 3);
    CHECK(g.asymptote == Approx(2.0));
    CHECK(g.attracting);
}

TEST_CASE("csv output", "[simulator]") {
    Polynomial a(2), b(2);
    a.add_term({1, 0}, -1.0);
    b.add_term({0, 1}, -2.0);
    const PolynomialField f({a, b});
    const Trajectory t = integrate(f, {1.0, 1.0}, 0.5);
    const std::string csv = trajectory_csv(t);
    std::istringstream in(csv);
    std::string header;
    std::getline(in, header);
    CHECK(header == "t,x1,x2");
    std::size_t lines = 0;
    for (std::string line; std::getline(in, line);) ++lines;
    CHECK(lines == t.times.size());
}
