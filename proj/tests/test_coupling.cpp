#include "catch_amalgamated.hpp"

#include "hyperhet/coupling.hpp"

#include <algorithm>
#include <random>

using namespace hyperhet;
using Catch::Approx;

namespace {
SymmetricPolynomial zy2_sum(double c) {
    SymmetricPolynomial g(3);
    g.add({1, 2, 0}, c);  // c z y1^2 + c z y2^2
    return g;
}
} // namespace

TEST_CASE("evaluate symmetric couplings", "[coupling]") {
    const double c = 0.7;
    const std::vector<double> y{2.0, 3.0};
    CHECK(zy2_sum(c).evaluate(1.0, y) == Approx(13 * c));

    const double b = -7.0 / 30, cc = -7.0 / 15;
    SymmetricPolynomial g2(2);
    g2.add({1, 2}, b - cc);
    CHECK(g2.evaluate(1.0, std::vector<double>{1.0}) == Approx(7.0 / 30));

    CHECK(zy2_sum(c).evaluate(1.3, std::vector<double>{0.0, 0.0}) == 0.0);
}

TEST_CASE("terms without inputs are rejected", "[coupling]") {
    SymmetricPolynomial g(2);
    CHECK_THROWS_AS(g.add({3, 0}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(g.add({1, 1, 1}, 1.0), std::invalid_argument);
}

TEST_CASE("evaluation is invariant under input permutations", "[coupling]") {
    SymmetricPolynomial g(4);
    g.add({1, 2, 1, 0}, 0.3);
    g.add({0, 1, 1, 1}, -1.1);
    g.add({2, 3, 0, 0}, 0.05);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-2, 2);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> y{u(rng), u(rng), u(rng)};
        const double z = u(rng);
        const double ref = g.evaluate(z, y);
        std::sort(y.begin(), y.end());
        do {
            CHECK(g.evaluate(z, y) == ref);
        } while (std::next_permutation(y.begin(), y.end()));
    }
}

TEST_CASE("symbolic partials", "[coupling]") {
    const double c = 1.5, z = 0.8;
    const Polynomial d2 = partial(zy2_sum(c), 1);
    CHECK(d2.evaluate(std::vector<double>{z, z, z}) == Approx(2 * c * z * z));

    const double b = -7.0 / 30, cc = -7.0 / 15;
    SymmetricPolynomial g2(2);
    g2.add({1, 2}, b - cc);
    CHECK(partial(g2, 0).evaluate(std::vector<double>{z, z}) == Approx((b - cc) * z * z));
}

TEST_CASE("symbolic partials agree with central differences", "[coupling]") {
    const CouplingScheme s = random_generic_scheme(3, 4, 11);
    const SymmetricPolynomial& g = s.by_order.at(3);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-2, 2);
    const double h = 1e-5;
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<double> x{u(rng), u(rng), u(rng)};
        for (int slot = 0; slot < 3; ++slot) {
            auto shifted = [&](double d) {
                auto y = x;
                y[static_cast<std::size_t>(slot)] += d;
                return g.evaluate(y[0], std::vector<double>{y[1], y[2]});
            };
            const double fd = (shifted(h) - shifted(-h)) / (2 * h);
            const double sym = partial(g, slot).evaluate(x);
            CHECK(std::abs(sym - fd) <= 1e-6 * std::max(1.0, std::abs(sym)));
        }
    }
}

TEST_CASE("odd/even symmetry check", "[coupling]") {
    SymmetricPolynomial g(2);
    g.add({1, 2}, -0.2);
    const CouplingScheme ok = CouplingScheme::homogeneous(univariate({0.0, 1.0, 0.0, -0.3}), {{2, g}});
    CHECK(odd_even_symmetry_check(ok));

    SymmetricPolynomial zy(2);
    zy.add({1, 1}, 1.0);
    CHECK_FALSE(odd_even_symmetry(zy));
    SymmetricPolynomial zyy(3);
    zyy.add({1, 1, 1}, 1.0);
    CHECK_FALSE(odd_even_symmetry(zyy));
    CHECK_FALSE(odd_even_symmetry_check(CouplingScheme::homogeneous(univariate({0.0, 1.0, 1.0}), {{2, g}})));
}

TEST_CASE("random generic schemes", "[coupling]") {
    const CouplingScheme a = random_generic_scheme(3, 4, 42);
    const CouplingScheme b = random_generic_scheme(3, 4, 42);
    const CouplingScheme c = random_generic_scheme(3, 4, 43);
    CHECK(a.by_order == b.by_order);
    CHECK(a.internal == b.internal);
    CHECK_FALSE(a.by_order == c.by_order);
    for (const auto& [m, g] : a.by_order) {
        CHECK(g.canonical_terms().size() == symmetric_monomial_basis(m, 4).size());
        for (const auto& [e, coeff] : g.canonical_terms()) {
            CHECK(coeff != 0.0);
            CHECK(e == SymmetricPolynomial::canonical(e));
        }
    }
}

TEST_CASE("nodeunspecific couplings are constant in z", "[coupling]") {
    SymmetricPolynomial g(3);
    g.add({0, 2, 1}, 0.4);
    g.add({0, 1, 0}, -1.0);
    CHECK(g.nodeunspecific());
    const std::vector<double> y{0.3, -1.2};
    CHECK(g.evaluate(-2.0, y) == g.evaluate(1.7, y));
    const CouplingScheme s = CouplingScheme::homogeneous(univariate({0.0, 1.0}), {{3, g}});
    CHECK(s.nodeunspecific());
}

TEST_CASE("symmetrization averages over input permutations", "[coupling]") {
    bool changed = false;
    const auto g = SymmetricPolynomial::symmetrize(3, {{{1, 2, 0}, 1.0}}, changed);
    CHECK(changed);
    CHECK(g.coefficient({1, 2, 0}) == Approx(0.5));
    const auto h = SymmetricPolynomial::symmetrize(3, {{{1, 2, 0}, 1.0}, {{1, 0, 2}, 1.0}}, changed);
    CHECK_FALSE(changed);
    CHECK(h.coefficient({1, 0, 2}) == Approx(1.0));
}
