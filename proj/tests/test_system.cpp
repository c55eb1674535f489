#include "catch_amalgamated.hpp"

#include "hyperhet/gh_realizer.hpp"
#include "hyperhet/system.hpp"

#include <algorithm>
#include <random>

using namespace hyperhet;
using Catch::Approx;

namespace {
const GHParams kGolden{-0.3, -7.0 / 30, -7.0 / 15};

NetworkSystem golden_gh_system() {
    const RealizationResult r = realize_gh(catalog::uniform_012(), kGolden, true);
    REQUIRE(r.realized);
    return NetworkSystem(catalog::uniform_012(), *r.scheme);
}

Matrix finite_difference_jacobian(const VectorField& f, std::vector<double> x) {
    const std::size_t n = x.size();
    Matrix j(n, n);
    const double h = 1e-6;
    for (std::size_t c = 0; c < n; ++c) {
        auto xp = x, xm = x;
        xp[c] += h;
        xm[c] -= h;
        const auto fp = f(xp), fm = f(xm);
        for (std::size_t r = 0; r < n; ++r) j(r, c) = (fp[r] - fm[r]) / (2 * h);
    }
    return j;
}
} // namespace

TEST_CASE("network right-hand side", "[system]") {
    const NetworkSystem sys = golden_gh_system();
    const auto f = sys.rhs(std::vector<double>{1.0, 0.0, 0.0});
    CHECK(f[0] == Approx(0.7).epsilon(1e-14));
    CHECK(f[1] == 0.0);
    CHECK(f[2] == 0.0);

    const NetworkSystem uncoupled(Hypergraph(3, {}), CouplingScheme::homogeneous(univariate({0.0, 1.0}), {}));
    const auto g = uncoupled.rhs(std::vector<double>{1.0, 2.0, 3.0});
    CHECK(g == std::vector<double>{1.0, 2.0, 3.0});
}

TEST_CASE("synchronous states give equal components on a balanced hypergraph", "[system]") {
    const NetworkSystem sys(catalog::field_minimal(), random_generic_scheme(3, 3, 9));
    const auto f = sys.rhs(std::vector<double>{0.37, 0.37, 0.37});
    CHECK(f[0] == f[1]);
    CHECK(f[1] == f[2]);
}

TEST_CASE("symbolic jacobian", "[system]") {
    const NetworkSystem uncoupled(Hypergraph(3, {}), CouplingScheme::homogeneous(univariate({0.0, 1.0}), {}));
    const Matrix id = uncoupled.jacobian(std::vector<double>{0.2, -1.0, 4.0});
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t k = 0; k < 3; ++k) CHECK(id(i, k) == (i == k ? 1.0 : 0.0));
    }

    const NetworkSystem sys(catalog::complete_undirected(3), random_generic_scheme(4, 3, 2));
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    for (int trial = 0; trial < 10; ++trial) {
        const std::vector<double> x{u(rng), u(rng), u(rng)};
        const Matrix j = sys.jacobian(x);
        const Matrix fd = finite_difference_jacobian(sys, x);
        for (std::size_t k = 0; k < 9; ++k) CHECK(std::abs(j.data[k] - fd.data[k]) <= 1e-6 * std::max(1.0, std::abs(j.data[k])));
    }
}

TEST_CASE("undirected complete system has the symmetric synchronous jacobian", "[system]") {
    const NetworkSystem sys(catalog::complete_undirected(3), random_generic_scheme(4, 3, 21));
    const Matrix j = sys.jacobian(std::vector<double>{0.4, 0.4, 0.4});
    CHECK(j(0, 0) == Approx(j(1, 1)));
    CHECK(j(1, 1) == Approx(j(2, 2)));
    for (std::size_t r = 0; r < 3; ++r) {
        for (std::size_t c = 0; c < 3; ++c) {
            if (r != c) CHECK(j(r, c) == Approx(j(0, 1)));
        }
    }
}

TEST_CASE("row sums agree at synchronous points of balanced systems", "[system]") {
    const NetworkSystem sys(catalog::field_minimal(), random_generic_scheme(3, 3, 4));
    const Matrix j = sys.jacobian(std::vector<double>{-0.6, -0.6, -0.6});
    const double r0 = j(0, 0) + j(0, 1) + j(0, 2);
    for (std::size_t r = 1; r < 3; ++r) CHECK(j(r, 0) + j(r, 1) + j(r, 2) == Approx(r0).epsilon(1e-12));
}

TEST_CASE("restriction to synchrony subspaces", "[system]") {
    const CouplingScheme s = random_generic_scheme(3, 3, 8);
    const NetworkSystem sys(catalog::field_minimal(), s);

    const ReducedSystem diag = restrict(sys, Partition::full(3));
    CHECK(diag.dimension() == 1);
    const std::vector<double> z{0.45};
    CHECK(diag(z)[0] == Approx(sys.rhs(std::vector<double>{0.45, 0.45, 0.45})[0]).epsilon(1e-13));

    const ReducedSystem s3 = restrict(sys, Partition::all_but(3, 3));
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(-2, 2);
    for (int trial = 0; trial < 100; ++trial) {
        const std::vector<double> uu{u(rng), u(rng)};
        const auto full = sys.rhs(s3.lift(uu));
        const auto lifted = s3.lift(s3(uu));
        for (std::size_t k = 0; k < 3; ++k) CHECK(std::abs(full[k] - lifted[k]) <= 1e-12 * std::max(1.0, std::abs(full[k])));
    }
    CHECK_THROWS_AS(restrict(sys, Partition::all_but(3, 1)), std::invalid_argument);
}

TEST_CASE("relabelling vertices permutes the field", "[system]") {
    // Swap vertices 1 and 3 in the hypergraph and in the state.
    const Hypergraph h = catalog::pairwise_plus_degenerate();
    auto relabel = [](Vertex v) { return v == 1 ? 3 : (v == 3 ? 1 : v); };
    std::vector<Hyperedge> edges;
    for (const auto& e : h.edges()) {
        VertexSet t, hd;
        for (Vertex v : e.tail) t.push_back(relabel(v));
        for (Vertex v : e.head) hd.push_back(relabel(v));
        edges.emplace_back(t, hd);
    }
    std::sort(edges.begin(), edges.end());
    const CouplingScheme s = random_generic_scheme(3, 3, 17);
    const NetworkSystem a(h, s), b(Hypergraph(3, edges), s);
    const std::vector<double> x{0.3, -0.8, 1.1}, y{1.1, -0.8, 0.3};
    const auto fa = a.rhs(x), fb = b.rhs(y);
    CHECK(fa[0] == Approx(fb[2]));
    CHECK(fa[1] == Approx(fb[1]));
    CHECK(fa[2] == Approx(fb[0]));
}

TEST_CASE("coordinate changes are exact for polynomial fields", "[system]") {
    const PolynomialField f = gh_reference_system(kGolden);
    const std::vector<std::vector<double>> b{{1, 0, 0}, {1, 1, 0}, {1, 0, 1}};
    const std::vector<std::vector<double>> b_inv{{1, 0, 0}, {-1, 1, 0}, {-1, 0, 1}};
    const PolynomialField g = change_coordinates(f, b, b_inv);
    const std::vector<double> y{0.3, -0.2, 0.5};
    const std::vector<double> x{0.3, 0.1, 0.8};
    const auto fx = f(x), gy = g(y);
    CHECK(gy[0] == Approx(fx[0]));
    CHECK(gy[1] == Approx(fx[1] - fx[0]));
    CHECK(gy[2] == Approx(fx[2] - fx[0]));
}
