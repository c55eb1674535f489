#include "hyperhet/synchrony.hpp"

#include "hyperhet/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

namespace hyperhet {

namespace {

// Sorted list of (order, sorted tail class-multiset) pairs received by vertex k.
std::vector<std::pair<int, std::vector<std::size_t>>> input_signature(const Hypergraph& h, const Partition& p, Vertex k) {
    std::vector<std::pair<int, std::vector<std::size_t>>> sig;
    for (std::size_t idx : h.in_edges(k)) {
        const auto& e = h.edges()[idx];
        std::vector<std::size_t> cls;
        for (Vertex t : e.tail) cls.push_back(p.class_of(t));
        std::sort(cls.begin(), cls.end());
        sig.emplace_back(e.order(), std::move(cls));
    }
    std::sort(sig.begin(), sig.end());
    return sig;
}

bool all_equal(const std::vector<double>& v, double tol) {
    for (double x : v) {
        if (std::abs(x - v.front()) > tol) return false;
    }
    return true;
}

} // namespace

bool is_balanced(const Hypergraph& h, const Partition& p) {
    if (p.n() != h.n()) throw std::invalid_argument("partition and hypergraph sizes differ");
    for (const auto& cls : p.classes()) {
        const auto ref = input_signature(h, p, cls.front());
        for (std::size_t i = 1; i < cls.size(); ++i) {
            if (input_signature(h, p, cls[i]) != ref) return false;
        }
    }
    return true;
}

std::string to_string(Subspace s) {
    switch (s) {
    case Subspace::delta: return "Delta";
    case Subspace::s1: return "S1";
    case Subspace::s2: return "S2";
    case Subspace::s3: return "S3";
    }
    return "?";
}

Partition partition_of(Subspace s) {
    switch (s) {
    case Subspace::delta: return Partition::full(3);
    case Subspace::s1: return Partition::all_but(3, 1);
    case Subspace::s2: return Partition::all_but(3, 2);
    case Subspace::s3: return Partition::all_but(3, 3);
    }
    throw std::invalid_argument("unknown subspace");
}

std::vector<Subspace> robust_subspace_census(const Hypergraph& h) {
    if (h.n() != 3) throw std::invalid_argument("census is defined for 3-vertex hypergraphs");
    std::vector<Subspace> out;
    for (Subspace s : {Subspace::delta, Subspace::s1, Subspace::s2, Subspace::s3}) {
        if (is_balanced(h, partition_of(s))) out.push_back(s);
    }
    return out;
}

double invariance_probe(const Hypergraph& h, const Partition& p, std::uint64_t seed, int schemes, int points) {
    int max_order = 2;
    for (const auto& e : h.edges()) max_order = std::max(max_order, e.order());
    std::mt19937_64 rng(seed);
    auto unit = [&]() { return 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0; };
    double worst = 0.0;
    for (int s = 0; s < schemes; ++s) {
        const NetworkSystem sys(h, random_generic_scheme(max_order, 3, rng()));
        for (int q = 0; q < points; ++q) {
            std::vector<double> u(p.size());
            for (double& v : u) v = unit();
            std::vector<double> x(static_cast<std::size_t>(h.n()));
            for (Vertex v = 1; v <= h.n(); ++v) x[static_cast<std::size_t>(v - 1)] = u[p.class_of(v)];
            const auto dx = sys.rhs(x);
            double scale = 1.0;
            for (double d : dx) scale = std::max(scale, std::abs(d));
            for (const auto& cls : p.classes()) {
                const double ref = dx[static_cast<std::size_t>(cls.front() - 1)];
                for (Vertex v : cls) worst = std::max(worst, std::abs(dx[static_cast<std::size_t>(v - 1)] - ref) / scale);
            }
        }
    }
    return worst;
}

bool full_sync_balance(const Hypergraph& h) { return is_balanced(h, Partition::full(h.n())); }

double transverse_eigenvalue(const Matrix& j, Vertex lone) {
    const std::size_t l = static_cast<std::size_t>(lone - 1);
    const std::size_t other = l == 0 ? 1 : 0;
    return j(l, l) - j(other, l);
}

SyncLinearization sync_linearization(const NetworkSystem& sys, double z) {
    const int n = sys.hypergraph().n();
    if (!is_invariant(sys.field(), Partition::full(n))) {
        throw std::invalid_argument("full synchrony is not invariant for this system");
    }
    SyncLinearization lin;
    lin.z = z;
    const std::vector<double> x(static_cast<std::size_t>(n), z);
    lin.matrix = sys.jacobian(x);
    lin.eigen = eigen_decompose(lin.matrix);
    for (std::size_t c = 0; c < lin.matrix.cols; ++c) lin.lambda_delta += lin.matrix(0, c);
    lin.transverse.resize(static_cast<std::size_t>(n));
    if (n >= 2) {
        for (Vertex j = 1; j <= n; ++j) {
            if (is_invariant(sys.field(), Partition::all_but(n, j))) {
                lin.transverse[static_cast<std::size_t>(j - 1)] = transverse_eigenvalue(lin.matrix, j);
            }
        }
    }
    lin.hyperbolic = std::all_of(lin.eigen.values.begin(), lin.eigen.values.end(),
                                 [](std::complex<double> v) { return std::abs(v.real()) > 1e-8; });
    for (const auto& cl : lin.eigen.clusters) {
        for (const auto& vec : cl.basis) {
            TaggedEigenvector t;
            t.value = cl.value.real();
            t.vector = vec;
            const double tol = 1e-8;
            t.in_delta = all_equal(vec, tol);
            for (Vertex j = 1; j <= n && n >= 3; ++j) {
                std::vector<double> rest;
                for (Vertex i = 1; i <= n; ++i) {
                    if (i != j) rest.push_back(vec[static_cast<std::size_t>(i - 1)]);
                }
                if (all_equal(rest, tol) && !t.in_delta) t.in_all_but.push_back(j);
            }
            lin.tagged.push_back(std::move(t));
        }
    }
    return lin;
}

std::string to_string(LocalFieldVerdict v) {
    switch (v) {
    case LocalFieldVerdict::ok: return "ok";
    case LocalFieldVerdict::too_few_subspaces: return "too-few-subspaces";
    case LocalFieldVerdict::too_many_subspaces: return "too-many-subspaces";
    }
    return "?";
}

LocalFieldVerdict local_obstruction_field(const Hypergraph& h) {
    const auto census = robust_subspace_census(h);
    const auto planes = std::count_if(census.begin(), census.end(), [](Subspace s) { return s != Subspace::delta; });
    if (planes == 2) return LocalFieldVerdict::ok;
    if (planes > 2) return LocalFieldVerdict::too_many_subspaces;
    return LocalFieldVerdict::too_few_subspaces;
}

} // namespace hyperhet
