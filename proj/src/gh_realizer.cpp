#include "hyperhet/gh_realizer.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hyperhet {

PolynomialField gh_reference_system(const GHParams& p) {
    std::vector<Polynomial> comps;
    for (std::size_t k = 0; k < 3; ++k) {
        const std::size_t r = (k + 1) % 3;
        const std::size_t l = (k + 2) % 3;
        Polynomial f(3);
        Exponents e(3, 0);
        e[k] = 1;
        f.add_term(e, 1.0);
        e[k] = 3;
        f.add_term(e, p.a);
        e.assign(3, 0);
        e[k] = 1;
        e[r] = 2;
        f.add_term(e, p.b);
        e.assign(3, 0);
        e[k] = 1;
        e[l] = 2;
        f.add_term(e, p.c);
        comps.push_back(f);
    }
    return PolynomialField(std::move(comps));
}

bool check_gh_conditions(const GHParams& p) {
    return std::abs(p.a + p.b + p.c + 1.0) <= 1e-12 && -1.0 / 3.0 < p.a && p.a < 0.0 && p.c < p.a && p.a < p.b && p.b < 0.0;
}

SignedPermutation group_action(GroupElement g) {
    switch (g) {
    case GroupElement::tau1: return {{0, 1, 2}, {-1, 1, 1}};
    case GroupElement::tau2: return {{0, 1, 2}, {1, -1, 1}};
    case GroupElement::tau3: return {{0, 1, 2}, {1, 1, -1}};
    case GroupElement::rho: return {{1, 2, 0}, {1, 1, 1}};
    }
    throw std::invalid_argument("unknown group element");
}

bool equivariance_check(const PolynomialField& f, GroupElement g) {
    if (f.dimension() != 3) throw std::invalid_argument("equivariance_check needs a 3-dimensional field");
    return is_equivariant(f, group_action(g));
}

std::string to_string(GHObstruction o) {
    switch (o) {
    case GHObstruction::undirected_input_symmetry: return "undirected-input-symmetry";
    case GHObstruction::nodeunspecific_mixed_monomial: return "nodeunspecific-mixed-monomial";
    case GHObstruction::four_uniform_input_symmetry: return "four-uniform-input-symmetry";
    case GHObstruction::symmetric_two_to_one_inputs: return "symmetric-two-to-one-inputs";
    case GHObstruction::homogeneous_pairwise_equal_inputs: return "homogeneous-pairwise-equal-inputs";
    case GHObstruction::uniform3_profile_mismatch: return "uniform3-profile-mismatch";
    case GHObstruction::no_cubic_realization: return "no-cubic-realization";
    }
    return "?";
}

namespace {

SymmetricPolynomial pairwise_coupling(double coeff) {
    SymmetricPolynomial g(2);
    g.add({1, 2}, coeff);
    return g;
}

SymmetricPolynomial three_coupling(double coeff) {
    SymmetricPolynomial g(3);
    g.add({1, 2, 0}, coeff);
    return g;
}

Polynomial cubic_internal(double cubic) {
    Polynomial f(1);
    f.add_term({1}, 1.0);
    f.add_term({3}, cubic);
    return f;
}

std::vector<SignedPermutation> cycle_symmetry_group() {
    return {group_action(GroupElement::rho), group_action(GroupElement::tau1), group_action(GroupElement::tau2),
            group_action(GroupElement::tau3)};
}

bool pairwise_neighbours_present(const Hypergraph& h) {
    for (Vertex k = 1; k <= 3; ++k) {
        if (!h.contains({{right_neighbour(k)}, {k}}) || !h.contains({{left_neighbour(k)}, {k}})) return false;
    }
    return true;
}

std::vector<Hyperedge> unused_edges(const Hypergraph& h, const CouplingScheme& s) {
    std::vector<Hyperedge> out;
    for (const auto& e : h.edges()) {
        const SymmetricPolynomial* g = s.coupling_for(e);
        if (g == nullptr || g->empty()) out.push_back(e);
    }
    return out;
}

struct Candidate {
    std::string name;
    CouplingScheme scheme;
};

std::optional<Candidate> known_construction(const Hypergraph& h, const GHParams& p, bool homogeneous, std::string& note,
                                            bool& profile_mismatch) {
    profile_mismatch = false;
    if (h.is_uniform(2) && !h.edges().empty() && !homogeneous && pairwise_neighbours_present(h)) {
        // Input from the right neighbour carries b, from the left neighbour c; self-loops stay unused.
        std::map<Hyperedge, SymmetricPolynomial> per_edge;
        for (Vertex k = 1; k <= 3; ++k) {
            per_edge.emplace(Hyperedge({right_neighbour(k)}, {k}), pairwise_coupling(p.b));
            per_edge.emplace(Hyperedge({left_neighbour(k)}, {k}), pairwise_coupling(p.c));
        }
        return Candidate{"two-type-pairwise", CouplingScheme::per_edge(cubic_internal(p.a), per_edge)};
    }
    if (h == catalog::pairwise_plus_two_to_one()) {
        return Candidate{"pairwise-plus-two-to-one",
                         CouplingScheme::homogeneous(cubic_internal(p.a), {{2, pairwise_coupling(p.b - p.c)}, {3, three_coupling(p.c)}})};
    }
    if (h == catalog::pairwise_plus_degenerate()) {
        return Candidate{"pairwise-plus-degenerate",
                         CouplingScheme::homogeneous(cubic_internal(p.a - p.c), {{2, pairwise_coupling(p.b)}, {3, three_coupling(p.c)}})};
    }
    if (h.is_uniform(3) && h.has_degenerate_edge()) {
        const InputProfile prof = input_profile_3uniform(h);
        if (prof[0] == prof[1] && prof[1] == prof[2]) {
            const auto [pi, phi, psi] = prof[0];
            std::ostringstream os;
            os << "input counts (" << pi << "," << phi << "," << psi << ") at every vertex";
            note = os.str();
            if (pi + phi == 0) {
                profile_mismatch = true;
                note += "; no input from the right neighbour, so b = 0 is forced";
                return std::nullopt;
            }
            const double beta = p.b / (pi + phi);
            if (std::abs(p.c - beta * (pi + psi)) > 1e-12 * std::max(1.0, std::abs(p.c))) {
                profile_mismatch = true;
                note += "; these counts force b/c = " + std::to_string(pi + phi) + "/" + std::to_string(pi + psi);
                return std::nullopt;
            }
            const double alpha = p.a - beta * (phi + psi);
            CouplingScheme s = uniform3_scheme(alpha, beta);
            return Candidate{"uniform-three", s};
        }
    }
    return std::nullopt;
}

} // namespace

RealizationResult realize_gh(const Hypergraph& h, const GHParams& p, bool homogeneous, bool nodeunspecific) {
    if (h.n() != 3) throw std::invalid_argument("the cycle system lives on 3 vertices");
    if (!check_gh_conditions(p)) throw std::invalid_argument("parameters violate a+b+c=-1, -1/3<a<0, c<a<b<0");
    const PolynomialField target = gh_reference_system(p);
    RealizationResult r;
    r.params = p;
    const RealizationSpace space(h, {homogeneous, nodeunspecific, 3});

    auto obstruct = [&](std::string detail) {
        r.realized = false;
        r.witness = space.find_witness(target, cycle_symmetry_group());
        const auto sol = space.solve(target);
        if (sol.feasible) throw std::logic_error("obstruction claimed for a solvable realization problem");
        r.detail = std::move(detail);
        return r;
    };

    const bool nonempty = !h.edges().empty();
    if (nonempty && h.is_undirected()) r.reasons.push_back(GHObstruction::undirected_input_symmetry);
    if (nodeunspecific) r.reasons.push_back(GHObstruction::nodeunspecific_mixed_monomial);
    if (nonempty && h.is_uniform(4)) r.reasons.push_back(GHObstruction::four_uniform_input_symmetry);
    if (nonempty && h.is_uniform(3) && !h.has_degenerate_edge()) r.reasons.push_back(GHObstruction::symmetric_two_to_one_inputs);
    if (nonempty && h.is_uniform(2) && homogeneous && pairwise_neighbours_present(h)) {
        r.reasons.push_back(GHObstruction::homogeneous_pairwise_equal_inputs);
    }
    if (!r.reasons.empty()) return obstruct("structural obstruction");

    std::string note;
    bool mismatch = false;
    if (auto cand = known_construction(h, p, homogeneous, note, mismatch)) {
        const NetworkSystem sys(h, cand->scheme);
        double worst = 0.0;
        for (std::size_t k = 0; k < 3; ++k) worst = std::max(worst, coefficient_distance(sys.field().component(k), target.component(k)));
        if (field_identity(sys.field(), target)) {
            r.realized = true;
            r.construction = cand->name;
            r.identity_residual = worst;
            r.unused_edges = unused_edges(h, cand->scheme);
            r.scheme = cand->scheme;
            r.detail = note;
            return r;
        }
    }
    if (mismatch) {
        r.reasons.push_back(GHObstruction::uniform3_profile_mismatch);
        return obstruct(note);
    }

    const auto sol = space.solve(target);
    if (sol.feasible) {
        const NetworkSystem sys(h, sol.scheme);
        double worst = 0.0;
        for (std::size_t k = 0; k < 3; ++k) worst = std::max(worst, coefficient_distance(sys.field().component(k), target.component(k)));
        r.realized = true;
        r.construction = "linear-solve";
        r.identity_residual = worst;
        r.unused_edges = unused_edges(h, sol.scheme);
        r.scheme = sol.scheme;
        r.detail = "minimum-norm cubic coupling coefficients";
        return r;
    }
    r.reasons.push_back(GHObstruction::no_cubic_realization);
    return obstruct("the coefficient-linear realization problem has no cubic solution");
}

bool uniform3_conditions(int pi, int phi, int psi) {
    const int c[3] = {pi, phi, psi};
    for (int v : c) {
        if (v < 0 || v > 4) return false;
    }
    if (pi + phi == 0) return false;
    if (!(phi < psi)) return false;
    for (int i = 0; i < 3; ++i) {
        if (c[i] == 2) {
            bool other = false;
            for (int j = 0; j < 3; ++j) other = other || (j != i && c[j] >= 1);
            if (!other) return false;
        }
        for (int j = 0; j < 3; ++j) {
            if (std::abs(c[i] - c[j]) > 2) return false;
        }
    }
    if (pi == 4 && psi == 4 && phi < 3) return false;
    return true;
}

std::optional<AlphaInterval> uniform3_alpha_interval(int pi, int phi, int psi) {
    if (pi < 0 || phi < 0 || psi < 0) throw std::invalid_argument("input counts are nonnegative");
    if (pi + phi == 0) return std::nullopt;
    const double P = pi, F = phi, S = psi;
    const double d12 = 6 * P + 3 * F + 3 * S;
    AlphaInterval iv;
    iv.lower = std::max({-1.0, (-2 * P + F + S) / d12, -(P - F) / (3 * P + F + 2 * S)});
    iv.upper = std::min((3 * F + 3 * S) / d12, -(P - S) / (3 * P + 2 * F + S));
    if (!iv.nonempty()) return std::nullopt;
    return iv;
}

Uniform3Params uniform3_params(int pi, int phi, int psi, double alpha) {
    const int total = pi + phi + psi;
    if (total == 0) throw std::invalid_argument("input counts are all zero");
    Uniform3Params u;
    u.alpha = alpha;
    u.beta = -(alpha + 1.0) / (2.0 * total);
    u.gh = {alpha + u.beta * (phi + psi), u.beta * (pi + phi), u.beta * (pi + psi)};
    return u;
}

CouplingScheme uniform3_scheme(double alpha, double beta) {
    return CouplingScheme::homogeneous(cubic_internal(alpha), {{3, three_coupling(beta)}});
}

std::vector<std::array<int, 3>> uniform3_admissible_configs() {
    std::vector<std::array<int, 3>> out;
    for (int pi = 0; pi <= 4; ++pi) {
        for (int phi = 0; phi <= 4; ++phi) {
            for (int psi = 0; psi <= 4; ++psi) {
                if (uniform3_conditions(pi, phi, psi) && uniform3_alpha_interval(pi, phi, psi)) out.push_back({pi, phi, psi});
            }
        }
    }
    return out;
}

std::optional<Hypergraph> construct_config_hypergraph(int pi, int phi, int psi, bool check_conditions) {
    if (check_conditions && !uniform3_conditions(pi, phi, psi)) return std::nullopt;
    const auto all = enumerate_hyperedges(3, 3);
    std::vector<Hyperedge> edges;
    for (const auto& e : all) {
        if (e.order() == 3) edges.push_back(e);
    }
    // Per-edge contribution to the 9 counters (vertex, family).
    std::vector<std::array<int, 9>> contrib(edges.size());
    for (Vertex k = 1; k <= 3; ++k) {
        const auto& om = omega_sets(k);
        for (int f = 0; f < 3; ++f) {
            for (const auto& e : om[static_cast<std::size_t>(f)]) {
                const auto it = std::lower_bound(edges.begin(), edges.end(), e);
                contrib[static_cast<std::size_t>(it - edges.begin())][static_cast<std::size_t>(3 * (k - 1) + f)] += 1;
            }
        }
    }
    const std::array<int, 3> want = {pi, phi, psi};
    auto matches = [&](std::uint32_t mask) {
        std::array<int, 9> c{};
        for (std::size_t i = 0; i < edges.size(); ++i) {
            if (mask & (1u << i)) {
                for (std::size_t s = 0; s < 9; ++s) c[s] += contrib[i][s];
            }
        }
        for (std::size_t s = 0; s < 9; ++s) {
            if (c[s] != want[s % 3]) return false;
        }
        return true;
    };
    auto build = [&](std::uint32_t mask) {
        std::vector<Hyperedge> chosen;
        for (std::size_t i = 0; i < edges.size(); ++i) {
            if (mask & (1u << i)) chosen.push_back(edges[i]);
        }
        return Hypergraph(3, chosen);
    };
    // Orbits of the cyclic relabelling 1 -> 2 -> 3 -> 1.
    auto shift = [](const Hyperedge& e) {
        VertexSet t, hd;
        for (Vertex v : e.tail) t.push_back(v % 3 + 1);
        for (Vertex v : e.head) hd.push_back(v % 3 + 1);
        return Hyperedge(t, hd);
    };
    std::vector<std::uint32_t> orbits;
    std::uint32_t seen = 0;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (seen & (1u << i)) continue;
        std::uint32_t orbit = 0;
        Hyperedge e = edges[i];
        for (int s = 0; s < 3; ++s) {
            const auto idx = static_cast<std::size_t>(std::lower_bound(edges.begin(), edges.end(), e) - edges.begin());
            orbit |= 1u << idx;
            e = shift(e);
        }
        seen |= orbit;
        orbits.push_back(orbit);
    }
    std::optional<std::uint32_t> best;
    const std::uint32_t norb = static_cast<std::uint32_t>(orbits.size());
    for (std::uint32_t sel = 0; sel < (1u << norb); ++sel) {
        std::uint32_t mask = 0;
        for (std::uint32_t o = 0; o < norb; ++o) {
            if (sel & (1u << o)) mask |= orbits[o];
        }
        if (!matches(mask)) continue;
        if (!best || std::popcount(mask) < std::popcount(*best) || (std::popcount(mask) == std::popcount(*best) && mask < *best)) {
            best = mask;
        }
    }
    if (best) return build(*best);
    const std::uint32_t limit = 1u << edges.size();
    for (std::uint32_t mask = 0; mask < limit; ++mask) {
        if (matches(mask)) return build(mask);
    }
    return std::nullopt;
}

} // namespace hyperhet
