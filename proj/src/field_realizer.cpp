#include "hyperhet/field_realizer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace hyperhet {

std::string ScreenVerdict::reason() const {
    if (pass) return "pass";
    if (!full_sync_balanced) return "not-fully-synchronous";
    return to_string(local);
}

ScreenVerdict field_screen(const Hypergraph& h) {
    if (h.n() != 3) throw std::invalid_argument("the synchrony cycle screen needs 3 vertices");
    ScreenVerdict v;
    v.census = robust_subspace_census(h);
    v.full_sync_balanced = full_sync_balance(h);
    v.local = local_obstruction_field(h);
    v.pass = v.full_sync_balanced && v.local == LocalFieldVerdict::ok;
    return v;
}

CouplingScheme FieldCoefficients::scheme() const {
    Polynomial f(1);
    f.add_term({1}, mu1);
    f.add_term({2}, mu2);
    f.add_term({3}, mu3);
    SymmetricPolynomial g2(2);
    g2.add({0, 1}, d0);
    g2.add({1, 1}, d1);
    g2.add({0, 2}, d2);
    SymmetricPolynomial g3(3);
    g3.add({0, 1, 0}, e0);
    g3.add({1, 1, 0}, e1);
    g3.add({0, 1, 1}, e2);
    return CouplingScheme::homogeneous(f.pruned(0.0), {{2, g2}, {3, g3}});
}

FieldDerivatives field_derivatives(const FieldCoefficients& c, double z) {
    FieldDerivatives d;
    d.alpha = c.mu1 + 2 * c.mu2 * z + 3 * c.mu3 * z * z;
    d.beta = c.d1 * z;
    d.gamma = 2 * c.e1 * z;
    d.delta = c.d0 + c.d1 * z + 2 * c.d2 * z;
    d.epsilon = c.e0 + c.e1 * z + c.e2 * z;
    return d;
}

std::optional<Subspace> SaddleData::unstable_plane() const {
    if (lambda_a > 0 && lambda_b < 0) return plane_a;
    if (lambda_b > 0 && lambda_a < 0) return plane_b;
    return std::nullopt;
}

std::vector<std::vector<int>> tail_count_matrix(const Hypergraph& h, int order) {
    const auto n = static_cast<std::size_t>(h.n());
    std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
    for (const auto& e : h.edges()) {
        if (e.order() != order) continue;
        for (Vertex k : e.head) {
            for (Vertex l : e.tail) m[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(l - 1)] += 1;
        }
    }
    return m;
}

namespace {

Vertex lone_vertex(Subspace s) {
    switch (s) {
    case Subspace::s1: return 1;
    case Subspace::s2: return 2;
    case Subspace::s3: return 3;
    case Subspace::delta: break;
    }
    throw std::invalid_argument("the diagonal has no lone vertex");
}

/// Linear structure of the synchronous Jacobian of the search family on one hypergraph.
struct SyncStructure {
    int xi2 = 0;
    int xi3 = 0;
    std::vector<std::vector<int>> m2, m3;
    Subspace plane_a = Subspace::s3;
    Subspace plane_b = Subspace::s2;

    explicit SyncStructure(const Hypergraph& h) : m2(tail_count_matrix(h, 2)), m3(tail_count_matrix(h, 3)) {
        xi2 = head_count(h, 2, 1);
        xi3 = head_count(h, 3, 1);
        std::vector<Subspace> planes;
        for (Subspace s : robust_subspace_census(h)) {
            if (s != Subspace::delta) planes.push_back(s);
        }
        if (planes.size() != 2) throw std::invalid_argument("need exactly two invariant planes");
        plane_a = planes[1];
        plane_b = planes[0];
    }

    // Diagonal dynamics z' = s1 z + s2 z^2 + mu3 z^3.
    std::pair<double, double> diagonal(const FieldCoefficients& c) const {
        return {c.mu1 + xi2 * c.d0 + xi3 * 2 * c.e0, c.mu2 + xi2 * (c.d1 + c.d2) + xi3 * (2 * c.e1 + c.e2)};
    }

    // Coefficients whose diagonal is mu3 z (z - r1) (z - r2) with prescribed delta and epsilon at both roots.
    FieldCoefficients solve(double mu3, double r1, double r2, double delta1, double delta2, double eps1, double eps2, double d2,
                            double e2) const {
        FieldCoefficients c;
        c.mu3 = mu3;
        c.d2 = d2;
        c.e2 = e2;
        const double sd = (delta2 - delta1) / (r2 - r1);
        const double se = (eps2 - eps1) / (r2 - r1);
        c.d0 = delta1 - sd * r1;
        c.d1 = sd - 2 * d2;
        c.e0 = eps1 - se * r1;
        c.e1 = se - e2;
        c.mu1 = mu3 * r1 * r2 - xi2 * c.d0 - xi3 * 2 * c.e0;
        c.mu2 = -mu3 * (r1 + r2) - xi2 * (c.d1 + c.d2) - xi3 * (2 * c.e1 + c.e2);
        return c;
    }

    Matrix jacobian(const FieldCoefficients& c, double z) const {
        const FieldDerivatives d = field_derivatives(c, z);
        return jacobian(d.alpha + xi2 * d.beta + xi3 * d.gamma, d.delta, d.epsilon);
    }

    // Internal part a, pairwise input derivative delta, order-3 input derivative epsilon.
    Matrix jacobian(double a, double delta, double epsilon) const {
        Matrix j(3, 3);
        for (std::size_t r = 0; r < 3; ++r) {
            for (std::size_t s = 0; s < 3; ++s) j(r, s) = delta * m2[r][s] + epsilon * m3[r][s];
            j(r, r) += a;
        }
        return j;
    }

    // (delta, epsilon) giving transverse eigenvalues la, lb at a point with diagonal eigenvalue ld.
    std::optional<std::pair<double, double>> input_derivatives(double ld, double la, double lb) const {
        auto shift = [&](double delta, double epsilon) {
            const Matrix j = jacobian(0.0, delta, epsilon);
            double row = 0.0;
            for (std::size_t col = 0; col < 3; ++col) row += j(0, col);
            return std::array<double, 2>{plane_data(j, plane_a).first - row, plane_data(j, plane_b).first - row};
        };
        const auto kd = shift(1.0, 0.0);
        const auto ke = shift(0.0, 1.0);
        const double det = kd[0] * ke[1] - ke[0] * kd[1];
        if (std::abs(det) < 1e-12) return std::nullopt;
        const double ra = la - ld, rb = lb - ld;
        return std::pair{(ra * ke[1] - ke[0] * rb) / det, (kd[0] * rb - ra * kd[1]) / det};
    }

    // Transverse eigenvalue and eigenvector slope (lone entry over the synchronized entries).
    static std::pair<double, double> plane_data(const Matrix& j, Subspace plane) {
        const auto l = static_cast<std::size_t>(lone_vertex(plane) - 1);
        const std::size_t i = l == 0 ? 1 : 0;
        double off = 0.0;
        for (std::size_t c = 0; c < 3; ++c) {
            if (c != l) off += j(l, c);
        }
        const double slope = j(i, l) != 0.0 ? -off / j(i, l) : INFINITY;
        return {j(l, l) - j(i, l), slope};
    }

    SaddleData saddle(const FieldCoefficients& c, double z) const {
        const Matrix j = jacobian(c, z);
        SaddleData s;
        s.z = z;
        s.plane_a = plane_a;
        s.plane_b = plane_b;
        for (std::size_t col = 0; col < 3; ++col) s.lambda_delta += j(0, col);
        s.lambda_a = plane_data(j, plane_a).first;
        s.lambda_b = plane_data(j, plane_b).first;
        s.hyperbolic = std::abs(s.lambda_delta) > 1e-8 && std::abs(s.lambda_a) > 1e-8 && std::abs(s.lambda_b) > 1e-8;
        return s;
    }

    std::pair<double, double> slopes(const FieldCoefficients& c, double z) const {
        const Matrix j = jacobian(c, z);
        return {plane_data(j, plane_a).second, plane_data(j, plane_b).second};
    }
};

double distance(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
    return std::sqrt(s);
}

} // namespace

ConnectionEvidence verify_connection(const NetworkSystem& sys, const SaddleData& from, const SaddleData& to, Subspace plane,
                                     const ShootingConfig& cfg) {
    if (sys.hypergraph().n() != 3) throw std::invalid_argument("connections are checked on 3 vertices");
    const Partition part = partition_of(plane);
    const ReducedSystem red = restrict(sys, part);
    const std::size_t lone = part.class_of(lone_vertex(plane));
    const std::size_t sync = 1 - lone;

    ConnectionEvidence ev;
    ev.plane = plane;
    ev.epsilon = cfg.epsilon;
    ev.delta_accept = cfg.delta_accept;
    ev.t_max = cfg.t_max;

    const std::vector<double> start{from.z, from.z};
    const std::vector<double> target{to.z, to.z};
    const EigenDecomposition eig = eigen_decompose(red.jacobian(start));
    const EigenCluster* unstable = nullptr;
    for (const auto& cl : eig.clusters) {
        if (cl.value.real() > 0 && std::abs(cl.value.imag()) < 1e-12 && cl.multiplicity == 1 && !cl.basis.empty()) unstable = &cl;
    }
    ev.best.terminal_distance = INFINITY;
    if (unstable == nullptr) return ev;  // no unstable direction inside this plane

    for (int branch : {1, -1}) {
        BranchAttempt a;
        a.branch = branch;
        std::vector<double> x0(2);
        for (std::size_t k = 0; k < 2; ++k) x0[k] = start[k] + branch * cfg.epsilon * unstable->basis.front()[k];
        double closest = INFINITY;
        double extreme = 0.0;
        double reached_at = 0.0;
        std::vector<double> speed(2);
        IntegratorOptions opt;
        opt.rtol = cfg.rtol;
        opt.atol = cfg.atol;
        opt.store_every = 0;
        opt.escape_norm = 20 * (1 + std::max(std::abs(from.z), std::abs(to.z)));
        opt.stop = [&](double t, std::span<const double> x) {
            const double d = distance({x[0], x[1]}, target);
            if (d < closest) closest = d;
            const double gap = x[lone] - x[sync];
            if (std::abs(gap) > std::abs(extreme)) extreme = gap;
            if (d < cfg.delta_accept) {
                reached_at = t;
                return true;
            }
            // Settled on some other equilibrium of the plane.
            if (d < 100 * cfg.delta_accept) return false;
            red.evaluate(x, speed);
            return std::max(std::abs(speed[0]), std::abs(speed[1])) < 1e-7;
        };
        try {
            const Trajectory tr = integrate(red, x0, cfg.t_max, opt);
            a.time = closest < cfg.delta_accept ? reached_at : tr.times.back();
        } catch (const std::runtime_error&) {
            a.time = NAN;
        }
        a.terminal_distance = closest;
        a.reached = closest < cfg.delta_accept;
        a.side = extreme > 0 ? 1 : (extreme < 0 ? -1 : 0);
        ev.attempts.push_back(a);
        if (a.reached && !ev.connected) {
            ev.connected = true;
            ev.best = a;
        } else if (!ev.connected && a.terminal_distance < ev.best.terminal_distance) {
            ev.best = a;
        }
    }
    return ev;
}

ItineraryEvidence field_itinerary(const NetworkSystem& sys, const SaddleData& p, const SaddleData& q, int episodes, double t_max) {
    // Coordinates (u, v, w) = (x_c, x_lb - x_c, x_la - x_c), where c is synchronized in both planes:
    // v vanishes on plane_a and w on plane_b. Logarithms of |v| and |w| keep the approach to the
    // planes resolved however close it gets.
    const auto la = static_cast<std::size_t>(lone_vertex(p.plane_a) - 1);
    const auto lb = static_cast<std::size_t>(lone_vertex(p.plane_b) - 1);
    const std::size_t c = 3 - la - lb;
    std::vector<std::vector<double>> b(3, std::vector<double>(3, 0.0)), b_inv = b;
    b[c][0] = 1;
    b[lb][0] = 1;
    b[lb][1] = 1;
    b[la][0] = 1;
    b[la][2] = 1;
    b_inv[0][c] = 1;
    b_inv[1][lb] = 1;
    b_inv[1][c] = -1;
    b_inv[2][la] = 1;
    b_inv[2][c] = -1;
    const PolynomialField g = change_coordinates(sys.field(), b, b_inv, 1e-12);

    ItineraryEvidence ev;
    const std::vector<std::vector<double>> eq{{p.z, 0.0, 0.0}, {q.z, 0.0, 0.0}};
    ev.radius = default_dwell_radius(eq);
    const double s = std::abs(p.z - q.z);
    const double mid = 0.5 * (p.z + q.z);
    const std::vector<double> y0{mid + 0.011 * s, 0.013 * s, -0.007 * s};
    ev.x0 = {0, 0, 0};
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) ev.x0[i] += b[i][j] * y0[j];
    }
    ItineraryTracker tracker(eq, ev.radius);
    tracker.start(0.0, y0);
    IntegratorOptions opt;
    opt.store_every = 0;
    opt.escape_norm = 1e6;
    opt.observer = [&](const DenseSegment& seg) { tracker.feed(seg); };
    opt.stop = [&](double, std::span<const double>) { return tracker.complete_count() >= static_cast<std::size_t>(episodes) + 1; };
    try {
        const Trajectory tr = integrate_log(g, y0, t_max, opt, {false, true, true});
        ev.t_end = tr.times.back();
    } catch (const std::exception&) {
        ev.t_end = NAN;
    }
    ev.itinerary = tracker.finish(std::isfinite(ev.t_end) ? ev.t_end : 0.0);
    std::vector<double> dwell;
    ev.alternating = !ev.itinerary.episodes.empty();
    for (std::size_t i = 0; i < ev.itinerary.episodes.size(); ++i) {
        const auto& e = ev.itinerary.episodes[i];
        if (i > 0 && e.id == ev.itinerary.episodes[i - 1].id) ev.alternating = false;
        if (e.complete) dwell.push_back(e.dwell);
    }
    // Growth is judged after the first (transient) episode.
    ev.growing = dwell.size() >= static_cast<std::size_t>(episodes) + 1;
    for (std::size_t i = 2; i < dwell.size() && ev.growing; ++i) ev.growing = dwell[i] > dwell[i - 1];
    return ev;
}

namespace {

struct StageCounter {
    std::vector<std::pair<std::string, std::uint64_t>> counts{
        {"diagonal", 0}, {"saddle-pattern", 0}, {"slopes", 0}, {"dwell-ratio", 0},
        {"connection", 0}, {"one-sided", 0}, {"itinerary", 0}};
    void bump(const std::string& s) {
        for (auto& [k, v] : counts) {
            if (k == s) ++v;
        }
    }
};

// Cheap algebraic filters; on success fills p and q.
std::optional<std::string> algebraic_filters(const SyncStructure& st, const FieldCoefficients& c, const FieldSearchConfig& cfg,
                                             SaddleData& p, SaddleData& q) {
    const auto [s1, s2] = st.diagonal(c);
    const double disc = s2 * s2 - 4 * c.mu3 * s1;
    if (!(c.mu3 < 0) || !(s1 > 0) || !(disc > 0)) return "diagonal";
    const double r = std::sqrt(disc);
    const double z1 = (-s2 + r) / (2 * c.mu3);
    const double z2 = (-s2 - r) / (2 * c.mu3);
    const SaddleData a = st.saddle(c, z1);
    const SaddleData b = st.saddle(c, z2);
    const double m = cfg.hyperbolicity_margin;
    auto pattern_p = [&](const SaddleData& s) { return s.lambda_delta < -m && s.lambda_a > m && s.lambda_b < -m; };
    auto pattern_q = [&](const SaddleData& s) { return s.lambda_delta < -m && s.lambda_a < -m && s.lambda_b > m; };
    if (pattern_p(a) && pattern_q(b)) {
        p = a;
        q = b;
    } else if (pattern_p(b) && pattern_q(a)) {
        p = b;
        q = a;
    } else {
        return "saddle-pattern";
    }
    const auto [ap, bp] = st.slopes(c, p.z);
    const auto [aq, bq] = st.slopes(c, q.z);
    if (!(ap * bp < 0) || !(aq * bq < 0)) return "slopes";
    const double cp = -p.lambda_b, ep = p.lambda_a, cq = -q.lambda_a, eq = q.lambda_b;
    const double r1 = cp / eq, r2 = cq / ep;
    if (r1 < cfg.min_dwell_ratio || r1 > cfg.max_dwell_ratio || r2 < cfg.min_dwell_ratio || r2 > cfg.max_dwell_ratio) {
        return "dwell-ratio";
    }
    return std::nullopt;
}

std::optional<std::string> dynamic_filters(const Hypergraph& h, const FieldCoefficients& c, const FieldSearchConfig& cfg,
                                           FieldRealization& out) {
    const NetworkSystem sys(h, c.scheme());
    out.p_to_q = verify_connection(sys, out.p, out.q, out.p.plane_a, cfg.shooting);
    if (!out.p_to_q.connected) return "connection";
    out.q_to_p = verify_connection(sys, out.q, out.p, out.p.plane_b, cfg.shooting);
    if (!out.q_to_p.connected) return "connection";
    if (out.p_to_q.best.side * out.q_to_p.best.side != -1) return "one-sided";
    if (cfg.require_itinerary) {
        out.itinerary = field_itinerary(sys, out.p, out.q, cfg.itinerary_episodes);
        if (!out.itinerary->alternating || !out.itinerary->growing) return "itinerary";
    }
    return std::nullopt;
}

} // namespace

FieldRealization check_field_candidate(const Hypergraph& h, const FieldCoefficients& c, const FieldSearchConfig& cfg) {
    const ScreenVerdict screen = field_screen(h);
    if (!screen.pass) throw std::invalid_argument("hypergraph fails the local screen: " + screen.reason());
    const SyncStructure st(h);
    FieldRealization out;
    out.seed = cfg.seed;
    out.coefficients = c;
    if (auto why = algebraic_filters(st, c, cfg, out.p, out.q)) {
        out.failure = *why;
        return out;
    }
    if (auto why = dynamic_filters(h, c, cfg, out)) {
        out.failure = *why;
        return out;
    }
    out.found = true;
    out.scheme = c.scheme();
    return out;
}

FieldRealization realize_field(const Hypergraph& h, const FieldSearchConfig& cfg) {
    const ScreenVerdict screen = field_screen(h);
    if (!screen.pass) throw std::invalid_argument("hypergraph fails the local screen: " + screen.reason());
    const SyncStructure st(h);
    std::mt19937_64 rng(cfg.seed);
    auto unit = [&]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    const double R = cfg.coefficient_range;
    auto sym = [&]() { return R * (2 * unit() - 1); };

    StageCounter stages;
    FieldRealization out;
    out.seed = cfg.seed;
    for (std::uint64_t draw = 1; draw <= cfg.max_draws; ++draw) {
        // Draw the diagonal roots, the transverse eigenvalues at both and two free quadratic
        // coefficients, then solve for the remaining coefficients. The saddle pattern and dwell
        // ratios hold by construction; the slope and connection filters remain random.
        const double mu3 = -R * (0.1 + 0.9 * unit());
        double zp = -R * (0.05 + 0.7 * unit());
        double zq = R * (0.05 + 0.7 * unit());
        if (unit() < 0.5) std::swap(zp, zq);
        const double m = cfg.hyperbolicity_margin;
        const double ep = m + R * unit();
        const double eq = m + R * unit();
        const double ratio_p = cfg.min_dwell_ratio + (cfg.max_dwell_ratio - cfg.min_dwell_ratio) * unit();
        const double ratio_q = cfg.min_dwell_ratio + (cfg.max_dwell_ratio - cfg.min_dwell_ratio) * unit();
        const double d2 = sym(), e2 = sym();
        const double ld_p = mu3 * zp * (zp - zq), ld_q = mu3 * zq * (zq - zp);
        const auto at_p = st.input_derivatives(ld_p, ep, -ratio_p * eq);
        const auto at_q = st.input_derivatives(ld_q, -ratio_q * ep, eq);
        if (!at_p || !at_q) {
            stages.bump("saddle-pattern");
            continue;
        }
        const FieldCoefficients c = st.solve(mu3, zp, zq, at_p->first, at_q->first, at_p->second, at_q->second, d2, e2);
        FieldRealization cand;
        cand.seed = cfg.seed;
        cand.coefficients = c;
        if (auto why = algebraic_filters(st, c, cfg, cand.p, cand.q)) {
            stages.bump(*why);
            continue;
        }
        if (auto why = dynamic_filters(h, c, cfg, cand)) {
            stages.bump(*why);
            continue;
        }
        cand.found = true;
        cand.draws = draw;
        cand.scheme = c.scheme();
        cand.rejections = stages.counts;
        return cand;
    }
    out.draws = cfg.max_draws;
    out.failure = "search budget exhausted";
    out.rejections = stages.counts;
    return out;
}

UniformFieldReport uniform_field_obstruction(const Hypergraph& h) {
    if (h.n() != 3) throw std::invalid_argument("uniform obstruction report needs 3 vertices");
    const auto m = h.uniform_order();
    if (!m) throw std::invalid_argument("hypergraph is not uniform");
    UniformFieldReport r;
    r.order = *m;
    r.xi = head_count(h, *m, 1);
    if (*m == 2) {
        r.kind = "classical-network";
        r.detail = "2-uniform hypergraphs are classical networks; homogeneous pairwise coupling cannot separate the two planes";
        return r;
    }
    if (*m >= 4 || !h.has_degenerate_edge()) {
        r.kind = "symmetric-inputs";
        r.detail = "every edge feeds the two other vertices symmetrically, so the transverse eigenvalues coincide";
        return r;
    }
    if (!full_sync_balance(h)) {
        r.kind = "not-fully-synchronous";
        r.detail = "vertices receive different numbers of order-3 inputs";
        return r;
    }
    std::vector<Subspace> planes;
    for (Subspace s : robust_subspace_census(h)) {
        if (s != Subspace::delta) planes.push_back(s);
    }
    if (planes.size() != 2) {
        r.kind = "wrong-subspaces";
        r.detail = std::to_string(planes.size()) + " partial synchrony planes instead of two";
        return r;
    }
    const auto M = tail_count_matrix(h, 3);
    auto mu = [&](Subspace s) {
        const auto l = static_cast<std::size_t>(lone_vertex(s) - 1);
        const std::size_t i = l == 0 ? 1 : 0;
        return M[l][l] - M[i][l];
    };
    r.plane_a = planes[1];
    r.plane_b = planes[0];
    r.coefficient = mu(planes[1]) - mu(planes[0]);
    std::ostringstream os;
    os << "lambda(" << to_string(planes[1]) << ") - lambda(" << to_string(planes[0]) << ") = " << *r.coefficient
       << " * epsilon at every synchronous point";
    if (*r.coefficient != 0) {
        r.kind = "fixed-sign";
        os << "; a saddle with attracting diagonal needs epsilon < 0, so every such saddle is unstable in the same plane";
    } else {
        r.kind = "equal-eigenvalues";
        os << "; the two transverse eigenvalues always coincide";
    }
    r.detail = os.str();
    return r;
}

OppositeSaddleSearch search_opposite_saddles(const Hypergraph& h, int schemes, std::uint64_t seed) {
    if (h.n() != 3) throw std::invalid_argument("opposite saddle search needs 3 vertices");
    int max_order = 2;
    for (const auto& e : h.edges()) max_order = std::max(max_order, e.order());
    std::vector<Subspace> planes;
    for (Subspace s : robust_subspace_census(h)) {
        if (s != Subspace::delta) planes.push_back(s);
    }
    OppositeSaddleSearch out;
    std::mt19937_64 rng(seed);
    for (int i = 0; i < schemes; ++i) {
        const NetworkSystem sys(h, random_generic_scheme(max_order, 3, rng()));
        ++out.schemes;
        const Polynomial diag = sys.field().component(0).remap({0, 0, 0}, 1);
        std::vector<double> coeffs(static_cast<std::size_t>(std::max(diag.total_degree(), 0)) + 1, 0.0);
        for (const auto& [e, c] : diag.terms()) coeffs[static_cast<std::size_t>(e[0])] += c;
        std::vector<Subspace> unstable;
        for (double z : real_roots(coeffs)) {
            const SyncLinearization lin = sync_linearization(sys, z);
            if (!(lin.lambda_delta < 0)) continue;
            int positive = 0;
            Subspace which = Subspace::delta;
            for (Subspace s : planes) {
                const auto& t = lin.transverse[static_cast<std::size_t>(lone_vertex(s) - 1)];
                if (t && *t > 0) {
                    ++positive;
                    which = s;
                }
            }
            if (positive == 1) unstable.push_back(which);
        }
        for (std::size_t a = 0; a < unstable.size(); ++a) {
            for (std::size_t b = a + 1; b < unstable.size(); ++b) {
                ++out.saddle_pairs;
                if (unstable[a] != unstable[b]) ++out.opposite_pairs;
            }
        }
    }
    return out;
}

UndirectedCertificate undirected_field_obstruction_N(const Hypergraph& h, int probes, std::uint64_t seed) {
    if (!h.is_undirected()) throw std::invalid_argument("hypergraph has a directed edge");
    const int n = h.n();
    UndirectedCertificate cert;
    cert.n = n;
    std::vector<Vertex> balanced;
    for (Vertex v = 1; v <= n && n >= 3; ++v) {
        if (is_balanced(h, Partition::all_but(n, v))) balanced.push_back(v);
    }
    if (balanced.size() < 2) {
        cert.detail = "fewer than two all-but-one planes are robustly invariant; nothing to compare";
        return cert;
    }
    const bool last_pair = std::find(balanced.begin(), balanced.end(), n - 1) != balanced.end() &&
                           std::find(balanced.begin(), balanced.end(), n) != balanced.end();
    cert.j = last_pair ? n - 1 : balanced[0];
    cert.l = last_pair ? n : balanced[1];
    int max_order = 2;
    for (const auto& e : h.edges()) max_order = std::max(max_order, e.order());
    std::mt19937_64 rng(seed);
    const auto j = static_cast<std::size_t>(cert.j - 1), l = static_cast<std::size_t>(cert.l - 1);
    bool ok = true;
    for (int i = 0; i < probes; ++i) {
        const NetworkSystem sys(h, random_generic_scheme(max_order, 3, rng()));
        const double z = 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
        const Matrix jac = sys.jacobian(std::vector<double>(static_cast<std::size_t>(n), z));
        const double scale = std::max(1.0, jac.max_abs());
        const double ag = std::abs(jac(j, j) - jac(l, l)) / scale;
        const double bd = std::abs(jac(l, j) - jac(j, l)) / scale;
        double asym = 0.0;
        for (std::size_t r = 0; r < jac.rows; ++r) {
            for (std::size_t c = 0; c < jac.cols; ++c) asym = std::max(asym, std::abs(jac(r, c) - jac(c, r)) / scale);
        }
        cert.max_alpha_gamma = std::max(cert.max_alpha_gamma, ag);
        cert.max_beta_delta = std::max(cert.max_beta_delta, bd);
        cert.max_asymmetry = std::max(cert.max_asymmetry, asym);
        ok = ok && ag <= 1e-9 && bd <= 1e-9;
        ++cert.probes;
    }
    cert.certified = ok && cert.probes > 0;
    std::ostringstream os;
    os << "J_jj = J_ll and J_lj = J_jl for (j, l) = (" << cert.j << ", " << cert.l << ") over " << cert.probes
       << " random homogeneous schemes; both transverse eigenvalues J_jj - J_lj and J_ll - J_jl coincide";
    cert.detail = os.str();
    return cert;
}

} // namespace hyperhet
