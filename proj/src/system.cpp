#include "hyperhet/system.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hyperhet {

std::vector<double> VectorField::operator()(std::span<const double> x) const {
    std::vector<double> dx(dimension());
    evaluate(x, dx);
    return dx;
}

PolynomialField::PolynomialField(std::vector<Polynomial> components) : components_(std::move(components)) {
    const std::size_t n = components_.size();
    for (const auto& c : components_) {
        if (c.num_vars() != n) throw std::invalid_argument("polynomial field components must use n variables");
    }
    flat_derivatives_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        flat_.emplace_back(components_[i]);
        for (std::size_t j = 0; j < n; ++j) flat_derivatives_[i].emplace_back(components_[i].partial(j));
    }
}

void PolynomialField::evaluate(std::span<const double> x, std::span<double> dx) const {
    if (x.size() != dimension() || dx.size() != dimension()) throw std::invalid_argument("state has wrong dimension");
    for (std::size_t i = 0; i < flat_.size(); ++i) dx[i] = flat_[i].evaluate(x.data());
}

Matrix PolynomialField::jacobian(std::span<const double> x) const {
    const std::size_t n = dimension();
    Matrix j(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) j(r, c) = flat_derivatives_[r][c].evaluate(x.data());
    }
    return j;
}

PolynomialField change_coordinates(const PolynomialField& f, const std::vector<std::vector<double>>& b,
                                   const std::vector<std::vector<double>>& b_inv, double prune_tol) {
    const std::size_t n = f.dimension();
    if (b.size() != n || b_inv.size() != n) throw std::invalid_argument("coordinate change has the wrong size");
    std::vector<Polynomial> sub;
    for (const auto& c : f.components()) sub.push_back(c.substitute_linear(b));
    std::vector<Polynomial> out;
    for (std::size_t i = 0; i < n; ++i) {
        Polynomial g(n);
        for (std::size_t j = 0; j < n; ++j) {
            if (b_inv[i][j] != 0.0) g += sub[j] * b_inv[i][j];
        }
        out.push_back(g);
    }
    double scale = 0.0;
    for (const auto& g : out) scale = std::max(scale, g.max_abs_coefficient());
    const double cut = prune_tol * std::max(1.0, scale);
    for (auto& g : out) {
        Polynomial kept(n);
        for (const auto& [e, c] : g.terms()) {
            if (std::abs(c) > cut) kept.add_term(e, c);
        }
        g = kept;
    }
    return PolynomialField(std::move(out));
}

bool field_identity(const PolynomialField& f, const PolynomialField& g, double rel_tol) {
    if (f.dimension() != g.dimension()) return false;
    for (std::size_t i = 0; i < f.dimension(); ++i) {
        if (!coefficient_identity(f.component(i), g.component(i), rel_tol)) return false;
    }
    return true;
}

std::vector<Polynomial> assemble_rhs(const Hypergraph& h, const CouplingScheme& s) {
    s.validate();
    const std::size_t n = static_cast<std::size_t>(h.n());
    std::vector<Polynomial> rhs;
    for (std::size_t k = 0; k < n; ++k) rhs.push_back(s.internal.remap({k}, n));
    for (const auto& e : h.edges()) {
        const SymmetricPolynomial* g = s.coupling_for(e);
        if (g == nullptr) continue;
        if (g->arity() != e.order()) throw std::invalid_argument("coupling arity does not match edge order");
        for (Vertex k : e.head) {
            std::vector<std::size_t> target{static_cast<std::size_t>(k - 1)};
            for (Vertex t : e.tail) target.push_back(static_cast<std::size_t>(t - 1));
            rhs[static_cast<std::size_t>(k - 1)] += g->expanded().remap(target, n);
        }
    }
    return rhs;
}

NetworkSystem::NetworkSystem(Hypergraph h, CouplingScheme s)
    : graph_(std::move(h)), scheme_(std::move(s)), field_(assemble_rhs(graph_, scheme_)) {
    incoming_.resize(static_cast<std::size_t>(graph_.n()));
    for (const auto& e : graph_.edges()) {
        const SymmetricPolynomial* g = scheme_.coupling_for(e);
        if (g == nullptr) continue;
        std::vector<std::size_t> tail;
        for (Vertex t : e.tail) tail.push_back(static_cast<std::size_t>(t - 1));
        for (Vertex k : e.head) incoming_[static_cast<std::size_t>(k - 1)].push_back({g, tail});
    }
}

void NetworkSystem::evaluate(std::span<const double> x, std::span<double> dx) const {
    const std::size_t n = dimension();
    if (x.size() != n || dx.size() != n) throw std::invalid_argument("state has wrong dimension");
    std::vector<double> terms;
    std::vector<double> args;
    for (std::size_t k = 0; k < n; ++k) {
        terms.clear();
        for (const auto& in : incoming_[k]) {
            args.clear();
            for (std::size_t t : in.tail) args.push_back(x[t]);
            terms.push_back(in.g->evaluate(x[k], args));
        }
        std::sort(terms.begin(), terms.end());
        double sum = scheme_.internal.evaluate(std::span<const double>(&x[k], 1));
        for (double t : terms) sum += t;
        dx[k] = sum;
    }
}

Matrix NetworkSystem::jacobian(std::span<const double> x) const { return field_.jacobian(x); }

namespace {

std::vector<Polynomial> substituted(const PolynomialField& f, const Partition& p) {
    const std::size_t n = f.dimension();
    if (static_cast<std::size_t>(p.n()) != n) throw std::invalid_argument("partition size differs from field dimension");
    std::vector<std::size_t> target(n);
    for (std::size_t v = 0; v < n; ++v) target[v] = p.class_of(static_cast<Vertex>(v + 1));
    std::vector<Polynomial> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(f.component(i).remap(target, p.size()));
    return out;
}

} // namespace

bool is_invariant(const PolynomialField& f, const Partition& p, double rel_tol) {
    const auto sub = substituted(f, p);
    for (const auto& cls : p.classes()) {
        const auto& ref = sub[static_cast<std::size_t>(cls.front() - 1)];
        for (Vertex v : cls) {
            if (!coefficient_identity(ref, sub[static_cast<std::size_t>(v - 1)], rel_tol)) return false;
        }
    }
    return true;
}

std::vector<double> ReducedSystem::lift(std::span<const double> u) const {
    if (u.size() != partition_.size()) throw std::invalid_argument("reduced state has wrong dimension");
    std::vector<double> x(static_cast<std::size_t>(partition_.n()));
    for (Vertex v = 1; v <= partition_.n(); ++v) x[static_cast<std::size_t>(v - 1)] = u[partition_.class_of(v)];
    return x;
}

std::vector<double> ReducedSystem::project(std::span<const double> x) const {
    std::vector<double> u(partition_.size());
    for (std::size_t c = 0; c < partition_.size(); ++c) u[c] = x[static_cast<std::size_t>(partition_.representative(c) - 1)];
    return u;
}

ReducedSystem restrict(const PolynomialField& f, const Partition& p) {
    if (!is_invariant(f, p)) throw std::invalid_argument("synchrony subspace is not invariant for this field");
    const auto sub = substituted(f, p);
    std::vector<Polynomial> comps;
    for (std::size_t c = 0; c < p.size(); ++c) comps.push_back(sub[static_cast<std::size_t>(p.representative(c) - 1)]);
    return ReducedSystem(std::move(comps), p);
}

ReducedSystem restrict(const NetworkSystem& sys, const Partition& p) { return restrict(sys.field(), p); }

} // namespace hyperhet
