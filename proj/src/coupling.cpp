#include "hyperhet/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <set>
#include <stdexcept>

namespace hyperhet {

SymmetricPolynomial::SymmetricPolynomial(int arity) : arity_(arity), expanded_(static_cast<std::size_t>(arity)) {
    if (arity < 2) throw std::invalid_argument("coupling arity must be at least 2");
}

Exponents SymmetricPolynomial::canonical(Exponents e) {
    if (e.size() > 1) std::sort(e.begin() + 1, e.end(), std::greater<int>());
    return e;
}

void SymmetricPolynomial::add(Exponents e, double c) {
    if (static_cast<int>(e.size()) != arity_) throw std::invalid_argument("coupling monomial has wrong arity");
    for (int k : e) {
        if (k < 0) throw std::invalid_argument("negative exponent");
    }
    e = canonical(std::move(e));
    bool has_input = false;
    for (std::size_t i = 1; i < e.size(); ++i) has_input = has_input || e[i] > 0;
    if (!has_input) throw std::invalid_argument("coupling term without input dependence");
    if (c == 0.0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second == 0.0) terms_.erase(it);
    }
    rebuild();
}

double SymmetricPolynomial::coefficient(Exponents e) const {
    if (static_cast<int>(e.size()) != arity_) return 0.0;
    auto it = terms_.find(canonical(std::move(e)));
    return it == terms_.end() ? 0.0 : it->second;
}

int SymmetricPolynomial::total_degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_) {
        int s = 0;
        for (int k : e) s += k;
        d = std::max(d, s);
    }
    return d;
}

void SymmetricPolynomial::rebuild() {
    expanded_ = Polynomial(static_cast<std::size_t>(arity_));
    for (const auto& [key, c] : terms_) {
        Exponents inputs(key.begin() + 1, key.end());
        std::sort(inputs.begin(), inputs.end());
        do {
            Exponents full{key[0]};
            full.insert(full.end(), inputs.begin(), inputs.end());
            expanded_.add_term(full, c);
        } while (std::next_permutation(inputs.begin(), inputs.end()));
    }
    flat_coeffs_.clear();
    flat_exps_.clear();
    max_exp_ = 0;
    for (const auto& [e, c] : expanded_.terms()) {
        flat_coeffs_.push_back(c);
        for (int k : e) {
            flat_exps_.push_back(k);
            max_exp_ = std::max(max_exp_, k);
        }
    }
}

double SymmetricPolynomial::evaluate(double z, std::span<const double> y) const {
    if (static_cast<int>(y.size()) != arity_ - 1) throw std::invalid_argument("coupling evaluated with wrong number of inputs");
    const std::size_t a = static_cast<std::size_t>(arity_);
    const std::size_t stride = static_cast<std::size_t>(max_exp_) + 1;
    // Small fixed buffers: arity and degree are tiny in practice.
    std::vector<double> pw(a * stride);
    std::vector<double> args(a);
    args[0] = z;
    std::copy(y.begin(), y.end(), args.begin() + 1);
    std::sort(args.begin() + 1, args.end());
    for (std::size_t s = 0; s < a; ++s) {
        pw[s * stride] = 1.0;
        for (std::size_t k = 1; k < stride; ++k) pw[s * stride + k] = pw[s * stride + k - 1] * args[s];
    }
    double sum = 0.0;
    for (std::size_t t = 0; t < flat_coeffs_.size(); ++t) {
        double m = flat_coeffs_[t];
        const int* e = &flat_exps_[t * a];
        for (std::size_t s = 0; s < a; ++s) m *= pw[s * stride + static_cast<std::size_t>(e[s])];
        sum += m;
    }
    return sum;
}

bool SymmetricPolynomial::nodeunspecific() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.first[0] == 0; });
}

SymmetricPolynomial SymmetricPolynomial::operator*(double s) const {
    SymmetricPolynomial out(arity_);
    for (const auto& [e, c] : terms_) out.add(e, c * s);
    return out;
}

SymmetricPolynomial SymmetricPolynomial::symmetrize(int arity, const std::vector<std::pair<Exponents, double>>& monomials,
                                                    bool& symmetrized) {
    Polynomial full(static_cast<std::size_t>(arity));
    for (const auto& [e, c] : monomials) full.add_term(e, c);
    // Group full monomials by orbit and average each orbit.
    std::map<Exponents, std::vector<double>> orbit_values;
    std::set<Exponents> keys;
    for (const auto& [e, c] : full.terms()) keys.insert(canonical(e));
    SymmetricPolynomial out(arity);
    symmetrized = false;
    for (const auto& key : keys) {
        Exponents inputs(key.begin() + 1, key.end());
        std::sort(inputs.begin(), inputs.end());
        double sum = 0.0;
        std::size_t count = 0;
        double first = 0.0;
        bool uniform = true;
        do {
            Exponents e{key[0]};
            e.insert(e.end(), inputs.begin(), inputs.end());
            const double c = full.coefficient(e);
            if (count == 0) first = c;
            uniform = uniform && c == first;
            sum += c;
            ++count;
        } while (std::next_permutation(inputs.begin(), inputs.end()));
        if (!uniform) symmetrized = true;
        const double mean = sum / static_cast<double>(count);
        if (mean != 0.0) out.add(key, mean);
    }
    return out;
}

Polynomial partial(const SymmetricPolynomial& g, int slot) {
    if (slot < 0 || slot >= g.arity()) throw std::out_of_range("partial: slot index");
    return g.expanded().partial(static_cast<std::size_t>(slot));
}

bool odd_even_symmetry(const SymmetricPolynomial& g) {
    for (const auto& [e, c] : g.canonical_terms()) {
        if (e[0] % 2 == 0) return false;
        for (std::size_t i = 1; i < e.size(); ++i) {
            if (e[i] % 2 != 0) return false;
        }
    }
    return true;
}

const SymmetricPolynomial* CouplingScheme::coupling_for(const Hyperedge& e) const {
    if (mode == Mode::homogeneous) {
        auto it = by_order.find(e.order());
        return it == by_order.end() ? nullptr : &it->second;
    }
    auto it = by_edge.find(e);
    return it == by_edge.end() ? nullptr : &it->second;
}

bool CouplingScheme::nodeunspecific() const {
    for (const auto& [m, g] : by_order) {
        if (mode == Mode::homogeneous && !g.nodeunspecific()) return false;
    }
    for (const auto& [e, g] : by_edge) {
        if (mode == Mode::per_edge && !g.nodeunspecific()) return false;
    }
    return true;
}

void CouplingScheme::validate() const {
    if (internal.num_vars() != 1) throw std::invalid_argument("internal dynamics must be univariate");
    if (mode == Mode::homogeneous) {
        for (const auto& [m, g] : by_order) {
            if (g.arity() != m) throw std::invalid_argument("coupling arity does not match its order");
        }
    } else {
        for (const auto& [e, g] : by_edge) {
            if (g.arity() != e.order()) throw std::invalid_argument("per-edge coupling arity does not match edge order");
        }
    }
}

CouplingScheme CouplingScheme::homogeneous(Polynomial internal, std::map<int, SymmetricPolynomial> by_order) {
    CouplingScheme s;
    s.internal = std::move(internal);
    s.mode = Mode::homogeneous;
    s.by_order = std::move(by_order);
    s.validate();
    return s;
}

CouplingScheme CouplingScheme::per_edge(Polynomial internal, std::map<Hyperedge, SymmetricPolynomial> by_edge) {
    CouplingScheme s;
    s.internal = std::move(internal);
    s.mode = Mode::per_edge;
    s.by_edge = std::move(by_edge);
    s.validate();
    return s;
}

bool odd_even_symmetry_check(const CouplingScheme& s) {
    for (const auto& [e, c] : s.internal.terms()) {
        if (e[0] % 2 == 0) return false;
    }
    if (s.mode == CouplingScheme::Mode::homogeneous) {
        for (const auto& [m, g] : s.by_order) {
            if (!odd_even_symmetry(g)) return false;
        }
    } else {
        for (const auto& [e, g] : s.by_edge) {
            if (!odd_even_symmetry(g)) return false;
        }
    }
    return true;
}

std::vector<Exponents> symmetric_monomial_basis(int arity, int max_degree, bool allow_node_slot) {
    std::vector<Exponents> out;
    const int inputs = arity - 1;
    // Non-increasing input exponent sequences with positive sum.
    std::vector<int> seq(static_cast<std::size_t>(inputs), 0);
    std::function<void(int, int, int)> rec = [&](int pos, int cap, int used) {
        if (pos == inputs) {
            if (used == 0) return;
            for (int e0 = 0; e0 + used <= max_degree; ++e0) {
                if (e0 > 0 && !allow_node_slot) break;
                Exponents e{e0};
                e.insert(e.end(), seq.begin(), seq.end());
                out.push_back(e);
            }
            return;
        }
        for (int k = std::min(cap, max_degree - used); k >= 0; --k) {
            seq[static_cast<std::size_t>(pos)] = k;
            rec(pos + 1, k, used + k);
        }
    };
    rec(0, max_degree, 0);
    std::sort(out.begin(), out.end());
    return out;
}

CouplingScheme random_generic_scheme(int max_order, int max_degree, std::uint64_t seed, double scale) {
    if (max_order < 2 || max_degree < 1) throw std::invalid_argument("random scheme needs max_order >= 2 and max_degree >= 1");
    std::mt19937_64 rng(seed);
    // Map raw engine output directly so draws do not depend on library distribution internals.
    auto draw = [&]() {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        const double sign = (rng() >> 63) ? -1.0 : 1.0;
        return sign * scale * (0.1 + 0.9 * u);
    };
    Polynomial f(1);
    for (int d = 1; d <= max_degree; ++d) f.add_term({d}, draw());
    std::map<int, SymmetricPolynomial> by_order;
    for (int m = 2; m <= max_order; ++m) {
        SymmetricPolynomial g(m);
        for (const auto& e : symmetric_monomial_basis(m, max_degree)) g.add(e, draw());
        by_order.emplace(m, std::move(g));
    }
    return CouplingScheme::homogeneous(std::move(f), std::move(by_order));
}

} // namespace hyperhet
