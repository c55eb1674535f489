#include "hyperhet/polynomial.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hyperhet {

Polynomial::Polynomial(std::size_t num_vars) : num_vars_(num_vars) {}

void Polynomial::add_term(const Exponents& e, double c) {
    if (e.size() != num_vars_) {
        throw std::invalid_argument("monomial has wrong number of variables");
    }
    for (int k : e) {
        if (k < 0) throw std::invalid_argument("negative exponent");
    }
    if (c == 0.0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
        return;
    }
    it->second += c;
    if (it->second == 0.0) terms_.erase(it);
}

double Polynomial::coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? 0.0 : it->second;
}

int Polynomial::total_degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_) {
        int s = 0;
        for (int k : e) s += k;
        d = std::max(d, s);
    }
    return d;
}

int Polynomial::degree_in(std::size_t v) const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[v]);
    return d;
}

double Polynomial::evaluate(std::span<const double> x) const {
    if (x.size() != num_vars_) throw std::invalid_argument("state has wrong dimension");
    double sum = 0.0;
    for (const auto& [e, c] : terms_) {
        double m = c;
        for (std::size_t v = 0; v < num_vars_; ++v) {
            for (int k = 0; k < e[v]; ++k) m *= x[v];
        }
        sum += m;
    }
    return sum;
}

Polynomial Polynomial::partial(std::size_t var) const {
    if (var >= num_vars_) throw std::out_of_range("partial: variable index");
    Polynomial out(num_vars_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        Exponents d = e;
        d[var] -= 1;
        out.add_term(d, c * e[var]);
    }
    return out;
}

Polynomial Polynomial::remap(const std::vector<std::size_t>& target, std::size_t new_num_vars,
                             const std::vector<int>& signs) const {
    if (target.size() != num_vars_) throw std::invalid_argument("remap: target size");
    if (!signs.empty() && signs.size() != num_vars_) throw std::invalid_argument("remap: signs size");
    Polynomial out(new_num_vars);
    for (const auto& [e, c] : terms_) {
        Exponents f(new_num_vars, 0);
        double coeff = c;
        for (std::size_t v = 0; v < num_vars_; ++v) {
            if (e[v] == 0) continue;
            if (target[v] >= new_num_vars) throw std::out_of_range("remap: target index");
            f[target[v]] += e[v];
            if (!signs.empty() && signs[v] < 0 && (e[v] % 2 == 1)) coeff = -coeff;
        }
        out.add_term(f, coeff);
    }
    return out;
}

Polynomial Polynomial::divide_by_variable(std::size_t v) const {
    Polynomial out(num_vars_);
    for (const auto& [e, c] : terms_) {
        if (e[v] == 0) throw std::invalid_argument("polynomial is not divisible by the variable");
        Exponents d = e;
        d[v] -= 1;
        out.add_term(d, c);
    }
    return out;
}

double Polynomial::max_abs_coefficient() const {
    double m = 0.0;
    for (const auto& [e, c] : terms_) m = std::max(m, std::abs(c));
    return m;
}

Polynomial Polynomial::pruned(double tol) const {
    const double cut = tol * std::max(1.0, max_abs_coefficient());
    Polynomial out(num_vars_);
    for (const auto& [e, c] : terms_) {
        if (std::abs(c) > cut) out.terms_.emplace(e, c);
    }
    return out;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    Polynomial out = *this;
    out += o;
    return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (o.num_vars_ != num_vars_) throw std::invalid_argument("polynomial dimension mismatch");
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + o * -1.0; }

Polynomial Polynomial::operator*(double s) const {
    Polynomial out(num_vars_);
    for (const auto& [e, c] : terms_) out.add_term(e, c * s);
    return out;
}

Polynomial univariate(const std::vector<double>& coeffs) {
    Polynomial p(1);
    for (std::size_t k = 0; k < coeffs.size(); ++k) p.add_term({static_cast<int>(k)}, coeffs[k]);
    return p;
}

double coefficient_distance(const Polynomial& p, const Polynomial& q) {
    if (p.num_vars() != q.num_vars()) return INFINITY;
    double d = 0.0;
    for (const auto& [e, c] : p.terms()) d = std::max(d, std::abs(c - q.coefficient(e)));
    for (const auto& [e, c] : q.terms()) {
        if (!p.terms().count(e)) d = std::max(d, std::abs(c));
    }
    return d;
}

bool coefficient_identity(const Polynomial& p, const Polynomial& q, double rel_tol) {
    if (p.num_vars() != q.num_vars()) return false;
    const double scale = std::max({1.0, p.max_abs_coefficient(), q.max_abs_coefficient()});
    return coefficient_distance(p, q) <= rel_tol * scale;
}

std::vector<double> real_roots(const std::vector<double>& coeffs_in) {
    std::vector<double> c = coeffs_in;
    while (!c.empty() && c.back() == 0.0) c.pop_back();
    if (c.size() <= 1) return {};
    std::vector<double> roots;
    // Factor out roots at zero exactly: they matter (diagonal fields vanish at 0).
    std::size_t shift = 0;
    while (shift < c.size() && c[shift] == 0.0) ++shift;
    if (shift > 0) {
        roots.push_back(0.0);
        c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(shift));
    }
    const std::size_t deg = c.size() - 1;
    if (deg == 1) {
        roots.push_back(-c[0] / c[1]);
    } else if (deg >= 2) {
        Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(deg), static_cast<Eigen::Index>(deg));
        for (std::size_t i = 1; i < deg; ++i) comp(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
        for (std::size_t i = 0; i < deg; ++i) comp(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(deg - 1)) = -c[i] / c[deg];
        Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
        auto ev = es.eigenvalues();
        auto value = [&](double z) {
            double s = 0.0;
            for (std::size_t k = deg + 1; k-- > 0;) s = s * z + c[k];
            return s;
        };
        auto slope = [&](double z) {
            double s = 0.0;
            for (std::size_t k = deg; k >= 1; --k) s = s * z + c[k] * static_cast<double>(k);
            return s;
        };
        for (Eigen::Index i = 0; i < ev.size(); ++i) {
            const double re = ev[i].real();
            if (std::abs(ev[i].imag()) > 1e-7 * std::max(1.0, std::abs(re))) continue;
            double z = re;
            for (int it = 0; it < 8; ++it) {
                const double d = slope(z);
                if (d == 0.0) break;
                const double step = value(z) / d;
                z -= step;
                if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(z))) break;
            }
            roots.push_back(z);
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    if (o.num_vars_ != num_vars_) throw std::invalid_argument("polynomials use different numbers of variables");
    Polynomial out(num_vars_);
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            Exponents e(num_vars_);
            for (std::size_t v = 0; v < num_vars_; ++v) e[v] = ea[v] + eb[v];
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

Polynomial Polynomial::substitute_linear(const std::vector<std::vector<double>>& b) const {
    if (b.size() != num_vars_) throw std::invalid_argument("substitution needs one row per variable");
    const std::size_t m = b.empty() ? 0 : b.front().size();
    std::vector<Polynomial> forms;
    for (const auto& row : b) {
        if (row.size() != m) throw std::invalid_argument("substitution rows differ in length");
        Polynomial f(m);
        for (std::size_t j = 0; j < m; ++j) {
            if (row[j] == 0.0) continue;
            Exponents e(m, 0);
            e[j] = 1;
            f.add_term(e, row[j]);
        }
        forms.push_back(f);
    }
    Polynomial out(m);
    for (const auto& [e, c] : terms_) {
        Polynomial term(m);
        term.add_term(Exponents(m, 0), c);
        for (std::size_t v = 0; v < num_vars_; ++v) {
            for (int k = 0; k < e[v]; ++k) term = term * forms[v];
        }
        out += term;
    }
    return out;
}

FlatPolynomial::FlatPolynomial(const Polynomial& p) : num_vars_(p.num_vars()) {
    for (const auto& [e, c] : p.terms()) {
        coeffs_.push_back(c);
        for (int k : e) {
            if (k > 255) throw std::invalid_argument("exponent too large for flat evaluation");
            exponents_.push_back(static_cast<unsigned char>(k));
        }
    }
}

double FlatPolynomial::evaluate(const double* x) const {
    double sum = 0.0;
    const unsigned char* e = exponents_.data();
    for (double c : coeffs_) {
        double m = c;
        for (std::size_t v = 0; v < num_vars_; ++v, ++e) {
            for (unsigned char k = 0; k < *e; ++k) m *= x[v];
        }
        sum += m;
    }
    return sum;
}

} // namespace hyperhet
