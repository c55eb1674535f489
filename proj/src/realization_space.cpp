#include "hyperhet/realization_space.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

namespace hyperhet {

namespace {

using Field = std::vector<Polynomial>;

Field transform(const Field& f, const SignedPermutation& g) {
    const std::size_t n = f.size();
    Field out(n, Polynomial(n));
    for (std::size_t i = 0; i < n; ++i) {
        Polynomial moved = f[i].remap(g.perm, n, g.sign);
        out[g.perm[i]] = moved * static_cast<double>(g.sign[i]);
    }
    return out;
}

Field input_swap(const Field& f, std::size_t k, std::size_t i, std::size_t j) {
    Field out = f;
    std::vector<std::size_t> target(f.size());
    for (std::size_t v = 0; v < f.size(); ++v) target[v] = v;
    std::swap(target[i], target[j]);
    out[k] = f[k].remap(target, f.size());
    return out;
}

Field mixed_swap(const Field& f, std::size_t k, std::size_t j) {
    Field out = f;
    Polynomial p(f.size());
    for (const auto& [e, c] : f[k].terms()) {
        Exponents x = e;
        if (x[k] > 0 && x[j] > 0) std::swap(x[k], x[j]);
        p.add_term(x, c);
    }
    out[k] = p;
    return out;
}

Field drop_input(const Field& f, std::size_t k, std::size_t j) {
    Field out = f;
    Polynomial p(f.size());
    for (const auto& [e, c] : f[k].terms()) {
        if (e[j] == 0) p.add_term(e, c);
    }
    out[k] = p;
    return out;
}

} // namespace

bool is_equivariant(const PolynomialField& f, const SignedPermutation& g, double rel_tol) {
    const Field moved = transform(f.components(), g);
    for (std::size_t i = 0; i < f.dimension(); ++i) {
        if (!coefficient_identity(moved[i], f.component(i), rel_tol)) return false;
    }
    return true;
}

struct RealizationSpace::Impl {
    struct Param {
        enum class Kind { internal, order, edge } kind;
        int degree = 0;
        int order = 0;
        Hyperedge edge;
        Exponents key;
    };

    Hypergraph graph;
    RealizationFamily family;
    std::size_t n = 0;
    std::map<Exponents, std::size_t> index;
    std::vector<Exponents> monomials;
    std::vector<Param> params;
    Eigen::MatrixXd R;

    std::size_t rows() const { return n * monomials.size(); }

    Eigen::VectorXd vectorize(const Field& f) const {
        Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(rows()));
        for (std::size_t c = 0; c < n; ++c) {
            for (const auto& [e, coeff] : f[c].terms()) {
                auto it = index.find(e);
                if (it == index.end()) throw std::invalid_argument("target has terms beyond the realization degree");
                v(static_cast<Eigen::Index>(c * monomials.size() + it->second)) = coeff;
            }
        }
        return v;
    }

    Field devectorize(const Eigen::VectorXd& v) const {
        Field f(n, Polynomial(n));
        for (std::size_t c = 0; c < n; ++c) {
            for (std::size_t m = 0; m < monomials.size(); ++m) {
                const double x = v(static_cast<Eigen::Index>(c * monomials.size() + m));
                if (x != 0.0) f[c].add_term(monomials[m], x);
            }
        }
        return f;
    }

    void build() {
        n = static_cast<std::size_t>(graph.n());
        const int D = family.max_degree;
        std::function<void(std::size_t, int, Exponents&)> rec = [&](std::size_t pos, int left, Exponents& e) {
            if (pos == n) {
                index.emplace(e, monomials.size());
                monomials.push_back(e);
                return;
            }
            for (int k = 0; k <= left; ++k) {
                e[pos] = k;
                rec(pos + 1, left - k, e);
            }
        };
        Exponents e(n, 0);
        rec(0, D, e);

        for (int d = 0; d <= D; ++d) params.push_back({Param::Kind::internal, d, 0, {}, {}});
        std::map<int, std::vector<Hyperedge>> by_order;
        for (const auto& edge : graph.edges()) by_order[edge.order()].push_back(edge);
        if (family.homogeneous) {
            for (const auto& [m, edges] : by_order) {
                for (const auto& key : symmetric_monomial_basis(m, D, !family.nodeunspecific)) {
                    params.push_back({Param::Kind::order, 0, m, {}, key});
                }
            }
        } else {
            for (const auto& edge : graph.edges()) {
                for (const auto& key : symmetric_monomial_basis(edge.order(), D, !family.nodeunspecific)) {
                    params.push_back({Param::Kind::edge, 0, edge.order(), edge, key});
                }
            }
        }
        R = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows()), static_cast<Eigen::Index>(params.size()));
        for (std::size_t j = 0; j < params.size(); ++j) {
            const CouplingScheme s = scheme_with(j, 1.0);
            R.col(static_cast<Eigen::Index>(j)) = vectorize(assemble_rhs(graph, s));
        }
    }

    CouplingScheme scheme_with(std::size_t j, double value) const {
        Eigen::VectorXd theta = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(params.size()));
        theta(static_cast<Eigen::Index>(j)) = value;
        return scheme_from(theta);
    }

    CouplingScheme scheme_from(const Eigen::VectorXd& theta) const {
        CouplingScheme s;
        s.mode = family.homogeneous ? CouplingScheme::Mode::homogeneous : CouplingScheme::Mode::per_edge;
        for (std::size_t j = 0; j < params.size(); ++j) {
            const double c = theta(static_cast<Eigen::Index>(j));
            if (c == 0.0) continue;
            const Param& p = params[j];
            switch (p.kind) {
            case Param::Kind::internal: s.internal.add_term({p.degree}, c); break;
            case Param::Kind::order: s.by_order.try_emplace(p.order, p.order).first->second.add(p.key, c); break;
            case Param::Kind::edge: s.by_edge.try_emplace(p.edge, p.order).first->second.add(p.key, c); break;
            }
        }
        return s;
    }
};

RealizationSpace::RealizationSpace(const Hypergraph& h, RealizationFamily family) : impl_(std::make_unique<Impl>()) {
    if (family.max_degree < 1) throw std::invalid_argument("realization degree must be positive");
    impl_->graph = h;
    impl_->family = family;
    impl_->build();
}

RealizationSpace::~RealizationSpace() = default;

std::size_t RealizationSpace::num_parameters() const { return impl_->params.size(); }
std::size_t RealizationSpace::num_coefficients() const { return impl_->rows(); }

RealizationSpace::Solution RealizationSpace::solve(const PolynomialField& target) const {
    if (target.dimension() != impl_->n) throw std::invalid_argument("target dimension differs from hypergraph");
    const Eigen::VectorXd t = impl_->vectorize(target.components());
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(impl_->R);
    Eigen::VectorXd theta = cod.solve(t);
    const double scale = std::max(1.0, theta.cwiseAbs().maxCoeff());
    for (Eigen::Index i = 0; i < theta.size(); ++i) {
        if (std::abs(theta(i)) < 1e-13 * scale) theta(i) = 0.0;
    }
    Solution sol;
    sol.residual = (impl_->R * theta - t).cwiseAbs().maxCoeff();
    sol.feasible = sol.residual <= 1e-9 * std::max(1.0, t.cwiseAbs().maxCoeff());
    sol.scheme = impl_->scheme_from(theta);
    return sol;
}

std::optional<SymmetryWitness> RealizationSpace::find_witness(const PolynomialField& target,
                                                              const std::vector<SignedPermutation>& group) const {
    const Impl& I = *impl_;
    const Eigen::Index rows = static_cast<Eigen::Index>(I.rows());
    // Constraint C v = 0 encodes equivariance under every listed element.
    Eigen::MatrixXd C(rows * static_cast<Eigen::Index>(group.size()), rows);
    for (std::size_t g = 0; g < group.size(); ++g) {
        for (Eigen::Index r = 0; r < rows; ++r) {
            Eigen::VectorXd unit = Eigen::VectorXd::Zero(rows);
            unit(r) = 1.0;
            const Eigen::VectorXd moved = I.vectorize(transform(I.devectorize(unit), group[g]));
            C.block(static_cast<Eigen::Index>(g) * rows, r, rows, 1) = moved - unit;
        }
    }
    Eigen::MatrixXd basis;
    if (I.params.empty()) {
        basis = Eigen::MatrixXd::Zero(rows, 0);
    } else {
        Eigen::MatrixXd CR = C * I.R;
        Eigen::FullPivLU<Eigen::MatrixXd> lu(CR);
        lu.setThreshold(1e-10);
        Eigen::MatrixXd kernel = lu.kernel();
        Eigen::MatrixXd image = I.R * kernel;
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(image);
        qr.setThreshold(1e-10);
        const Eigen::Index rank = qr.rank();
        Eigen::MatrixXd q = qr.householderQ();
        basis = q.leftCols(rank);
        if (image.cols() == 1 && image.norm() < 1e-12) basis = Eigen::MatrixXd::Zero(rows, 0);
    }

    const Field t = target.components();
    const double tscale = std::max(1.0, I.vectorize(t).cwiseAbs().maxCoeff());
    auto defect = [&](const std::function<Field(const Field&)>& op, const Field& f) {
        return (I.vectorize(op(f)) - I.vectorize(f)).cwiseAbs().maxCoeff();
    };
    auto try_op = [&](const std::string& kind, Vertex k, Vertex i, Vertex j,
                      const std::function<Field(const Field&)>& op) -> std::optional<SymmetryWitness> {
        const double td = defect(op, t);
        if (td <= 1e-9 * tscale) return std::nullopt;
        double worst = 0.0;
        for (Eigen::Index c = 0; c < basis.cols(); ++c) {
            Eigen::VectorXd col = basis.col(c);
            worst = std::max(worst, defect(op, I.devectorize(col)));
        }
        if (worst > 1e-9) return std::nullopt;
        SymmetryWitness w;
        w.kind = kind;
        w.vertex = k;
        w.i = i;
        w.j = j;
        w.realizable_dimension = static_cast<std::size_t>(basis.cols());
        w.realizable_defect = worst;
        w.target_defect = td;
        w.verified = true;
        return w;
    };

    const Vertex n = static_cast<Vertex>(I.n);
    for (Vertex k = 1; k <= n; ++k) {
        for (Vertex i = 1; i <= n; ++i) {
            for (Vertex j = i + 1; j <= n; ++j) {
                if (i == k || j == k) continue;
                auto w = try_op("input-swap", k, i, j, [&](const Field& f) {
                    return input_swap(f, static_cast<std::size_t>(k - 1), static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1));
                });
                if (w) {
                    w->description = "component " + std::to_string(k) + " of every realizable field is invariant under x" +
                                     std::to_string(i) + " <-> x" + std::to_string(j) + "; the target is not";
                    return w;
                }
            }
        }
    }
    for (Vertex k = 1; k <= n; ++k) {
        for (Vertex j = 1; j <= n; ++j) {
            if (j == k) continue;
            auto w = try_op("mixed-monomial-swap", k, k, j, [&](const Field& f) {
                return mixed_swap(f, static_cast<std::size_t>(k - 1), static_cast<std::size_t>(j - 1));
            });
            if (w) {
                w->description = "in component " + std::to_string(k) + " every realizable field gives x" + std::to_string(k) +
                                 "^a x" + std::to_string(j) + "^b and x" + std::to_string(k) + "^b x" + std::to_string(j) +
                                 "^a equal coefficients; the target does not";
                return w;
            }
        }
    }
    for (Vertex k = 1; k <= n; ++k) {
        for (Vertex j = 1; j <= n; ++j) {
            if (j == k) continue;
            auto w = try_op("missing-input", k, k, j, [&](const Field& f) {
                return drop_input(f, static_cast<std::size_t>(k - 1), static_cast<std::size_t>(j - 1));
            });
            if (w) {
                w->description = "component " + std::to_string(k) + " of every realizable field is independent of x" +
                                 std::to_string(j) + "; the target is not";
                return w;
            }
        }
    }
    return std::nullopt;
}

} // namespace hyperhet
