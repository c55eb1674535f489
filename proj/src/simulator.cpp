#include "hyperhet/simulator.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_odeiv2.h>

#include <algorithm>
#include <array>
#include <cfloat>
#include <cmath>
#include <iomanip>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace hyperhet {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200, e6 = 22.0 / 525,
                 e7 = -1.0 / 40;

class LogField : public VectorField {
public:
    // signs[k] == 0 keeps component k linear.
    LogField(const PolynomialField& f, std::vector<int> signs) : signs_(std::move(signs)), quotients_(quotients(f, signs_)) {}
    std::size_t dimension() const override { return quotients_.dimension(); }
    void evaluate(std::span<const double> y, std::span<double> dy) const override {
        constexpr std::size_t small = 16;
        if (y.size() <= small) {
            std::array<double, small> x;
            for (std::size_t k = 0; k < y.size(); ++k) x[k] = signs_[k] == 0 ? y[k] : signs_[k] * std::exp(y[k]);
            quotients_.evaluate(std::span<const double>(x.data(), y.size()), dy);
        } else {
            quotients_.evaluate(physical(y), dy);
        }
    }
    Matrix jacobian(std::span<const double> y) const override {
        const auto x = physical(y);
        Matrix m = quotients_.jacobian(x);
        for (std::size_t k = 0; k < m.rows; ++k) {
            for (std::size_t j = 0; j < m.cols; ++j) {
                if (signs_[j] != 0) m(k, j) *= x[j];
            }
        }
        return m;
    }

private:
    static PolynomialField quotients(const PolynomialField& f, const std::vector<int>& signs) {
        std::vector<Polynomial> q;
        for (std::size_t k = 0; k < f.dimension(); ++k) {
            q.push_back(signs[k] == 0 ? f.component(k) : f.component(k).divide_by_variable(k));
        }
        return PolynomialField(std::move(q));
    }
    std::vector<double> physical(std::span<const double> y) const {
        std::vector<double> x(y.size());
        for (std::size_t k = 0; k < y.size(); ++k) x[k] = signs_[k] == 0 ? y[k] : signs_[k] * std::exp(y[k]);
        return x;
    }

    std::vector<int> signs_;
    PolynomialField quotients_;
};

std::vector<double> to_physical(std::span<const int> signs, std::vector<double> y) {
    for (std::size_t k = 0; k < signs.size(); ++k) {
        if (signs[k] != 0) y[k] = signs[k] * std::exp(y[k]);
    }
    return y;
}

std::vector<double> to_physical(const Trajectory& tr, const std::vector<double>& y) {
    return tr.log_coordinates ? to_physical(tr.signs, y) : y;
}

std::vector<double> hermite(double t0, double t1, std::span<const double> y0, std::span<const double> f0,
                            std::span<const double> y1, std::span<const double> f1, double t) {
    const double h = t1 - t0;
    const double s = (t - t0) / h;
    const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
    const double h10 = s * (1 - s) * (1 - s);
    const double h01 = s * s * (3 - 2 * s);
    const double h11 = s * s * (s - 1);
    std::vector<double> y(y0.size());
    for (std::size_t k = 0; k < y.size(); ++k) y[k] = h00 * y0[k] + h10 * h * f0[k] + h01 * y1[k] + h11 * h * f1[k];
    return y;
}

Trajectory run(const VectorField& f, std::vector<double> y, double t_end, const IntegratorOptions& opt, Trajectory tr) {
    const std::size_t n = f.dimension();
    if (y.size() != n) throw std::invalid_argument("initial state has the wrong dimension");
    if (!(opt.rtol > 0.0) || !(opt.atol > 0.0)) throw std::invalid_argument("tolerances must be positive");
    if (!(t_end >= 0.0)) throw std::invalid_argument("t_end must be nonnegative");
    tr.dimension = n;
    tr.rtol = opt.rtol;
    tr.atol = opt.atol;

    std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n), ynew(n), err(n);
    f.evaluate(y, k1);

    auto record = [&](double t, const std::vector<double>& state, const std::vector<double>& deriv) {
        tr.times.push_back(t);
        tr.internal_states.push_back(state);
        tr.internal_derivatives.push_back(deriv);
        tr.states.push_back(to_physical(tr, state));
    };
    record(0.0, y, k1);
    tr.dense = opt.store_every == 1;
    if (t_end == 0.0) return tr;
    const std::span<const int> signs = tr.log_coordinates ? std::span<const int>(tr.signs) : std::span<const int>();
    std::vector<double> yprev(n), fprev(n);

    auto scaled_norm = [&](const std::vector<double>& v, const std::vector<double>& a, const std::vector<double>& b) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double sc = opt.atol + opt.rtol * std::max(std::abs(a[i]), std::abs(b[i]));
            s += (v[i] / sc) * (v[i] / sc);
        }
        return std::sqrt(s / static_cast<double>(std::max<std::size_t>(n, 1)));
    };

    double h = opt.initial_step;
    if (h <= 0.0) {
        const double d0 = scaled_norm(y, y, y);
        const double d1 = scaled_norm(k1, y, y);
        h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    }
    h = std::min({h, t_end, opt.max_step});

    std::vector<double> last_x;
    double t_prev = 0.0;
    std::vector<bool> collapsed(n, false);
    std::vector<bool> started_nonzero(n);
    for (std::size_t i = 0; i < n; ++i) started_nonzero[i] = tr.states.front()[i] != 0.0;

    double t = 0.0;
    std::size_t steps = 0;
    auto count_step = [&] {
        if (++steps > opt.max_steps) throw std::runtime_error("step budget exhausted at t=" + std::to_string(t));
    };

    // Bookkeeping after an accepted step from (tprev, yprev, fprev) to (t, y, k1); true means stop.
    auto accept = [&]() {
        ++tr.accepted;
        if (opt.observer) opt.observer(DenseSegment{t_prev, t, yprev, fprev, y, k1, signs});
        const bool last = t >= t_end;
        const bool store = opt.store_every > 0 && tr.accepted % opt.store_every == 0;
        if (store) {
            record(t, y, k1);
        } else {
            last_x = to_physical(tr, y);
        }
        const auto& x = store ? tr.states.back() : last_x;
        for (std::size_t i = 0; i < n; ++i) {
            if (!tr.log_coordinates && started_nonzero[i] && !collapsed[i] && std::abs(x[i]) < DBL_MIN) {
                collapsed[i] = true;
                tr.warnings.push_back("numerical collapse onto the invariant set x_" + std::to_string(i + 1) +
                                      " = 0 at t=" + std::to_string(t));
            }
        }
        const bool finite = std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); });
        const double big = finite ? std::abs(*std::max_element(x.begin(), x.end(), [](double a, double b) {
            return std::abs(a) < std::abs(b);
        }))
                                  : INFINITY;
        bool halt = false;
        if (big > opt.escape_norm) {
            tr.escaped = true;
            tr.stopped_early = !last;
            tr.warnings.push_back("state escaped beyond norm " + std::to_string(opt.escape_norm));
            halt = true;
        } else if (opt.stop && opt.stop(t, x)) {
            tr.stopped_early = !last;
            halt = true;
        }
        if ((halt || last) && tr.times.back() != t) record(t, y, k1);
        return halt || last;
    };

    if (opt.method == Method::bdf) {
        tr.method = "msbdf";
        auto rhs = [](double, const double y_[], double dy[], void* params) -> int {
            const auto* field = static_cast<const VectorField*>(params);
            const std::size_t dim = field->dimension();
            field->evaluate(std::span<const double>(y_, dim), std::span<double>(dy, dim));
            return GSL_SUCCESS;
        };
        auto jac = [](double, const double y_[], double* dfdy, double dfdt[], void* params) -> int {
            const auto* field = static_cast<const VectorField*>(params);
            const std::size_t dim = field->dimension();
            const Matrix j = field->jacobian(std::span<const double>(y_, dim));
            std::copy(j.data.begin(), j.data.end(), dfdy);
            std::fill(dfdt, dfdt + dim, 0.0);
            return GSL_SUCCESS;
        };
        gsl_odeiv2_system sys{rhs, jac, n, const_cast<VectorField*>(&f)};
        std::unique_ptr<gsl_odeiv2_driver, decltype(&gsl_odeiv2_driver_free)> driver(
            gsl_odeiv2_driver_alloc_standard_new(&sys, gsl_odeiv2_step_msbdf, std::min(h, opt.max_step), opt.atol, opt.rtol, 1.0,
                                                 0.0),
            &gsl_odeiv2_driver_free);
        if (!driver) throw std::runtime_error("could not allocate the BDF driver");
        std::vector<double> state = y;
        double step = std::min(h, opt.max_step);
        while (t < t_end) {
            count_step();
            double tt = t;
            const int status =
                gsl_odeiv2_evolve_apply(driver->e, driver->c, driver->s, &sys, &tt, t_end, &step, state.data());
            if (status != GSL_SUCCESS) throw std::runtime_error("BDF step failed at t=" + std::to_string(t));
            step = std::min(step, opt.max_step);
            t_prev = t;
            t = tt;
            yprev.swap(y);
            fprev.swap(k1);
            y = state;
            f.evaluate(y, k1);
            if (accept()) break;
        }
        tr.rejected = driver->e->failed_steps;
        return tr;
    }

    while (t < t_end) {
        count_step();
        if (t + h > t_end) h = t_end - t;
        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * a21 * k1[i];
        f.evaluate(tmp, k2);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        f.evaluate(tmp, k3);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        f.evaluate(tmp, k4);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        f.evaluate(tmp, k5);
        for (std::size_t i = 0; i < n; ++i) {
            tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        }
        f.evaluate(tmp, k6);
        for (std::size_t i = 0; i < n; ++i) ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        f.evaluate(ynew, k7);
        for (std::size_t i = 0; i < n; ++i) {
            err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
        }
        const double en = scaled_norm(err, y, ynew);
        if (!std::isfinite(en) || en > 1.0) {
            ++tr.rejected;
            const double fac = std::isfinite(en) ? std::max(0.2, 0.9 * std::pow(en, -0.2)) : 0.2;
            h *= fac;
            if (h < opt.min_step * std::max(1.0, std::abs(t))) {
                throw std::runtime_error("step underflow at t=" + std::to_string(t));
            }
            continue;
        }
        t_prev = t;
        t = (t + h >= t_end) ? t_end : t + h;
        yprev.swap(y);
        fprev.swap(k1);
        y = ynew;
        k1 = k7;
        if (accept()) break;
        const double fac = en == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(en, -0.2), 0.2, 5.0);
        h = std::min(h * fac, opt.max_step);
    }
    return tr;
}

} // namespace

std::vector<double> DenseSegment::state_at(double t) const {
    return to_physical(signs, hermite(t0, t1, y0, f0, y1, f1, t));
}

std::vector<double> Trajectory::state_at(double t) const {
    if (times.empty()) throw std::logic_error("empty trajectory");
    if (!dense) throw std::logic_error("dense output needs every accepted step stored");
    if (t <= times.front()) return states.front();
    if (t >= times.back()) return states.back();
    const auto it = std::upper_bound(times.begin(), times.end(), t);
    const std::size_t i = static_cast<std::size_t>(it - times.begin()) - 1;
    return to_physical(*this, hermite(times[i], times[i + 1], internal_states[i], internal_derivatives[i],
                                      internal_states[i + 1], internal_derivatives[i + 1], t));
}

Trajectory integrate(const VectorField& f, std::vector<double> x0, double t_end, const IntegratorOptions& opt) {
    return run(f, std::move(x0), t_end, opt, Trajectory{});
}

Trajectory integrate_log(const PolynomialField& f, std::vector<double> x0, double t_end, const IntegratorOptions& opt,
                         const std::vector<bool>& log_mask) {
    if (!log_mask.empty() && log_mask.size() != x0.size()) throw std::invalid_argument("log mask has the wrong length");
    std::vector<int> signs(x0.size());
    std::vector<double> y(x0.size());
    for (std::size_t k = 0; k < x0.size(); ++k) {
        if (!log_mask.empty() && !log_mask[k]) {
            signs[k] = 0;
            y[k] = x0[k];
            continue;
        }
        if (x0[k] == 0.0) throw std::invalid_argument("logarithmic coordinates need nonzero initial components");
        signs[k] = x0[k] > 0 ? 1 : -1;
        y[k] = std::log(std::abs(x0[k]));
    }
    const LogField lf(f, signs);
    Trajectory tr;
    tr.log_coordinates = true;
    tr.signs = signs;
    return run(lf, std::move(y), t_end, opt, std::move(tr));
}

EquilibriumReport refine_equilibrium(const VectorField& f, std::vector<double> guess, double tol, int max_iter) {
    const std::size_t n = f.dimension();
    if (guess.size() != n) throw std::invalid_argument("guess has the wrong dimension");
    EquilibriumReport rep;
    std::vector<double> fx(n);
    auto inf_norm = [](const std::vector<double>& v) {
        double m = 0.0;
        for (double x : v) m = std::max(m, std::abs(x));
        return m;
    };
    for (int it = 0; it <= max_iter; ++it) {
        f.evaluate(guess, fx);
        rep.residual = inf_norm(fx);
        if (!std::isfinite(rep.residual)) break;
        if (rep.residual < tol) {
            rep.x = guess;
            rep.iterations = it;
            rep.eigen = eigen_decompose(f.jacobian(guess));
            rep.hyperbolic = std::all_of(rep.eigen.values.begin(), rep.eigen.values.end(),
                                         [](std::complex<double> v) { return std::abs(v.real()) > 1e-8; });
            return rep;
        }
        if (it == max_iter) break;
        const Matrix j = f.jacobian(guess);
        std::vector<double> step;
        try {
            step = solve_linear(j, fx);
        } catch (const std::exception&) {
            throw std::runtime_error("Newton refinement hit a singular Jacobian");
        }
        for (std::size_t i = 0; i < n; ++i) guess[i] -= step[i];
    }
    throw std::runtime_error("Newton refinement did not converge (residual " + std::to_string(rep.residual) + ")");
}

double saddle_ratio(const EigenDecomposition& eig) {
    double expanding = 0.0;
    int positive = 0;
    double weakest = -INFINITY;
    for (const auto& v : eig.values) {
        if (std::abs(v.imag()) > 1e-12) throw std::invalid_argument("saddle ratio needs real eigenvalues");
        if (v.real() > 0) {
            ++positive;
            expanding = v.real();
        } else {
            weakest = std::max(weakest, v.real());
        }
    }
    if (positive != 1 || !(weakest < 0)) throw std::invalid_argument("not a saddle with one expanding direction");
    return -weakest / expanding;
}

std::vector<int> Itinerary::ids() const {
    std::vector<int> out;
    for (const auto& e : episodes) out.push_back(e.id);
    return out;
}

namespace {
double min_separation(const std::vector<std::vector<double>>& equilibria) {
    double best = INFINITY;
    for (std::size_t i = 0; i < equilibria.size(); ++i) {
        for (std::size_t j = i + 1; j < equilibria.size(); ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < equilibria[i].size(); ++k) s += std::pow(equilibria[i][k] - equilibria[j][k], 2);
            best = std::min(best, std::sqrt(s));
        }
    }
    return best;
}
} // namespace

double default_dwell_radius(const std::vector<std::vector<double>>& equilibria) {
    if (equilibria.size() < 2) throw std::invalid_argument("need at least two equilibria");
    return 0.05 * min_separation(equilibria);
}

ItineraryTracker::ItineraryTracker(std::vector<std::vector<double>> equilibria, double radius, int samples_per_step)
    : equilibria_(std::move(equilibria)), radius_(radius), samples_(std::max(1, samples_per_step)) {
    if (!(radius > 0.0)) throw std::invalid_argument("dwell radius must be positive");
    if (equilibria_.size() >= 2 && !(radius < 0.5 * min_separation(equilibria_))) {
        throw std::invalid_argument("dwell balls overlap: radius must be below half the smallest separation");
    }
}

int ItineraryTracker::label(std::span<const double> x) const {
    for (std::size_t q = 0; q < equilibria_.size(); ++q) {
        if (equilibria_[q].size() != x.size()) throw std::invalid_argument("equilibrium has the wrong dimension");
        double s = 0.0;
        for (std::size_t k = 0; k < x.size(); ++k) s += (x[k] - equilibria_[q][k]) * (x[k] - equilibria_[q][k]);
        if (s < radius_ * radius_) return static_cast<int>(q) + 1;
    }
    return 0;
}

void ItineraryTracker::open(int id, double t) {
    if (!episodes_.empty() && episodes_.back().id == id) {
        episodes_.back().complete = false;
    } else {
        episodes_.push_back({id, t, 0.0, false});
    }
    entered_ = t;
}

void ItineraryTracker::close(double t) {
    episodes_.back().dwell += t - entered_;
    episodes_.back().complete = true;
}

void ItineraryTracker::start(double t, std::span<const double> x) {
    episodes_.clear();
    current_ = label(x);
    last_t_ = t;
    if (current_ != 0) open(current_, t);
}

void ItineraryTracker::feed(const DenseSegment& seg) {
    // Skip the sub-sampling when both ends sit well clear of every ball boundary
    // relative to the chord length (the interpolant cannot wander that far).
    const auto xa = to_physical(seg.signs, std::vector<double>(seg.y0.begin(), seg.y0.end()));
    const auto xb = to_physical(seg.signs, std::vector<double>(seg.y1.begin(), seg.y1.end()));
    double chord = 0.0;
    for (std::size_t k = 0; k < xa.size(); ++k) chord += (xb[k] - xa[k]) * (xb[k] - xa[k]);
    chord = std::sqrt(chord);
    bool clear = true;
    for (const auto& e : equilibria_) {
        double da = 0.0, db = 0.0;
        for (std::size_t k = 0; k < xa.size(); ++k) {
            da += (xa[k] - e[k]) * (xa[k] - e[k]);
            db += (xb[k] - e[k]) * (xb[k] - e[k]);
        }
        const double margin = 2.0 * chord + 1e-12;
        if (std::abs(std::sqrt(da) - radius_) <= margin || std::abs(std::sqrt(db) - radius_) <= margin) clear = false;
    }
    if (clear && label(xa) == current_ && label(xb) == current_) {
        last_t_ = seg.t1;
        return;
    }
    double t_prev = seg.t0;
    for (int s = 1; s <= samples_; ++s) {
        const double t = s == samples_ ? seg.t1 : seg.t0 + (seg.t1 - seg.t0) * s / samples_;
        const int lab = label(seg.state_at(t));
        if (lab != current_) {
            // Bisection on the interpolant for the boundary crossing.
            double ta = t_prev, tb = t;
            for (int it = 0; it < 50; ++it) {
                const double tm = 0.5 * (ta + tb);
                if (label(seg.state_at(tm)) == current_) {
                    ta = tm;
                } else {
                    tb = tm;
                }
            }
            const double tc = 0.5 * (ta + tb);
            if (current_ != 0) close(tc);
            if (lab != 0) open(lab, tc);
            current_ = lab;
        }
        t_prev = t;
    }
    last_t_ = seg.t1;
}

std::size_t ItineraryTracker::complete_count() const {
    return static_cast<std::size_t>(std::count_if(episodes_.begin(), episodes_.end(), [](const Episode& e) { return e.complete; }));
}

Itinerary ItineraryTracker::finish(double t_end) const {
    Itinerary out;
    out.radius = radius_;
    out.episodes = episodes_;
    if (current_ != 0 && !out.episodes.empty()) {
        out.episodes.back().dwell += t_end - entered_;
        out.episodes.back().complete = false;
    }
    return out;
}

Itinerary extract_itinerary(const Trajectory& traj, const std::vector<std::vector<double>>& equilibria, double radius,
                            int samples_per_step) {
    if (!traj.dense) throw std::invalid_argument("itinerary extraction needs a dense trajectory");
    ItineraryTracker tracker(equilibria, radius, samples_per_step);
    if (traj.times.empty()) return tracker.finish(0.0);
    tracker.start(traj.times.front(), traj.states.front());
    const std::span<const int> signs = traj.log_coordinates ? std::span<const int>(traj.signs) : std::span<const int>();
    for (std::size_t i = 0; i + 1 < traj.times.size(); ++i) {
        tracker.feed(DenseSegment{traj.times[i], traj.times[i + 1], traj.internal_states[i], traj.internal_derivatives[i],
                                  traj.internal_states[i + 1], traj.internal_derivatives[i + 1], signs});
    }
    return tracker.finish(traj.times.back());
}

DwellGrowth dwell_growth(const Itinerary& it) {
    std::vector<double> d;
    for (const auto& e : it.episodes) {
        if (e.complete) d.push_back(e.dwell);
    }
    if (d.size() < 4) throw std::invalid_argument("dwell growth needs at least four complete episodes");
    DwellGrowth g;
    for (std::size_t i = 1; i < d.size(); ++i) g.ratios.push_back(d[i] / d[i - 1]);
    double logsum = 0.0;
    const std::size_t m = g.ratios.size();
    for (std::size_t i = m - 3; i < m; ++i) logsum += std::log(g.ratios[i]);
    g.asymptote = std::exp(logsum / 3.0);
    g.attracting = g.asymptote > 1.0 + 1e-3;
    return g;
}

double invariance_drift(const Trajectory& traj, const Partition& p) {
    if (static_cast<std::size_t>(p.n()) != traj.dimension) throw std::invalid_argument("partition size mismatch");
    double worst = 0.0;
    for (const auto& x : traj.states) {
        for (const auto& cls : p.classes()) {
            const double ref = x[static_cast<std::size_t>(cls.front() - 1)];
            for (Vertex v : cls) worst = std::max(worst, std::abs(x[static_cast<std::size_t>(v - 1)] - ref));
        }
    }
    return worst;
}

std::string trajectory_csv(const Trajectory& traj) {
    std::ostringstream os;
    os << std::setprecision(17);
    os << "t";
    for (std::size_t k = 1; k <= traj.dimension; ++k) os << ",x" << k;
    os << "\n";
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        os << traj.times[i];
        for (double v : traj.states[i]) os << "," << v;
        os << "\n";
    }
    return os.str();
}

} // namespace hyperhet
