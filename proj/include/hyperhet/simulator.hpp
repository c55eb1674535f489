#pragma once

#include "hyperhet/linalg.hpp"
#include "hyperhet/system.hpp"

#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace hyperhet {

/// One accepted step with its Hermite data, in integration coordinates.
struct DenseSegment {
    double t0 = 0.0;
    double t1 = 0.0;
    std::span<const double> y0, f0, y1, f1;
    /// Empty for linear coordinates; otherwise x_k = signs[k] * exp(y_k), or x_k = y_k where signs[k] = 0.
    std::span<const int> signs;
    std::vector<double> state_at(double t) const;
};

enum class Method {
    dopri5,
    /// Variable-order BDF with the field's Jacobian (GSL msbdf); suited to long dwell phases near stable directions.
    bdf,
};

struct IntegratorOptions {
    Method method = Method::dopri5;
    double rtol = 1e-10;
    double atol = 1e-12;
    /// Initial step; 0 picks one from the local derivative scale.
    double initial_step = 0.0;
    double min_step = 1e-14;
    double max_step = std::numeric_limits<double>::infinity();
    std::size_t max_steps = 20'000'000;
    /// Stop (successfully, flagged) once any |x_k| exceeds this.
    double escape_norm = 1e8;
    /// Called after every accepted step with the physical state; returning true stops the run.
    std::function<bool(double, std::span<const double>)> stop;
    /// Sees every accepted step; lets long runs be analysed without storing them.
    std::function<void(const DenseSegment&)> observer;
    /// Store every k-th accepted step (the final state is always stored). Dense output needs 1.
    std::size_t store_every = 1;
};

/**
 * @brief Sampled solution with cubic Hermite dense output.
 *
 * States are stored in physical coordinates. When the run was carried out in
 * logarithmic coordinates, interpolation happens there and is mapped back.
 */
struct Trajectory {
    std::size_t dimension = 0;
    std::vector<double> times;
    std::vector<std::vector<double>> states;
    std::string method = "dopri5(4)";
    double rtol = 0.0;
    double atol = 0.0;
    bool log_coordinates = false;
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    bool stopped_early = false;
    bool escaped = false;
    /// Every accepted step is stored, so state_at is the Hermite interpolant.
    bool dense = true;
    std::vector<std::string> warnings;

    /// Interpolated state; t must lie within [times.front(), times.back()].
    std::vector<double> state_at(double t) const;

    // Dense-output data in integration coordinates.
    std::vector<std::vector<double>> internal_states;
    std::vector<std::vector<double>> internal_derivatives;
    std::vector<int> signs;
};

/**
 * @brief Adaptive Dormand-Prince 5(4) integration of x' = f(x) on [0, t_end].
 * @throws std::runtime_error on step-size underflow or an exhausted step budget.
 */
Trajectory integrate(const VectorField& f, std::vector<double> x0, double t_end, const IntegratorOptions& opt = {});

/**
 * @brief Integration in y_k = ln|x_k| for fields whose k-th component is divisible by x_k.
 *
 * The coordinate planes are invariant for such fields, so orbits that hug them
 * (as near a robust cycle between axis equilibria) keep full relative
 * precision instead of underflowing. Signs of x0 are preserved. A nonempty
 * log_mask selects the components to transform; the others stay linear.
 * @throws std::invalid_argument if a component is not divisible by its variable or x0 has a zero entry.
 */
Trajectory integrate_log(const PolynomialField& f, std::vector<double> x0, double t_end, const IntegratorOptions& opt = {},
                         const std::vector<bool>& log_mask = {});

struct EquilibriumReport {
    std::vector<double> x;
    double residual = 0.0;
    int iterations = 0;
    EigenDecomposition eigen;
    bool hyperbolic = false;
};

/**
 * @brief Newton refinement to |f(x)|_inf < tol.
 * @throws std::runtime_error on a singular Jacobian or no convergence within max_iter.
 */
EquilibriumReport refine_equilibrium(const VectorField& f, std::vector<double> guess, double tol = 1e-12, int max_iter = 60);

/// -(weakest contraction) / (expansion) at a saddle with one positive eigenvalue; throws otherwise.
double saddle_ratio(const EigenDecomposition& eig);

struct Episode {
    int id = 0;          ///< 1-based position in the equilibrium list
    double entry = 0.0;
    double dwell = 0.0;  ///< total time inside the ball (merged visits)
    bool complete = false;  ///< the trajectory left the ball before the end of the run
};

struct Itinerary {
    double radius = 0.0;
    std::vector<Episode> episodes;
    std::vector<int> ids() const;
};

/// Dwell radius default: 0.05 times the smallest pairwise separation.
double default_dwell_radius(const std::vector<std::vector<double>>& equilibria);

/**
 * @brief Online version of extract_itinerary fed one dense segment at a time.
 */
class ItineraryTracker {
public:
    /// @throws std::invalid_argument unless 0 < radius < half the smallest separation.
    ItineraryTracker(std::vector<std::vector<double>> equilibria, double radius, int samples_per_step = 8);
    void start(double t, std::span<const double> x);
    void feed(const DenseSegment& seg);
    /// Itinerary up to time t_end; an episode still open at t_end is incomplete.
    Itinerary finish(double t_end) const;
    std::size_t episode_count() const { return episodes_.size(); }
    std::size_t complete_count() const;

private:
    int label(std::span<const double> x) const;
    void open(int id, double t);
    void close(double t);

    std::vector<std::vector<double>> equilibria_;
    double radius_;
    int samples_;
    int current_ = 0;
    double entered_ = 0.0;
    double last_t_ = 0.0;
    std::vector<Episode> episodes_;
};

/**
 * @brief Maximal time intervals spent within `radius` of an equilibrium.
 * Consecutive visits to the same equilibrium are merged into one episode.
 * @throws std::invalid_argument unless 0 < radius < half the smallest separation,
 * or when the trajectory is not dense.
 */
Itinerary extract_itinerary(const Trajectory& traj, const std::vector<std::vector<double>>& equilibria, double radius,
                            int samples_per_step = 8);

struct DwellGrowth {
    std::vector<double> ratios;
    double asymptote = 0.0;  ///< geometric mean of the last three ratios
    bool attracting = false; ///< asymptote > 1 + 1e-3
};

/// Uses complete episodes only; throws std::invalid_argument with fewer than four.
DwellGrowth dwell_growth(const Itinerary& it);

/// Largest spread of same-class coordinates over the stored samples.
double invariance_drift(const Trajectory& traj, const Partition& p);

/// "t,x1,...,xN" header plus one line per sample, 17 significant digits.
std::string trajectory_csv(const Trajectory& traj);

} // namespace hyperhet
