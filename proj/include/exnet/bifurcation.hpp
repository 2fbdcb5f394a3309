#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "exnet/dynamics.hpp"
#include "exnet/equilibria.hpp"

namespace exnet {

/// g(x) = phi^{-1}(x) - w_s x on (0,1): the nullcline function of a cell
/// driven by a single saturated neighbour.
struct GFunction {
    double epsilon = 0.05;
    double theta = 0.5;
    double w_s = 1.0;

    double operator()(double x) const;
    double derivative(double x) const;
    double second_derivative(double x) const;
};

/// Local maximum x_- and local minimum x_+ of g,
/// 1/2 -+ sqrt(1/4 - eps/w_s). Requires w_s >= 4 eps.
std::pair<double, double> g_extrema(double epsilon, double w_s);

/// Small-eps expansion of the fold value of w_p (remainder O(eps^3) dropped).
double wp_sn_asymptotic(double epsilon, double theta, double w_s);

/// g(x_-): the fold value of w_p to all orders in eps when the active cell
/// is treated as exactly saturated.
double wp_sn_nullcline(double epsilon, double theta, double w_s);

enum class FoldMethod { AsymptoticFormula, NumericBisection };

std::string_view to_string(FoldMethod m);

struct FoldResult {
    double parameter_value = 0.0;
    double bracket_width = 0.0;
    FoldMethod method = FoldMethod::NumericBisection;
    std::string kind;  // "fold2", "snic3", "ksexit", "asymptotic"
};

/// Parameters of a smooth-activation network other than w_p.
struct SmoothParams {
    double epsilon = 0.05;
    double theta = 0.5;
    double w_s = 1.0;
    double w_m = -0.7;
    double w_t = 0.0;
};

/// Smooth network for g with uniform w_p.
CompiledNetwork smooth_network(const DirectedGraph& g, const SmoothParams& p, double w_p);

/// True if damped Newton from the template of vertex k converges to a
/// stable equilibrium whose activation pattern is one-hot at k.
bool vertex_equilibrium_exists(const CompiledNetwork& net, Vertex k);

/// Critical w_p for the single-edge two-cell network, by bisection on the
/// existence of the excitable equilibrium. Throws BracketInvalid if both
/// ends agree.
FoldResult find_fold_2node(const SmoothParams& p, double wp_lo, double wp_hi, double tol);

/// J_2 coordinates eps/w_s -+ sqrt(2 eta eps)/w_s of the equilibrium pair
/// a distance eta below the fold (J_1 = 1 implied). Needs 0 < eta < eps/4.
std::pair<double, double> sn_pair_positions(double epsilon, double w_s, double eta);

/// Newton-refines the two equilibria of the two-cell network at w_p, seeded
/// from sn_pair_positions(eta). Returned in order (low J_2, high J_2).
std::pair<Equilibrium, Equilibrium> refine_sn_pair(const SmoothParams& p, double w_p, double eta);

/// Excitable-to-oscillating transition of the symmetric three-cycle.
FoldResult snic_locate_3cycle(const SmoothParams& p, double wp_lo, double wp_hi, double tol);

struct KsExitSolution {
    double J3;
    double J4;
    /// Both cells below 1/2: the equilibrium near xi_2 that blocks spontaneous exit.
    bool low;
};

/**
 * All solutions in (0,1)^2 of
 *   g(J3) = w_p3 + w_t J4,   g(J4) = w_p4 + w_t J3.
 * Solved by damped 2-D Newton in the y coordinates from a grid of seeds,
 * deduplicated at distance 1e-6. An empty low set marks spontaneous exit.
 */
std::vector<KsExitSolution> ks_exit_equilibria(double w_p3, double w_p4, double w_t, double epsilon, double theta,
                                               double w_s);

/// Largest w_p for which low solutions exist with w_p3 = w_p + delta_w and
/// w_p4 = w_p, on a fixed w_t slice.
FoldResult ks_exit_boundary(double w_t, double delta_w, const SmoothParams& p, double wp_lo, double wp_hi,
                            double tol);

struct PeriodEstimate {
    double period = 0.0;
    double stddev = 0.0;
    std::size_t crossings = 0;
};

/// Mean spacing of upward crossings of y_cell through level after
/// discarding settle_time, with linear interpolation between samples.
/// Throws NoOscillation with fewer than 3 crossings.
PeriodEstimate measure_period(const CompiledNetwork& net, const Vector& y0, double settle_time,
                              double measure_time, Vertex cell, double level, double dt = 1e-3);

/// Same, on an already computed trajectory (samples with t < settle_time ignored).
PeriodEstimate measure_period(const Trajectory& traj, double settle_time, Vertex cell, double level);

}  // namespace exnet
