#include "exnet/bifurcation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "exnet/error.hpp"

namespace exnet {

double GFunction::operator()(double x) const {
    if (!(x > 0.0 && x < 1.0)) throw Error(ErrorKind::DomainError, "g is defined on (0,1)");
    return theta - epsilon * std::log((1.0 - x) / x) - w_s * x;
}

double GFunction::derivative(double x) const { return epsilon / (x * (1.0 - x)) - w_s; }

double GFunction::second_derivative(double x) const {
    const double q = x * (1.0 - x);
    return epsilon * (2.0 * x - 1.0) / (q * q);
}

std::pair<double, double> g_extrema(double epsilon, double w_s) {
    const double disc = 0.25 - epsilon / w_s;
    if (!(w_s > 0.0) || disc < 0.0) throw Error(ErrorKind::NoExtrema, "g has no extrema unless w_s >= 4 eps");
    const double r = std::sqrt(disc);
    return {0.5 - r, 0.5 + r};
}

double wp_sn_asymptotic(double epsilon, double theta, double w_s) {
    if (!(theta < w_s)) throw Error(ErrorKind::DomainError, "fold expansion needs theta < w_s");
    if (!(epsilon > 0.0)) throw Error(ErrorKind::DomainError, "epsilon must be positive");
    return epsilon * std::log(epsilon) + theta - epsilon * (1.0 + std::log(w_s)) + epsilon * epsilon / w_s;
}

double wp_sn_nullcline(double epsilon, double theta, double w_s) {
    const auto [x_minus, x_plus] = g_extrema(epsilon, w_s);
    return GFunction{epsilon, theta, w_s}(x_minus);
}

std::string_view to_string(FoldMethod m) {
    return m == FoldMethod::AsymptoticFormula ? "AsymptoticFormula" : "NumericBisection";
}

CompiledNetwork smooth_network(const DirectedGraph& g, const SmoothParams& p, double w_p) {
    WeightParams wp;
    wp.w_s = p.w_s;
    wp.w_m = p.w_m;
    wp.w_t = p.w_t;
    wp.w_p = w_p;
    return compile_weights(g, wp, ActivationKind::Smooth, {p.epsilon, p.theta});
}

bool vertex_equilibrium_exists(const CompiledNetwork& net, Vertex k) {
    const auto tpl = predicted_equilibrium(net, k);
    NewtonOptions opts;
    opts.tol = 1e-13;
    opts.max_iter = 400;
    Equilibrium eq;
    try {
        eq = refine_equilibrium(net, tpl.components, opts, k);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::SingularJacobian) return false;
        throw;
    }
    if (!eq.converged || eq.stability != Stability::Stable) return false;
    for (Vertex j = 0; j < net.size(); ++j) {
        const double J = phi(net.activation, net.activation_params, eq.state[static_cast<Eigen::Index>(j)]);
        if ((j == k) != (J > 0.5)) return false;
    }
    return true;
}

namespace {

// Bisection for the switch of a predicate that holds at lo and fails at hi.
FoldResult bisect_existence(const std::function<bool(double)>& exists, double lo, double hi, double tol,
                            const char* kind) {
    const bool at_lo = exists(lo), at_hi = exists(hi);
    if (at_lo == at_hi)
        throw Error(ErrorKind::BracketInvalid, std::string(kind) + ": equilibrium " +
                                                   (at_lo ? "exists" : "is absent") + " at both ends of [" +
                                                   std::to_string(lo) + ", " + std::to_string(hi) + "]");
    // Orient so that the predicate is true at `yes`.
    double yes = at_lo ? lo : hi, no = at_lo ? hi : lo;
    while (std::abs(no - yes) >= tol) {
        const double mid = 0.5 * (yes + no);
        (exists(mid) ? yes : no) = mid;
    }
    return {0.5 * (yes + no), std::abs(no - yes), FoldMethod::NumericBisection, kind};
}

}  // namespace

FoldResult find_fold_2node(const SmoothParams& p, double wp_lo, double wp_hi, double tol) {
    const DirectedGraph g(2, {{0, 1}});
    return bisect_existence([&](double w_p) { return vertex_equilibrium_exists(smooth_network(g, p, w_p), 0); },
                            wp_lo, wp_hi, tol, "fold2");
}

std::pair<double, double> sn_pair_positions(double epsilon, double w_s, double eta) {
    if (!(eta >= 0.0 && eta < epsilon / 4.0))
        throw Error(ErrorKind::DomainError, "eta must lie in [0, eps/4)");
    const double centre = epsilon / w_s;
    const double half = std::sqrt(2.0 * eta * epsilon) / w_s;
    return {centre - half, centre + half};
}

std::pair<Equilibrium, Equilibrium> refine_sn_pair(const SmoothParams& p, double w_p, double eta) {
    const DirectedGraph g(2, {{0, 1}});
    const auto net = smooth_network(g, p, w_p);
    auto [lo, hi] = sn_pair_positions(p.epsilon, p.w_s, eta);
    const ActivationParams ap{p.epsilon, p.theta};

    // Seeds come from the roots of the reduced scalar equation for J2 (cell 1
    // eliminated by its own fixed point), so the check does not depend on
    // the formula it is compared with.
    const GFunction gf{p.epsilon, p.theta, p.w_s};
    auto reduced = [&](double x) {
        double y1 = p.w_s;
        for (int i = 0; i < 60; ++i) y1 = p.w_s * phi(ActivationKind::Smooth, ap, y1) + p.w_m * x;
        return gf(x) - w_p * phi(ActivationKind::Smooth, ap, y1);
    };
    double a = 1e-6, b = 0.5;
    for (int i = 0; i < 200; ++i) {  // ternary search for the local maximum
        const double m1 = a + (b - a) / 3, m2 = b - (b - a) / 3;
        if (reduced(m1) < reduced(m2))
            a = m1;
        else
            b = m2;
    }
    const double peak = 0.5 * (a + b);
    auto root = [&](double l, double r) {
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (l + r);
            (reduced(l) * reduced(mid) <= 0.0 ? r : l) = mid;
        }
        return 0.5 * (l + r);
    };
    if (reduced(peak) > 0.0 && reduced(1e-12) < 0.0 && reduced(0.5) < 0.0) {
        lo = root(1e-12, peak);
        hi = root(peak, 0.5);
    }

    NewtonOptions opts;
    opts.tol = 1e-13;
    opts.max_iter = 400;
    auto seed = [&](double J2) {
        Vector y(2);
        y << p.w_s, phi_inverse_smooth(ap, J2);
        return y;
    };
    return {refine_equilibrium(net, seed(lo), opts), refine_equilibrium(net, seed(hi), opts)};
}

FoldResult snic_locate_3cycle(const SmoothParams& p, double wp_lo, double wp_hi, double tol) {
    const DirectedGraph g(3, {{0, 1}, {1, 2}, {2, 0}});
    // By symmetry all three vertex equilibria fold together; vertex 1 stands for all.
    return bisect_existence([&](double w_p) { return vertex_equilibrium_exists(smooth_network(g, p, w_p), 0); },
                            wp_lo, wp_hi, tol, "snic3");
}

std::vector<KsExitSolution> ks_exit_equilibria(double w_p3, double w_p4, double w_t, double epsilon, double theta,
                                               double w_s) {
    const ActivationParams ap{epsilon, theta};
    auto act = [&](double u) { return phi(ActivationKind::Smooth, ap, u); };
    auto dact = [&](double u) { return phi_derivative(ActivationKind::Smooth, ap, u); };
    // In y coordinates: u - w_s phi(u) - w_t phi(v) = w_p3, and symmetrically for v.
    auto residual = [&](double u, double v) {
        return Eigen::Vector2d(u - w_s * act(u) - w_t * act(v) - w_p3, v - w_s * act(v) - w_t * act(u) - w_p4);
    };

    std::vector<KsExitSolution> found;
    constexpr int kGrid = 41;
    const double lo = -1.0, hi = 2.0;
    for (int a = 0; a < kGrid; ++a) {
        for (int b = 0; b < kGrid; ++b) {
            Eigen::Vector2d x(lo + (hi - lo) * a / (kGrid - 1), lo + (hi - lo) * b / (kGrid - 1));
            Eigen::Vector2d f = residual(x[0], x[1]);
            for (int it = 0; it < 100 && f.cwiseAbs().maxCoeff() >= 1e-13; ++it) {
                Eigen::Matrix2d jac;
                jac << 1.0 - w_s * dact(x[0]), -w_t * dact(x[1]), -w_t * dact(x[0]), 1.0 - w_s * dact(x[1]);
                if (std::abs(jac.determinant()) < 1e-300) break;
                const Eigen::Vector2d dx = jac.partialPivLu().solve(-f);
                double lambda = 1.0;
                Eigen::Vector2d trial = x + dx;
                Eigen::Vector2d ft = residual(trial[0], trial[1]);
                for (int h = 0; h < 30 && ft.cwiseAbs().maxCoeff() > f.cwiseAbs().maxCoeff(); ++h) {
                    lambda *= 0.5;
                    trial = x + lambda * dx;
                    ft = residual(trial[0], trial[1]);
                }
                x = trial;
                f = ft;
            }
            if (!(f.cwiseAbs().maxCoeff() < 1e-12)) continue;
            const double J3 = act(x[0]), J4 = act(x[1]);
            if (!(J3 > 0.0 && J3 < 1.0 && J4 > 0.0 && J4 < 1.0)) continue;
            const bool dup = std::any_of(found.begin(), found.end(), [&](const KsExitSolution& s) {
                return std::hypot(s.J3 - J3, s.J4 - J4) < 1e-6;
            });
            if (!dup) found.push_back({J3, J4, J3 < 0.5 && J4 < 0.5});
        }
    }
    std::sort(found.begin(), found.end(),
              [](const KsExitSolution& a, const KsExitSolution& b) { return a.J3 != b.J3 ? a.J3 < b.J3 : a.J4 < b.J4; });
    return found;
}

FoldResult ks_exit_boundary(double w_t, double delta_w, const SmoothParams& p, double wp_lo, double wp_hi,
                            double tol) {
    return bisect_existence(
        [&](double w_p) {
            const auto sols = ks_exit_equilibria(w_p + delta_w, w_p, w_t, p.epsilon, p.theta, p.w_s);
            return std::any_of(sols.begin(), sols.end(), [](const KsExitSolution& s) { return s.low; });
        },
        wp_lo, wp_hi, tol, "ksexit");
}

PeriodEstimate measure_period(const Trajectory& traj, double settle_time, Vertex cell, double level) {
    std::vector<double> crossings;
    for (std::size_t i = 1; i < traj.size(); ++i) {
        if (traj.time(i - 1) < settle_time) continue;
        const double a = traj.value(i - 1, cell), b = traj.value(i, cell);
        if (a < level && b >= level) {
            const double s = (level - a) / (b - a);
            crossings.push_back(traj.time(i - 1) + s * (traj.time(i) - traj.time(i - 1)));
        }
    }
    if (crossings.size() < 3)
        throw Error(ErrorKind::NoOscillation, std::to_string(crossings.size()) + " upward crossing(s) of level");
    std::vector<double> gaps;
    for (std::size_t i = 1; i < crossings.size(); ++i) gaps.push_back(crossings[i] - crossings[i - 1]);
    double mean = 0.0;
    for (double g : gaps) mean += g;
    mean /= static_cast<double>(gaps.size());
    double var = 0.0;
    for (double g : gaps) var += (g - mean) * (g - mean);
    var /= static_cast<double>(gaps.size());
    return {mean, std::sqrt(var), crossings.size()};
}

PeriodEstimate measure_period(const CompiledNetwork& net, const Vector& y0, double settle_time, double measure_time,
                              Vertex cell, double level, double dt) {
    IntegrationOptions opts;
    opts.dt = dt;
    return measure_period(integrate_ode(net, y0, 0.0, settle_time + measure_time, {}, opts), settle_time, cell,
                          level);
}

}  // namespace exnet
