#include "exnet/excitability.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "exnet/error.hpp"

namespace exnet {

std::string_view to_string(ConnectionOutcome o) {
    switch (o) {
        case ConnectionOutcome::ConvergedIntended: return "ConvergedIntended";
        case ConnectionOutcome::ConvergedOther: return "ConvergedOther";
        case ConnectionOutcome::ReturnedToSource: return "ReturnedToSource";
        case ConnectionOutcome::NoConvergence: return "NoConvergence";
    }
    return "?";
}

Vector perturbation_point(const Equilibrium& xi_k, Vertex l, double delta) {
    Vector z = xi_k.state;
    z[static_cast<Eigen::Index>(l)] += delta;
    return z;
}

namespace {

constexpr int kUnlisted = -1;
constexpr int kNone = -2;

struct Nearest {
    int index = kNone;
    double distance = std::numeric_limits<double>::infinity();
};

Nearest nearest_equilibrium(const std::vector<Equilibrium>& eqs, const Vector& y) {
    Nearest best;
    for (std::size_t m = 0; m < eqs.size(); ++m) {
        const double d = (y - eqs[m].state).norm();
        if (d < best.distance) best = {static_cast<int>(m), d};
    }
    return best;
}

}  // namespace

ConnectionResult follow_to_rest(const CompiledNetwork& net, const std::vector<Equilibrium>& equilibria,
                                const Vector& start, Vertex source, Vertex target, const ConnectionOptions& opts) {
    ConnectionResult res;
    res.from = source;
    res.to_intended = target;

    Rk4Stepper stepper(net, opts.dt);
    const auto steps = static_cast<std::size_t>(std::llround(opts.t_max / opts.dt));
    const double bound = state_bound(net);
    Vector y = start;
    Vector f(y.size());

    if (opts.record_stride > 0) {
        res.path = Trajectory(net.size());
        res.path.solver = "rk4";
        res.path.dt = opts.dt;
        res.path.push(0.0, y);
    }

    int candidate = kNone;
    double entered = 0.0;
    Vector anchor;
    for (std::size_t i = 0; i <= steps; ++i) {
        const double t = static_cast<double>(i) * opts.dt;
        rhs_y(net, y, nullptr, f);
        int here = kNone;
        if (f.cwiseAbs().maxCoeff() < opts.conv_tol) {
            const auto near = nearest_equilibrium(equilibria, y);
            here = near.distance < opts.conv_tol ? near.index : kUnlisted;
        }
        if (here == kUnlisted && candidate == kUnlisted && (y - anchor).norm() >= opts.conv_tol) here = kNone;
        if (here != candidate) {
            candidate = here;
            entered = t;
            if (here == kUnlisted) anchor = y;
        }
        if (candidate != kNone && t - entered >= opts.dwell) {
            res.transit_time = entered;
            if (candidate == kUnlisted) {
                res.outcome = ConnectionOutcome::ConvergedOther;
                res.final_distance = nearest_equilibrium(equilibria, y).distance;
            } else {
                const auto m = static_cast<Vertex>(candidate);
                res.reached = m;
                res.final_distance = (y - equilibria[m].state).norm();
                res.outcome = m == target   ? ConnectionOutcome::ConvergedIntended
                              : m == source ? ConnectionOutcome::ReturnedToSource
                                            : ConnectionOutcome::ConvergedOther;
            }
            if (opts.record_stride > 0 && res.path.times().back() != t) res.path.push(t, y);
            return res;
        }
        if (i == steps) break;
        stepper.step(t, y);
        for (Eigen::Index c = 0; c < y.size(); ++c)
            if (!std::isfinite(y[c]) || std::abs(y[c]) > bound)
                throw NonFiniteStateError("connection test diverged", std::move(res.path));
        if (opts.record_stride > 0 && (i + 1) % opts.record_stride == 0) res.path.push(t + opts.dt, y);
    }
    res.outcome = ConnectionOutcome::NoConvergence;
    res.transit_time = opts.t_max;
    res.final_distance = nearest_equilibrium(equilibria, y).distance;
    return res;
}

ConnectionResult test_excitable_connection(const CompiledNetwork& net, const std::vector<Equilibrium>& equilibria,
                                           Vertex k, Vertex l, double delta, const ConnectionOptions& opts) {
    if (k >= equilibria.size() || l >= equilibria.size())
        throw Error(ErrorKind::EquilibriumMissing, "connection endpoints outside the equilibrium list");
    return follow_to_rest(net, equilibria, perturbation_point(equilibria[k], l, delta), k, l, opts);
}

RealizationReport realize_graph_check(const CompiledNetwork& net, double delta, const RealizationOptions& opts) {
    RealizationReport report;
    report.n = net.size();
    report.equilibria = refine_all_templates(net);
    report.pairs.resize(report.n * report.n);
    const auto& eqs = report.equilibria;
    const auto& g = net.graph;

    for (Vertex k = 0; k < report.n; ++k) {
        for (Vertex l = 0; l < report.n; ++l) {
            if (k == l) continue;
            auto& pv = report.pairs[k * report.n + l];
            pv.is_edge = g.adjacent(k, l);
            if (pv.is_edge) {
                pv.result = test_excitable_connection(net, eqs, k, l, delta, opts.connection);
                pv.probes = 1;
                pv.probes_reached_target = pv.result.outcome == ConnectionOutcome::ConvergedIntended;
                pv.ok = pv.probes_reached_target == 1;
                if (!pv.ok)
                    report.failures.push_back("edge " + std::to_string(k + 1) + "->" + std::to_string(l + 1) + ": " +
                                              std::string(to_string(pv.result.outcome)));
                continue;
            }

            std::optional<ConnectionResult> reached, strayed, slowest;
            for (std::size_t r = 1; r <= opts.probe_radii; ++r) {
                const double radius = delta * static_cast<double>(r) / static_cast<double>(opts.probe_radii);
                for (std::size_t a = 0; a < opts.probe_angles; ++a) {
                    const double angle =
                        2.0 * std::numbers::pi * static_cast<double>(a) / static_cast<double>(opts.probe_angles);
                    Vector z = eqs[k].state;
                    z[static_cast<Eigen::Index>(k)] += radius * std::cos(angle);
                    z[static_cast<Eigen::Index>(l)] += radius * std::sin(angle);
                    auto res = follow_to_rest(net, eqs, z, k, l, opts.connection);
                    ++pv.probes;
                    if (res.outcome == ConnectionOutcome::ConvergedIntended) {
                        ++pv.probes_reached_target;
                        if (!reached) reached = res;
                    } else if (res.outcome == ConnectionOutcome::ReturnedToSource) {
                        ++pv.probes_returned;
                        if (!slowest || res.transit_time > slowest->transit_time) slowest = res;
                    } else if (!strayed) {
                        strayed = res;
                    }
                }
            }
            pv.result = reached ? *reached : strayed ? *strayed : *slowest;
            pv.ok = pv.probes_reached_target == 0;
            if (!pv.ok)
                report.failures.push_back("non-edge " + std::to_string(k + 1) + "->" + std::to_string(l + 1) + ": " +
                                          std::to_string(pv.probes_reached_target) + " probe(s) reached the target");
        }
    }
    report.verdict = report.failures.empty();
    return report;
}

double estimate_threshold(const CompiledNetwork& net, const std::vector<Equilibrium>& equilibria, Vertex k, Vertex l,
                          double delta_lo, double delta_hi, double tol, const ConnectionOptions& opts) {
    auto connects = [&](double d) {
        return test_excitable_connection(net, equilibria, k, l, d, opts).outcome ==
               ConnectionOutcome::ConvergedIntended;
    };
    const bool lo = connects(delta_lo), hi = connects(delta_hi);
    if (lo || !hi)
        throw Error(ErrorKind::BracketInvalid, std::string("connection ") + (lo ? "present" : "absent") +
                                                   " at lower end and " + (hi ? "present" : "absent") +
                                                   " at upper end");
    while (delta_hi - delta_lo >= tol) {
        const double mid = 0.5 * (delta_lo + delta_hi);
        (connects(mid) ? delta_hi : delta_lo) = mid;
    }
    return 0.5 * (delta_lo + delta_hi);
}

BasinTally basin_sample(const CompiledNetwork& net, const std::vector<Equilibrium>& equilibria, Vertex k,
                        double delta, std::size_t n_samples, std::uint64_t seed, const ConnectionOptions& opts) {
    if (n_samples == 0) throw Error(ErrorKind::DomainError, "basin sampling needs at least one sample");
    BasinTally tally;
    tally.to_equilibrium.assign(equilibria.size(), 0);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> uniform;
    const auto n = static_cast<Eigen::Index>(net.size());
    for (std::size_t s = 0; s < n_samples; ++s) {
        Vector dir(n);
        for (Eigen::Index i = 0; i < n; ++i) dir[i] = normal(rng);
        const double radius = delta * std::pow(uniform(rng), 1.0 / static_cast<double>(n));
        const Vector start = equilibria[k].state + radius * dir.normalized();
        const auto res = follow_to_rest(net, equilibria, start, k, k, opts);
        ++tally.total;
        if (res.reached)
            ++tally.to_equilibrium[*res.reached];
        else if (res.outcome == ConnectionOutcome::ConvergedOther)
            ++tally.unlisted;
        else
            ++tally.no_convergence;
    }
    return tally;
}

}  // namespace exnet
