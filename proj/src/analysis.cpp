#include "exnet/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "exnet/error.hpp"

namespace exnet {

std::string format_active_set(const ActiveSet& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(s[i] + 1);
    }
    return out + "}";
}

SymbolSequence extract_symbols(const Trajectory& traj, ActivationKind kind, const ActivationParams& p,
                               const SymbolOptions& opts) {
    if (!(opts.on_threshold > opts.off_threshold))
        throw Error(ErrorKind::DomainError, "hysteresis needs on_threshold > off_threshold");
    SymbolSequence seq;
    if (traj.empty()) return seq;

    const std::size_t n = traj.dim();
    std::vector<bool> on(n, false);
    for (std::size_t c = 0; c < n; ++c) on[c] = phi(kind, p, traj.value(0, c)) > 0.5;
    auto current = [&] {
        ActiveSet s;
        for (std::size_t c = 0; c < n; ++c)
            if (on[c]) s.push_back(c);
        return s;
    };

    std::vector<SymbolEvent> raw{{traj.time(0), current(), 0.0}};
    for (std::size_t i = 1; i < traj.size(); ++i) {
        bool changed = false;
        for (std::size_t c = 0; c < n; ++c) {
            const double a = phi(kind, p, traj.value(i, c));
            if (!on[c] && a > opts.on_threshold) on[c] = changed = true;
            else if (on[c] && a < opts.off_threshold) {
                on[c] = false;
                changed = true;
            }
        }
        if (changed) {
            auto s = current();
            if (s != raw.back().active) raw.push_back({traj.time(i), std::move(s), 0.0});
        }
    }
    const double t_end = traj.time(traj.size() - 1);

    // Drop short segments after the first (a run ending mid-switch leaves a
    // short final one), then merge neighbours that became equal.
    std::vector<SymbolEvent> kept;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        const double next = i + 1 < raw.size() ? raw[i + 1].enter_time : t_end;
        if (i > 0 && next - raw[i].enter_time < opts.debounce) continue;
        if (!kept.empty() && kept.back().active == raw[i].active) continue;
        kept.push_back(raw[i]);
    }
    for (std::size_t i = 0; i < kept.size(); ++i)
        kept[i].duration = (i + 1 < kept.size() ? kept[i + 1].enter_time : t_end) - kept[i].enter_time;
    seq.events = std::move(kept);
    return seq;
}

TransitionStats transition_stats(const SymbolSequence& seq) {
    if (seq.events.empty()) throw Error(ErrorKind::DomainError, "transition statistics need a nonempty sequence");
    TransitionStats stats;
    for (std::size_t i = 0; i + 1 < seq.events.size(); ++i) {
        ++stats.counts[{seq.events[i].active, seq.events[i + 1].active}];
        ++stats.total;
    }
    std::map<ActiveSet, std::vector<double>> durations;
    for (const auto& e : seq.events) durations[e.active].push_back(e.duration);
    for (const auto& [set, ds] : durations) {
        ResidenceSummary r;
        r.visits = ds.size();
        r.min = *std::min_element(ds.begin(), ds.end());
        r.max = *std::max_element(ds.begin(), ds.end());
        for (double d : ds) r.mean += d;
        r.mean /= static_cast<double>(ds.size());
        for (double d : ds) r.variance += (d - r.mean) * (d - r.mean);
        r.variance /= static_cast<double>(ds.size());
        stats.residence[set] = r;
    }
    return stats;
}

DirectedGraph ten_node_graph() {
    const std::vector<std::pair<int, int>> one_based{{1, 4}, {4, 7}, {7, 3}, {3, 8}, {8, 1}, {3, 10}, {10, 6},
                                                     {6, 1}, {6, 5}, {5, 8}, {1, 2}, {2, 9}, {9, 7}, {8, 9}};
    DirectedGraph g(10);
    for (const auto& [a, b] : one_based) g.set_edge(static_cast<Vertex>(a - 1), static_cast<Vertex>(b - 1));
    return g;
}

std::map<Edge, double> random_leading_weights(const DirectedGraph& g, double lo, double hi, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(lo, hi);
    std::map<Edge, double> out;
    for (const auto& e : g.edges()) out[e] = u(rng);
    return out;
}

DirectedGraph kirk_silber_graph() { return DirectedGraph(4, {{0, 1}, {1, 2}, {1, 3}, {2, 0}, {3, 0}}); }

CompiledNetwork kirk_silber_network(double w_p, double delta_w, double w_t, const ActivationParams& ap, double w_s,
                                    double w_m) {
    WeightParams wp;
    wp.w_s = w_s;
    wp.w_m = w_m;
    wp.w_t = w_t;
    wp.w_p = w_p;
    wp.w_p_overrides[{1, 2}] = w_p + delta_w;
    return compile_weights(kirk_silber_graph(), wp, ActivationKind::Smooth, ap);
}

std::string_view to_string(KsRoute r) {
    switch (r) {
        case KsRoute::RouteP3: return "RouteP3";
        case KsRoute::RouteP4: return "RouteP4";
        case KsRoute::RouteP34: return "RouteP34";
        case KsRoute::Other: return "Other";
    }
    return "?";
}

KsRoute classify_ks_route(const Trajectory& traj, double theta, double margin) {
    if (traj.dim() != 4) throw Error(ErrorKind::DimensionMismatch, "Kirk-Silber trajectories have four cells");
    double max3 = -std::numeric_limits<double>::infinity(), max4 = max3;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        max3 = std::max(max3, traj.value(i, 2));
        max4 = std::max(max4, traj.value(i, 3));
    }
    const bool hit3 = max3 > theta + margin, hit4 = max4 > theta + margin;
    if (hit3 && hit4) return KsRoute::RouteP34;
    if (hit3) return KsRoute::RouteP3;
    if (hit4) return KsRoute::RouteP4;
    return KsRoute::Other;
}

KsExitCounts count_ks_exits(const SymbolSequence& seq) {
    KsExitCounts counts;
    const ActiveSet bottleneck{1};
    auto has = [](const ActiveSet& s, Vertex v) { return std::find(s.begin(), s.end(), v) != s.end(); };
    const auto& ev = seq.events;
    std::size_t i = 0;
    while (i < ev.size()) {
        if (ev[i].active != bottleneck) {
            ++i;
            continue;
        }
        bool saw3 = false, saw4 = false, together = false;
        std::size_t j = i + 1;
        for (; j < ev.size(); ++j) {
            const auto& s = ev[j].active;
            if (s == bottleneck || has(s, 0)) break;
            saw3 = saw3 || has(s, 2);
            saw4 = saw4 || has(s, 3);
            together = together || (has(s, 2) && has(s, 3));
        }
        if (together) ++counts.p34;
        else if (saw3) ++counts.p3;
        else if (saw4) ++counts.p4;
        i = j;
    }
    return counts;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t cell, std::uint64_t rep) {
    // splitmix64 finaliser over a combined key.
    std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (cell + 1) + 0xD1B54A32D192ED03ULL * (rep + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

namespace {

std::vector<double> axis(double lo, double hi, std::size_t steps) {
    if (steps == 0) throw Error(ErrorKind::DomainError, "sweep axes need at least one point");
    std::vector<double> v(steps);
    for (std::size_t i = 0; i < steps; ++i)
        v[i] = steps == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
    return v;
}

}  // namespace

SweepGrid ks_sweep(const KsSweepSpec& spec) {
    if (spec.reps == 0) throw Error(ErrorKind::DomainError, "sweep needs reps >= 1");
    SweepGrid grid;
    grid.spec = spec;
    grid.w_t_values = axis(spec.w_t_min, spec.w_t_max, spec.w_t_steps);
    grid.w_p_values = axis(spec.w_p_min, spec.w_p_max, spec.w_p_steps);

    IntegrationOptions io;
    io.dt = spec.dt;
    io.stride = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(0.01 / spec.dt)));
    SymbolOptions so;
    so.debounce = 0.0;

    for (std::size_t ip = 0; ip < grid.w_p_values.size(); ++ip) {
        for (std::size_t it = 0; it < grid.w_t_values.size(); ++it) {
            SweepCell cell;
            cell.w_p = grid.w_p_values[ip];
            cell.w_t = grid.w_t_values[it];
            const std::uint64_t index = ip * grid.w_t_values.size() + it;
            cell.seed = derive_seed(spec.base_seed, index, 0);
            const auto net =
                kirk_silber_network(cell.w_p, spec.delta_w, cell.w_t, spec.activation, spec.w_s, spec.w_m);
            const Vector y0 = predicted_equilibrium(net, 0).components;
            for (std::size_t r = 0; r < spec.reps; ++r) {
                const auto traj =
                    integrate_sde(net, y0, 0.0, spec.t_end, {spec.sigma, derive_seed(spec.base_seed, index, r)}, io);
                const auto c =
                    count_ks_exits(extract_symbols(traj, ActivationKind::Smooth, spec.activation, so));
                cell.n_p3 += c.p3;
                cell.n_p4 += c.p4;
                cell.n_p34 += c.p34;
            }
            const auto total = cell.n_p3 + cell.n_p4 + cell.n_p34;
            if (total > 0) cell.ratio = static_cast<double>(cell.n_p34) / static_cast<double>(total);
            grid.cells.push_back(cell);
        }
    }
    return grid;
}

std::vector<ActiveSet> periodic_cycle(const SymbolSequence& seq, std::size_t repeats, double rel_tol) {
    // The last event is cut off by the end of the run; ignore it.
    if (seq.events.size() < 2) throw Error(ErrorKind::NotPeriodic, "sequence too short");
    const std::size_t m = seq.events.size() - 1;
    const auto& ev = seq.events;
    for (std::size_t p = 1; p * repeats <= m; ++p) {
        bool ok = true;
        for (std::size_t i = m - p * (repeats - 1); i < m && ok; ++i) {
            const auto& a = ev[i];
            const auto& b = ev[i - p];
            const double scale = std::max(a.duration, b.duration);
            ok = a.active == b.active && std::abs(a.duration - b.duration) <= rel_tol * scale;
        }
        if (!ok) continue;
        std::vector<ActiveSet> cycle;
        for (std::size_t i = m - p; i < m; ++i) cycle.push_back(ev[i].active);
        const auto first = std::min_element(cycle.begin(), cycle.end());
        std::rotate(cycle.begin(), first, cycle.end());
        return cycle;
    }
    throw Error(ErrorKind::NotPeriodic, "no block repeats " + std::to_string(repeats) + " times in the sequence tail");
}

std::vector<BranchChoice> branch_preference_check(const CompiledNetwork& net, const SymbolSequence& seq) {
    const auto cycle = periodic_cycle(seq);
    std::vector<BranchChoice> out;
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        const auto& here = cycle[i];
        const auto& next = cycle[(i + 1) % cycle.size()];
        if (here.size() != 1 || next.size() != 1)
            throw Error(ErrorKind::NotPeriodic, "cycle visits a multi-active state " + format_active_set(here));
        const Vertex v = here.front();
        const auto succ = net.graph.successors(v);
        if (succ.size() < 2) continue;
        BranchChoice bc;
        bc.vertex = v;
        bc.chosen = next.front();
        bc.chosen_weight = net.graph.adjacent(v, bc.chosen) ? net.params.leading_weight(v, bc.chosen) : 0.0;
        bc.strongest = succ.front();
        bc.strongest_weight = net.params.leading_weight(v, succ.front());
        for (const Vertex s : succ) {
            const double w = net.params.leading_weight(v, s);
            if (w > bc.strongest_weight) {
                bc.strongest = s;
                bc.strongest_weight = w;
            }
        }
        bc.prefers_strongest = bc.chosen == bc.strongest;
        out.push_back(bc);
    }
    return out;
}

}  // namespace exnet
