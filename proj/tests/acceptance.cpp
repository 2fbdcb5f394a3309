// Acceptance checks. Prints one PASS/FAIL line per criterion.
// Usage: acceptance [criterion-number ...]   (no arguments runs all)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "exnet/analysis.hpp"
#include "exnet/bifurcation.hpp"
#include "exnet/equilibria.hpp"
#include "exnet/excitability.hpp"
#include "exnet/io.hpp"

using namespace exnet;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

DirectedGraph three_cycle() { return DirectedGraph(3, {{0, 1}, {1, 2}, {2, 0}}); }

// Seeded random graphs used by the first two criteria: N = 3 + (s mod 8).
constexpr std::size_t kRandomGraphs = 20;
constexpr double kDelta = 0.4;

DirectedGraph acceptance_graph(std::uint64_t s) { return random_constrained_graph(3 + s % 8, 0.3, s, true); }

CompiledNetwork theorem_network(const DirectedGraph& g) {
    const auto [ap, wp] = theorem_params(kDelta);
    return compile_weights(g, wp, ActivationKind::PiecewiseAffine, ap);
}

Outcome realization() {
    std::size_t ok = 0;
    std::string bad;
    for (std::uint64_t s = 0; s < kRandomGraphs; ++s) {
        const auto g = acceptance_graph(s);
        const auto report = realize_graph_check(theorem_network(g), kDelta);
        if (report.verdict) ++ok;
        else bad += fmt(" seed%llu(N=%zu)", static_cast<unsigned long long>(s), g.size());
    }
    return {ok == kRandomGraphs, fmt("%zu/%zu graphs realised", ok, kRandomGraphs) + bad};
}

Outcome exact_equilibria() {
    double worst_residual = 0.0, worst_eig = 0.0;
    for (std::uint64_t s = 0; s < kRandomGraphs; ++s) {
        const auto net = theorem_network(acceptance_graph(s));
        for (Vertex k = 0; k < net.size(); ++k) {
            const Vector y = predicted_equilibrium(net, k).components;
            worst_residual = std::max(worst_residual, rhs_y(net, y).cwiseAbs().maxCoeff());
            for (const auto& ev : eigenvalues(jacobian(net, y)))
                worst_eig = std::max(worst_eig, std::abs(ev - std::complex<double>(-1.0, 0.0)));
        }
    }
    return {worst_residual <= 1e-14 && worst_eig <= 1e-12,
            fmt("max residual %.3g, max |lambda+1| %.3g", worst_residual, worst_eig)};
}

Outcome lemma1() {
    const double asym = wp_sn_asymptotic(0.05, 0.5, 1.0);
    const std::string printed = fmt("%.4g", asym);
    const auto fold = find_fold_2node(SmoothParams{}, 0.29, 0.32, 1e-8).parameter_value;
    const bool agree = std::abs(fold - asym) <= 5e-4;

    // Least-squares slope of log|numeric - formula| against log eps.
    std::vector<double> lx, ly;
    std::string errs;
    for (double eps : {0.05, 0.02, 0.01}) {
        SmoothParams p;
        p.epsilon = eps;
        const double a = wp_sn_asymptotic(eps, 0.5, 1.0);
        const double f = find_fold_2node(p, a - 0.02, a + 0.02, 1e-11).parameter_value;
        lx.push_back(std::log(eps));
        ly.push_back(std::log(std::abs(f - a)));
        errs += fmt(" %.3g", std::abs(f - a));
    }
    const double mx = (lx[0] + lx[1] + lx[2]) / 3, my = (ly[0] + ly[1] + ly[2]) / 3;
    double sxy = 0, sxx = 0;
    for (int i = 0; i < 3; ++i) {
        sxy += (lx[i] - mx) * (ly[i] - my);
        sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    const double slope = sxy / sxx;
    return {printed == "0.3027" && agree && slope >= 2.5,
            fmt("asymptotic %s, numeric fold %.6f (gap %.2g), errors", printed.c_str(), fold, std::abs(fold - asym)) +
                errs + fmt(", slope %.2f", slope)};
}

Outcome lemma2() {
    const SmoothParams p;
    const double eta = 0.005;
    const double fold = find_fold_2node(p, 0.29, 0.32, 1e-10).parameter_value;
    const auto [lo, hi] = refine_sn_pair(p, fold - eta, eta);
    const auto [f_lo, f_hi] = sn_pair_positions(p.epsilon, p.w_s, eta);
    const ActivationParams ap{p.epsilon, p.theta};
    const double j_lo = y_to_J(ap, lo.state)[1], j_hi = y_to_J(ap, hi.state)[1];
    const double d_lo = std::abs(j_lo - f_lo), d_hi = std::abs(j_hi - f_hi);
    return {lo.converged && hi.converged && d_lo <= 3e-3 && d_hi <= 3e-3,
            fmt("J2 = %.5f, %.5f vs formula %.5f, %.5f (gaps %.2g, %.2g; tolerance 3e-3)", j_lo, j_hi, f_lo, f_hi,
                d_lo, d_hi)};
}

Outcome snic() {
    const SmoothParams p;
    const double w = snic_locate_3cycle(p, 0.29, 0.32, 1e-8).parameter_value;
    auto period = [&](double w_p) {
        const auto net = smooth_network(three_cycle(), p, w_p);
        return measure_period(net, rest_state(net, 0), 200.0, 600.0, 0, 0.5).period;
    };
    const double t1 = period(0.305), t2 = period(0.3035);
    return {std::abs(w - 0.30287) <= 5e-4 && std::isfinite(t1) && t2 > t1,
            fmt("SNIC at %.6f, period %.2f at 0.305, %.2f at 0.3035", w, t1, t2)};
}

Outcome three_cycle_dynamics() {
    const SmoothParams p;
    const IntegrationOptions io{1e-3, 10};

    const auto quiet = smooth_network(three_cycle(), p, 0.3);
    const auto ta = integrate_ode(quiet, rest_state(quiet, 0), 0.0, 1000.0, {}, io);
    const auto sa = extract_symbols(ta, ActivationKind::Smooth, quiet.activation_params);
    const bool a = sa.events.size() == 1 && sa.events[0].active == ActiveSet{0};

    const auto tb = integrate_sde(quiet, rest_state(quiet, 0), 0.0, 300.0, {0.05, 1}, io);
    const auto sb = extract_symbols(tb, ActivationKind::Smooth, quiet.activation_params);
    bool cyclic = !sb.events.empty();
    for (std::size_t i = 1; i < sb.events.size() && cyclic; ++i)
        cyclic = sb.events[i].active.size() == 1 && sb.events[i - 1].active.size() == 1 &&
                 sb.events[i].active[0] == (sb.events[i - 1].active[0] + 1) % 3;
    const std::size_t transitions = sb.events.empty() ? 0 : sb.events.size() - 1;
    const bool b = cyclic && transitions >= 5;

    const auto osc = smooth_network(three_cycle(), p, 0.305);
    const auto tc = integrate_ode(osc, rest_state(osc, 0), 0.0, 400.0, {}, io);
    bool c = false;
    try {
        c = periodic_cycle(extract_symbols(tc, ActivationKind::Smooth, osc.activation_params)) ==
            std::vector<ActiveSet>{{0}, {1}, {2}};
    } catch (const Error&) {
    }
    return {a && b && c, fmt("(a) %zu event(s) %s; (b) %zu transitions, cyclic %s; (c) periodic {1}{2}{3} %s",
                             sa.events.size(), a ? "ok" : "FAIL", transitions, cyclic ? "yes" : "no", c ? "ok" : "FAIL")};
}

Outcome coordinates() {
    const auto net = smooth_network(three_cycle(), SmoothParams{}, 0.3);
    // Kick cell 2 past threshold so the run contains a full switch.
    Vector y0 = rest_state(net, 0);
    y0[1] += 0.3;
    const IntegrationOptions io{1e-4, 10};
    const auto ty = integrate_ode(net, y0, 0.0, 50.0, {}, io);
    const auto tj = integrate_J(net, y_to_J(net.activation_params, y0), 0.0, 50.0, io);
    double gap = 0.0;
    for (std::size_t i = 0; i < std::min(ty.size(), tj.size()); ++i)
        gap = std::max(gap, (y_to_J(net.activation_params, ty.state(i)) - tj.state(i)).cwiseAbs().maxCoeff());
    const auto moved = extract_symbols(ty, ActivationKind::Smooth, net.activation_params).events.size();
    return {ty.size() == tj.size() && gap < 1e-4, fmt("sup gap %.3g over %zu samples, %zu symbol(s)", gap, ty.size(), moved)};
}

Outcome kirk_silber() {
    auto route = [](double w_p) {
        const auto net = kirk_silber_network(w_p, 0.002, 0.0);
        const auto tr = integrate_ode(net, predicted_equilibrium(net, 0).components, 0.0, 600.0, {}, {1e-3, 10});
        Trajectory late(4);
        for (std::size_t i = 0; i < tr.size(); ++i)
            if (tr.time(i) >= 300.0) late.push(tr.time(i), tr.state(i));
        return classify_ks_route(late, 0.5);
    };
    const auto ra = route(0.315), rb = route(0.305);

    const auto net = kirk_silber_network(0.3, 0.002, 0.0);
    const auto tr = integrate_sde(net, predicted_equilibrium(net, 0).components, 0.0, 500.0, {0.05, 1}, {1e-3, 10});
    SymbolOptions so;
    so.debounce = 0.0;
    const auto c = count_ks_exits(extract_symbols(tr, ActivationKind::Smooth, net.activation_params, so));
    const bool cc = c.p3 > 0 && c.p4 > 0;

    KsSweepSpec spec;
    spec.reps = 2;
    const auto grid = ks_sweep(spec);
    const std::size_t row = grid.w_p_values.size() - 1;  // w_p = 0.315
    bool monotone = true;
    std::string ratios;
    double prev = -1.0;
    for (std::size_t it = 0; it < grid.w_t_values.size(); ++it) {
        const auto& cell = grid.at(row, it);
        if (!cell.ratio) {
            monotone = false;
            ratios += " -";
            continue;
        }
        ratios += fmt(" %.3f", *cell.ratio);
        monotone = monotone && *cell.ratio >= prev;
        prev = *cell.ratio;
    }
    const bool pass = ra == KsRoute::RouteP34 && rb == KsRoute::RouteP3 && cc && monotone;
    return {pass, fmt("(a) %s (b) %s (c) P3 %zu, P4 %zu, P34 %zu (d) ratios at w_p=%.3f:", to_string(ra).data(),
                      to_string(rb).data(), c.p3, c.p4, c.p34, grid.w_p_values[row]) +
                      ratios};
}

// Seeds for the ten-node experiment.
constexpr std::uint64_t kTenNodeWeightSeed = 1;
constexpr std::uint64_t kTenNodeNoisyWeightSeed = 0;
constexpr std::uint64_t kTenNodeNoiseSeed = 100;

Outcome ten_node() {
    const auto g = ten_node_graph();

    WeightParams wp;
    wp.w_t = -0.3;
    wp.w_p_overrides = random_leading_weights(g, 0.32, 0.34, kTenNodeWeightSeed);
    const auto net = compile_weights(g, wp);
    const auto tr = integrate_ode(net, predicted_equilibrium(net, 0).components, 0.0, 1500.0, {}, {1e-3, 10});
    const auto seq = extract_symbols(tr, ActivationKind::Smooth, net.activation_params);
    std::string cycle_text;
    bool a = false;
    std::size_t branches = 0;
    try {
        for (const auto& s : periodic_cycle(seq)) cycle_text += format_active_set(s);
        const auto bc = branch_preference_check(net, seq);
        branches = bc.size();
        a = std::all_of(bc.begin(), bc.end(), [](const BranchChoice& b) { return b.prefers_strongest; });
    } catch (const Error& e) {
        cycle_text = e.what();
    }

    auto noisy = [&](double w_t) {
        WeightParams w;
        w.w_t = w_t;
        w.w_p_overrides = random_leading_weights(g, 0.30, 0.32, kTenNodeNoisyWeightSeed);
        const auto n = compile_weights(g, w);
        const auto t = integrate_sde(n, predicted_equilibrium(n, 0).components, 0.0, 300.0, {0.01, kTenNodeNoiseSeed},
                                     {1e-3, 10});
        std::size_t largest = 0, smallest = 99;
        const auto s = extract_symbols(t, ActivationKind::Smooth, n.activation_params);
        for (const auto& e : s.events) {
            largest = std::max(largest, e.active.size());
            smallest = std::min(smallest, e.active.size());
        }
        return std::tuple{s.events.size(), smallest, largest};
    };
    const auto [n_b, min_b, max_b] = noisy(-0.3);
    const auto [n_c, min_c, max_c] = noisy(0.0);
    const bool b = n_b > 1 && min_b == 1 && max_b == 1;
    const bool c = max_c >= 2;
    return {a && b && c,
            fmt("cycle %s with %zu branch vertices preferring max w_p: %s; w_t=-0.3 noisy: %zu events, sizes %zu..%zu; "
                "w_t=0 noisy: %zu events, max size %zu",
                cycle_text.c_str(), branches, a ? "yes" : "no", n_b, min_b, max_b, n_c, max_c)};
}

Outcome determinism() {
    auto simulate = [] {
        const auto net = smooth_network(three_cycle(), SmoothParams{}, 0.3);
        const auto tr = integrate_sde(net, rest_state(net, 0), 0.0, 100.0, {0.05, 42}, {1e-3, 10});
        std::ostringstream os;
        write_trajectory_csv(os, tr);
        write_symbols_csv(os, extract_symbols(tr, ActivationKind::Smooth, net.activation_params));
        return os.str();
    };
    auto sweep = [] {
        KsSweepSpec s;
        s.t_end = 100.0;
        s.base_seed = 9;
        std::ostringstream os;
        write_sweep_csv(os, ks_sweep(s));
        return os.str();
    };
    auto graph = [] { return graph_to_json(random_constrained_graph(10, 0.2, 3, true)).dump(); };
    auto basin = [] {
        const auto net = theorem_network(three_cycle());
        const auto eqs = refine_all_templates(net);
        const auto t = basin_sample(net, eqs, 0, kDelta, 50, 5);
        std::ostringstream os;
        for (Vertex m = 0; m < 3; ++m) os << t.to_equilibrium[m] << ',';
        os << t.unlisted << ',' << t.no_convergence;
        return os.str();
    };
    const bool s = simulate() == simulate(), w = sweep() == sweep(), g = graph() == graph(), b = basin() == basin();
    return {s && w && g && b, fmt("simulate %s, sweep %s, randgraph %s, basin %s", s ? "same" : "DIFF",
                                  w ? "same" : "DIFF", g ? "same" : "DIFF", b ? "same" : "DIFF")};
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> all{
        {1, "graph realisation on 20 random graphs", realization},
        {2, "exact equilibria and spectra", exact_equilibria},
        {3, "two-cell fold value and convergence rate", lemma1},
        {4, "equilibrium pair below the fold", lemma2},
        {5, "three-cycle SNIC and period growth", snic},
        {6, "three-cycle symbolic dynamics", three_cycle_dynamics},
        {7, "y and J integrations agree", coordinates},
        {8, "Kirk-Silber routes and sweep trend", kirk_silber},
        {9, "ten-node cycle, branch choice and noise", ten_node},
        {10, "seeded reruns are bit-identical", determinism},
    };
    std::set<int> wanted;
    for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));

    int failed = 0;
    for (const auto& c : all) {
        if (!wanted.empty() && !wanted.count(c.id)) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s C%d %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
        std::fflush(stdout);
        if (!o.pass) ++failed;
    }
    return failed == 0 ? 0 : 1;
}
