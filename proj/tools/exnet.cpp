// exnet: command-line front end.
//
// Exit codes: 0 success / true, 1 domain-negative result, 2 usage or I/O error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "exnet/analysis.hpp"
#include "exnet/bifurcation.hpp"
#include "exnet/config.hpp"
#include "exnet/dynamics.hpp"
#include "exnet/equilibria.hpp"
#include "exnet/error.hpp"
#include "exnet/excitability.hpp"
#include "exnet/io.hpp"

namespace fs = std::filesystem;
using namespace exnet;

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CommonFlags {
    std::string graph;
    std::string config;
    std::optional<double> delta, wp, wt, sigma, dt, T;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> activation;
    std::string out;
    bool jcoords = false;
    bool strict = false;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--graph", f.graph, "Graph JSON file");
    cmd->add_option("--config", f.config, "Run config JSON file");
    cmd->add_option("--delta", f.delta, "Apply the theorem parameter recipe for this delta");
    cmd->add_option("--wp", f.wp, "Leading weight w_p");
    cmd->add_option("--wt", f.wt, "Disconnected weight w_t");
    cmd->add_option("--sigma", f.sigma, "Noise amplitude");
    cmd->add_option("--seed", f.seed, "Random seed");
    cmd->add_option("--dt", f.dt, "Time step");
    cmd->add_option("--T", f.T, "Integration horizon");
    cmd->add_option("--activation", f.activation, "smooth | piecewise")
        ->check(CLI::IsMember({"smooth", "piecewise"}));
    cmd->add_option("--out", f.out, "Output file (default stdout)");
    cmd->add_flag("--jcoords", f.jcoords, "Use J = phi(y) coordinates");
    cmd->add_flag("--strict", f.strict, "Treat sinks as violations");
}

RunConfig resolve(const CommonFlags& f, bool need_graph = true) {
    json j = json::object();
    fs::path base;
    if (!f.config.empty()) {
        j = read_json_file(f.config);
        if (!j.is_object()) throw Error(ErrorKind::ParseError, "config must be a JSON object");
        base = fs::path(f.config).parent_path();
    }
    if (!f.graph.empty()) {
        j["graph"] = graph_to_json(load_graph(f.graph));
        j["graph_file"] = f.graph;
    }
    if (need_graph && !j.contains("graph") && !j.contains("random_graph"))
        throw UsageError("a graph is required (--graph or --config)");
    if (f.delta) j["delta"] = *f.delta;
    if (f.wp) j["w_p"] = *f.wp;
    if (f.wt) j["w_t"] = *f.wt;
    if (f.sigma) j["sigma"] = *f.sigma;
    if (f.seed) j["seed"] = *f.seed;
    if (f.dt) j["dt"] = *f.dt;
    if (f.T) j["T"] = *f.T;
    if (f.activation) j["activation"] = *f.activation;
    if (f.jcoords) j["jcoords"] = true;
    return config_from_json(j, base);
}

void emit(const std::string& path, const std::function<void(std::ostream&)>& body) {
    if (path.empty() || path == "-") {
        body(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error(ErrorKind::ParseError, "cannot write " + path);
    body(os);
    if (!os) throw Error(ErrorKind::ParseError, "write failed for " + path);
}

void emit_json(const std::string& path, const json& j) {
    emit(path, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
}

int cmd_validate(const CommonFlags& f) {
    if (f.graph.empty()) throw UsageError("validate needs --graph");
    const auto g = load_graph(f.graph);
    const auto report = validate_constraints(g, f.strict);
    emit_json(f.out, to_json(report));
    return report.valid() ? kOk : kNegative;
}

int cmd_compile(const CommonFlags& f, const std::string& format) {
    const auto cfg = resolve(f);
    const auto net = cfg.compile();
    if (format == "csv") {
        emit(f.out, [&](std::ostream& os) {
            write_config_comment(os, cfg.to_json());
            for (Eigen::Index i = 0; i < net.weights.rows(); ++i) {
                for (Eigen::Index k = 0; k < net.weights.cols(); ++k)
                    os << (k ? "," : "") << format_double(net.weights(i, k));
                os << '\n';
            }
        });
    } else {
        auto j = to_json(net);
        j["config"] = cfg.to_json();
        emit_json(f.out, j);
    }
    return kOk;
}

int cmd_simulate(const CommonFlags& f, const std::string& symbols_path, std::size_t stride_flag) {
    auto cfg = resolve(f);
    if (stride_flag) cfg.stride = stride_flag;
    const auto net = cfg.compile();
    const Vector y0 = rest_state(net, cfg.start_vertex);
    const IntegrationOptions io{cfg.dt, cfg.stride};

    Trajectory traj;
    Trajectory shown;
    std::string prefix = "y";
    if (cfg.sigma > 0) {
        traj = integrate_sde(net, y0, 0.0, cfg.T, NoiseSpec{cfg.sigma, cfg.seed}, io);
    } else if (cfg.jcoords && cfg.activation == ActivationKind::Smooth) {
        shown = integrate_J(net, y_to_J(cfg.activation_params, y0), 0.0, cfg.T, io);
        traj = Trajectory(shown.dim());
        for (std::size_t i = 0; i < shown.size(); ++i)
            traj.push(shown.time(i), J_to_y(cfg.activation_params, shown.state(i)));
    } else {
        traj = integrate_ode(net, y0, 0.0, cfg.T, {}, io);
    }
    if (cfg.jcoords) {
        prefix = "J";
        if (shown.empty()) {
            shown = Trajectory(traj.dim());
            for (std::size_t i = 0; i < traj.size(); ++i) {
                Vector J(traj.dim());
                for (std::size_t c = 0; c < traj.dim(); ++c)
                    J[static_cast<Eigen::Index>(c)] = phi(cfg.activation, cfg.activation_params, traj.value(i, c));
                shown.push(traj.time(i), J);
            }
        }
    }

    const auto echo = cfg.to_json();
    emit(f.out, [&](std::ostream& os) {
        write_config_comment(os, echo);
        write_trajectory_csv(os, cfg.jcoords ? shown : traj, prefix);
    });
    if (!symbols_path.empty()) {
        const auto seq = extract_symbols(traj, cfg.activation, cfg.activation_params);
        emit(symbols_path, [&](std::ostream& os) {
            write_config_comment(os, echo);
            write_symbols_csv(os, seq);
        });
    }
    return kOk;
}

int cmd_verify(const CommonFlags& f, std::size_t angles, std::size_t radii) {
    if (f.config.empty() && f.graph.empty()) throw UsageError("verify needs --config or --graph");
    auto cfg = resolve(f);
    if (!cfg.delta) throw UsageError("verify needs a perturbation amplitude (--delta or \"delta\" in the config)");
    if (f.strict) {
        const auto report = validate_constraints(cfg.graph, true);
        if (!report.valid()) {
            json j{{"verdict", false}, {"constraints", to_json(report)}, {"config", cfg.to_json()}};
            emit_json(f.out, j);
            return kNegative;
        }
    }
    const auto net = cfg.compile();
    RealizationOptions ro;
    ro.connection.dt = cfg.dt;
    ro.probe_angles = angles;
    ro.probe_radii = radii;
    const auto report = realize_graph_check(net, *cfg.delta, ro);
    auto j = to_json(report);
    j["config"] = cfg.to_json();
    emit_json(f.out, j);
    for (const auto& msg : report.failures) std::cerr << "fail: " << msg << '\n';
    return report.verdict ? kOk : kNegative;
}

// Existence verdict along the bracket. aux counts stable vertex equilibria
// (fold2, snic3) or solutions of the exit equations (ksexit).
std::vector<ScanRow> existence_scan(const std::string& which, const SmoothParams& p, double lo, double hi,
                                    std::size_t points, double dw) {
    std::vector<ScanRow> rows;
    for (std::size_t i = 0; i < points; ++i) {
        const double wp = points == 1 ? lo : lo + (hi - lo) * double(i) / double(points - 1);
        ScanRow row{"w_p", wp, false, 0.0};
        if (which == "ksexit") {
            const auto sols = ks_exit_equilibria(wp + dw, wp, p.w_t, p.epsilon, p.theta, p.w_s);
            std::size_t low = 0;
            for (const auto& s : sols) low += s.low ? 1 : 0;
            row.verdict = low > 0;
            row.aux = double(sols.size());
        } else {
            const auto g = which == "fold2" ? DirectedGraph(2, {{0, 1}}) : DirectedGraph(3, {{0, 1}, {1, 2}, {2, 0}});
            const auto net = smooth_network(g, p, wp);
            const std::size_t checked = which == "fold2" ? 1 : net.size();
            std::size_t found = 0;
            for (Vertex k = 0; k < checked; ++k) found += vertex_equilibrium_exists(net, k) ? 1 : 0;
            row.verdict = found == checked;
            row.aux = double(found);
        }
        rows.push_back(row);
    }
    return rows;
}

int cmd_bifurcate(const CommonFlags& f, const std::string& which, double lo, double hi, double tol, double dw,
                  std::size_t scan_points, const std::string& scan_out) {
    auto cfg = resolve(f, false);
    SmoothParams p{cfg.activation_params.epsilon, cfg.activation_params.theta, cfg.weights.w_s, cfg.weights.w_m,
                   cfg.weights.w_t};
    cfg.options["which"] = which;
    cfg.options["bracket"] = {lo, hi};
    cfg.options["tol"] = tol;
    json j;
    if (which == "fold2") {
        j["result"] = to_json(find_fold_2node(p, lo, hi, tol));
        j["asymptotic"] = wp_sn_asymptotic(p.epsilon, p.theta, p.w_s);
        j["nullcline"] = wp_sn_nullcline(p.epsilon, p.theta, p.w_s);
    } else if (which == "snic3") {
        j["result"] = to_json(snic_locate_3cycle(p, lo, hi, tol));
    } else {
        cfg.options["delta_w"] = dw;
        j["result"] = to_json(ks_exit_boundary(p.w_t, dw, p, lo, hi, tol));
    }
    j["config"] = cfg.to_json();
    if (scan_points > 0) {
        const auto rows = existence_scan(which, p, lo, hi, scan_points, dw);
        emit(scan_out, [&](std::ostream& os) {
            write_config_comment(os, j["config"]);
            write_scan_csv(os, rows);
        });
    }
    emit_json(f.out, j);
    return kOk;
}

KsSweepSpec sweep_spec(const json& o) {
    KsSweepSpec s;
    auto rd = [&](const char* key, auto& dst) {
        if (o.contains(key)) dst = o.at(key).get<std::decay_t<decltype(dst)>>();
    };
    rd("w_t_min", s.w_t_min);
    rd("w_t_max", s.w_t_max);
    rd("w_t_steps", s.w_t_steps);
    rd("w_p_min", s.w_p_min);
    rd("w_p_max", s.w_p_max);
    rd("w_p_steps", s.w_p_steps);
    rd("delta_w", s.delta_w);
    rd("sigma", s.sigma);
    rd("reps", s.reps);
    rd("t_end", s.t_end);
    rd("base_seed", s.base_seed);
    rd("dt", s.dt);
    rd("w_s", s.w_s);
    rd("w_m", s.w_m);
    return s;
}

json sweep_json(const KsSweepSpec& s) {
    return {{"w_t_min", s.w_t_min},     {"w_t_max", s.w_t_max}, {"w_t_steps", s.w_t_steps},
            {"w_p_min", s.w_p_min},     {"w_p_max", s.w_p_max}, {"w_p_steps", s.w_p_steps},
            {"delta_w", s.delta_w},     {"sigma", s.sigma},     {"reps", s.reps},
            {"t_end", s.t_end},         {"base_seed", s.base_seed}, {"dt", s.dt},
            {"w_s", s.w_s},             {"w_m", s.w_m}};
}

int cmd_sweep(const CommonFlags& f) {
    auto cfg = resolve(f, false);
    auto spec = sweep_spec(cfg.options.value("sweep", json::object()));
    if (f.sigma) spec.sigma = *f.sigma;
    if (f.seed) spec.base_seed = *f.seed;
    if (f.dt) spec.dt = *f.dt;
    if (f.T) spec.t_end = *f.T;
    // Self and inhibitory weights come from the sweep block; the generic
    // w_m default belongs to the theorem networks, not Kirk-Silber.
    spec.activation = cfg.activation_params;
    cfg.options["sweep"] = sweep_json(spec);
    const auto grid = ks_sweep(spec);
    emit(f.out, [&](std::ostream& os) {
        write_config_comment(os, cfg.to_json());
        write_sweep_csv(os, grid);
    });
    return kOk;
}

int cmd_randgraph(const std::string& out, std::size_t n, double p, std::uint64_t seed, bool no_sink) {
    const auto g = random_constrained_graph(n, p, seed, no_sink);
    auto j = graph_to_json(g);
    j["generator"] = {{"n", n}, {"p", p}, {"seed", seed}, {"no_sink", no_sink}};
    emit_json(out, j);
    return kOk;
}

int cmd_equilibria(const CommonFlags& f) {
    const auto cfg = resolve(f);
    const auto net = cfg.compile();
    json eqs = json::array();
    bool all_stable = true;
    for (Vertex k = 0; k < net.size(); ++k) {
        const auto eq = refine_equilibrium(net, predicted_equilibrium(net, k).components, {}, k);
        all_stable = all_stable && eq.converged && eq.stability == Stability::Stable;
        eqs.push_back(to_json(eq));
    }
    emit_json(f.out, {{"equilibria", eqs}, {"config", cfg.to_json()}});
    return all_stable ? kOk : kNegative;
}

int exit_code_for(const Error& e) {
    switch (e.kind()) {
        case ErrorKind::ParseError:
        case ErrorKind::DimensionMismatch:
            return kUsage;
        default:
            return kNegative;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Excitable network attractors in CTRNNs"};
    app.require_subcommand(1);

    CommonFlags f;

    auto* validate = app.add_subcommand("validate", "Check graph constraints");
    add_common(validate, f);

    std::string format = "json";
    auto* compile = app.add_subcommand("compile", "Print the compiled weight matrix");
    add_common(compile, f);
    compile->add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));

    std::string symbols;
    std::size_t stride = 0;
    auto* simulate = app.add_subcommand("simulate", "Integrate from the start vertex's rest state");
    add_common(simulate, f);
    simulate->add_option("--symbols", symbols, "Also write the symbol sequence CSV here");
    simulate->add_option("--stride", stride, "Record every n-th step");

    std::size_t angles = 8, radii = 5;
    auto* verify = app.add_subcommand("verify", "Check that the network realises its graph");
    add_common(verify, f);
    verify->add_option("--probe-angles", angles, "Probe directions per non-edge plane");
    verify->add_option("--probe-radii", radii, "Probe radii per direction");

    std::string which = "fold2";
    double lo = 0.29, hi = 0.32, tol = 1e-6, dw = 0.002;
    auto* bifurcate = app.add_subcommand("bifurcate", "Locate a fold in w_p");
    add_common(bifurcate, f);
    bifurcate->add_option("--which", which, "fold2 | snic3 | ksexit")->check(CLI::IsMember({"fold2", "snic3", "ksexit"}));
    bifurcate->add_option("--lo", lo, "Lower end of the w_p bracket");
    bifurcate->add_option("--hi", hi, "Upper end of the w_p bracket");
    bifurcate->add_option("--tol", tol, "Bracket width at which bisection stops");
    bifurcate->add_option("--dw", dw, "Kirk-Silber weight offset on edge 2->3");
    std::size_t scan_points = 0;
    std::string scan_out;
    bifurcate->add_option("--scan-points", scan_points, "Also write an existence scan over the bracket");
    bifurcate->add_option("--scan-out", scan_out, "Scan CSV path (default stdout)");

    auto* sweep = app.add_subcommand("sweep", "Kirk-Silber exit-statistics sweep over (w_t, w_p)");
    add_common(sweep, f);

    std::size_t n = 10;
    double p = 0.3;
    std::uint64_t gseed = 0;
    bool no_sink = false;
    std::string gout;
    auto* randgraph = app.add_subcommand("randgraph", "Draw a random constrained graph");
    randgraph->add_option("--n", n, "Number of vertices");
    randgraph->add_option("--p", p, "Target edge density");
    randgraph->add_option("--seed", gseed, "Random seed");
    randgraph->add_flag("--no-sink", no_sink, "Require every vertex to have an out-edge");
    randgraph->add_option("--out", gout, "Output file (default stdout)");

    auto* equilibria = app.add_subcommand("equilibria", "Refine every vertex equilibrium");
    add_common(equilibria, f);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*validate) return cmd_validate(f);
        if (*compile) return cmd_compile(f, format);
        if (*simulate) return cmd_simulate(f, symbols, stride);
        if (*verify) return cmd_verify(f, angles, radii);
        if (*bifurcate) return cmd_bifurcate(f, which, lo, hi, tol, dw, scan_points, scan_out);
        if (*sweep) return cmd_sweep(f);
        if (*randgraph) return cmd_randgraph(gout, n, p, gseed, no_sink);
        if (*equilibria) return cmd_equilibria(f);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
