#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "exnet/analysis.hpp"
#include "exnet/bifurcation.hpp"
#include "exnet/excitability.hpp"
#include "exnet/graph.hpp"

namespace exnet {

using json = nlohmann::json;

/// {"n": int, "edges": [[i, j], ...]} with 1-based vertices. Structural
/// problems (bad indices, wrong types) throw ParseError; graph constraints
/// are left to validate_constraints.
DirectedGraph graph_from_json(const json& j);
json graph_to_json(const DirectedGraph& g);
DirectedGraph load_graph(const std::filesystem::path& path);

json read_json_file(const std::filesystem::path& path);

json to_json(const ConstraintReport& r);
json to_json(const CompiledNetwork& net);
json to_json(const Equilibrium& eq);
json to_json(const ConnectionResult& r);
json to_json(const RealizationReport& r);
json to_json(const FoldResult& f);

/// Shortest round-trip representation with 17 significant digits.
std::string format_double(double v);

/// Writes "t,<prefix>1,...,<prefix>N" then one row per sample.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj, const std::string& prefix = "y");

/// "t_enter,active_set,duration".
void write_symbols_csv(std::ostream& os, const SymbolSequence& seq);

/// "w_t,w_p,ratio,n_p3,n_p4,n_p34,seed"; empty cells leave ratio blank.
void write_sweep_csv(std::ostream& os, const SweepGrid& grid);

struct ScanRow {
    std::string param;
    double value = 0.0;
    bool verdict = false;
    double aux = 0.0;
};

/// "param,value,verdict,aux" with verdict written as 0/1.
void write_scan_csv(std::ostream& os, const std::vector<ScanRow>& rows);

/// One column per cell holding phi(y_j), one row per sample.
void write_raster_csv(std::ostream& os, const Trajectory& traj, ActivationKind kind, const ActivationParams& p);

/// Header comment line "# config: <compact json>".
void write_config_comment(std::ostream& os, const json& config);

}  // namespace exnet
