#include "exnet/graph.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "exnet/error.hpp"

namespace exnet {

DirectedGraph::DirectedGraph(std::size_t n) : n_(n), adj_(n * n, 0) {}

DirectedGraph::DirectedGraph(std::size_t n, const std::vector<Edge>& edges) : DirectedGraph(n) {
    for (const auto& e : edges) set_edge(e.from, e.to);
}

void DirectedGraph::set_edge(Vertex i, Vertex j, bool present) {
    if (i >= n_ || j >= n_) {
        throw Error(ErrorKind::DimensionMismatch,
                    "edge (" + std::to_string(i) + "," + std::to_string(j) + ") outside graph of size " +
                        std::to_string(n_));
    }
    adj_[i * n_ + j] = present ? 1 : 0;
}

std::size_t DirectedGraph::out_degree(Vertex v) const {
    std::size_t d = 0;
    for (Vertex j = 0; j < n_; ++j) d += adjacent(v, j);
    return d;
}

std::size_t DirectedGraph::in_degree(Vertex v) const {
    std::size_t d = 0;
    for (Vertex i = 0; i < n_; ++i) d += adjacent(i, v);
    return d;
}

std::vector<Vertex> DirectedGraph::successors(Vertex v) const {
    std::vector<Vertex> out;
    for (Vertex j = 0; j < n_; ++j)
        if (adjacent(v, j)) out.push_back(j);
    return out;
}

std::vector<Edge> DirectedGraph::edges() const {
    std::vector<Edge> out;
    for (Vertex i = 0; i < n_; ++i)
        for (Vertex j = 0; j < n_; ++j)
            if (adjacent(i, j)) out.push_back({i, j});
    return out;
}

std::size_t DirectedGraph::edge_count() const {
    return static_cast<std::size_t>(std::count(adj_.begin(), adj_.end(), std::uint8_t{1}));
}

std::string_view to_string(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::OneLoop: return "OneLoop";
        case ViolationKind::TwoLoop: return "TwoLoop";
        case ViolationKind::DeltaClique: return "DeltaClique";
        case ViolationKind::Sink: return "Sink";
    }
    return "?";
}

std::string_view to_string(CellRole role) {
    switch (role) {
        case CellRole::Active: return "Active";
        case CellRole::Leading: return "Leading";
        case CellRole::Trailing: return "Trailing";
        case CellRole::Disconnected: return "Disconnected";
    }
    return "?";
}

std::string_view to_string(TransitionCellType type) {
    switch (type) {
        case TransitionCellType::AT: return "AT";
        case TransitionCellType::LA: return "LA";
        case TransitionCellType::DD: return "DD";
        case TransitionCellType::TD: return "TD";
        case TransitionCellType::LD: return "LD";
        case TransitionCellType::TL: return "TL";
        case TransitionCellType::DT: return "DT";
        case TransitionCellType::DL: return "DL";
    }
    return "?";
}

ConstraintReport validate_constraints(const DirectedGraph& g, bool require_no_sink) {
    ConstraintReport report;
    const std::size_t n = g.size();
    for (Vertex i = 0; i < n; ++i)
        if (g.adjacent(i, i)) report.violations.push_back({ViolationKind::OneLoop, {i}});
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = i + 1; j < n; ++j)
            if (g.adjacent(i, j) && g.adjacent(j, i))
                report.violations.push_back({ViolationKind::TwoLoop, {i, j}});
    // Plain O(n^3) scan; graphs here have at most a few hundred vertices.
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = 0; j < n; ++j) {
            if (j == i || !g.adjacent(i, j)) continue;
            for (Vertex k = 0; k < n; ++k) {
                if (k == i || k == j) continue;
                if (g.adjacent(i, k) && g.adjacent(j, k))
                    report.violations.push_back({ViolationKind::DeltaClique, {i, j, k}});
            }
        }
    if (require_no_sink)
        for (Vertex i = 0; i < n; ++i)
            if (g.out_degree(i) == 0) report.violations.push_back({ViolationKind::Sink, {i}});
    return report;
}

namespace {

void require_valid(const DirectedGraph& g) {
    const auto report = validate_constraints(g, false);
    if (!report.valid()) {
        throw Error(ErrorKind::ConstraintViolation,
                    std::to_string(report.violations.size()) + " constraint violation(s), first is " +
                        std::string(to_string(report.violations.front().kind)));
    }
}

void require_vertex(const DirectedGraph& g, Vertex v) {
    if (v >= g.size())
        throw Error(ErrorKind::DimensionMismatch,
                    "vertex " + std::to_string(v) + " outside graph of size " + std::to_string(g.size()));
}

}  // namespace

std::vector<CellRole> classify_vertex_roles(const DirectedGraph& g, Vertex k) {
    require_vertex(g, k);
    require_valid(g);
    std::vector<CellRole> roles(g.size(), CellRole::Disconnected);
    for (Vertex j = 0; j < g.size(); ++j) {
        if (j == k)
            roles[j] = CellRole::Active;
        else if (g.adjacent(k, j))
            roles[j] = CellRole::Leading;
        else if (g.adjacent(j, k))
            roles[j] = CellRole::Trailing;
    }
    return roles;
}

std::vector<TransitionCellType> classify_transition_cells(const DirectedGraph& g, Vertex k, Vertex l) {
    require_vertex(g, k);
    require_vertex(g, l);
    if (!g.adjacent(k, l))
        throw Error(ErrorKind::NotAnEdge,
                    "no edge " + std::to_string(k + 1) + "->" + std::to_string(l + 1));
    require_valid(g);

    std::vector<TransitionCellType> types(g.size(), TransitionCellType::DD);
    for (Vertex j = 0; j < g.size(); ++j) {
        if (j == k) {
            types[j] = TransitionCellType::AT;
            continue;
        }
        if (j == l) {
            types[j] = TransitionCellType::LA;
            continue;
        }
        const bool jk = g.adjacent(j, k), kj = g.adjacent(k, j);
        const bool jl = g.adjacent(j, l), lj = g.adjacent(l, j);
        const int code = (jk << 3) | (kj << 2) | (jl << 1) | lj;
        switch (code) {
            case 0b0000: types[j] = TransitionCellType::DD; break;
            case 0b1000: types[j] = TransitionCellType::TD; break;
            case 0b0100: types[j] = TransitionCellType::LD; break;
            case 0b1001: types[j] = TransitionCellType::TL; break;
            case 0b0010: types[j] = TransitionCellType::DT; break;
            case 0b0001: types[j] = TransitionCellType::DL; break;
            default:
                throw Error(ErrorKind::Unclassifiable,
                            "cell " + std::to_string(j + 1) + " has forbidden adjacency pattern");
        }
    }
    return types;
}

namespace {

// True if adding u -> v to g creates a one-loop, two-loop or Delta-clique.
bool edge_breaks_constraints(const DirectedGraph& g, Vertex u, Vertex v) {
    if (u == v || g.adjacent(v, u)) return true;
    for (Vertex w = 0; w < g.size(); ++w) {
        if (w == u || w == v) continue;
        // The new edge can play any of the three roles in i->j, i->k, j->k.
        if (g.adjacent(u, w) && g.adjacent(w, v)) return true;
        if (g.adjacent(v, w) && g.adjacent(u, w)) return true;
        if (g.adjacent(w, u) && g.adjacent(w, v)) return true;
    }
    return false;
}

}  // namespace

DirectedGraph random_constrained_graph(std::size_t n, double edge_prob, std::uint64_t seed,
                                       bool require_no_sink, int max_rounds) {
    if (n < 2) throw Error(ErrorKind::DomainError, "random graphs need n >= 2");
    if (!(edge_prob > 0.0 && edge_prob < 1.0))
        throw Error(ErrorKind::DomainError, "edge probability must lie in (0,1)");

    std::mt19937_64 rng(seed);
    std::vector<Edge> candidates;
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = 0; j < n; ++j)
            if (i != j) candidates.push_back({i, j});
    const auto target = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::lround(edge_prob * static_cast<double>(candidates.size()))));

    for (int round = 0; round < max_rounds; ++round) {
        std::shuffle(candidates.begin(), candidates.end(), rng);
        DirectedGraph g(n);
        std::size_t placed = 0;
        for (const auto& e : candidates) {
            if (placed == target) break;
            if (edge_breaks_constraints(g, e.from, e.to)) continue;
            g.set_edge(e.from, e.to);
            ++placed;
        }
        if (require_no_sink) {
            // Density alone can leave sinks (e.g. n = 3 with two edges); give each one a legal out-edge.
            for (const auto& e : candidates) {
                if (g.out_degree(e.from) > 0 || edge_breaks_constraints(g, e.from, e.to)) continue;
                g.set_edge(e.from, e.to);
            }
        }
        if (!require_no_sink || validate_constraints(g, true).valid()) return g;
    }
    throw Error(ErrorKind::GenerationFailed,
                "no sink-free graph after " + std::to_string(max_rounds) + " attempts");
}

}  // namespace exnet
