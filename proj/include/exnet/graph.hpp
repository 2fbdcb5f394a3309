#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string_view>
#include <vector>

namespace exnet {

/// Vertex indices are 0-based inside the library. File formats and the CLI
/// use 1-based labels; conversion happens only at the I/O boundary.
using Vertex = std::size_t;

struct Edge {
    Vertex from;
    Vertex to;

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Directed graph stored as a dense 0/1 adjacency matrix; adjacent(i, j)
/// is true iff there is an edge i -> j.
class DirectedGraph {
public:
    DirectedGraph() = default;
    explicit DirectedGraph(std::size_t n);
    DirectedGraph(std::size_t n, const std::vector<Edge>& edges);

    std::size_t size() const noexcept { return n_; }

    bool adjacent(Vertex i, Vertex j) const { return adj_[i * n_ + j] != 0; }
    void set_edge(Vertex i, Vertex j, bool present = true);

    std::size_t out_degree(Vertex v) const;
    std::size_t in_degree(Vertex v) const;
    std::vector<Vertex> successors(Vertex v) const;
    std::vector<Edge> edges() const;
    std::size_t edge_count() const;

    friend bool operator==(const DirectedGraph&, const DirectedGraph&) = default;

private:
    std::size_t n_ = 0;
    std::vector<std::uint8_t> adj_;
};

enum class ViolationKind { OneLoop, TwoLoop, DeltaClique, Sink };

std::string_view to_string(ViolationKind kind);

struct Violation {
    ViolationKind kind;
    std::vector<Vertex> vertices;
};

struct ConstraintReport {
    std::vector<Violation> violations;

    bool valid() const noexcept { return violations.empty(); }
};

/// Reports every one-loop, two-loop ({i,j} once, i < j) and Delta-clique
/// (ordered triple i->j, i->k, j->k); sinks only when requested.
ConstraintReport validate_constraints(const DirectedGraph& g, bool require_no_sink = false);

enum class CellRole { Active, Leading, Trailing, Disconnected };

std::string_view to_string(CellRole role);

/// Role of every cell at the equilibrium encoding vertex k.
/// Throws ConstraintViolation for graphs where the labelling is ambiguous.
std::vector<CellRole> classify_vertex_roles(const DirectedGraph& g, Vertex k);

enum class TransitionCellType { AT, LA, DD, TD, LD, TL, DT, DL };

std::string_view to_string(TransitionCellType type);

/// How every cell changes role during the transition k -> l.
std::vector<TransitionCellType> classify_transition_cells(const DirectedGraph& g, Vertex k,
                                                          Vertex l);

/**
 * Random graph satisfying the construction constraints.
 *
 * Candidate ordered pairs are shuffled and accepted greedily whenever the
 * new edge keeps the graph free of one-loops, two-loops and Delta-cliques,
 * until round(edge_prob * n * (n - 1)) edges are placed or candidates run
 * out. Only the sink-freedom requirement causes a whole graph to be
 * rejected and redrawn; after max_rounds rejections GenerationFailed is
 * thrown. Output is a pure function of (n, edge_prob, seed, flag).
 */
DirectedGraph random_constrained_graph(std::size_t n, double edge_prob, std::uint64_t seed,
                                       bool require_no_sink, int max_rounds = 10000);

}  // namespace exnet
