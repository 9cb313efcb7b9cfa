#pragma once

// Undirected graphs and digraphs on vertices 0..n-1, their interchangeable
// representations, and the relations used to observe networks as graphs.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace observe {

using Vertex = std::uint32_t;
using VertexPair = std::pair<Vertex, Vertex>;
using VertexMap = std::vector<Vertex>;  // index -> image

// Simple undirected graph: no self-loops, no parallel edges. Edges are
// stored with the smaller endpoint first.
class Graph {
public:
    Graph() = default;
    explicit Graph(std::size_t n) : n_(n) {}
    Graph(std::size_t n, const std::vector<VertexPair>& edges);

    static Graph complete(std::size_t n);
    static Graph path(std::size_t n);
    static Graph cycle(std::size_t n);

    std::size_t order() const noexcept { return n_; }
    std::size_t size() const noexcept { return edges_.size(); }
    const std::set<VertexPair>& edges() const noexcept { return edges_; }

    // Throws Error on a self-loop, an out-of-range endpoint or a duplicate.
    void add_edge(Vertex u, Vertex v);
    bool has_edge(Vertex u, Vertex v) const;
    std::size_t degree(Vertex v) const;
    std::vector<std::size_t> degrees() const;

    // Optional vertex labels; empty or exactly one per vertex.
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    void set_labels(std::vector<std::string> labels);

    // Vertex v of the result is vertex perm^-1(v) here, i.e. u -> perm[u].
    Graph relabeled(const VertexMap& perm) const;

    bool operator==(const Graph&) const = default;

private:
    std::size_t n_ = 0;
    std::set<VertexPair> edges_;
    std::vector<std::string> labels_;
};

// Directed graph; self-loops only when allowed at construction.
class Digraph {
public:
    Digraph() = default;
    explicit Digraph(std::size_t n, bool allow_self_loops = false) : n_(n), loops_(allow_self_loops) {}
    Digraph(std::size_t n, const std::vector<VertexPair>& arcs, bool allow_self_loops = false);

    std::size_t order() const noexcept { return n_; }
    std::size_t size() const noexcept { return arcs_.size(); }
    bool allows_self_loops() const noexcept { return loops_; }
    const std::set<VertexPair>& arcs() const noexcept { return arcs_; }

    void add_arc(Vertex u, Vertex v);
    bool has_arc(Vertex u, Vertex v) const { return arcs_.contains({u, v}); }
    std::size_t out_degree(Vertex v) const;
    std::size_t in_degree(Vertex v) const;

    const std::vector<std::string>& labels() const noexcept { return labels_; }
    void set_labels(std::vector<std::string> labels);

    Digraph relabeled(const VertexMap& perm) const;

    // Undirected shadow (arc direction dropped, loops removed).
    Graph underlying() const;

    bool operator==(const Digraph&) const = default;

private:
    std::size_t n_ = 0;
    bool loops_ = false;
    std::set<VertexPair> arcs_;
    std::vector<std::string> labels_;
};

// ---- Representations --------------------------------------------------------

struct EdgeList {
    std::size_t n = 0;
    std::vector<VertexPair> edges;
    std::vector<std::string> labels;

    bool operator==(const EdgeList&) const = default;
};

struct AdjacencyList {
    std::vector<std::vector<Vertex>> neighbours;  // sorted per vertex
    std::vector<std::string> labels;

    bool operator==(const AdjacencyList&) const = default;
};

class AdjacencyMatrix {
public:
    AdjacencyMatrix() = default;
    explicit AdjacencyMatrix(std::size_t n) : n_(n), bits_(n * n, 0) {}

    std::size_t order() const noexcept { return n_; }
    bool at(std::size_t i, std::size_t j) const { return bits_[i * n_ + j] != 0; }
    void set(std::size_t i, std::size_t j, bool value = true) { bits_[i * n_ + j] = value ? 1 : 0; }
    bool symmetric_with_zero_diagonal() const;

    std::vector<std::string> labels;

    bool operator==(const AdjacencyMatrix&) const = default;

private:
    std::size_t n_ = 0;
    std::vector<std::uint8_t> bits_;
};

EdgeList to_edge_list(const Graph& g);
AdjacencyList to_adjacency_list(const Graph& g);
AdjacencyMatrix to_adjacency_matrix(const Graph& g);

// Each throws Error when the representation does not describe a simple
// undirected graph (asymmetric matrix, one-sided adjacency, loops, ...).
Graph from_edge_list(const EdgeList& list);
Graph from_adjacency_list(const AdjacencyList& list);
Graph from_adjacency_matrix(const AdjacencyMatrix& m);

// ---- graph6 -------------------------------------------------------------------

inline constexpr std::size_t kGraph6MaxOrder = 62;

// Short form only: one size byte n+63, then the upper triangle column by
// column (x(0,1) x(0,2) x(1,2) x(0,3) ...), six bits per printable byte.
std::string encode_graph6(const Graph& g);

// Throws Error on a size byte out of range, a byte outside 63..126, a wrong
// length, or non-zero padding bits.
Graph decode_graph6(std::string_view code);

// 1 + ceil(n(n-1)/12) characters.
std::size_t graph6_length(std::size_t n);

// ---- Relations ----------------------------------------------------------------

inline constexpr std::size_t kIsomorphismCap = 10;
inline constexpr std::size_t kSubgraphCap = 8;

// Lexicographically first bijection phi with {u,v} in E1 <=> {phi(u),phi(v)}
// in E2. Throws CapExceeded above kIsomorphismCap vertices.
std::optional<VertexMap> are_isomorphic(const Graph& a, const Graph& b);

// Lexicographically first injection sending every edge of `small` to an edge
// of `big` (not necessarily induced). Throws CapExceeded when small has more
// than kSubgraphCap vertices.
std::optional<VertexMap> is_subgraph(const Graph& small, const Graph& big);

// ---- Automata -----------------------------------------------------------------

// Deterministic finite automaton without input: every state has exactly one
// successor.
struct Automaton {
    std::vector<std::string> states;
    std::vector<std::size_t> successor;

    // Throws Error unless successor is total and in range.
    void validate() const;
};

// "a -> b" per line; states are numbered by first appearance.
Automaton read_automaton(std::istream& in);

// One vertex per state, one arc x -> S(x) per state (self-loops allowed).
Digraph state_space_graph(const Automaton& a);

// ---- Random graphs ------------------------------------------------------------

// Each of the n(n-1)/2 pairs independently with probability p. Uses
// std::mt19937_64 and a 53-bit uniform draw, so output is identical on every
// platform for a given seed.
Graph er_random_graph(std::size_t n, double p, std::uint64_t seed);

std::vector<std::vector<Vertex>> connected_components(const Graph& g);
std::size_t largest_component_size(const Graph& g);

struct PercolationPoint {
    double p = 0.0;
    double mean_fraction = 0.0;
};

// For each p, the mean over `trials` graphs of |largest component| / n. Trial
// t uses seed + t.
std::vector<PercolationPoint> percolation_sweep(std::size_t n, const std::vector<double>& p_values,
                                                std::size_t trials, std::uint64_t seed);

// `count` evenly spaced values from `from` to `to` inclusive.
std::vector<double> linspace(double from, double to, std::size_t count);

// ---- Text formats -------------------------------------------------------------

// `graph N` or `digraph N` header, then `u v` per edge or arc. Optional
// `label v text` lines attach vertex labels. `#` starts a comment.
struct GraphFile {
    bool directed = false;
    Graph graph;
    Digraph digraph;
};

GraphFile read_graph_file(std::istream& in);
GraphFile load_graph_file(const std::string& path);
void write_graph_file(std::ostream& out, const Graph& g);
void write_graph_file(std::ostream& out, const Digraph& g);

void write_adjacency_list(std::ostream& out, const AdjacencyList& list);
void write_adjacency_matrix(std::ostream& out, const AdjacencyMatrix& m);

}  // namespace observe
