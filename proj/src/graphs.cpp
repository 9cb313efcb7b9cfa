#include "observe/graphs.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <queue>
#include <random>
#include <sstream>

#include "observe/error.hpp"

namespace observe {

namespace {

void check_vertex(std::size_t n, Vertex v) {
    if (v >= n) throw Error("vertex " + std::to_string(v) + " out of range for order " + std::to_string(n));
}

void check_labels(std::size_t n, const std::vector<std::string>& labels) {
    if (!labels.empty() && labels.size() != n)
        throw Error("expected " + std::to_string(n) + " vertex labels, got " + std::to_string(labels.size()));
}

void check_perm(std::size_t n, const VertexMap& perm) {
    if (perm.size() != n) throw Error("permutation has wrong length");
    std::vector<bool> seen(n, false);
    for (Vertex v : perm) {
        check_vertex(n, v);
        if (seen[v]) throw Error("not a permutation");
        seen[v] = true;
    }
}

}  // namespace

// ---- Graph ----------------------------------------------------------------------

Graph::Graph(std::size_t n, const std::vector<VertexPair>& edges) : n_(n) {
    for (auto [u, v] : edges) add_edge(u, v);
}

Graph Graph::complete(std::size_t n) {
    Graph g(n);
    for (Vertex j = 1; j < n; ++j)
        for (Vertex i = 0; i < j; ++i) g.add_edge(i, j);
    return g;
}

Graph Graph::path(std::size_t n) {
    Graph g(n);
    for (Vertex i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

Graph Graph::cycle(std::size_t n) {
    if (n < 3) throw Error("a cycle needs at least 3 vertices");
    Graph g = path(n);
    g.add_edge(0, static_cast<Vertex>(n - 1));
    return g;
}

void Graph::add_edge(Vertex u, Vertex v) {
    check_vertex(n_, u);
    check_vertex(n_, v);
    if (u == v) throw Error("self-loop at vertex " + std::to_string(u));
    if (!edges_.insert({std::min(u, v), std::max(u, v)}).second)
        throw Error("duplicate edge " + std::to_string(u) + " " + std::to_string(v));
}

bool Graph::has_edge(Vertex u, Vertex v) const { return edges_.contains({std::min(u, v), std::max(u, v)}); }

std::size_t Graph::degree(Vertex v) const {
    check_vertex(n_, v);
    return static_cast<std::size_t>(
        std::count_if(edges_.begin(), edges_.end(), [v](const VertexPair& e) { return e.first == v || e.second == v; }));
}

std::vector<std::size_t> Graph::degrees() const {
    std::vector<std::size_t> d(n_, 0);
    for (auto [u, v] : edges_) {
        ++d[u];
        ++d[v];
    }
    return d;
}

void Graph::set_labels(std::vector<std::string> labels) {
    check_labels(n_, labels);
    labels_ = std::move(labels);
}

Graph Graph::relabeled(const VertexMap& perm) const {
    check_perm(n_, perm);
    Graph g(n_);
    for (auto [u, v] : edges_) g.add_edge(perm[u], perm[v]);
    if (!labels_.empty()) {
        std::vector<std::string> l(n_);
        for (std::size_t u = 0; u < n_; ++u) l[perm[u]] = labels_[u];
        g.labels_ = std::move(l);
    }
    return g;
}

// ---- Digraph --------------------------------------------------------------------

Digraph::Digraph(std::size_t n, const std::vector<VertexPair>& arcs, bool allow_self_loops)
    : n_(n), loops_(allow_self_loops) {
    for (auto [u, v] : arcs) add_arc(u, v);
}

void Digraph::add_arc(Vertex u, Vertex v) {
    check_vertex(n_, u);
    check_vertex(n_, v);
    if (u == v && !loops_) throw Error("self-loop at vertex " + std::to_string(u));
    if (!arcs_.insert({u, v}).second) throw Error("duplicate arc " + std::to_string(u) + " " + std::to_string(v));
}

std::size_t Digraph::out_degree(Vertex v) const {
    check_vertex(n_, v);
    return static_cast<std::size_t>(
        std::count_if(arcs_.begin(), arcs_.end(), [v](const VertexPair& a) { return a.first == v; }));
}

std::size_t Digraph::in_degree(Vertex v) const {
    check_vertex(n_, v);
    return static_cast<std::size_t>(
        std::count_if(arcs_.begin(), arcs_.end(), [v](const VertexPair& a) { return a.second == v; }));
}

void Digraph::set_labels(std::vector<std::string> labels) {
    check_labels(n_, labels);
    labels_ = std::move(labels);
}

Digraph Digraph::relabeled(const VertexMap& perm) const {
    check_perm(n_, perm);
    Digraph g(n_, loops_);
    for (auto [u, v] : arcs_) g.add_arc(perm[u], perm[v]);
    if (!labels_.empty()) {
        std::vector<std::string> l(n_);
        for (std::size_t u = 0; u < n_; ++u) l[perm[u]] = labels_[u];
        g.labels_ = std::move(l);
    }
    return g;
}

Graph Digraph::underlying() const {
    Graph g(n_);
    for (auto [u, v] : arcs_)
        if (u != v && !g.has_edge(u, v)) g.add_edge(u, v);
    if (!labels_.empty()) g.set_labels(labels_);
    return g;
}

// ---- Representations ------------------------------------------------------------

bool AdjacencyMatrix::symmetric_with_zero_diagonal() const {
    for (std::size_t i = 0; i < n_; ++i) {
        if (at(i, i)) return false;
        for (std::size_t j = i + 1; j < n_; ++j)
            if (at(i, j) != at(j, i)) return false;
    }
    return true;
}

EdgeList to_edge_list(const Graph& g) {
    return EdgeList{g.order(), std::vector<VertexPair>(g.edges().begin(), g.edges().end()), g.labels()};
}

AdjacencyList to_adjacency_list(const Graph& g) {
    AdjacencyList out;
    out.neighbours.resize(g.order());
    for (auto [u, v] : g.edges()) {
        out.neighbours[u].push_back(v);
        out.neighbours[v].push_back(u);
    }
    for (auto& row : out.neighbours) std::sort(row.begin(), row.end());
    out.labels = g.labels();
    return out;
}

AdjacencyMatrix to_adjacency_matrix(const Graph& g) {
    AdjacencyMatrix m(g.order());
    for (auto [u, v] : g.edges()) {
        m.set(u, v);
        m.set(v, u);
    }
    m.labels = g.labels();
    return m;
}

Graph from_edge_list(const EdgeList& list) {
    Graph g(list.n, list.edges);
    g.set_labels(list.labels);
    return g;
}

Graph from_adjacency_list(const AdjacencyList& list) {
    const std::size_t n = list.neighbours.size();
    Graph g(n);
    for (Vertex u = 0; u < n; ++u) {
        const auto& row = list.neighbours[u];
        for (std::size_t k = 0; k < row.size(); ++k) {
            Vertex v = row[k];
            check_vertex(n, v);
            if (v == u) throw Error("self-loop at vertex " + std::to_string(u));
            if (k > 0 && row[k - 1] == v) throw Error("repeated neighbour in adjacency list");
            const auto& back = list.neighbours[v];
            if (std::find(back.begin(), back.end(), u) == back.end())
                throw Error("adjacency is one-sided between " + std::to_string(u) + " and " + std::to_string(v));
            if (u < v) g.add_edge(u, v);
        }
    }
    g.set_labels(list.labels);
    return g;
}

Graph from_adjacency_matrix(const AdjacencyMatrix& m) {
    if (!m.symmetric_with_zero_diagonal()) throw Error("adjacency matrix is not symmetric with zero diagonal");
    Graph g(m.order());
    for (Vertex j = 1; j < m.order(); ++j)
        for (Vertex i = 0; i < j; ++i)
            if (m.at(i, j)) g.add_edge(i, j);
    g.set_labels(m.labels);
    return g;
}

// ---- graph6 ---------------------------------------------------------------------

std::size_t graph6_length(std::size_t n) {
    const std::size_t bits = n * (n > 0 ? n - 1 : 0) / 2;
    return 1 + (bits + 5) / 6;
}

std::string encode_graph6(const Graph& g) {
    const std::size_t n = g.order();
    if (n > kGraph6MaxOrder) throw CapExceeded("graph6 short form supports at most 62 vertices");
    std::string out(1, static_cast<char>(n + 63));
    int filled = 0;
    int byte = 0;
    for (Vertex j = 1; j < n; ++j) {
        for (Vertex i = 0; i < j; ++i) {
            byte = (byte << 1) | (g.has_edge(i, j) ? 1 : 0);
            if (++filled == 6) {
                out += static_cast<char>(byte + 63);
                filled = 0;
                byte = 0;
            }
        }
    }
    if (filled > 0) out += static_cast<char>((byte << (6 - filled)) + 63);
    return out;
}

Graph decode_graph6(std::string_view code) {
    if (code.empty()) throw Error("empty graph6 string");
    for (char c : code)
        if (c < 63 || c > 126) throw Error("graph6 byte out of range 63..126");
    const std::size_t n = static_cast<std::size_t>(code[0] - 63);
    if (n > kGraph6MaxOrder) throw Error("graph6 long form (order above 62) is not supported");
    if (code.size() != graph6_length(n))
        throw Error("graph6 string has length " + std::to_string(code.size()) + ", expected " +
                    std::to_string(graph6_length(n)));
    Graph g(n);
    std::size_t k = 0;
    auto bit = [&](std::size_t idx) { return ((code[1 + idx / 6] - 63) >> (5 - idx % 6)) & 1; };
    for (Vertex j = 1; j < n; ++j)
        for (Vertex i = 0; i < j; ++i)
            if (bit(k++)) g.add_edge(i, j);
    for (std::size_t idx = k; idx < 6 * (code.size() - 1); ++idx)
        if (bit(idx)) throw Error("graph6 padding bits must be zero");
    return g;
}

// ---- Isomorphism and subgraph search ----------------------------------------------

namespace {

std::vector<std::vector<bool>> adjacency(const Graph& g) {
    std::vector<std::vector<bool>> a(g.order(), std::vector<bool>(g.order(), false));
    for (auto [u, v] : g.edges()) a[u][v] = a[v][u] = true;
    return a;
}

// Backtracking in vertex order of `a`, candidate images in increasing order,
// so the first complete assignment is the lexicographically smallest.
std::optional<VertexMap> embed(const Graph& a, const Graph& b, bool induced) {
    const std::size_t n = a.order();
    const std::size_t m = b.order();
    if (n > m) return std::nullopt;
    const auto adj_a = adjacency(a);
    const auto adj_b = adjacency(b);
    const auto deg_a = a.degrees();
    const auto deg_b = b.degrees();
    VertexMap phi(n);
    std::vector<bool> used(m, false);

    std::function<bool(std::size_t)> extend = [&](std::size_t x) {
        if (x == n) return true;
        for (Vertex y = 0; y < m; ++y) {
            if (used[y]) continue;
            if (induced ? deg_a[x] != deg_b[y] : deg_a[x] > deg_b[y]) continue;
            bool ok = true;
            for (std::size_t w = 0; w < x && ok; ++w) {
                const bool ea = adj_a[x][w];
                const bool eb = adj_b[y][phi[w]];
                ok = induced ? ea == eb : (!ea || eb);
            }
            if (!ok) continue;
            phi[x] = y;
            used[y] = true;
            if (extend(x + 1)) return true;
            used[y] = false;
        }
        return false;
    };
    if (!extend(0)) return std::nullopt;
    return phi;
}

}  // namespace

std::optional<VertexMap> are_isomorphic(const Graph& a, const Graph& b) {
    if (a.order() > kIsomorphismCap || b.order() > kIsomorphismCap)
        throw CapExceeded("isomorphism search is limited to " + std::to_string(kIsomorphismCap) + " vertices");
    if (a.order() != b.order() || a.size() != b.size()) return std::nullopt;
    auto da = a.degrees();
    auto db = b.degrees();
    std::sort(da.begin(), da.end());
    std::sort(db.begin(), db.end());
    if (da != db) return std::nullopt;
    return embed(a, b, true);
}

std::optional<VertexMap> is_subgraph(const Graph& small, const Graph& big) {
    if (small.order() > kSubgraphCap)
        throw CapExceeded("subgraph search is limited to " + std::to_string(kSubgraphCap) + " pattern vertices");
    if (small.size() > big.size()) return std::nullopt;
    return embed(small, big, false);
}

// ---- Automata -------------------------------------------------------------------

void Automaton::validate() const {
    if (successor.size() != states.size()) throw Error("automaton successor function is not total");
    for (std::size_t s : successor)
        if (s >= states.size()) throw Error("automaton successor out of range");
}

Automaton read_automaton(std::istream& in) {
    Automaton a;
    std::map<std::string, std::size_t> index;
    std::vector<std::optional<std::size_t>> next;
    auto id = [&](const std::string& name) {
        auto [it, fresh] = index.emplace(name, a.states.size());
        if (fresh) {
            a.states.push_back(name);
            next.emplace_back();
        }
        return it->second;
    };
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string from, arrow, to, extra;
        if (!(ls >> from)) continue;
        if (!(ls >> arrow >> to) || arrow != "->" || (ls >> extra))
            throw ParseError("expected `state -> state`", lineno, 1);
        const auto x = id(from);
        const auto y = id(to);
        if (next[x]) throw ParseError("state '" + from + "' already has a successor", lineno, 1);
        next[x] = y;
    }
    for (std::size_t i = 0; i < next.size(); ++i) {
        if (!next[i]) throw Error("state '" + a.states[i] + "' has no successor");
        a.successor.push_back(*next[i]);
    }
    return a;
}

Digraph state_space_graph(const Automaton& a) {
    a.validate();
    Digraph g(a.states.size(), true);
    for (std::size_t x = 0; x < a.states.size(); ++x)
        g.add_arc(static_cast<Vertex>(x), static_cast<Vertex>(a.successor[x]));
    g.set_labels(a.states);
    return g;
}

// ---- Random graphs ----------------------------------------------------------------

namespace {

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

Graph er_random_graph(std::size_t n, double p, std::uint64_t seed) {
    if (!(p >= 0.0 && p <= 1.0)) throw Error("edge probability must lie in [0, 1]");
    std::mt19937_64 rng(seed);
    Graph g(n);
    for (Vertex j = 1; j < n; ++j)
        for (Vertex i = 0; i < j; ++i)
            if (uniform01(rng) < p) g.add_edge(i, j);
    return g;
}

std::vector<std::vector<Vertex>> connected_components(const Graph& g) {
    const auto adj = to_adjacency_list(g).neighbours;
    std::vector<bool> seen(g.order(), false);
    std::vector<std::vector<Vertex>> out;
    for (Vertex s = 0; s < g.order(); ++s) {
        if (seen[s]) continue;
        std::vector<Vertex> comp;
        std::queue<Vertex> q;
        q.push(s);
        seen[s] = true;
        while (!q.empty()) {
            Vertex u = q.front();
            q.pop();
            comp.push_back(u);
            for (Vertex v : adj[u])
                if (!seen[v]) {
                    seen[v] = true;
                    q.push(v);
                }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

std::size_t largest_component_size(const Graph& g) {
    std::size_t best = 0;
    for (const auto& c : connected_components(g)) best = std::max(best, c.size());
    return best;
}

std::vector<PercolationPoint> percolation_sweep(std::size_t n, const std::vector<double>& p_values,
                                                std::size_t trials, std::uint64_t seed) {
    if (n == 0) throw Error("percolation needs at least one vertex");
    if (trials == 0) throw Error("percolation needs at least one trial");
    std::vector<PercolationPoint> out;
    for (double p : p_values) {
        double total = 0.0;
        for (std::size_t t = 0; t < trials; ++t)
            total += static_cast<double>(largest_component_size(er_random_graph(n, p, seed + t))) / static_cast<double>(n);
        out.push_back({p, total / static_cast<double>(trials)});
    }
    return out;
}

std::vector<double> linspace(double from, double to, std::size_t count) {
    if (count == 0) return {};
    if (count == 1) return {from};
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i)
        out[i] = from + (to - from) * static_cast<double>(i) / static_cast<double>(count - 1);
    out.back() = to;
    return out;
}

// ---- Text formats ---------------------------------------------------------------

GraphFile read_graph_file(std::istream& in) {
    GraphFile f;
    bool have_header = false;
    std::size_t n = 0;
    std::vector<std::string> labels;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head)) continue;
        if (!have_header) {
            long long count = -1;
            std::string extra;
            if ((head != "graph" && head != "digraph") || !(ls >> count) || count < 0 || (ls >> extra))
                throw ParseError("expected `graph N` or `digraph N` header", lineno, 1);
            have_header = true;
            n = static_cast<std::size_t>(count);
            f.directed = head == "digraph";
            if (f.directed) f.digraph = Digraph(n, true);
            else f.graph = Graph(n);
            continue;
        }
        if (head == "label") {
            long long v = -1;
            if (!(ls >> v) || v < 0 || static_cast<std::size_t>(v) >= n)
                throw ParseError("expected `label v text` with v in range", lineno, 1);
            std::string text;
            std::getline(ls >> std::ws, text);
            while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) text.pop_back();
            if (labels.empty()) labels.assign(n, "");
            labels[static_cast<std::size_t>(v)] = text;
            continue;
        }
        long long u = -1, v = -1;
        std::string extra;
        std::istringstream es(line);
        if (!(es >> u >> v) || (es >> extra) || u < 0 || v < 0)
            throw ParseError("expected `u v` edge line", lineno, 1);
        try {
            if (f.directed) f.digraph.add_arc(static_cast<Vertex>(u), static_cast<Vertex>(v));
            else f.graph.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            throw ParseError(e.what(), lineno, 1);
        }
    }
    if (!have_header) throw ParseError("missing `graph N` or `digraph N` header", lineno + 1, 1);
    if (!labels.empty()) {
        if (f.directed) f.digraph.set_labels(labels);
        else f.graph.set_labels(labels);
    }
    return f;
}

GraphFile load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open graph file '" + path + "'");
    return read_graph_file(in);
}

namespace {

void write_labels(std::ostream& out, const std::vector<std::string>& labels) {
    for (std::size_t v = 0; v < labels.size(); ++v)
        if (!labels[v].empty()) out << "label " << v << ' ' << labels[v] << '\n';
}

}  // namespace

void write_graph_file(std::ostream& out, const Graph& g) {
    out << "graph " << g.order() << '\n';
    write_labels(out, g.labels());
    for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

void write_graph_file(std::ostream& out, const Digraph& g) {
    out << "digraph " << g.order() << '\n';
    write_labels(out, g.labels());
    for (auto [u, v] : g.arcs()) out << u << ' ' << v << '\n';
}

void write_adjacency_list(std::ostream& out, const AdjacencyList& list) {
    for (std::size_t u = 0; u < list.neighbours.size(); ++u) {
        out << u << ':';
        for (Vertex v : list.neighbours[u]) out << ' ' << v;
        out << '\n';
    }
}

void write_adjacency_matrix(std::ostream& out, const AdjacencyMatrix& m) {
    for (std::size_t i = 0; i < m.order(); ++i) {
        for (std::size_t j = 0; j < m.order(); ++j) out << (j ? " " : "") << (m.at(i, j) ? 1 : 0);
        out << '\n';
    }
}

}  // namespace observe
