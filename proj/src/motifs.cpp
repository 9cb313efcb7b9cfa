#include "observe/motifs.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <ostream>
#include <random>

#include "observe/error.hpp"

namespace observe {

// ---- Sequence motifs ------------------------------------------------------------

MotifToken MotifToken::literal(char c) {
    MotifToken t;
    t.kind = Kind::Literal;
    t.symbol = c;
    return t;
}

MotifToken MotifToken::any_of(std::set<char> choices) {
    if (choices.empty()) throw Error("any-of class must not be empty");
    MotifToken t;
    t.kind = Kind::AnyOf;
    t.choices = std::move(choices);
    return t;
}

MotifToken MotifToken::wildcard(std::size_t n) {
    if (n == 0) throw Error("wildcard length must be at least 1");
    MotifToken t;
    t.kind = Kind::Wildcard;
    t.length = n;
    return t;
}

bool MotifToken::accepts(char c) const {
    switch (kind) {
        case Kind::Literal: return c == symbol;
        case Kind::AnyOf: return choices.contains(c);
        case Kind::Wildcard: return true;
    }
    return false;
}

MotifPattern::MotifPattern(std::vector<MotifToken> tokens) {
    for (auto& t : tokens) {
        if (t.kind == MotifToken::Kind::AnyOf && t.choices.empty()) throw Error("any-of class must not be empty");
        if (t.kind == MotifToken::Kind::Wildcard && t.length == 0) throw Error("wildcard length must be at least 1");
        if (t.kind == MotifToken::Kind::Wildcard && !tokens_.empty() &&
            tokens_.back().kind == MotifToken::Kind::Wildcard) {
            tokens_.back().length += t.length;
        } else {
            tokens_.push_back(std::move(t));
        }
    }
}

std::size_t MotifPattern::width() const noexcept {
    std::size_t w = 0;
    for (const auto& t : tokens_) w += t.width();
    return w;
}

std::string MotifPattern::to_string() const {
    std::string out;
    for (const auto& t : tokens_) {
        if (!out.empty()) out += ' ';
        switch (t.kind) {
            case MotifToken::Kind::Literal: out += t.symbol; break;
            case MotifToken::Kind::Wildcard: out += "x(" + std::to_string(t.length) + ")"; break;
            case MotifToken::Kind::AnyOf: {
                out += '{';
                bool first = true;
                for (char c : t.choices) {
                    if (!first) out += ',';
                    out += c;
                    first = false;
                }
                out += '}';
                break;
            }
        }
    }
    return out;
}

namespace {

bool is_symbol(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

}  // namespace

MotifPattern parse_motif(std::string_view text) {
    std::vector<MotifToken> tokens;
    std::size_t i = 0;
    auto fail = [&](const std::string& msg, std::size_t at) -> void { throw ParseError(msg, 1, at + 1); };
    while (i < text.size()) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (c == 'x' && i + 1 < text.size() && text[i + 1] == '(') {
            const std::size_t start = i;
            i += 2;
            std::size_t n = 0;
            std::size_t digits = 0;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                n = n * 10 + static_cast<std::size_t>(text[i] - '0');
                if (n > 1'000'000) fail("wildcard count too large", start);
                ++digits;
                ++i;
            }
            if (digits == 0 || i >= text.size() || text[i] != ')') fail("malformed wildcard, expected x(N)", start);
            if (n == 0) fail("wildcard length must be at least 1", start);
            ++i;
            tokens.push_back(MotifToken::wildcard(n));
        } else if (c == '{') {
            const std::size_t start = i++;
            std::set<char> choices;
            bool expect_symbol = true;
            while (true) {
                while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
                if (i >= text.size()) fail("unterminated class", start);
                const char d = text[i];
                if (d == '}') {
                    if (choices.empty()) fail("empty class", start);
                    if (expect_symbol) fail("trailing comma in class", i);
                    ++i;
                    break;
                }
                if (expect_symbol) {
                    if (!is_symbol(d)) fail(std::string("unexpected character '") + d + "' in class", i);
                    if (!choices.insert(d).second) fail(std::string("duplicate symbol '") + d + "' in class", i);
                    expect_symbol = false;
                } else {
                    if (d != ',') fail("expected ',' or '}' in class", i);
                    expect_symbol = true;
                }
                ++i;
            }
            tokens.push_back(MotifToken::any_of(std::move(choices)));
        } else if (is_symbol(c)) {
            tokens.push_back(MotifToken::literal(c));
            ++i;
        } else {
            fail(std::string("unknown character '") + c + "'", i);
        }
    }
    return MotifPattern(std::move(tokens));
}

namespace {

bool anchored_at(const MotifPattern& p, std::string_view s, std::size_t offset) {
    if (s.size() < offset || s.size() - offset < p.width()) return false;
    std::size_t pos = offset;
    for (const auto& t : p.tokens()) {
        if (t.kind != MotifToken::Kind::Wildcard && !t.accepts(s[pos])) return false;
        pos += t.width();
    }
    return true;
}

}  // namespace

std::vector<std::size_t> match_motif(const MotifPattern& p, std::string_view s, MatchMode mode) {
    std::vector<std::size_t> out;
    if (mode == MatchMode::Anchored) {
        if (anchored_at(p, s, 0)) out.push_back(0);
        return out;
    }
    for (std::size_t i = 0; i <= s.size(); ++i)
        if (anchored_at(p, s, i)) out.push_back(i);
    return out;
}

MotifPattern derive_motif(const std::vector<std::string>& seqs, std::size_t class_cap) {
    if (seqs.size() < 2) throw Error("derive_motif needs at least 2 sequences");
    const std::size_t len = seqs.front().size();
    for (const auto& s : seqs)
        if (s.size() != len) throw Error("derive_motif needs sequences of equal length");
    std::vector<MotifToken> tokens;
    for (std::size_t col = 0; col < len; ++col) {
        std::set<char> seen;
        for (const auto& s : seqs) seen.insert(s[col]);
        if (seen.size() == 1) tokens.push_back(MotifToken::literal(*seen.begin()));
        else if (seen.size() <= class_cap) tokens.push_back(MotifToken::any_of(std::move(seen)));
        else tokens.push_back(MotifToken::wildcard(1));
    }
    return MotifPattern(std::move(tokens));
}

// ---- Network motifs -------------------------------------------------------------

namespace {

constexpr std::size_t kCanonicalCap = 8;

std::string digraph_bits(const Digraph& g) {
    std::string bits;
    for (Vertex i = 0; i < g.order(); ++i)
        for (Vertex j = 0; j < g.order(); ++j)
            if (i != j) bits += g.has_arc(i, j) ? '1' : '0';
    return bits;
}

std::string min_over_permutations(std::size_t n, const std::function<std::string(const VertexMap&)>& code) {
    VertexMap perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::string best;
    bool first = true;
    do {
        auto c = code(perm);
        if (first || c < best) best = std::move(c);
        first = false;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

// Canonical ids for every edge mask on k vertices, indexed by mask. Undirected
// masks follow graph6 pair order; directed masks are row-major off-diagonal.
std::vector<std::string> canonical_table(std::size_t k, bool directed) {
    const std::size_t pairs = directed ? k * (k - 1) : k * (k - 1) / 2;
    std::vector<std::string> table(std::size_t{1} << pairs);
    for (std::size_t mask = 0; mask < table.size(); ++mask) {
        std::size_t bit = 0;
        if (directed) {
            Digraph d(k);
            for (Vertex i = 0; i < k; ++i)
                for (Vertex j = 0; j < k; ++j)
                    if (i != j && ((mask >> bit++) & 1u)) d.add_arc(i, j);
            table[mask] = canonical_motif_id(d);
        } else {
            Graph g(k);
            for (Vertex j = 1; j < k; ++j)
                for (Vertex i = 0; i < j; ++i)
                    if ((mask >> bit++) & 1u) g.add_edge(i, j);
            table[mask] = canonical_motif_id(g);
        }
    }
    return table;
}

const std::vector<std::string>& cached_table(std::size_t k, bool directed) {
    static const std::vector<std::string> tables[4] = {canonical_table(3, false), canonical_table(3, true),
                                                       canonical_table(4, false), canonical_table(4, true)};
    return tables[(k == 4 ? 2 : 0) + (directed ? 1 : 0)];
}

void check_census_args(std::size_t n, std::size_t k, std::size_t max_vertices) {
    if (k != 3 && k != 4) throw Error("motif size k must be 3 or 4");
    const std::size_t cap = max_vertices ? max_vertices : (k == 3 ? kMotifCapK3 : kMotifCapK4);
    if (n > cap)
        throw CapExceeded("motif census for k=" + std::to_string(k) + " is limited to " + std::to_string(cap) +
                          " vertices");
}

// `adjacent(u, v)` is the ordered relation; undirected graphs pass a symmetric one.
template <typename Adjacent>
std::map<std::string, std::uint64_t> census(std::size_t n, std::size_t k, bool directed, Adjacent adjacent) {
    const auto& table = cached_table(k, directed);
    std::vector<std::uint64_t> by_mask(table.size(), 0);
    std::vector<Vertex> pick(k);
    auto mask_of = [&]() {
        std::size_t mask = 0;
        std::size_t bit = 0;
        if (directed) {
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j)
                    if (i != j) {
                        if (adjacent(pick[i], pick[j])) mask |= std::size_t{1} << bit;
                        ++bit;
                    }
        } else {
            for (std::size_t j = 1; j < k; ++j)
                for (std::size_t i = 0; i < j; ++i) {
                    if (adjacent(pick[i], pick[j])) mask |= std::size_t{1} << bit;
                    ++bit;
                }
        }
        return mask;
    };
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = a + 1; b < n; ++b)
            for (Vertex c = b + 1; c < n; ++c) {
                pick[0] = a;
                pick[1] = b;
                pick[2] = c;
                if (k == 3) {
                    ++by_mask[mask_of()];
                    continue;
                }
                for (Vertex d = c + 1; d < n; ++d) {
                    pick[3] = d;
                    ++by_mask[mask_of()];
                }
            }
    std::map<std::string, std::uint64_t> counts;
    for (std::size_t mask = 0; mask < by_mask.size(); ++mask)
        if (by_mask[mask]) counts[table[mask]] += by_mask[mask];
    return counts;
}

std::vector<std::vector<bool>> matrix(std::size_t n, const std::set<VertexPair>& pairs, bool symmetric) {
    std::vector<std::vector<bool>> m(n, std::vector<bool>(n, false));
    for (auto [u, v] : pairs) {
        if (u == v) continue;
        m[u][v] = true;
        if (symmetric) m[v][u] = true;
    }
    return m;
}

}  // namespace

std::uint64_t MotifCensus::total() const {
    std::uint64_t t = 0;
    for (const auto& [id, c] : counts) t += c;
    return t;
}

std::uint64_t MotifCensus::count(const std::string& id) const {
    auto it = counts.find(id);
    return it == counts.end() ? 0 : it->second;
}

std::string canonical_motif_id(const Graph& g) {
    if (g.order() > kCanonicalCap) throw CapExceeded("canonical motif ids are limited to 8 vertices");
    return min_over_permutations(g.order(), [&](const VertexMap& p) { return encode_graph6(g.relabeled(p)); });
}

std::string canonical_motif_id(const Digraph& g) {
    if (g.order() > kCanonicalCap) throw CapExceeded("canonical motif ids are limited to 8 vertices");
    Digraph plain(g.order());
    for (auto [u, v] : g.arcs())
        if (u != v) plain.add_arc(u, v);
    return std::to_string(g.order()) + ":" +
           min_over_permutations(g.order(), [&](const VertexMap& p) { return digraph_bits(plain.relabeled(p)); });
}

MotifCensus count_network_motifs(const Graph& g, std::size_t k, std::size_t max_vertices) {
    check_census_args(g.order(), k, max_vertices);
    const auto m = matrix(g.order(), g.edges(), true);
    MotifCensus out;
    out.k = k;
    out.directed = false;
    out.counts = census(g.order(), k, false, [&](Vertex u, Vertex v) { return m[u][v]; });
    return out;
}

MotifCensus count_network_motifs(const Digraph& g, std::size_t k, std::size_t max_vertices) {
    check_census_args(g.order(), k, max_vertices);
    const auto m = matrix(g.order(), g.arcs(), false);
    MotifCensus out;
    out.k = k;
    out.directed = true;
    out.counts = census(g.order(), k, true, [&](Vertex u, Vertex v) { return m[u][v]; });
    return out;
}

// ---- Rewiring -------------------------------------------------------------------

namespace {

template <bool Directed>
std::vector<VertexPair> swap_edges(std::vector<VertexPair> edges, std::uint64_t seed) {
    auto key = [](Vertex u, Vertex v) {
        if (!Directed && u > v) std::swap(u, v);
        return VertexPair{u, v};
    };
    std::set<VertexPair> present;
    for (auto [u, v] : edges) present.insert(key(u, v));
    std::mt19937_64 rng(seed);
    const std::size_t m = edges.size();
    const std::size_t attempts = 10 * m;
    for (std::size_t t = 0; t < attempts && m >= 2; ++t) {
        const std::size_t i = rng() % m;
        const std::size_t j = rng() % m;
        if (i == j) continue;
        auto [a, b] = edges[i];
        auto [c, d] = edges[j];
        // Undirected edges may be swapped in either orientation.
        if (!Directed && (rng() & 1u)) std::swap(c, d);
        if (a == d || c == b) continue;
        const auto e1 = key(a, d);
        const auto e2 = key(c, b);
        if (e1 == e2 || present.contains(e1) || present.contains(e2)) continue;
        present.erase(key(a, b));
        present.erase(key(edges[j].first, edges[j].second));
        present.insert(e1);
        present.insert(e2);
        edges[i] = e1;
        edges[j] = e2;
    }
    return edges;
}

template <typename G>
MotifCensus significance(const G& g, std::size_t k, std::size_t rewires, std::uint64_t seed, std::size_t edge_count) {
    auto out = count_network_motifs(g, k);
    if (rewires == 0 || edge_count < 2) return out;
    std::map<std::string, double> mean;
    for (std::size_t s = 0; s < rewires; ++s)
        for (const auto& [id, c] : count_network_motifs(rewire(g, seed + s), k).counts)
            mean[id] += static_cast<double>(c);
    for (auto& [id, v] : mean) v /= static_cast<double>(rewires);
    out.background = std::move(mean);
    return out;
}

}  // namespace

Graph rewire(const Graph& g, std::uint64_t seed) {
    auto edges = swap_edges<false>({g.edges().begin(), g.edges().end()}, seed);
    Graph out(g.order(), edges);
    out.set_labels(g.labels());
    return out;
}

Digraph rewire(const Digraph& g, std::uint64_t seed) {
    std::vector<VertexPair> arcs;
    std::vector<VertexPair> loops;
    for (auto a : g.arcs()) (a.first == a.second ? loops : arcs).push_back(a);
    arcs = swap_edges<true>(std::move(arcs), seed);
    arcs.insert(arcs.end(), loops.begin(), loops.end());
    Digraph out(g.order(), arcs, g.allows_self_loops());
    out.set_labels(g.labels());
    return out;
}

MotifCensus motif_significance(const Graph& g, std::size_t k, std::size_t rewires, std::uint64_t seed) {
    return significance(g, k, rewires, seed, g.size());
}

MotifCensus motif_significance(const Digraph& g, std::size_t k, std::size_t rewires, std::uint64_t seed) {
    std::size_t arcs = 0;
    for (auto [u, v] : g.arcs()) arcs += u != v;
    return significance(g, k, rewires, seed, arcs);
}

void write_census(std::ostream& out, const MotifCensus& census) {
    std::set<std::string> ids;
    for (const auto& [id, c] : census.counts) ids.insert(id);
    if (census.background)
        for (const auto& [id, v] : *census.background) ids.insert(id);
    for (const auto& id : ids) {
        out << id << '\t' << census.count(id) << '\t';
        if (census.background) {
            auto it = census.background->find(id);
            out << (it == census.background->end() ? 0.0 : it->second);
        } else {
            out << "NA";
        }
        out << '\n';
    }
}

}  // namespace observe
