#pragma once

// Sequence motifs (literals, any-of classes, fixed-width wildcards) and
// network motif censuses over small induced subgraphs.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "observe/graphs.hpp"

namespace observe {

struct MotifToken {
    enum class Kind { Literal, AnyOf, Wildcard };

    Kind kind = Kind::Literal;
    char symbol = 0;         // Literal
    std::set<char> choices;  // AnyOf, never empty
    std::size_t length = 0;  // Wildcard, at least 1

    static MotifToken literal(char c);
    static MotifToken any_of(std::set<char> choices);
    static MotifToken wildcard(std::size_t n);

    std::size_t width() const noexcept { return kind == Kind::Wildcard ? length : 1; }
    bool accepts(char c) const;

    bool operator==(const MotifToken&) const = default;
};

class MotifPattern {
public:
    MotifPattern() = default;
    // Merges adjacent wildcards; throws Error on an empty class or x(0).
    explicit MotifPattern(std::vector<MotifToken> tokens);

    const std::vector<MotifToken>& tokens() const noexcept { return tokens_; }
    std::size_t width() const noexcept;
    bool empty() const noexcept { return tokens_.empty(); }

    // "M x(3) {S,T} G"
    std::string to_string() const;

    bool operator==(const MotifPattern&) const = default;

private:
    std::vector<MotifToken> tokens_;
};

// Letters and digits are literals, `x(N)` is a wildcard of width N, `{A,B}`
// is any one of the listed symbols. Whitespace separates tokens and is
// otherwise ignored. Throws ParseError (1-based column on line 1).
MotifPattern parse_motif(std::string_view text);

enum class MatchMode { Anchored, Search };

// Anchored: [0] iff the pattern matches the first width() symbols of s.
// Search: every offset at which an anchored match succeeds, ascending.
std::vector<std::size_t> match_motif(const MotifPattern& p, std::string_view s, MatchMode mode);

// Column by column: a literal where all sequences agree, a class of the
// distinct symbols when there are at most class_cap of them, otherwise a
// wildcard. Throws Error on fewer than 2 sequences or unequal lengths.
MotifPattern derive_motif(const std::vector<std::string>& seqs, std::size_t class_cap);

// ---- Network motifs -----------------------------------------------------------

inline constexpr std::size_t kMotifCapK3 = 200;
inline constexpr std::size_t kMotifCapK4 = 60;

struct MotifCensus {
    std::size_t k = 0;
    bool directed = false;
    std::map<std::string, std::uint64_t> counts;
    // Mean counts over randomized graphs; absent when unavailable.
    std::optional<std::map<std::string, double>> background;

    std::uint64_t total() const;
    std::uint64_t count(const std::string& id) const;
};

// Canonical identifier of a small graph: the smallest graph6 code over all
// vertex orders. For digraphs, "<k>:" followed by the smallest row-major
// off-diagonal adjacency bit string. Throws CapExceeded above 8 vertices.
std::string canonical_motif_id(const Graph& g);
std::string canonical_motif_id(const Digraph& g);

// Counts every k-vertex induced subgraph by canonical identifier. Self-loops
// are ignored. max_vertices = 0 selects kMotifCapK3 / kMotifCapK4.
MotifCensus count_network_motifs(const Graph& g, std::size_t k, std::size_t max_vertices = 0);
MotifCensus count_network_motifs(const Digraph& g, std::size_t k, std::size_t max_vertices = 0);

// Degree-preserving rewiring: 10 |E| double-edge swap attempts (arcs keep
// in- and out-degrees). Deterministic for a given seed.
Graph rewire(const Graph& g, std::uint64_t seed);
Digraph rewire(const Digraph& g, std::uint64_t seed);

// Census of g plus the mean census of `rewires` rewired copies; sample i uses
// seed + i. Background is absent when rewires is 0 or g has fewer than 2
// edges.
MotifCensus motif_significance(const Graph& g, std::size_t k, std::size_t rewires, std::uint64_t seed);
MotifCensus motif_significance(const Digraph& g, std::size_t k, std::size_t rewires, std::uint64_t seed);

// TSV rows `canonical-id<TAB>count<TAB>background`, background "NA" when absent.
void write_census(std::ostream& out, const MotifCensus& census);

}  // namespace observe
