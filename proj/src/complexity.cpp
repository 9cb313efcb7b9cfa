#include "observe/complexity.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <set>

#include "observe/error.hpp"

namespace observe {

namespace {

std::map<std::string, std::size_t> seed_dictionary(std::string_view alphabet) {
    if (alphabet.empty()) throw Error("LZW alphabet must not be empty");
    std::map<std::string, std::size_t> dict;
    for (char c : alphabet)
        if (!dict.emplace(std::string(1, c), dict.size()).second)
            throw Error(std::string("LZW alphabet repeats symbol '") + c + "'");
    return dict;
}

}  // namespace

LzwOutput lzw_compress(std::string_view s, std::string_view alphabet) {
    auto dict = seed_dictionary(alphabet);
    LzwOutput out;
    std::string w;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const char c = s[i];
        if (!dict.contains(std::string(1, c)))
            throw Error(std::string("symbol '") + c + "' at index " + std::to_string(i) + " is not in the alphabet");
        std::string wc = w + c;
        if (dict.contains(wc)) {
            w = std::move(wc);
            continue;
        }
        out.codes.push_back(dict.at(w));
        dict.emplace(wc, dict.size());
        out.dictionary.push_back(std::move(wc));
        w = std::string(1, c);
    }
    if (!w.empty()) out.codes.push_back(dict.at(w));
    return out;
}

std::string lzw_decompress(const std::vector<std::size_t>& codes, std::string_view alphabet) {
    seed_dictionary(alphabet);
    std::vector<std::string> table;
    for (char c : alphabet) table.emplace_back(1, c);
    std::string out;
    std::string prev;
    for (std::size_t i = 0; i < codes.size(); ++i) {
        const std::size_t code = codes[i];
        std::string entry;
        if (code < table.size()) {
            entry = table[code];
        } else if (code == table.size() && !prev.empty()) {
            entry = prev + prev.front();  // cScSc: the code being defined
        } else {
            throw Error("LZW code " + std::to_string(code) + " at position " + std::to_string(i) +
                        " is out of range for a " + std::to_string(table.size()) + "-entry dictionary");
        }
        if (!prev.empty()) table.push_back(prev + entry.front());
        out += entry;
        prev = std::move(entry);
    }
    return out;
}

std::string graph6_alphabet() {
    std::string a;
    for (int c = 63; c <= 126; ++c) a += static_cast<char>(c);
    return a;
}

std::string canonical_string(const Graph& g, StringMode mode) {
    if (mode == StringMode::Labeled) return encode_graph6(g);
    const std::size_t n = g.order();
    if (n > kCanonicalStringCap)
        throw CapExceeded("canonical strings are limited to " + std::to_string(kCanonicalStringCap) + " vertices");
    std::array<std::array<bool, kCanonicalStringCap>, kCanonicalStringCap> adj{};
    for (auto [u, v] : g.edges()) adj[u][v] = adj[v][u] = true;

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::string best;
    std::string code(graph6_length(n), '?');
    code[0] = static_cast<char>(63 + n);
    do {
        std::fill(code.begin() + 1, code.end(), static_cast<char>(63));
        std::size_t k = 0;
        for (std::size_t j = 1; j < n; ++j)
            for (std::size_t i = 0; i < j; ++i, ++k)
                if (adj[perm[i]][perm[j]]) code[1 + k / 6] = static_cast<char>(code[1 + k / 6] + (32 >> (k % 6)));
        if (best.empty() || code < best) best = code;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

ComplexityReport relative_complexity(std::string_view s, std::string_view alphabet) {
    const auto lzw = lzw_compress(s, alphabet);
    ComplexityReport r;
    r.total = s.size();
    for (const auto& e : lzw.dictionary) r.primary += e.size();
    r.secondary = lzw.codes.size();
    return r;
}

ComplexityReport relative_complexity(std::string_view s) {
    if (s.empty()) return {};
    std::set<char> symbols(s.begin(), s.end());
    return relative_complexity(s, std::string(symbols.begin(), symbols.end()));
}

ComplexityReport relative_complexity(const Graph& g, StringMode mode) {
    return relative_complexity(canonical_string(g, mode));
}

}  // namespace observe
