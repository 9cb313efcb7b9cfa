#pragma once

// Relative complexity along GRAPH -> STRING -> NUMBER, with LZW supplying
// the split into a dictionary (pattern) part and a code-stream part.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "observe/graphs.hpp"

namespace observe {

struct LzwOutput {
    std::vector<std::string> dictionary;  // entries added beyond the alphabet
    std::vector<std::size_t> codes;

    bool operator==(const LzwOutput&) const = default;
};

// The alphabet seeds codes 0..|alphabet|-1 in the given order. Throws Error on
// an empty alphabet, a repeated alphabet symbol, or a symbol of s outside it.
LzwOutput lzw_compress(std::string_view s, std::string_view alphabet);

// Rebuilds the dictionary from the codes, including a code that refers to the
// entry being defined (the cScSc case). Throws Error on an out-of-range code.
std::string lzw_decompress(const std::vector<std::size_t>& codes, std::string_view alphabet);
inline std::string lzw_decompress(const LzwOutput& o, std::string_view alphabet) {
    return lzw_decompress(o.codes, alphabet);
}

// Printable graph6 bytes 63..126 in order.
std::string graph6_alphabet();

enum class StringMode { Labeled, Canonical };

inline constexpr std::size_t kCanonicalStringCap = 8;

// Labeled: graph6 in the given vertex order. Canonical: smallest graph6 code
// over all vertex orders; throws CapExceeded above kCanonicalStringCap.
std::string canonical_string(const Graph& g, StringMode mode = StringMode::Canonical);

struct ComplexityReport {
    std::size_t total = 0;      // characters in the describing string
    std::size_t primary = 0;    // sum of lengths of new LZW dictionary entries
    std::size_t secondary = 0;  // number of LZW codes emitted

    bool operator==(const ComplexityReport&) const = default;
};

// The alphabet defaults to the distinct symbols of s in ascending order.
ComplexityReport relative_complexity(std::string_view s);
ComplexityReport relative_complexity(std::string_view s, std::string_view alphabet);
ComplexityReport relative_complexity(const Graph& g, StringMode mode = StringMode::Canonical);

}  // namespace observe
