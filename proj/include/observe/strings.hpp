#pragma once

// String languages defined by a restricted BNF: concatenation, alternation
// and one-or-more repetition over single-character terminals. No empty
// alternatives and no left recursion, so every nonterminal derives at least
// one symbol and top-down parsing terminates.
//
// Grammar source:
//
//   # comment
//   terminals: L R F T                       (optional alphabet declaration)
//   <path> -> F <path> | L <path> | R <path> | T
//          |  ...                            (continuation line)
//   <body> -> <HEAD> <SEGMENT>+ <TAIL>
//
// The first rule's left-hand side is the start symbol. A bare character is a
// terminal; 'abc' or "abc" is the sequence a b c (use quotes for < > | + # ' ").

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace observe {

struct GrammarItem {
    enum class Kind { Terminal, Nonterminal, Repeat };

    Kind kind = Kind::Terminal;
    char symbol = 0;                 // Terminal
    std::string name;                // Nonterminal
    std::vector<GrammarItem> inner;  // Repeat: exactly one element

    static GrammarItem terminal(char c) { return {Kind::Terminal, c, {}, {}}; }
    static GrammarItem nonterminal(std::string n) { return {Kind::Nonterminal, 0, std::move(n), {}}; }
    static GrammarItem repeat(GrammarItem item) { return {Kind::Repeat, 0, {}, {std::move(item)}}; }

    bool operator==(const GrammarItem&) const = default;
};

using Alternative = std::vector<GrammarItem>;

struct Grammar {
    std::set<char> terminals;
    std::set<std::string> nonterminals;
    std::map<std::string, std::vector<Alternative>> rules;
    std::string start;

    bool operator==(const Grammar&) const = default;
};

inline constexpr std::size_t kDefaultGenerateCap = 1'000'000;

// Throws ParseError on syntax errors, undefined or duplicate names, empty
// alternatives and left recursion.
Grammar parse_grammar(std::string_view source);
Grammar load_grammar(const std::string& path);

// Inverse of parse_grammar up to whitespace.
std::string write_grammar(const Grammar& g);

bool membership(const Grammar& g, std::string_view s);

// Every derivable string of length <= max_len, ordered by length then
// lexicographically. Throws CapExceeded past `cap` strings.
std::vector<std::string> generate(const Grammar& g, std::size_t max_len, std::size_t cap = kDefaultGenerateCap);

// Renames terminals through a bijection on the alphabet.
Grammar relabel_terminals(const Grammar& g, const std::map<char, char>& sigma);
std::string relabel_string(std::string_view s, const std::map<char, char>& sigma);

// Key -> symbol assignment of an event recorder.
class EventSemantics {
public:
    EventSemantics() = default;
    // Throws Error unless the assignment is injective.
    explicit EventSemantics(std::map<std::string, char> key_to_symbol);

    char symbol(const std::string& key) const;
    const std::string& key(char symbol) const;
    bool contains(const std::string& key) const { return forward_.contains(key); }
    const std::map<std::string, char>& table() const { return forward_; }

private:
    std::map<std::string, char> forward_;
    std::map<char, std::string> backward_;
};

// output[i] = sem(events[i]). Throws Error naming the index of the first
// unknown key.
std::string record_behavior(const std::vector<std::string>& events, const EventSemantics& sem);

}  // namespace observe
