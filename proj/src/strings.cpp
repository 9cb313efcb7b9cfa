#include "observe/strings.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <unordered_set>

#include "observe/error.hpp"

namespace observe {

namespace {

struct Lexeme {
    enum class Kind { Nonterminal, Terminal, Alt, Plus, Arrow };
    Kind kind;
    std::string text;  // nonterminal name or terminal character(s)
    std::size_t column;
};

std::vector<Lexeme> lex_line(std::string_view line, std::size_t lineno) {
    std::vector<Lexeme> out;
    std::size_t i = 0;
    while (i < line.size()) {
        const char c = line[i];
        const std::size_t col = i + 1;
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (c == '#') {
            break;
        } else if (c == '<') {
            auto close = line.find('>', i + 1);
            if (close == std::string_view::npos) throw ParseError("unterminated nonterminal", lineno, col);
            std::string name(line.substr(i + 1, close - i - 1));
            auto b = name.find_first_not_of(" \t");
            auto e = name.find_last_not_of(" \t");
            if (b == std::string::npos) throw ParseError("empty nonterminal name", lineno, col);
            name = name.substr(b, e - b + 1);
            if (name.find('<') != std::string::npos) throw ParseError("'<' inside nonterminal name", lineno, col);
            out.push_back({Lexeme::Kind::Nonterminal, name, col});
            i = close + 1;
        } else if (c == '\'' || c == '"') {
            auto close = line.find(c, i + 1);
            if (close == std::string_view::npos) throw ParseError("unterminated quoted terminal", lineno, col);
            if (close == i + 1) throw ParseError("empty quoted terminal", lineno, col);
            out.push_back({Lexeme::Kind::Terminal, std::string(line.substr(i + 1, close - i - 1)), col});
            i = close + 1;
        } else if (c == '|') {
            out.push_back({Lexeme::Kind::Alt, "|", col});
            ++i;
        } else if (c == '+') {
            out.push_back({Lexeme::Kind::Plus, "+", col});
            ++i;
        } else if (c == '-' && i + 1 < line.size() && line[i + 1] == '>') {
            out.push_back({Lexeme::Kind::Arrow, "->", col});
            i += 2;
        } else if (c == '>') {
            throw ParseError("stray '>'", lineno, col);
        } else {
            out.push_back({Lexeme::Kind::Terminal, std::string(1, c), col});
            ++i;
        }
    }
    return out;
}

struct Reference {
    std::string name;
    std::size_t line;
    std::size_t column;
};

const GrammarItem* leftmost(const GrammarItem& item) {
    const GrammarItem* it = &item;
    while (it->kind == GrammarItem::Kind::Repeat) it = &it->inner.front();
    return it;
}

void check_left_recursion(const Grammar& g, const std::map<std::string, std::size_t>& rule_line) {
    // With no empty alternatives, A is left-recursive iff A reaches itself
    // along "first item is a nonterminal" edges.
    std::map<std::string, std::set<std::string>> first;
    for (const auto& [nt, alts] : g.rules) {
        for (const auto& alt : alts) {
            const auto* head = leftmost(alt.front());
            if (head->kind == GrammarItem::Kind::Nonterminal) first[nt].insert(head->name);
        }
    }
    enum class Mark { White, Grey, Black };
    std::map<std::string, Mark> mark;
    std::function<void(const std::string&)> dfs = [&](const std::string& nt) {
        mark[nt] = Mark::Grey;
        for (const auto& next : first[nt]) {
            if (mark[next] == Mark::Grey)
                throw ParseError("left recursion through <" + next + ">", rule_line.at(next), 1);
            if (mark[next] == Mark::White) dfs(next);
        }
        mark[nt] = Mark::Black;
    };
    for (const auto& [nt, alts] : g.rules) {
        if (mark[nt] == Mark::White) dfs(nt);
    }
}

bool needs_quotes(char c) {
    return std::isspace(static_cast<unsigned char>(c)) || std::string_view("<>|+#'\"-").find(c) != std::string_view::npos ||
           !std::isprint(static_cast<unsigned char>(c));
}

std::string quote_terminal(char c) {
    if (!needs_quotes(c)) return std::string(1, c);
    if (c == '\'') return "\"'\"";
    return "'" + std::string(1, c) + "'";
}

void write_item(std::ostream& out, const GrammarItem& item) {
    switch (item.kind) {
        case GrammarItem::Kind::Terminal: out << quote_terminal(item.symbol); break;
        case GrammarItem::Kind::Nonterminal: out << '<' << item.name << '>'; break;
        case GrammarItem::Kind::Repeat:
            write_item(out, item.inner.front());
            out << '+';
            break;
    }
}

}  // namespace

Grammar parse_grammar(std::string_view source) {
    Grammar g;
    std::optional<std::set<char>> declared;
    std::map<std::string, std::size_t> rule_line;
    std::vector<Reference> references;
    std::string current;  // nonterminal receiving continuation lines

    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= source.size()) {
        auto nl = source.find('\n', pos);
        if (nl == std::string_view::npos) nl = source.size();
        std::string_view line = source.substr(pos, nl - pos);
        pos = nl + 1;
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

        auto first = line.find_first_not_of(" \t");
        if (first == std::string_view::npos || line[first] == '#') continue;

        if (line.substr(first).starts_with("terminals:")) {
            if (declared) throw ParseError("duplicate terminals declaration", lineno, first + 1);
            declared.emplace();
            const auto body_at = first + std::string_view("terminals:").size();
            for (const auto& lx : lex_line(line.substr(body_at), lineno)) {
                if (lx.kind != Lexeme::Kind::Terminal) throw ParseError("expected terminal symbols", lineno, body_at + lx.column);
                for (char c : lx.text) {
                    if (!declared->insert(c).second)
                        throw ParseError(std::string("duplicate terminal '") + c + "'", lineno, body_at + lx.column);
                }
            }
            continue;
        }

        auto lx = lex_line(line, lineno);
        std::size_t k = 0;
        std::vector<Alternative>* alts = nullptr;
        if (lx[0].kind == Lexeme::Kind::Alt) {
            if (current.empty()) throw ParseError("continuation line without a rule", lineno, lx[0].column);
            alts = &g.rules[current];
        } else {
            if (lx.size() < 2 || lx[0].kind != Lexeme::Kind::Nonterminal || lx[1].kind != Lexeme::Kind::Arrow)
                throw ParseError("expected '<name> ->'", lineno, lx[0].column);
            current = lx[0].text;
            if (g.rules.contains(current))
                throw ParseError("duplicate nonterminal <" + current + ">", lineno, lx[0].column);
            if (g.start.empty()) g.start = current;
            g.nonterminals.insert(current);
            rule_line[current] = lineno;
            alts = &g.rules[current];
            k = 2;
            // A rule needs at least one alternative; an arrow followed by
            // nothing is an empty alternative.
            if (k == lx.size()) throw ParseError("empty alternative", lineno, lx[1].column + 2);
        }

        // Alternatives separated by '|'. A leading '|' on a continuation line
        // is the separator from the previous line.
        if (lx[k].kind == Lexeme::Kind::Alt && alts != nullptr && k == 0) ++k;
        Alternative alt;
        auto close_alt = [&](std::size_t column) {
            if (alt.empty()) throw ParseError("empty alternative", lineno, column);
            alts->push_back(std::move(alt));
            alt.clear();
        };
        std::size_t last_col = lx.back().column + lx.back().text.size();
        for (; k < lx.size(); ++k) {
            const auto& t = lx[k];
            switch (t.kind) {
                case Lexeme::Kind::Alt: close_alt(t.column); break;
                case Lexeme::Kind::Arrow: throw ParseError("unexpected '->'", lineno, t.column);
                case Lexeme::Kind::Plus:
                    if (alt.empty()) throw ParseError("'+' without an item", lineno, t.column);
                    if (k > 0 && lx[k - 1].kind == Lexeme::Kind::Terminal && lx[k - 1].text.size() > 1)
                        throw ParseError("'+' after a multi-symbol quoted terminal", lineno, t.column);
                    alt.back() = GrammarItem::repeat(std::move(alt.back()));
                    break;
                case Lexeme::Kind::Nonterminal:
                    references.push_back({t.text, lineno, t.column});
                    alt.push_back(GrammarItem::nonterminal(t.text));
                    break;
                case Lexeme::Kind::Terminal:
                    for (char c : t.text) {
                        if (declared && !declared->contains(c))
                            throw ParseError(std::string("undeclared terminal '") + c + "'", lineno, t.column);
                        g.terminals.insert(c);
                        alt.push_back(GrammarItem::terminal(c));
                    }
                    break;
            }
        }
        close_alt(last_col);
    }

    if (g.rules.empty()) throw ParseError("grammar has no rules", lineno == 0 ? 1 : lineno, 1);
    for (const auto& ref : references) {
        if (!g.rules.contains(ref.name))
            throw ParseError("undefined nonterminal <" + ref.name + ">", ref.line, ref.column);
    }
    if (declared) g.terminals.insert(declared->begin(), declared->end());
    check_left_recursion(g, rule_line);
    return g;
}

Grammar load_grammar(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_grammar(ss.str());
}

std::string write_grammar(const Grammar& g) {
    std::ostringstream out;
    out << "terminals:";
    for (char c : g.terminals) out << ' ' << quote_terminal(c);
    out << '\n';
    std::vector<std::string> order{g.start};
    for (const auto& nt : g.nonterminals) {
        if (nt != g.start) order.push_back(nt);
    }
    for (const auto& nt : order) {
        out << '<' << nt << "> ->";
        const auto& alts = g.rules.at(nt);
        for (std::size_t a = 0; a < alts.size(); ++a) {
            if (a) out << " |";
            for (const auto& item : alts[a]) {
                out << ' ';
                write_item(out, item);
            }
        }
        out << '\n';
    }
    return out.str();
}

namespace {

// Memoized end-position sets for top-down recognition.
class Recognizer {
public:
    Recognizer(const Grammar& g, std::string_view s) : g_(g), s_(s) {
        for (const auto& nt : g.nonterminals) {
            index_.emplace(nt, names_.size());
            names_.push_back(&nt);
        }
        memo_.resize(index_.size() * (s.size() + 1));
    }

    bool accepts() {
        const auto& ends = nonterminal_ends(index_.at(g_.start), 0);
        return std::binary_search(ends.begin(), ends.end(), s_.size());
    }

private:
    using Ends = std::vector<std::size_t>;

    const Ends& nonterminal_ends(std::size_t nt, std::size_t i) {
        auto& slot = memo_[nt * (s_.size() + 1) + i];
        if (slot) return *slot;
        std::set<std::size_t> acc;
        for (const auto& alt : g_.rules.at(*names_[nt])) {
            for (auto e : sequence_ends(alt, 0, i)) acc.insert(e);
        }
        slot.emplace(acc.begin(), acc.end());
        return *slot;
    }

    Ends sequence_ends(const Alternative& alt, std::size_t k, std::size_t i) {
        Ends frontier{i};
        for (; k < alt.size() && !frontier.empty(); ++k) {
            std::set<std::size_t> next;
            for (auto p : frontier) {
                for (auto e : item_ends(alt[k], p)) next.insert(e);
            }
            frontier.assign(next.begin(), next.end());
        }
        return frontier;
    }

    Ends item_ends(const GrammarItem& item, std::size_t i) {
        switch (item.kind) {
            case GrammarItem::Kind::Terminal:
                if (i < s_.size() && s_[i] == item.symbol) return {i + 1};
                return {};
            case GrammarItem::Kind::Nonterminal:
                return nonterminal_ends(index_.at(item.name), i);
            case GrammarItem::Kind::Repeat: {
                // One or more copies; every copy consumes at least one symbol,
                // so the iteration is bounded by the input length.
                std::set<std::size_t> seen;
                std::deque<std::size_t> work;
                for (auto e : item_ends(item.inner.front(), i)) work.push_back(e);
                while (!work.empty()) {
                    auto e = work.front();
                    work.pop_front();
                    if (!seen.insert(e).second) continue;
                    for (auto f : item_ends(item.inner.front(), e)) work.push_back(f);
                }
                return {seen.begin(), seen.end()};
            }
        }
        return {};
    }

    const Grammar& g_;
    std::string_view s_;
    std::map<std::string, std::size_t> index_;
    std::vector<const std::string*> names_;
    std::vector<std::optional<Ends>> memo_;
};

void encode_item(std::string& key, const GrammarItem& item) {
    switch (item.kind) {
        case GrammarItem::Kind::Terminal:
            key += 't';
            key += item.symbol;
            break;
        case GrammarItem::Kind::Nonterminal:
            key += 'n';
            key += item.name;
            key += '\x01';
            break;
        case GrammarItem::Kind::Repeat:
            key += 'r';
            encode_item(key, item.inner.front());
            key += '\x02';
            break;
    }
}

}  // namespace

bool membership(const Grammar& g, std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!g.terminals.contains(c)) return false;
    }
    return Recognizer(g, s).accepts();
}

std::vector<std::string> generate(const Grammar& g, std::size_t max_len, std::size_t cap) {
    struct Form {
        std::string prefix;
        std::vector<GrammarItem> rest;
    };
    std::set<std::string> found;
    std::unordered_set<std::string> visited;
    std::deque<Form> queue;
    const std::size_t form_cap = cap * 16;

    auto push = [&](Form f) {
        // Leading terminals move into the prefix; each remaining item yields
        // at least one symbol.
        std::size_t k = 0;
        while (k < f.rest.size() && f.rest[k].kind == GrammarItem::Kind::Terminal) f.prefix += f.rest[k++].symbol;
        f.rest.erase(f.rest.begin(), f.rest.begin() + static_cast<std::ptrdiff_t>(k));
        if (f.prefix.size() + f.rest.size() > max_len) return;
        if (f.rest.empty()) {
            found.insert(f.prefix);
            if (found.size() > cap) throw CapExceeded("generate produced more than " + std::to_string(cap) + " strings");
            return;
        }
        std::string key = f.prefix + '\x03';
        for (const auto& item : f.rest) encode_item(key, item);
        if (!visited.insert(std::move(key)).second) return;
        if (visited.size() > form_cap)
            throw CapExceeded("generate explored more than " + std::to_string(form_cap) + " sentential forms");
        queue.push_back(std::move(f));
    };

    push({"", {GrammarItem::nonterminal(g.start)}});
    while (!queue.empty()) {
        Form f = std::move(queue.front());
        queue.pop_front();
        GrammarItem head = f.rest.front();
        std::vector<GrammarItem> tail(f.rest.begin() + 1, f.rest.end());
        if (head.kind == GrammarItem::Kind::Nonterminal) {
            for (const auto& alt : g.rules.at(head.name)) {
                Form next{f.prefix, alt};
                next.rest.insert(next.rest.end(), tail.begin(), tail.end());
                push(std::move(next));
            }
        } else {
            // X+ -> X | X X+
            const auto& x = head.inner.front();
            Form once{f.prefix, {x}};
            once.rest.insert(once.rest.end(), tail.begin(), tail.end());
            push(std::move(once));
            Form more{f.prefix, {x, head}};
            more.rest.insert(more.rest.end(), tail.begin(), tail.end());
            push(std::move(more));
        }
    }

    std::vector<std::string> out(found.begin(), found.end());
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
    return out;
}

namespace {

void check_bijection(const std::set<char>& alphabet, const std::map<char, char>& sigma) {
    std::set<char> image;
    for (char c : alphabet) {
        auto it = sigma.find(c);
        if (it == sigma.end()) throw Error(std::string("relabeling does not cover symbol '") + c + "'");
        if (!image.insert(it->second).second)
            throw Error(std::string("relabeling is not injective at '") + it->second + "'");
    }
}

GrammarItem relabel_item(const GrammarItem& item, const std::map<char, char>& sigma) {
    switch (item.kind) {
        case GrammarItem::Kind::Terminal: return GrammarItem::terminal(sigma.at(item.symbol));
        case GrammarItem::Kind::Nonterminal: return item;
        case GrammarItem::Kind::Repeat: return GrammarItem::repeat(relabel_item(item.inner.front(), sigma));
    }
    return item;
}

}  // namespace

Grammar relabel_terminals(const Grammar& g, const std::map<char, char>& sigma) {
    check_bijection(g.terminals, sigma);
    Grammar out = g;
    out.terminals.clear();
    for (char c : g.terminals) out.terminals.insert(sigma.at(c));
    for (auto& [nt, alts] : out.rules) {
        for (auto& alt : alts) {
            for (auto& item : alt) item = relabel_item(item, sigma);
        }
    }
    return out;
}

std::string relabel_string(std::string_view s, const std::map<char, char>& sigma) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        auto it = sigma.find(c);
        if (it == sigma.end()) throw Error(std::string("relabeling does not cover symbol '") + c + "'");
        out += it->second;
    }
    return out;
}

EventSemantics::EventSemantics(std::map<std::string, char> key_to_symbol) : forward_(std::move(key_to_symbol)) {
    for (const auto& [k, c] : forward_) {
        auto [it, inserted] = backward_.emplace(c, k);
        if (!inserted)
            throw Error("keys '" + it->second + "' and '" + k + "' both record symbol '" + std::string(1, c) + "'");
    }
}

char EventSemantics::symbol(const std::string& key) const {
    auto it = forward_.find(key);
    if (it == forward_.end()) throw Error("unknown event key '" + key + "'");
    return it->second;
}

const std::string& EventSemantics::key(char symbol) const {
    auto it = backward_.find(symbol);
    if (it == backward_.end()) throw Error(std::string("no key records symbol '") + symbol + "'");
    return it->second;
}

std::string record_behavior(const std::vector<std::string>& events, const EventSemantics& sem) {
    std::string out;
    out.reserve(events.size());
    for (std::size_t i = 0; i < events.size(); ++i) {
        if (!sem.contains(events[i]))
            throw Error("unknown event key '" + events[i] + "' at index " + std::to_string(i));
        out += sem.symbol(events[i]);
    }
    return out;
}

}  // namespace observe
