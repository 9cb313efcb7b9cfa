#include "observe/familytree.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>

#include "observe/error.hpp"

namespace observe {

using Pair = std::pair<std::size_t, std::size_t>;

namespace {

Pair unordered(std::size_t a, std::size_t b) { return {std::min(a, b), std::max(a, b)}; }

}  // namespace

KinshipGraph KinshipGraph::single(const std::string& name, const std::string& label) {
    KinshipGraph g;
    g.add_person(name, label);
    return g;
}

KinshipGraph KinshipGraph::disjoint_union(const KinshipGraph& a, const KinshipGraph& b) {
    KinshipGraph g = a;
    g.two_parents_ = a.two_parents_ && b.two_parents_;
    const std::size_t offset = g.names_.size();
    for (std::size_t i = 0; i < b.names_.size(); ++i) {
        if (g.contains(b.names_[i])) throw Error("person '" + b.names_[i] + "' occurs in both operands");
        g.add_person(b.names_[i], b.labels_[i]);
    }
    for (auto [p, c] : b.arcs_) g.arcs_.insert({p + offset, c + offset});
    for (auto [u, v] : b.partners_) g.partners_.insert({u + offset, v + offset});
    return g;
}

KinshipGraph KinshipGraph::join_parent(const KinshipGraph& a, const std::string& parent, const KinshipGraph& b,
                                       const std::string& child) {
    if (!a.contains(parent)) throw Error("unknown person '" + parent + "' in left operand");
    if (!b.contains(child)) throw Error("unknown person '" + child + "' in right operand");
    auto g = disjoint_union(a, b);
    g.add_parent_arc(parent, child);
    return g;
}

KinshipGraph KinshipGraph::join_partner(const KinshipGraph& a, const std::string& u, const KinshipGraph& b,
                                        const std::string& v) {
    if (!a.contains(u)) throw Error("unknown person '" + u + "' in left operand");
    if (!b.contains(v)) throw Error("unknown person '" + v + "' in right operand");
    auto g = disjoint_union(a, b);
    g.add_partner(u, v);
    return g;
}

void KinshipGraph::add_person(const std::string& name, const std::string& label) {
    if (name.empty()) throw Error("person name must not be empty");
    if (contains(name)) throw Error("duplicate person '" + name + "'");
    index_.emplace(name, names_.size());
    names_.push_back(name);
    labels_.push_back(label);
}

std::size_t KinshipGraph::id(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw Error("unknown person '" + name + "'");
    return it->second;
}

const std::string& KinshipGraph::label(const std::string& name) const { return labels_[id(name)]; }

void KinshipGraph::set_label(const std::string& name, const std::string& label) { labels_[id(name)] = label; }

void KinshipGraph::set_two_parent_check(bool on) {
    if (on)
        for (std::size_t c = 0; c < names_.size(); ++c)
            if (parents(names_[c]).size() > 2) throw Error("'" + names_[c] + "' already has more than two parents");
    two_parents_ = on;
}

void KinshipGraph::add_parent_arc(const std::string& parent, const std::string& child) {
    const auto p = id(parent);
    const auto c = id(child);
    if (p == c) throw Error("'" + parent + "' cannot be their own parent");
    if (arcs_.contains({p, c})) throw Error("duplicate parent arc " + parent + " -> " + child);
    if (partners_.contains(unordered(p, c)))
        throw Error(parent + " and " + child + " are partners and cannot also be parent and child");
    if (arcs_.contains({c, p}) || reach(c, true)[p])
        throw Error("parent arc " + parent + " -> " + child + " would make someone their own ancestor");
    if (two_parents_ && parents(child).size() >= 2) throw Error("'" + child + "' already has two parents");
    arcs_.insert({p, c});
}

void KinshipGraph::add_partner(const std::string& u, const std::string& v) {
    const auto a = id(u);
    const auto b = id(v);
    if (a == b) throw Error("'" + u + "' cannot partner themselves");
    if (partners_.contains(unordered(a, b))) throw Error("duplicate partner edge " + u + " <-> " + v);
    if (arcs_.contains({a, b}) || arcs_.contains({b, a}))
        throw Error(u + " and " + v + " are parent and child and cannot also be partners");
    partners_.insert(unordered(a, b));
}

std::vector<bool> KinshipGraph::reach(std::size_t from, bool forward) const {
    std::vector<bool> seen(names_.size(), false);
    std::vector<std::size_t> stack{from};
    while (!stack.empty()) {
        const auto x = stack.back();
        stack.pop_back();
        for (auto [p, c] : arcs_) {
            const auto [src, dst] = forward ? Pair{p, c} : Pair{c, p};
            if (src == x && !seen[dst]) {
                seen[dst] = true;
                stack.push_back(dst);
            }
        }
    }
    return seen;
}

bool KinshipGraph::is_child_of(const std::string& u, const std::string& v) const { return arcs_.contains({id(v), id(u)}); }

bool KinshipGraph::is_parent_of(const std::string& u, const std::string& v) const { return arcs_.contains({id(u), id(v)}); }

bool KinshipGraph::partnered(const std::string& u, const std::string& v) const {
    return partners_.contains(unordered(id(u), id(v)));
}

bool KinshipGraph::is_related_to(const std::string& u, const std::string& v) const {
    const auto a = id(u);
    const auto b = id(v);
    std::vector<bool> seen(names_.size(), false);
    std::vector<std::size_t> stack{a};
    seen[a] = true;
    while (!stack.empty()) {
        const auto x = stack.back();
        stack.pop_back();
        auto visit = [&](std::size_t y) {
            if (!seen[y]) {
                seen[y] = true;
                stack.push_back(y);
            }
        };
        for (auto [p, c] : arcs_) {
            if (p == x) visit(c);
            if (c == x) visit(p);
        }
        for (auto [p, q] : partners_) {
            if (p == x) visit(q);
            if (q == x) visit(p);
        }
    }
    return seen[b];
}

bool KinshipGraph::is_descendant_of(const std::string& u, const std::string& v) const { return reach(id(v), true)[id(u)]; }

bool KinshipGraph::is_predecessor_of(const std::string& u, const std::string& v) const { return is_descendant_of(v, u); }

std::set<std::string> KinshipGraph::descendants(const std::string& v) const {
    std::set<std::string> out;
    const auto seen = reach(id(v), true);
    for (std::size_t i = 0; i < seen.size(); ++i)
        if (seen[i]) out.insert(names_[i]);
    return out;
}

std::set<std::string> KinshipGraph::ancestors(const std::string& v) const {
    std::set<std::string> out;
    const auto seen = reach(id(v), false);
    for (std::size_t i = 0; i < seen.size(); ++i)
        if (seen[i]) out.insert(names_[i]);
    return out;
}

std::vector<std::string> KinshipGraph::children(const std::string& v) const {
    const auto x = id(v);
    std::vector<std::string> out;
    for (auto [p, c] : arcs_)
        if (p == x) out.push_back(names_[c]);
    return out;
}

std::vector<std::string> KinshipGraph::parents(const std::string& v) const {
    const auto x = id(v);
    std::vector<std::string> out;
    for (auto [p, c] : arcs_)
        if (c == x) out.push_back(names_[p]);
    return out;
}

// ---- Relations by name ------------------------------------------------------------

std::string to_string(Kinship k) {
    switch (k) {
        case Kinship::ChildOf: return "is_child_of";
        case Kinship::ParentOf: return "is_parent_of";
        case Kinship::Partnered: return "partnered";
        case Kinship::RelatedTo: return "is_related_to";
        case Kinship::DescendantOf: return "is_descendant_of";
        case Kinship::PredecessorOf: return "is_predecessor_of";
    }
    return "";
}

Kinship parse_kinship(std::string_view name) {
    for (auto k : kAllKinships)
        if (to_string(k) == name) return k;
    throw Error("unknown relation '" + std::string(name) + "'");
}

bool query(const KinshipGraph& g, Kinship rel, const std::string& u, const std::string& v) {
    switch (rel) {
        case Kinship::ChildOf: return g.is_child_of(u, v);
        case Kinship::ParentOf: return g.is_parent_of(u, v);
        case Kinship::Partnered: return g.partnered(u, v);
        case Kinship::RelatedTo: return g.is_related_to(u, v);
        case Kinship::DescendantOf: return g.is_descendant_of(u, v);
        case Kinship::PredecessorOf: return g.is_predecessor_of(u, v);
    }
    return false;
}

KinshipGraph build(const std::vector<KinshipStep>& program) {
    std::vector<KinshipGraph> stack;
    auto pop = [&]() {
        if (stack.empty()) throw Error("kinship program pops an empty stack");
        auto g = std::move(stack.back());
        stack.pop_back();
        return g;
    };
    for (const auto& step : program) {
        switch (step.op) {
            case KinshipStep::Op::Single: stack.push_back(KinshipGraph::single(step.u)); break;
            case KinshipStep::Op::JoinParent: {
                auto right = pop();
                auto left = pop();
                stack.push_back(KinshipGraph::join_parent(left, step.u, right, step.v));
                break;
            }
            case KinshipStep::Op::JoinPartner: {
                auto right = pop();
                auto left = pop();
                stack.push_back(KinshipGraph::join_partner(left, step.u, right, step.v));
                break;
            }
            case KinshipStep::Op::Union: {
                auto right = pop();
                auto left = pop();
                stack.push_back(KinshipGraph::disjoint_union(left, right));
                break;
            }
            case KinshipStep::Op::AddParent:
                if (stack.empty()) throw Error("kinship program edits an empty stack");
                stack.back().add_parent_arc(step.u, step.v);
                break;
            case KinshipStep::Op::AddPartner:
                if (stack.empty()) throw Error("kinship program edits an empty stack");
                stack.back().add_partner(step.u, step.v);
                break;
        }
    }
    if (stack.size() != 1)
        throw Error("kinship program leaves " + std::to_string(stack.size()) + " graphs, expected 1");
    return std::move(stack.back());
}

// ---- Text format ------------------------------------------------------------------

namespace {

bool name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '\'';
}

}  // namespace

KinshipGraph read_kinship(std::istream& in) {
    KinshipGraph g;
    std::string line;
    std::size_t lineno = 0;
    auto ensure = [&](const std::string& name) {
        if (!g.contains(name)) g.add_person(name);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t i = 0;
        auto skip_ws = [&]() {
            while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        };
        auto fail = [&](const std::string& msg) { throw ParseError(msg, lineno, i + 1); };
        auto read_name = [&]() {
            skip_ws();
            const auto start = i;
            while (i < line.size() && name_char(line[i])) ++i;
            if (i == start) fail("expected a person name");
            return line.substr(start, i - start);
        };
        skip_ws();
        if (i >= line.size() || line[i] == '#') continue;
        const auto first = read_name();
        skip_ws();
        try {
            if (line.compare(i, 3, "<->") == 0) {
                i += 3;
                const auto second = read_name();
                ensure(first);
                ensure(second);
                g.add_partner(first, second);
            } else if (line.compare(i, 2, "->") == 0) {
                i += 2;
                const auto second = read_name();
                ensure(first);
                ensure(second);
                g.add_parent_arc(first, second);
            } else if (i < line.size() && line[i] == '"') {
                const auto close = line.find('"', i + 1);
                if (close == std::string::npos) fail("unterminated label");
                ensure(first);
                g.set_label(first, line.substr(i + 1, close - i - 1));
                i = close + 1;
            } else if (i >= line.size() || line[i] == '#') {
                ensure(first);
            } else {
                fail("expected '->', '<->' or a quoted label");
            }
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            throw ParseError(e.what(), lineno, 1);
        }
        skip_ws();
        if (i < line.size() && line[i] != '#') fail("unexpected trailing text");
    }
    return g;
}

KinshipGraph load_kinship(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open kinship file '" + path + "'");
    return read_kinship(in);
}

void write_kinship(std::ostream& out, const KinshipGraph& g) {
    const auto& names = g.persons();
    for (const auto& n : names) {
        out << n;
        if (!g.label(n).empty()) out << " \"" << g.label(n) << '"';
        out << '\n';
    }
    for (auto [p, c] : g.parent_arcs()) out << names[p] << " -> " << names[c] << '\n';
    for (auto [u, v] : g.partner_edges()) out << names[u] << " <-> " << names[v] << '\n';
}

void write_descendant_tree(std::ostream& out, const KinshipGraph& g, const std::string& root) {
    std::function<void(const std::string&, std::size_t)> walk = [&](const std::string& v, std::size_t depth) {
        out << std::string(2 * depth, ' ') << v;
        if (!g.label(v).empty()) out << " \"" << g.label(v) << '"';
        out << '\n';
        for (const auto& c : g.children(v)) walk(c, depth + 1);
    };
    walk(root, 0);
}

}  // namespace observe
