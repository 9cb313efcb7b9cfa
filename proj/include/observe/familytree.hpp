#pragma once

// Family trees: parent -> child arcs plus undirected partner edges, built
// with the recursive constructors and queried for kinship relations.

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace observe {

class KinshipGraph {
public:
    // The empty digraph D(0): a single person, no edges.
    static KinshipGraph single(const std::string& name, const std::string& label = "");

    // D1 + D2. Throws Error when a name occurs in both.
    static KinshipGraph disjoint_union(const KinshipGraph& a, const KinshipGraph& b);
    // D1 + D2 joined by the arc parent -> child (parent in a, child in b).
    static KinshipGraph join_parent(const KinshipGraph& a, const std::string& parent, const KinshipGraph& b,
                                    const std::string& child);
    // D1 + D2 joined by a partner edge.
    static KinshipGraph join_partner(const KinshipGraph& a, const std::string& u, const KinshipGraph& b,
                                     const std::string& v);

    KinshipGraph() = default;

    // D + uv. Throw Error on an unknown person, a duplicate edge, a self edge,
    // a pair already joined by the other edge kind, a parent cycle, or a third
    // parent while the two-parent check is on.
    void add_parent_arc(const std::string& parent, const std::string& child);
    void add_partner(const std::string& u, const std::string& v);

    // Adds a person with no edges; throws Error if the name exists.
    void add_person(const std::string& name, const std::string& label = "");

    void set_two_parent_check(bool on);
    bool two_parent_check() const noexcept { return two_parents_; }

    bool contains(const std::string& name) const { return index_.contains(name); }
    const std::vector<std::string>& persons() const noexcept { return names_; }
    const std::string& label(const std::string& name) const;
    void set_label(const std::string& name, const std::string& label);

    const std::set<std::pair<std::size_t, std::size_t>>& parent_arcs() const noexcept { return arcs_; }
    const std::set<std::pair<std::size_t, std::size_t>>& partner_edges() const noexcept { return partners_; }

    bool is_child_of(const std::string& u, const std::string& v) const;
    bool is_parent_of(const std::string& u, const std::string& v) const;
    bool partnered(const std::string& u, const std::string& v) const;
    // Reflexive: every person is related to themselves.
    bool is_related_to(const std::string& u, const std::string& v) const;
    // u is reachable from v along one or more parent -> child arcs.
    bool is_descendant_of(const std::string& u, const std::string& v) const;
    bool is_predecessor_of(const std::string& u, const std::string& v) const;

    std::set<std::string> descendants(const std::string& v) const;
    std::set<std::string> ancestors(const std::string& v) const;
    std::vector<std::string> children(const std::string& v) const;
    std::vector<std::string> parents(const std::string& v) const;

private:
    std::size_t id(const std::string& name) const;
    std::vector<bool> reach(std::size_t from, bool forward) const;

    std::vector<std::string> names_;
    std::vector<std::string> labels_;
    std::map<std::string, std::size_t> index_;
    std::set<std::pair<std::size_t, std::size_t>> arcs_;      // parent, child
    std::set<std::pair<std::size_t, std::size_t>> partners_;  // smaller id first
    bool two_parents_ = true;
};

enum class Kinship { ChildOf, ParentOf, Partnered, RelatedTo, DescendantOf, PredecessorOf };

inline constexpr Kinship kAllKinships[] = {Kinship::ChildOf,   Kinship::ParentOf,     Kinship::Partnered,
                                           Kinship::RelatedTo, Kinship::DescendantOf, Kinship::PredecessorOf};

// "is_child_of", "is_parent_of", "partnered", "is_related_to",
// "is_descendant_of", "is_predecessor_of".
std::string to_string(Kinship k);
// Throws Error on an unknown name.
Kinship parse_kinship(std::string_view name);

// Throws Error on an unknown person.
bool query(const KinshipGraph& g, Kinship rel, const std::string& u, const std::string& v);

// One step of a postfix program over a stack of graphs. `Single` pushes
// D(0); `JoinParent`, `JoinPartner` and `Union` pop two graphs (the second
// popped is the left operand); `AddParent` and `AddPartner` edit the top.
struct KinshipStep {
    enum class Op { Single, JoinParent, JoinPartner, AddParent, AddPartner, Union };

    Op op = Op::Single;
    std::string u;
    std::string v;
};

// Throws Error on a stack underflow or when more than one graph remains.
KinshipGraph build(const std::vector<KinshipStep>& program);

// Lines `parent -> child`, `a <-> b`, `person "label"`; `#` comments.
// People are created on first mention. Throws ParseError.
KinshipGraph read_kinship(std::istream& in);
KinshipGraph load_kinship(const std::string& path);
void write_kinship(std::ostream& out, const KinshipGraph& g);

// Indented descendant tree, two spaces per generation; labels in quotes.
void write_descendant_tree(std::ostream& out, const KinshipGraph& g, const std::string& root);

}  // namespace observe
