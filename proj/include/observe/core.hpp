#pragma once

// Finite observement systems: a set of objects with relations, a set of
// observations with relations, and algorithms mapping the one onto the other.
// The representation, existence and uniqueness conditions are checked by
// exhaustive enumeration over the finite tuple sets.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace observe {

using Id = std::string;
using Tuple = std::vector<Id>;

struct Relation {
    std::size_t arity = 0;
    std::set<Tuple> tuples;

    bool operator==(const Relation&) const = default;
};

// Shared shape of the object and observation sides.
struct RelationalStructure {
    std::set<Id> elements;
    std::map<std::string, Relation> relations;

    // Throws Error if a tuple has the wrong arity or references a
    // non-member.
    void validate() const;

    bool operator==(const RelationalStructure&) const = default;
};

struct ObjectSystem : RelationalStructure {};
struct ObservationSystem : RelationalStructure {};

struct ObservationAlgorithm {
    std::string name;
    std::map<Id, Id> mapping;                               // object -> observation
    std::map<std::string, std::string> relation_pairing;    // object relation -> observation relation

    Id observe(const Id& object) const;
    std::set<Id> range() const;

    bool operator==(const ObservationAlgorithm&) const = default;
};

enum class Direction {
    Forward,   // r holds on the objects but p fails on the images
    Backward,  // p holds on the images but r fails on the objects
};

struct Counterexample {
    std::string relation;
    Tuple objects;
    Direction direction;

    bool operator==(const Counterexample&) const = default;
};

struct HomomorphismReport {
    std::vector<Counterexample> counterexamples;

    bool holds() const noexcept { return counterexamples.empty(); }
};

struct TranslationWitness {
    std::optional<std::map<Id, Id>> mapping;

    bool found() const noexcept { return mapping.has_value(); }
};

enum class Verdict { Strong, Weak, NotObservement };

const char* to_string(Verdict v) noexcept;
const char* to_string(Direction d) noexcept;

inline constexpr std::uint64_t kDefaultTranslationCap = 1'000'000;

// Checks r(x1..xk) <=> p(h(x1)..h(xk)) in both directions for every paired
// relation. Throws Error on a non-total mapping, an unpaired or unknown
// relation, or an arity mismatch.
HomomorphismReport verify_representation(const ObjectSystem& sys, const ObservationSystem& obs,
                                         const ObservationAlgorithm& alg);

// True iff at least one algorithm passes verify_representation. Each
// algorithm is checked against the same observation system.
bool verify_existence(const std::vector<ObservationAlgorithm>& algorithms, const ObjectSystem& sys,
                      const ObservationSystem& obs);

// Searches functions range(a) -> range(b) in lexicographic order for the first
// f with f(h_a(x)) = h_b(x) for all objects x and p_a(y) <=> p_b(f(y)) for
// every paired relation. Throws SearchExhausted once more than `cap`
// candidate assignments have been tried.
TranslationWitness find_translation(const ObservationAlgorithm& a, const ObservationAlgorithm& b,
                                    const ObjectSystem& sys, const ObservationSystem& obs_a,
                                    const ObservationSystem& obs_b,
                                    std::uint64_t cap = kDefaultTranslationCap);

// obs_list[i] is the observation system of alg_list[i].
Verdict classify(const ObjectSystem& sys, const std::vector<ObservationSystem>& obs_list,
                 const std::vector<ObservationAlgorithm>& alg_list,
                 std::uint64_t cap = kDefaultTranslationCap);

}  // namespace observe
