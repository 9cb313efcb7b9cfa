#pragma once

// Line-oriented text format for observement fixtures.
//
//   # comment
//   OBJECTS
//   a b c                  (whitespace-separated identifiers, any number of lines)
//   RELATION eats/2        (belongs to the most recent OBJECTS/OBSERVATIONS section)
//   a b                    (one tuple per line)
//   OBSERVATIONS web       (name is optional and defaults to "default")
//   A B C
//   RELATION edge/2
//   A B
//   MAP m web              (algorithm name, then its observation system; optional)
//   a A                    (object observation)
//   PAIR m                 (algorithm name)
//   eats edge              (object-relation observation-relation)
//
// Section keywords are reserved and cannot be used as identifiers.

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "observe/core.hpp"

namespace observe {

inline constexpr const char* kDefaultObservationName = "default";

struct ObservementFixture {
    ObjectSystem objects;
    std::map<std::string, ObservationSystem> observations;
    std::vector<ObservationAlgorithm> algorithms;
    std::map<std::string, std::string> algorithm_observations;  // algorithm -> observation system

    const ObservationSystem& observations_for(const ObservationAlgorithm& alg) const;

    bool operator==(const ObservementFixture&) const = default;
};

ObservementFixture parse_fixture(std::istream& in);
ObservementFixture parse_fixture(const std::string& text);
ObservementFixture load_fixture(const std::string& path);

std::string write_fixture(const ObservementFixture& fx);

}  // namespace observe
