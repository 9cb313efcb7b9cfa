#include <algorithm>
#include <random>
#include <string>

#include "doctest.h"
#include "observe/core.hpp"
#include "observe/error.hpp"
#include "observe/fixture.hpp"

using namespace observe;

namespace {

std::string data(const std::string& name) { return std::string(OBSERVE_DATA_DIR) + "/" + name; }

ObjectSystem one_relation_system() {
    ObjectSystem s;
    s.elements = {"a", "b", "c"};
    s.relations["r"] = {2, {{"a", "b"}, {"b", "c"}}};
    return s;
}

ObservationSystem as_observations(const RelationalStructure& s) {
    ObservationSystem o;
    o.elements = s.elements;
    o.relations = s.relations;
    return o;
}

ObservationAlgorithm identity_on(const RelationalStructure& s, const std::string& name = "id") {
    ObservationAlgorithm alg{name, {}, {}};
    for (const auto& x : s.elements) alg.mapping[x] = x;
    for (const auto& [r, rel] : s.relations) alg.relation_pairing[r] = r;
    return alg;
}

}  // namespace

TEST_CASE("identity mapping satisfies the representation condition") {
    auto sys = one_relation_system();
    auto report = verify_representation(sys, as_observations(sys), identity_on(sys));
    CHECK(report.holds());
}

TEST_CASE("food web observed as a digraph is a homomorphism") {
    auto fx = load_fixture(data("foodweb.obs"));
    REQUIRE(fx.algorithms.size() == 1);
    const auto& alg = fx.algorithms[0];
    CHECK(verify_representation(fx.objects, fx.observations_for(alg), alg).holds());
    CHECK(alg.observe("frog") == "3");
}

TEST_CASE("merging two objects yields a single backward counterexample") {
    // r = {(a,c)}; a and b both map to X. Tuples whose image lands in
    // p = {(X,Y)} are (a,c) and (b,c); only (b,c) falls outside r.
    ObjectSystem sys;
    sys.elements = {"a", "b", "c"};
    sys.relations["r"] = {2, {{"a", "c"}}};
    ObservationSystem obs;
    obs.elements = {"X", "Y"};
    obs.relations["p"] = {2, {{"X", "Y"}}};
    ObservationAlgorithm alg{"merge", {{"a", "X"}, {"b", "X"}, {"c", "Y"}}, {{"r", "p"}}};

    auto report = verify_representation(sys, obs, alg);
    CHECK_FALSE(report.holds());
    REQUIRE(report.counterexamples.size() == 1);
    CHECK(report.counterexamples[0].relation == "r");
    CHECK(report.counterexamples[0].objects == Tuple{"b", "c"});
    CHECK(report.counterexamples[0].direction == Direction::Backward);
}

TEST_CASE("forward failures are reported") {
    ObjectSystem sys;
    sys.elements = {"a", "b"};
    sys.relations["r"] = {1, {{"a"}, {"b"}}};
    ObservationSystem obs;
    obs.elements = {"X", "Y"};
    obs.relations["p"] = {1, {{"X"}}};
    ObservationAlgorithm alg{"m", {{"a", "X"}, {"b", "Y"}}, {{"r", "p"}}};
    auto report = verify_representation(sys, obs, alg);
    REQUIRE(report.counterexamples.size() == 1);
    CHECK(report.counterexamples[0].direction == Direction::Forward);
    CHECK(report.counterexamples[0].objects == Tuple{"b"});
}

TEST_CASE("representation errors") {
    auto sys = one_relation_system();
    auto obs = as_observations(sys);

    SUBCASE("mapping not total") {
        auto alg = identity_on(sys);
        alg.mapping.erase("b");
        CHECK_THROWS_AS(verify_representation(sys, obs, alg), Error);
    }
    SUBCASE("arity mismatch") {
        obs.relations["r"] = {3, {}};
        CHECK_THROWS_WITH_AS(verify_representation(sys, obs, identity_on(sys)), doctest::Contains("arity mismatch"),
                             Error);
    }
    SUBCASE("unpaired relation") {
        auto alg = identity_on(sys);
        alg.relation_pairing.clear();
        CHECK_THROWS_AS(verify_representation(sys, obs, alg), Error);
    }
    SUBCASE("tuple referencing a non-member") {
        sys.relations["r"].tuples.insert({"a", "q"});
        CHECK_THROWS_AS(verify_representation(sys, obs, identity_on(sys)), Error);
    }
}

TEST_CASE("existence condition") {
    auto sys = one_relation_system();
    auto obs = as_observations(sys);
    CHECK_FALSE(verify_existence({}, sys, obs));
    CHECK(verify_existence({identity_on(sys)}, sys, obs));

    auto swapped = identity_on(sys, "swap");
    swapped.mapping["a"] = "c";
    swapped.mapping["c"] = "a";
    REQUIRE_FALSE(verify_representation(sys, obs, swapped).holds());
    CHECK(verify_existence({swapped, identity_on(sys)}, sys, obs));
    CHECK_FALSE(verify_existence({swapped}, sys, obs));
}

TEST_CASE("translation from an algorithm to itself is the identity") {
    auto sys = one_relation_system();
    auto obs = as_observations(sys);
    auto alg = identity_on(sys);
    auto w = find_translation(alg, alg, sys, obs, obs);
    REQUIRE(w.found());
    for (const auto& [y, fy] : *w.mapping) CHECK(y == fy);
}

TEST_CASE("height scales admit no translation") {
    auto fx = load_fixture(data("height.obs"));
    const auto& a = fx.algorithms.at(0);
    const auto& b = fx.algorithms.at(1);

    // Independent oracle: every one of the 3^3 label functions fails f(h_A(x)) = h_B(x).
    const std::vector<Id> labels = {"medium", "small", "tall"};
    int witnesses = 0;
    for (int code = 0; code < 27; ++code) {
        std::map<Id, Id> f;
        int c = code;
        for (const auto& l : labels) {
            f[l] = labels[c % 3];
            c /= 3;
        }
        bool ok = true;
        for (const auto& x : fx.objects.elements) ok = ok && f.at(a.observe(x)) == b.observe(x);
        witnesses += ok;
    }
    REQUIRE(witnesses == 0);

    auto w = find_translation(a, b, fx.objects, fx.observations_for(a), fx.observations_for(b));
    CHECK_FALSE(w.found());
}

TEST_CASE("kilograms and pounds translate linearly") {
    auto fx = load_fixture(data("mass.obs"));
    const auto& kg = fx.algorithms.at(0);
    const auto& lb = fx.algorithms.at(1);
    auto w = find_translation(kg, lb, fx.objects, fx.observations_for(kg), fx.observations_for(lb));
    REQUIRE(w.found());
    REQUIRE(w.mapping->size() == 4);
    for (const auto& [k, p] : *w.mapping) {
        CHECK(std::stod(p) * 0.453592 == doctest::Approx(std::stod(k)).epsilon(1e-4));
    }
    CHECK(classify(fx.objects, {fx.observations_for(kg), fx.observations_for(lb)}, {kg, lb}) == Verdict::Strong);
}

TEST_CASE("translation search respects its cap") {
    auto fx = load_fixture(data("mass.obs"));
    const auto& kg = fx.algorithms.at(0);
    const auto& lb = fx.algorithms.at(1);
    CHECK_THROWS_AS(find_translation(kg, lb, fx.objects, fx.observations_for(kg), fx.observations_for(lb), 3),
                    SearchExhausted);
}

TEST_CASE("translation requires valid algorithms") {
    auto sys = one_relation_system();
    auto obs = as_observations(sys);
    auto bad = identity_on(sys, "bad");
    bad.mapping["a"] = "c";
    bad.mapping["c"] = "a";
    CHECK_THROWS_AS(find_translation(bad, identity_on(sys), sys, obs, obs), Error);
}

TEST_CASE("classify") {
    auto sys = one_relation_system();
    auto obs = as_observations(sys);
    CHECK(classify(sys, {obs}, {identity_on(sys)}) == Verdict::Strong);
    CHECK(classify(sys, {}, {}) == Verdict::NotObservement);

    auto fx = load_fixture(data("height.obs"));
    std::vector<ObservationSystem> obs_list;
    for (const auto& alg : fx.algorithms) obs_list.push_back(fx.observations_for(alg));
    CHECK(classify(fx.objects, obs_list, fx.algorithms) == Verdict::Weak);

    auto rev_algs = fx.algorithms;
    std::reverse(rev_algs.begin(), rev_algs.end());
    std::reverse(obs_list.begin(), obs_list.end());
    CHECK(classify(fx.objects, obs_list, rev_algs) == Verdict::Weak);
}

TEST_CASE("round-trip translations compose to the identity") {
    auto fx = load_fixture(data("mass.obs"));
    const auto& kg = fx.algorithms.at(0);
    const auto& lb = fx.algorithms.at(1);
    const auto& okg = fx.observations_for(kg);
    const auto& olb = fx.observations_for(lb);
    auto there = find_translation(kg, lb, fx.objects, okg, olb);
    auto back = find_translation(lb, kg, fx.objects, olb, okg);
    REQUIRE(there.found());
    REQUIRE(back.found());
    for (const auto& y : kg.range()) CHECK(back.mapping->at(there.mapping->at(y)) == y);
    for (const auto& y : lb.range()) CHECK(there.mapping->at(back.mapping->at(y)) == y);
}

TEST_CASE("verdict is invariant under renaming and reordering") {
    std::mt19937 rng(11);
    for (const char* file : {"height.obs", "mass.obs", "foodweb.obs"}) {
        auto fx = load_fixture(data(file));
        auto verdict_of = [](const ObservementFixture& f) {
            std::vector<ObservationSystem> obs_list;
            for (const auto& alg : f.algorithms) obs_list.push_back(f.observations_for(alg));
            return classify(f.objects, obs_list, f.algorithms);
        };
        const Verdict expected = verdict_of(fx);
        for (int trial = 0; trial < 20; ++trial) {
            auto g = fx;
            // Rename observations within each system.
            for (auto& [name, obs] : g.observations) {
                std::vector<Id> old(obs.elements.begin(), obs.elements.end());
                std::vector<Id> fresh;
                for (std::size_t i = 0; i < old.size(); ++i) fresh.push_back("o" + std::to_string(i));
                std::shuffle(fresh.begin(), fresh.end(), rng);
                std::map<Id, Id> ren;
                for (std::size_t i = 0; i < old.size(); ++i) ren[old[i]] = fresh[i];
                ObservationSystem renamed;
                for (const auto& e : obs.elements) renamed.elements.insert(ren[e]);
                for (const auto& [rn, rel] : obs.relations) {
                    Relation nr{rel.arity, {}};
                    for (const auto& t : rel.tuples) {
                        Tuple nt;
                        for (const auto& x : t) nt.push_back(ren[x]);
                        nr.tuples.insert(nt);
                    }
                    renamed.relations[rn] = nr;
                }
                obs = renamed;
                for (auto& alg : g.algorithms) {
                    if (g.algorithm_observations.at(alg.name) != name) continue;
                    for (auto& [x, y] : alg.mapping) y = ren.at(y);
                }
            }
            std::shuffle(g.algorithms.begin(), g.algorithms.end(), rng);
            CHECK(verdict_of(g) == expected);
        }
    }
}

TEST_CASE("fixture files round-trip") {
    for (const char* file : {"height.obs", "mass.obs", "foodweb.obs"}) {
        auto fx = load_fixture(data(file));
        CHECK(parse_fixture(write_fixture(fx)) == fx);
    }
}

TEST_CASE("fixture parse diagnostics carry positions") {
    try {
        parse_fixture("OBJECTS\na b\nRELATION r/2\na\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 4);
    }
    CHECK_THROWS_AS(parse_fixture("a b\n"), ParseError);
    CHECK_THROWS_AS(parse_fixture("OBJECTS\nRELATION r/x\n"), ParseError);
    CHECK_THROWS_AS(parse_fixture("OBJECTS\nRELATION r/0\n"), ParseError);
    CHECK_THROWS_AS(parse_fixture("OBJECTS\na\nRELATION r/1\nb\n"), Error);
}
