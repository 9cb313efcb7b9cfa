#include "observe/fixture.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "observe/error.hpp"

namespace observe {

namespace {

const std::set<std::string> kKeywords = {"OBJECTS", "OBSERVATIONS", "RELATION", "MAP", "PAIR"};

struct Token {
    std::string text;
    std::size_t column;
};

std::vector<Token> tokenize(const std::string& line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] == '#') break;
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != '#') ++i;
        out.push_back({line.substr(start, i - start), start + 1});
    }
    return out;
}

enum class Section { None, Objects, Observations, ObjectRelation, ObservationRelation, Map, Pair };

}  // namespace

const ObservationSystem& ObservementFixture::observations_for(const ObservationAlgorithm& alg) const {
    auto it = algorithm_observations.find(alg.name);
    const std::string name = it == algorithm_observations.end() ? kDefaultObservationName : it->second;
    auto obs = observations.find(name);
    if (obs == observations.end()) throw Error("unknown observation system '" + name + "'");
    return obs->second;
}

ObservementFixture parse_fixture(std::istream& in) {
    ObservementFixture fx;
    Section section = Section::None;
    ObservationSystem* current_obs = nullptr;
    Relation* current_rel = nullptr;
    ObservationAlgorithm* current_alg = nullptr;
    bool pairing = false;
    bool seen_objects = false;

    auto find_or_add_alg = [&](const std::string& name) -> ObservationAlgorithm& {
        auto it = std::find_if(fx.algorithms.begin(), fx.algorithms.end(),
                               [&](const auto& a) { return a.name == name; });
        if (it != fx.algorithms.end()) return *it;
        fx.algorithms.push_back({name, {}, {}});
        return fx.algorithms.back();
    };

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto toks = tokenize(line);
        if (toks.empty()) continue;
        const auto& head = toks[0];

        if (kKeywords.contains(head.text)) {
            auto fail = [&](const std::string& msg, const Token& at) { throw ParseError(msg, lineno, at.column); };
            current_rel = nullptr;
            if (head.text == "OBJECTS") {
                if (toks.size() > 1) fail("OBJECTS takes no arguments", toks[1]);
                if (seen_objects) fail("duplicate OBJECTS section", head);
                seen_objects = true;
                section = Section::Objects;
            } else if (head.text == "OBSERVATIONS") {
                if (toks.size() > 2) fail("OBSERVATIONS takes at most one name", toks[2]);
                std::string name = toks.size() == 2 ? toks[1].text : kDefaultObservationName;
                if (fx.observations.contains(name)) fail("duplicate observation system '" + name + "'", head);
                current_obs = &fx.observations[name];
                section = Section::Observations;
            } else if (head.text == "RELATION") {
                if (toks.size() != 2) fail("expected RELATION <name>/<arity>", head);
                const auto& spec = toks[1].text;
                auto slash = spec.rfind('/');
                if (slash == std::string::npos || slash == 0 || slash + 1 == spec.size())
                    fail("expected <name>/<arity>", toks[1]);
                std::size_t arity = 0;
                try {
                    std::size_t used = 0;
                    arity = std::stoul(spec.substr(slash + 1), &used);
                    if (used != spec.size() - slash - 1) throw std::invalid_argument("arity");
                } catch (const std::exception&) {
                    fail("malformed arity in '" + spec + "'", toks[1]);
                }
                if (arity == 0) fail("relation arity must be at least 1", toks[1]);
                const std::string name = spec.substr(0, slash);
                RelationalStructure* owner = nullptr;
                if (section == Section::Objects || section == Section::ObjectRelation) {
                    owner = &fx.objects;
                    section = Section::ObjectRelation;
                } else if (section == Section::Observations || section == Section::ObservationRelation) {
                    owner = current_obs;
                    section = Section::ObservationRelation;
                } else {
                    fail("RELATION must follow OBJECTS or OBSERVATIONS", head);
                }
                if (owner->relations.contains(name)) fail("duplicate relation '" + name + "'", toks[1]);
                current_rel = &owner->relations[name];
                current_rel->arity = arity;
            } else if (head.text == "MAP" || head.text == "PAIR") {
                pairing = head.text == "PAIR";
                std::size_t max_args = pairing ? 2 : 3;
                if (toks.size() < 2 || toks.size() > max_args)
                    fail(pairing ? "expected PAIR <algorithm>" : "expected MAP <algorithm> [<observations>]", head);
                current_alg = &find_or_add_alg(toks[1].text);
                if (!pairing) {
                    std::string obs = toks.size() == 3 ? toks[2].text : kDefaultObservationName;
                    auto [it, inserted] = fx.algorithm_observations.emplace(current_alg->name, obs);
                    if (!inserted && it->second != obs)
                        fail("algorithm '" + current_alg->name + "' already observes '" + it->second + "'", toks.back());
                }
                section = pairing ? Section::Pair : Section::Map;
            }
            continue;
        }

        for (const auto& t : toks) {
            if (kKeywords.contains(t.text)) throw ParseError("keyword '" + t.text + "' in data line", lineno, t.column);
        }

        switch (section) {
            case Section::None:
                throw ParseError("data before any section", lineno, head.column);
            case Section::Objects:
                for (const auto& t : toks) fx.objects.elements.insert(t.text);
                break;
            case Section::Observations:
                for (const auto& t : toks) current_obs->elements.insert(t.text);
                break;
            case Section::ObjectRelation:
            case Section::ObservationRelation: {
                if (toks.size() != current_rel->arity)
                    throw ParseError("expected " + std::to_string(current_rel->arity) + " identifiers, got " +
                                         std::to_string(toks.size()),
                                     lineno, head.column);
                Tuple t;
                for (const auto& tok : toks) t.push_back(tok.text);
                current_rel->tuples.insert(std::move(t));
                break;
            }
            case Section::Map:
            case Section::Pair: {
                if (toks.size() != 2) throw ParseError("expected exactly two identifiers", lineno, head.column);
                auto& table = section == Section::Map ? current_alg->mapping : current_alg->relation_pairing;
                auto [it, inserted] = table.emplace(toks[0].text, toks[1].text);
                if (!inserted && it->second != toks[1].text)
                    throw ParseError("'" + toks[0].text + "' is already mapped to '" + it->second + "'", lineno,
                                     head.column);
                break;
            }
        }
    }

    fx.objects.validate();
    for (const auto& [name, obs] : fx.observations) obs.validate();
    for (const auto& alg : fx.algorithms) {
        if (!fx.algorithm_observations.contains(alg.name)) fx.algorithm_observations[alg.name] = kDefaultObservationName;
    }
    return fx;
}

ObservementFixture parse_fixture(const std::string& text) {
    std::istringstream in(text);
    return parse_fixture(in);
}

ObservementFixture load_fixture(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    return parse_fixture(in);
}

namespace {

void check_id(const std::string& id) {
    if (id.empty() || kKeywords.contains(id) ||
        std::any_of(id.begin(), id.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)) || c == '#'; }))
        throw Error("identifier '" + id + "' cannot be written to a fixture file");
}

void write_structure(std::ostream& out, const RelationalStructure& s) {
    std::size_t col = 0;
    for (const auto& e : s.elements) {
        check_id(e);
        out << (col ? " " : "") << e;
        if (++col == 16) {
            out << '\n';
            col = 0;
        }
    }
    if (col) out << '\n';
    for (const auto& [name, rel] : s.relations) {
        check_id(name);
        out << "RELATION " << name << '/' << rel.arity << '\n';
        for (const auto& t : rel.tuples) {
            for (std::size_t i = 0; i < t.size(); ++i) out << (i ? " " : "") << t[i];
            out << '\n';
        }
    }
}

}  // namespace

std::string write_fixture(const ObservementFixture& fx) {
    std::ostringstream out;
    out << "OBJECTS\n";
    write_structure(out, fx.objects);
    for (const auto& [name, obs] : fx.observations) {
        check_id(name);
        out << "OBSERVATIONS " << name << '\n';
        write_structure(out, obs);
    }
    for (const auto& alg : fx.algorithms) {
        check_id(alg.name);
        auto it = fx.algorithm_observations.find(alg.name);
        out << "MAP " << alg.name << ' ' << (it == fx.algorithm_observations.end() ? kDefaultObservationName : it->second)
            << '\n';
        for (const auto& [x, y] : alg.mapping) out << x << ' ' << y << '\n';
        out << "PAIR " << alg.name << '\n';
        for (const auto& [r, p] : alg.relation_pairing) out << r << ' ' << p << '\n';
    }
    return out.str();
}

}  // namespace observe
