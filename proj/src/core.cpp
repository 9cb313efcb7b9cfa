#include "observe/core.hpp"

#include <algorithm>
#include <functional>

#include "observe/error.hpp"

namespace observe {

namespace {

using Preimage = std::map<Id, std::vector<Id>>;

Preimage invert(const std::map<Id, Id>& h) {
    Preimage pre;
    for (const auto& [x, y] : h) pre[y].push_back(x);
    return pre;
}

Tuple image(const Tuple& t, const std::map<Id, Id>& h) {
    Tuple out;
    out.reserve(t.size());
    for (const auto& x : t) out.push_back(h.at(x));
    return out;
}

// Calls visit(t) for every t in pre(u[0]) x ... x pre(u[k-1]).
void for_each_preimage(const Tuple& u, const Preimage& pre, const std::function<void(const Tuple&)>& visit) {
    std::vector<const std::vector<Id>*> axes;
    axes.reserve(u.size());
    for (const auto& y : u) {
        auto it = pre.find(y);
        if (it == pre.end()) return;
        axes.push_back(&it->second);
    }
    Tuple t(u.size());
    std::vector<std::size_t> idx(u.size(), 0);
    for (std::size_t i = 0; i < u.size(); ++i) t[i] = (*axes[i])[0];
    while (true) {
        visit(t);
        std::size_t i = u.size();
        while (i > 0) {
            --i;
            if (++idx[i] < axes[i]->size()) {
                t[i] = (*axes[i])[idx[i]];
                break;
            }
            idx[i] = 0;
            t[i] = (*axes[i])[0];
            if (i == 0) return;
        }
        if (u.empty()) return;
    }
}

// Both directions of r(t) <=> p(h(t)) over every tuple of the domain.
// `domain_tuples` must only contain elements in the domain of h.
void biconditional_failures(const std::set<Tuple>& domain_tuples, const std::set<Tuple>& codomain_tuples,
                            const std::map<Id, Id>& h, const Preimage& pre,
                            const std::function<void(const Tuple&, Direction)>& report) {
    for (const auto& t : domain_tuples) {
        if (!codomain_tuples.contains(image(t, h))) report(t, Direction::Forward);
    }
    for (const auto& u : codomain_tuples) {
        for_each_preimage(u, pre, [&](const Tuple& t) {
            if (!domain_tuples.contains(t)) report(t, Direction::Backward);
        });
    }
}

void check_pairing(const ObjectSystem& sys, const ObservationSystem& obs, const ObservationAlgorithm& alg) {
    for (const auto& x : sys.elements) {
        auto it = alg.mapping.find(x);
        if (it == alg.mapping.end())
            throw Error("algorithm '" + alg.name + "' does not map object '" + x + "'");
        if (!obs.elements.contains(it->second))
            throw Error("algorithm '" + alg.name + "' maps '" + x + "' to unknown observation '" + it->second + "'");
    }
    for (const auto& [x, y] : alg.mapping) {
        if (!sys.elements.contains(x))
            throw Error("algorithm '" + alg.name + "' maps unknown object '" + x + "'");
    }
    for (const auto& [r, rel] : sys.relations) {
        auto it = alg.relation_pairing.find(r);
        if (it == alg.relation_pairing.end())
            throw Error("algorithm '" + alg.name + "' has no pairing for relation '" + r + "'");
        auto pit = obs.relations.find(it->second);
        if (pit == obs.relations.end())
            throw Error("relation '" + r + "' is paired with unknown observation relation '" + it->second + "'");
        if (pit->second.arity != rel.arity)
            throw Error("arity mismatch: '" + r + "'/" + std::to_string(rel.arity) + " paired with '" + it->second +
                        "'/" + std::to_string(pit->second.arity));
    }
    for (const auto& [r, p] : alg.relation_pairing) {
        if (!sys.relations.contains(r))
            throw Error("algorithm '" + alg.name + "' pairs unknown object relation '" + r + "'");
    }
}

}  // namespace

void RelationalStructure::validate() const {
    for (const auto& [name, rel] : relations) {
        for (const auto& t : rel.tuples) {
            if (t.size() != rel.arity)
                throw Error("relation '" + name + "' has arity " + std::to_string(rel.arity) + " but a tuple of size " +
                            std::to_string(t.size()));
            for (const auto& x : t) {
                if (!elements.contains(x))
                    throw Error("relation '" + name + "' references unknown element '" + x + "'");
            }
        }
    }
}

Id ObservationAlgorithm::observe(const Id& object) const {
    auto it = mapping.find(object);
    if (it == mapping.end()) throw Error("algorithm '" + name + "' does not map object '" + object + "'");
    return it->second;
}

std::set<Id> ObservationAlgorithm::range() const {
    std::set<Id> out;
    for (const auto& [x, y] : mapping) out.insert(y);
    return out;
}

const char* to_string(Verdict v) noexcept {
    switch (v) {
        case Verdict::Strong: return "strong";
        case Verdict::Weak: return "weak";
        case Verdict::NotObservement: return "not-observement";
    }
    return "?";
}

const char* to_string(Direction d) noexcept {
    return d == Direction::Forward ? "=>" : "<=";
}

HomomorphismReport verify_representation(const ObjectSystem& sys, const ObservationSystem& obs,
                                         const ObservationAlgorithm& alg) {
    sys.validate();
    obs.validate();
    check_pairing(sys, obs, alg);

    const Preimage pre = invert(alg.mapping);
    HomomorphismReport report;
    for (const auto& [r, rel] : sys.relations) {
        const auto& p = obs.relations.at(alg.relation_pairing.at(r));
        biconditional_failures(rel.tuples, p.tuples, alg.mapping, pre, [&](const Tuple& t, Direction d) {
            report.counterexamples.push_back({r, t, d});
        });
    }
    return report;
}

bool verify_existence(const std::vector<ObservationAlgorithm>& algorithms, const ObjectSystem& sys,
                      const ObservationSystem& obs) {
    return std::any_of(algorithms.begin(), algorithms.end(),
                       [&](const auto& alg) { return verify_representation(sys, obs, alg).holds(); });
}

TranslationWitness find_translation(const ObservationAlgorithm& a, const ObservationAlgorithm& b,
                                    const ObjectSystem& sys, const ObservationSystem& obs_a,
                                    const ObservationSystem& obs_b, std::uint64_t cap) {
    if (!verify_representation(sys, obs_a, a).holds())
        throw Error("algorithm '" + a.name + "' does not satisfy the representation condition");
    if (!verify_representation(sys, obs_b, b).holds())
        throw Error("algorithm '" + b.name + "' does not satisfy the representation condition");

    const std::set<Id> dom_set = a.range();
    const std::vector<Id> dom(dom_set.begin(), dom_set.end());
    const std::set<Id> cod_set = b.range();
    const std::vector<Id> cod(cod_set.begin(), cod_set.end());

    // Values of h_b over each fibre of h_a; f(y) must equal all of them.
    std::vector<std::set<Id>> required(dom.size());
    for (const auto& x : sys.elements) {
        auto pos = std::lower_bound(dom.begin(), dom.end(), a.observe(x)) - dom.begin();
        required[static_cast<std::size_t>(pos)].insert(b.observe(x));
    }

    // Observation-side relations restricted to range(a), for the relation check.
    struct Pair {
        std::set<Tuple> pa;
        const std::set<Tuple>* pb;
    };
    std::vector<Pair> pairs;
    for (const auto& [r, rel] : sys.relations) {
        Pair pr{{}, &obs_b.relations.at(b.relation_pairing.at(r)).tuples};
        for (const auto& t : obs_a.relations.at(a.relation_pairing.at(r)).tuples) {
            if (std::all_of(t.begin(), t.end(), [&](const Id& y) { return dom_set.contains(y); })) pr.pa.insert(t);
        }
        pairs.push_back(std::move(pr));
    }

    std::map<Id, Id> f;
    std::uint64_t tried = 0;
    auto preserves_relations = [&]() {
        const Preimage pre = invert(f);
        bool ok = true;
        for (const auto& pr : pairs) {
            biconditional_failures(pr.pa, *pr.pb, f, pre, [&](const Tuple&, Direction) { ok = false; });
            if (!ok) return false;
        }
        return true;
    };

    std::function<bool(std::size_t)> search = [&](std::size_t i) -> bool {
        if (i == dom.size()) return preserves_relations();
        for (const auto& c : cod) {
            if (++tried > cap)
                throw SearchExhausted("translation search exceeded " + std::to_string(cap) + " candidate assignments");
            if (required[i].size() != 1 || *required[i].begin() != c) continue;
            f[dom[i]] = c;
            if (search(i + 1)) return true;
            f.erase(dom[i]);
        }
        return false;
    };

    TranslationWitness w;
    if (search(0)) w.mapping = f;
    return w;
}

Verdict classify(const ObjectSystem& sys, const std::vector<ObservationSystem>& obs_list,
                 const std::vector<ObservationAlgorithm>& alg_list, std::uint64_t cap) {
    if (obs_list.size() != alg_list.size())
        throw Error("classify needs one observation system per algorithm");

    std::vector<std::size_t> valid;
    for (std::size_t i = 0; i < alg_list.size(); ++i) {
        if (verify_representation(sys, obs_list[i], alg_list[i]).holds()) valid.push_back(i);
    }
    if (valid.empty()) return Verdict::NotObservement;

    for (auto i : valid) {
        for (auto j : valid) {
            if (i == j) continue;
            if (!find_translation(alg_list[i], alg_list[j], sys, obs_list[i], obs_list[j], cap).found())
                return Verdict::Weak;
        }
    }
    return Verdict::Strong;
}

}  // namespace observe
