#include "observe/genetics.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace observe {

namespace {

constexpr std::string_view kBases = "acgt";

int base_index(char c) {
    switch (c) {
        case 'a': return 0;
        case 'c': return 1;
        case 'g': return 2;
        case 't': return 3;
        default: return -1;
    }
}

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

}  // namespace

DnaString::DnaString(std::string_view bases) {
    bases_.reserve(bases.size());
    for (std::size_t i = 0; i < bases.size(); ++i) {
        const char c = static_cast<char>(std::tolower(static_cast<unsigned char>(bases[i])));
        if (base_index(c) < 0)
            throw Error("invalid base '" + std::string(1, bases[i]) + "' at position " + std::to_string(i));
        bases_ += c;
    }
}

DnaString DnaString::operator+(const DnaString& other) const {
    DnaString out;
    out.bases_ = bases_ + other.bases_;
    return out;
}

bool is_amino_acid(char c) noexcept { return kAminoAcids.find(c) != std::string_view::npos; }

ProteinString::ProteinString(std::string_view residues) : residues_(residues) {
    for (std::size_t i = 0; i < residues_.size(); ++i) {
        if (!is_amino_acid(residues_[i]))
            throw Error("invalid amino-acid code '" + std::string(1, residues_[i]) + "' at position " +
                        std::to_string(i));
    }
}

CodonValue CodonValue::amino(char code) {
    if (!is_amino_acid(code)) throw Error("invalid amino-acid code '" + std::string(1, code) + "'");
    return CodonValue(code);
}

std::size_t CodonTable::index_of(std::string_view codon) {
    if (codon.size() != 3) throw Error("codon '" + std::string(codon) + "' must have exactly 3 bases");
    std::size_t idx = 0;
    for (char raw : codon) {
        const int b = base_index(static_cast<char>(std::tolower(static_cast<unsigned char>(raw))));
        if (b < 0) throw Error("invalid base '" + std::string(1, raw) + "' in codon '" + std::string(codon) + "'");
        idx = idx * 4 + static_cast<std::size_t>(b);
    }
    return idx;
}

CodonTable CodonTable::standard() {
    // Codons in a,c,g,t order for each position.
    static constexpr std::string_view kStandard =
        "KNKNTTTTRSRSIIMIQHQHPPPPRRRRLLLLEDEDAAAAGGGGVVVV*Y*YSSSS*CWCLFLF";
    std::map<std::string, CodonValue> entries;
    for (std::size_t i = 0; i < 64; ++i) {
        std::string codon{kBases[i / 16], kBases[(i / 4) % 4], kBases[i % 4]};
        entries.emplace(codon, kStandard[i] == '*' ? CodonValue::stop() : CodonValue::amino(kStandard[i]));
    }
    return from_entries(entries);
}

CodonTable CodonTable::from_entries(const std::map<std::string, CodonValue>& entries, std::string start) {
    CodonTable t;
    std::array<bool, 64> seen{};
    for (const auto& [codon, value] : entries) {
        const auto idx = index_of(codon);
        if (seen[idx]) throw Error("codon '" + codon + "' listed twice");
        seen[idx] = true;
        t.values_[idx] = value;
    }
    if (entries.size() != 64) throw Error("codon table lists " + std::to_string(entries.size()) + " of 64 codons");
    const auto stops = std::count_if(t.values_.begin(), t.values_.end(), [](auto v) { return v.is_stop(); });
    if (stops != 3) throw Error("codon table has " + std::to_string(stops) + " stop codons, expected 3");
    t.start_ = start;
    if (t.lookup(start) != CodonValue::amino('M')) throw Error("start codon '" + start + "' must code for M");
    return t;
}

CodonTable CodonTable::read(std::istream& in) {
    std::map<std::string, CodonValue> entries;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (trim(line).empty()) continue;
        std::istringstream fields(line);
        std::string codon, value, extra;
        fields >> codon >> value;
        if (value.empty() || (fields >> extra)) throw ParseError("expected `codon<TAB>letter|STOP`", lineno, 1);
        for (auto& c : codon) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        CodonValue v;
        try {
            if (value == "STOP" || value == "Stop" || value == "stop" || value == "*") {
                v = CodonValue::stop();
            } else if (value.size() == 1) {
                v = CodonValue::amino(value[0]);
            } else {
                throw Error("bad value '" + value + "'");
            }
            index_of(codon);
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            throw ParseError(e.what(), lineno, 1);
        }
        if (!entries.emplace(codon, v).second) throw ParseError("codon '" + codon + "' listed twice", lineno, 1);
    }
    return from_entries(entries);
}

CodonTable CodonTable::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    return read(in);
}

void CodonTable::write(std::ostream& out) const {
    for (std::size_t i = 0; i < 64; ++i) {
        out << kBases[i / 16] << kBases[(i / 4) % 4] << kBases[i % 4] << '\t' << values_[i].to_string() << '\n';
    }
}

CodonValue CodonTable::lookup(std::string_view codon) const { return values_[index_of(codon)]; }

std::vector<std::string> CodonTable::codons_for(CodonValue v) const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < 64; ++i) {
        if (values_[i] == v) out.push_back({kBases[i / 16], kBases[(i / 4) % 4], kBases[i % 4]});
    }
    return out;
}

CodonValue codon_lookup(const CodonTable& table, std::string_view codon) { return table.lookup(codon); }

std::vector<CodonValue> translate_frame(const DnaString& dna, const CodonTable& table) {
    if (dna.size() % 3 != 0)
        throw GeneError(GeneError::Kind::LengthNotMultipleOfThree,
                        "sequence length " + std::to_string(dna.size()) + " is not a multiple of 3");
    std::vector<CodonValue> out;
    out.reserve(dna.size() / 3);
    const std::string_view s = dna.str();
    for (std::size_t i = 0; i < s.size(); i += 3) out.push_back(table.lookup(s.substr(i, 3)));
    return out;
}

ProteinString translate_gene(const DnaString& gene, const CodonTable& table) {
    const auto frame = translate_frame(gene, table);
    const std::string_view s = gene.str();
    if (frame.empty() || s.substr(0, 3) != table.start_codon())
        throw GeneError(GeneError::Kind::MissingStart, "gene does not begin with start codon " + table.start_codon());
    std::string residues;
    residues.reserve(frame.size());
    for (std::size_t i = 0; i + 1 < frame.size(); ++i) {
        if (frame[i].is_stop())
            throw GeneError(GeneError::Kind::InternalStop,
                            "stop codon " + std::string(s.substr(3 * i, 3)) + " at codon " + std::to_string(i) +
                                " before the end of the gene");
        residues += frame[i].code();
    }
    if (!frame.back().is_stop() || frame.size() < 2)
        throw GeneError(GeneError::Kind::MissingStop, "gene does not end with a stop codon");
    return ProteinString(residues);
}

std::string frame_to_string(const std::vector<CodonValue>& frame) {
    std::string out;
    out.reserve(frame.size());
    for (auto v : frame) out += v.code();
    return out;
}

BaseBijection::BaseBijection(std::map<char, char> forward) : forward_(std::move(forward)) {
    if (forward_.size() != 4) throw Error("a base relabeling must map exactly four symbols");
    std::set<char> image;
    for (auto [from, to] : forward_) {
        if (!image.insert(to).second) throw Error("base relabeling is not a bijection: '" + std::string(1, to) + "' repeats");
    }
}

BaseBijection BaseBijection::identity() { return BaseBijection({{'a', 'a'}, {'c', 'c'}, {'g', 'g'}, {'t', 't'}}); }

BaseBijection BaseBijection::complement() { return BaseBijection({{'a', 't'}, {'c', 'g'}, {'g', 'c'}, {'t', 'a'}}); }

char BaseBijection::operator()(char c) const {
    auto it = forward_.find(c);
    if (it == forward_.end()) throw Error("symbol '" + std::string(1, c) + "' is outside the relabeling's domain");
    return it->second;
}

BaseBijection BaseBijection::inverse() const {
    std::map<char, char> back;
    for (auto [from, to] : forward_) back[to] = from;
    return BaseBijection(back);
}

std::string relabel_bases(std::string_view s, const BaseBijection& sigma) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) out += sigma(c);
    return out;
}

std::vector<SequenceRecord> read_fasta(std::istream& in) {
    std::vector<SequenceRecord> out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty() && line[0] == '>') {
            out.push_back({trim(std::string_view(line).substr(1)), {}});
            continue;
        }
        if (trim(line).empty()) continue;
        if (out.empty()) out.push_back({});
        for (char c : line) {
            if (!std::isspace(static_cast<unsigned char>(c))) out.back().sequence += c;
        }
    }
    return out;
}

std::vector<SequenceRecord> load_fasta(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    return read_fasta(in);
}

namespace {

Relation pairwise(const std::vector<std::string>& ids, const std::function<bool(std::size_t, std::size_t)>& holds) {
    Relation r{2, {}};
    for (std::size_t i = 0; i < ids.size(); ++i) {
        for (std::size_t j = 0; j < ids.size(); ++j) {
            if (holds(i, j)) r.tuples.insert({ids[i], ids[j]});
        }
    }
    return r;
}

}  // namespace

ObservementFixture sequencing_observement(const std::vector<NamedGene>& genes, const CodonTable& table,
                                          const BaseBijection& sigma) {
    std::vector<std::string> ids;
    std::vector<std::string> bases;
    std::vector<ProteinString> proteins;
    for (const auto& [id, dna] : genes) {
        ids.push_back(id);
        bases.push_back(dna.str());
        proteins.push_back(translate_gene(dna, table));
    }
    std::vector<std::string> relabeled;
    for (const auto& b : bases) relabeled.push_back(relabel_bases(b, sigma));
    const BaseBijection back = sigma.inverse();

    ObservementFixture fx;
    fx.objects.elements.insert(ids.begin(), ids.end());
    fx.objects.relations["section_of"] =
        pairwise(ids, [&](std::size_t i, std::size_t j) { return bases[j].find(bases[i]) != std::string::npos; });
    fx.objects.relations["synonymous"] = pairwise(ids, [&](std::size_t i, std::size_t j) { return proteins[i] == proteins[j]; });

    // Each observation system defines its relations on its own symbols.
    auto strings_system = [&](const std::vector<std::string>& obs, auto to_dna) {
        ObservationSystem o;
        o.elements.insert(obs.begin(), obs.end());
        std::vector<std::string> uniq(o.elements.begin(), o.elements.end());
        o.relations["substring"] =
            pairwise(uniq, [&](std::size_t i, std::size_t j) { return uniq[j].find(uniq[i]) != std::string::npos; });
        o.relations["same_protein"] = pairwise(uniq, [&](std::size_t i, std::size_t j) {
            return translate_gene(to_dna(uniq[i]), table) == translate_gene(to_dna(uniq[j]), table);
        });
        return o;
    };
    fx.observations["bases"] = strings_system(bases, [](const std::string& s) { return DnaString(s); });
    fx.observations["relabeled"] =
        strings_system(relabeled, [&](const std::string& s) { return DnaString(relabel_bases(s, back)); });

    ObservationAlgorithm seq{"bases", {}, {{"section_of", "substring"}, {"synonymous", "same_protein"}}};
    ObservationAlgorithm rel{"relabeled", {}, seq.relation_pairing};
    for (std::size_t i = 0; i < ids.size(); ++i) {
        seq.mapping[ids[i]] = bases[i];
        rel.mapping[ids[i]] = relabeled[i];
    }
    fx.algorithms = {seq, rel};
    fx.algorithm_observations = {{"bases", "bases"}, {"relabeled", "relabeled"}};
    return fx;
}

ObservementFixture protein_observement(const std::vector<NamedGene>& genes, const CodonTable& table) {
    std::vector<std::string> ids;
    std::vector<std::string> proteins;
    for (const auto& [id, dna] : genes) {
        ids.push_back(id);
        proteins.push_back(translate_gene(dna, table).str());
    }
    ObservementFixture fx;
    fx.objects.elements.insert(ids.begin(), ids.end());
    fx.objects.relations["synonymous"] =
        pairwise(ids, [&](std::size_t i, std::size_t j) { return proteins[i] == proteins[j]; });

    ObservationSystem o;
    o.elements.insert(proteins.begin(), proteins.end());
    std::vector<std::string> uniq(o.elements.begin(), o.elements.end());
    o.relations["equal"] = pairwise(uniq, [&](std::size_t i, std::size_t j) { return i == j; });
    fx.observations["protein"] = o;

    ObservationAlgorithm alg{"translate", {}, {{"synonymous", "equal"}}};
    for (std::size_t i = 0; i < ids.size(); ++i) alg.mapping[ids[i]] = proteins[i];
    fx.algorithms = {alg};
    fx.algorithm_observations = {{"translate", "protein"}};
    return fx;
}

}  // namespace observe
