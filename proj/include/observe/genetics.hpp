#pragma once

// DNA strings, the codon table, and gene -> protein translation.

#include <array>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "observe/error.hpp"
#include "observe/fixture.hpp"

namespace observe {

// Sequence over {a, c, g, t}. Uppercase input is folded to lowercase.
class DnaString {
public:
    DnaString() = default;
    explicit DnaString(std::string_view bases);

    const std::string& str() const noexcept { return bases_; }
    std::size_t size() const noexcept { return bases_.size(); }
    bool empty() const noexcept { return bases_.empty(); }

    DnaString operator+(const DnaString& other) const;
    bool operator==(const DnaString&) const = default;
    auto operator<=>(const DnaString&) const = default;

private:
    std::string bases_;
};

// The 20 standard one-letter amino-acid codes.
inline constexpr std::string_view kAminoAcids = "ACDEFGHIKLMNPQRSTVWY";

bool is_amino_acid(char c) noexcept;

class ProteinString {
public:
    ProteinString() = default;
    explicit ProteinString(std::string_view residues);

    const std::string& str() const noexcept { return residues_; }
    std::size_t size() const noexcept { return residues_.size(); }

    bool operator==(const ProteinString&) const = default;
    auto operator<=>(const ProteinString&) const = default;

private:
    std::string residues_;
};

// An amino acid or the stop signal.
class CodonValue {
public:
    static constexpr char kStopCode = '*';

    CodonValue() = default;

    static CodonValue stop() { return CodonValue(kStopCode); }
    static CodonValue amino(char code);

    bool is_stop() const noexcept { return code_ == kStopCode; }
    char code() const noexcept { return code_; }
    std::string to_string() const { return is_stop() ? "STOP" : std::string(1, code_); }

    bool operator==(const CodonValue&) const = default;

private:
    explicit CodonValue(char c) : code_(c) {}
    char code_ = kStopCode;
};

class CodonTable {
public:
    // Standard genetic code (translation table 1), start codon atg.
    static CodonTable standard();

    // Throws Error unless all 64 codons are present exactly once, exactly
    // three are stops, and the start codon codes for methionine.
    static CodonTable from_entries(const std::map<std::string, CodonValue>& entries, std::string start = "atg");

    // Reads lines `codon<TAB>letter|STOP`; blank lines and # comments allowed.
    static CodonTable read(std::istream& in);
    static CodonTable load(const std::string& path);
    void write(std::ostream& out) const;

    CodonValue lookup(std::string_view codon) const;
    const std::string& start_codon() const noexcept { return start_; }
    std::vector<std::string> codons_for(CodonValue v) const;

    bool operator==(const CodonTable&) const = default;

private:
    CodonTable() : values_{}, start_("atg") {}
    static std::size_t index_of(std::string_view codon);

    std::array<CodonValue, 64> values_;
    std::string start_;
};

// Distinct failure modes of translate_gene.
class GeneError : public Error {
public:
    enum class Kind { LengthNotMultipleOfThree, MissingStart, InternalStop, MissingStop };

    GeneError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

// Throws Error on an invalid base or a length other than 3.
CodonValue codon_lookup(const CodonTable& table, std::string_view codon);

// Start codon included as M, terminal stop excluded.
ProteinString translate_gene(const DnaString& gene, const CodonTable& table);

// Codon-by-codon, no well-formedness checks beyond length.
std::vector<CodonValue> translate_frame(const DnaString& dna, const CodonTable& table);

std::string frame_to_string(const std::vector<CodonValue>& frame);

// A bijection between four-symbol alphabets, e.g. {a,c,g,t} -> {A,C,G,U}.
class BaseBijection {
public:
    explicit BaseBijection(std::map<char, char> forward);

    static BaseBijection identity();
    static BaseBijection complement();  // a<->t, c<->g

    char operator()(char c) const;
    BaseBijection inverse() const;
    const std::map<char, char>& table() const noexcept { return forward_; }

private:
    std::map<char, char> forward_;
};

std::string relabel_bases(std::string_view s, const BaseBijection& sigma);
inline std::string relabel_bases(const DnaString& d, const BaseBijection& sigma) {
    return relabel_bases(d.str(), sigma);
}

struct SequenceRecord {
    std::string header;
    std::string sequence;
};

// FASTA subset: `>header` lines followed by sequence lines. Lines before any
// header form a record with an empty header.
std::vector<SequenceRecord> read_fasta(std::istream& in);
std::vector<SequenceRecord> load_fasta(const std::string& path);

using NamedGene = std::pair<std::string, DnaString>;

// Genes observed as base strings in two alphabets. Objects carry
// `section_of` (one gene's bases occur inside the other's) and `synonymous`
// (same encoded protein); algorithm "bases" writes a c g t,
// algorithm "relabeled" writes the same strings through `sigma`.
ObservementFixture sequencing_observement(const std::vector<NamedGene>& genes, const CodonTable& table,
                                          const BaseBijection& sigma);

// Genes observed as the proteins they encode: `synonymous` on genes is
// paired with equality of protein strings.
ObservementFixture protein_observement(const std::vector<NamedGene>& genes, const CodonTable& table);

}  // namespace observe
