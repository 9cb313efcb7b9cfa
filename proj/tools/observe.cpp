// observe: command-line front end for the observement toolkit.
//
// Exit codes: 0 success, 1 domain error (bad input, failed precondition),
// 2 usage error.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "observe/complexity.hpp"
#include "observe/core.hpp"
#include "observe/error.hpp"
#include "observe/familytree.hpp"
#include "observe/fixture.hpp"
#include "observe/genetics.hpp"
#include "observe/graphs.hpp"
#include "observe/motifs.hpp"
#include "observe/strings.hpp"

#ifndef OBSERVE_VERSION
#define OBSERVE_VERSION "0.0.0"
#endif

using namespace observe;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string format_double(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

struct NamedSequence {
    std::string name;
    std::string sequence;
};

// FASTA when any line starts with '>', otherwise one sequence per non-empty
// line named by its 1-based line number.
std::vector<NamedSequence> read_sequences(const std::string& path) {
    const std::string text = read_file(path);
    std::vector<NamedSequence> out;
    if (text.starts_with('>') || text.find("\n>") != std::string::npos) {
        std::istringstream in(text);
        for (auto& r : read_fasta(in)) out.push_back({r.header.substr(0, r.header.find(' ')), r.sequence});
        return out;
    }
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
        const auto start = line.find_first_not_of(" \t");
        if (start == std::string::npos) continue;
        out.push_back({std::to_string(lineno), line.substr(start)});
    }
    return out;
}

bool is_graph_file(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string head;
        if (ls >> head) return head == "graph" || head == "digraph";
    }
    return false;
}

// Graph file or one graph6 code per line.
std::vector<GraphFile> read_graphs(const std::string& path) {
    const std::string text = read_file(path);
    if (is_graph_file(text)) {
        std::istringstream in(text);
        return {read_graph_file(in)};
    }
    std::vector<GraphFile> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty()) continue;
        GraphFile f;
        f.graph = decode_graph6(line);
        out.push_back(std::move(f));
    }
    if (out.empty()) throw Error("'" + path + "' contains no graph");
    return out;
}

Graph read_single_graph(const std::string& path) {
    auto graphs = read_graphs(path);
    if (graphs.size() != 1) throw Error("'" + path + "' must contain exactly one graph");
    if (graphs[0].directed) throw Error("'" + path + "' is a digraph; an undirected graph is required");
    return graphs[0].graph;
}

void print_map(const VertexMap& m) {
    for (std::size_t i = 0; i < m.size(); ++i) std::cout << (i ? " " : "") << i << "->" << m[i];
    std::cout << '\n';
}

std::string tuple_text(const Tuple& t) {
    std::string s = "(";
    for (std::size_t i = 0; i < t.size(); ++i) s += (i ? ", " : "") + t[i];
    return s + ")";
}

// ---- Commands -------------------------------------------------------------------

int cmd_verify(const std::string& path, std::uint64_t cap) {
    const auto fx = load_fixture(path);
    std::vector<ObservationSystem> obs_list;
    for (const auto& alg : fx.algorithms) {
        const auto& obs = fx.observations_for(alg);
        obs_list.push_back(obs);
        const auto report = verify_representation(fx.objects, obs, alg);
        std::cout << "Ob1 " << alg.name << ": " << (report.holds() ? "holds" : "fails") << '\n';
        for (const auto& c : report.counterexamples)
            std::cout << "  " << c.relation << ' ' << tuple_text(c.objects) << ' ' << to_string(c.direction) << '\n';
    }
    bool exists = false;
    for (const auto& alg : fx.algorithms)
        exists = exists || verify_existence({alg}, fx.objects, fx.observations_for(alg));
    std::cout << "Ob2: " << (exists ? "holds" : "fails") << '\n';
    for (const auto& a : fx.algorithms)
        for (const auto& b : fx.algorithms) {
            if (a.name == b.name) continue;
            if (!verify_representation(fx.objects, fx.observations_for(a), a).holds() ||
                !verify_representation(fx.objects, fx.observations_for(b), b).holds())
                continue;
            std::cout << "Ob3 " << a.name << " -> " << b.name << ": ";
            try {
                auto w = find_translation(a, b, fx.objects, fx.observations_for(a), fx.observations_for(b), cap);
                if (!w.found()) {
                    std::cout << "proved absent\n";
                } else {
                    std::cout << "witness";
                    for (const auto& [y, z] : *w.mapping) std::cout << ' ' << y << "->" << z;
                    std::cout << '\n';
                }
            } catch (const SearchExhausted&) {
                std::cout << "search exhausted\n";
            }
        }
    std::cout << "verdict: " << to_string(classify(fx.objects, obs_list, fx.algorithms, cap)) << '\n';
    return 0;
}

int cmd_grammar_check(const std::string& path, const std::string& s) {
    std::cout << (membership(load_grammar(path), s) ? "member" : "not a member") << '\n';
    return 0;
}

int cmd_grammar_gen(const std::string& path, std::size_t max_len, std::size_t cap) {
    for (const auto& s : generate(load_grammar(path), max_len, cap)) std::cout << s << '\n';
    return 0;
}

int cmd_translate(const std::string& path, const std::string& table_path, bool frame, bool names) {
    const auto table = table_path.empty() ? CodonTable::standard() : CodonTable::load(table_path);
    for (const auto& rec : read_sequences(path)) {
        std::string protein;
        try {
            const DnaString dna(rec.sequence);
            protein = frame ? frame_to_string(translate_frame(dna, table)) : translate_gene(dna, table).str();
        } catch (const Error& e) {
            throw Error("sequence '" + rec.name + "': " + e.what());
        }
        if (names) std::cout << rec.name << '\t';
        std::cout << protein << '\n';
    }
    return 0;
}

int cmd_motif_match(const std::string& pattern, const std::string& path, bool anchored) {
    const auto p = parse_motif(pattern);
    for (const auto& rec : read_sequences(path))
        for (auto offset : match_motif(p, rec.sequence, anchored ? MatchMode::Anchored : MatchMode::Search))
            std::cout << rec.name << '\t' << offset << '\n';
    return 0;
}

int cmd_motif_derive(const std::string& path, std::size_t class_cap) {
    std::vector<std::string> seqs;
    for (auto& rec : read_sequences(path)) seqs.push_back(std::move(rec.sequence));
    std::cout << derive_motif(seqs, class_cap).to_string() << '\n';
    return 0;
}

int cmd_graph_convert(const std::string& path, const std::string& to) {
    for (const auto& f : read_graphs(path)) {
        if (f.directed) {
            if (to != "edges") throw Error("digraphs can only be written as arc lists (--to edges)");
            write_graph_file(std::cout, f.digraph);
            continue;
        }
        if (to == "edges") write_graph_file(std::cout, f.graph);
        else if (to == "adjlist") write_adjacency_list(std::cout, to_adjacency_list(f.graph));
        else if (to == "matrix") write_adjacency_matrix(std::cout, to_adjacency_matrix(f.graph));
        else std::cout << encode_graph6(f.graph) << '\n';
    }
    return 0;
}

int cmd_graph_iso(const std::string& a, const std::string& b) {
    auto w = are_isomorphic(read_single_graph(a), read_single_graph(b));
    std::cout << (w ? "isomorphic" : "not isomorphic") << '\n';
    if (w) print_map(*w);
    return 0;
}

int cmd_graph_sub(const std::string& small, const std::string& big) {
    auto w = is_subgraph(read_single_graph(small), read_single_graph(big));
    std::cout << (w ? "subgraph" : "not a subgraph") << '\n';
    if (w) print_map(*w);
    return 0;
}

int cmd_graph_motifs(const std::string& path, std::size_t k, std::size_t significance, std::uint64_t seed) {
    auto graphs = read_graphs(path);
    if (graphs.size() != 1) throw Error("'" + path + "' must contain exactly one graph");
    const auto& f = graphs[0];
    const auto census = f.directed ? motif_significance(f.digraph, k, significance, seed)
                                   : motif_significance(f.graph, k, significance, seed);
    write_census(std::cout, census);
    return 0;
}

int cmd_automaton_graph(const std::string& path) {
    std::istringstream in(read_file(path));
    write_graph_file(std::cout, state_space_graph(read_automaton(in)));
    return 0;
}

int cmd_percolate(std::size_t n, double from, double to, std::size_t steps, std::size_t trials, std::uint64_t seed) {
    if (steps == 0) throw Error("--steps must be at least 1");
    std::cout << "p,mean_fraction\n";
    for (const auto& pt : percolation_sweep(n, linspace(from, to, steps), trials, seed))
        std::cout << format_double(pt.p) << ',' << format_double(pt.mean_fraction) << '\n';
    return 0;
}

int cmd_tree_query(const std::string& path, const std::string& rel, const std::string& u, const std::string& v) {
    const auto kind = parse_kinship(rel);
    std::cout << (query(load_kinship(path), kind, u, v) ? "true" : "false") << '\n';
    return 0;
}

int cmd_tree_descendants(const std::string& path, const std::string& u, bool tree) {
    const auto g = load_kinship(path);
    if (tree) {
        write_descendant_tree(std::cout, g, u);
    } else {
        for (const auto& d : g.descendants(u)) std::cout << d << '\n';
    }
    return 0;
}

int cmd_complexity(const std::string& path, bool canonical) {
    std::cout << "total\tprimary\tsecondary\n";
    auto row = [](const ComplexityReport& r) { std::cout << r.total << '\t' << r.primary << '\t' << r.secondary << '\n'; };
    const std::string text = read_file(path);
    if (is_graph_file(text)) {
        std::istringstream in(text);
        auto f = read_graph_file(in);
        if (f.directed) throw Error("complexity is defined for undirected graphs");
        row(relative_complexity(f.graph, canonical ? StringMode::Canonical : StringMode::Labeled));
        return 0;
    }
    if (canonical) throw Error("--canonical applies to graph files only");
    for (const auto& rec : read_sequences(path)) row(relative_complexity(rec.sequence));
    return 0;
}

std::string strip_newline(std::string s) {
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
    return s;
}

int cmd_lzw(bool compress, const std::string& path, const std::string& alphabet) {
    const std::string text = read_file(path);
    if (compress) {
        const auto out = lzw_compress(strip_newline(text), alphabet);
        for (std::size_t i = 0; i < out.codes.size(); ++i) std::cout << (i ? " " : "") << out.codes[i];
        std::cout << '\n';
        return 0;
    }
    std::istringstream in(text);
    std::vector<std::size_t> codes;
    std::string tok;
    while (in >> tok) {
        std::size_t v = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || ptr != tok.data() + tok.size()) throw Error("'" + tok + "' is not an LZW code");
        codes.push_back(v);
    }
    std::cout << lzw_decompress(codes, alphabet) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Observement toolkit: observation systems, strings, genes, motifs, graphs, family trees and "
                 "relative complexity."};
    app.set_version_flag("--version", std::string("observe ") + OBSERVE_VERSION);
    app.require_subcommand(1);

    std::function<int()> action;
    std::uint64_t seed = 0;

    auto* verify = app.add_subcommand("verify", "Check Ob1-Ob3 on an observement fixture and classify it");
    std::string fixture_path;
    std::uint64_t cap = kDefaultTranslationCap;
    verify->add_option("fixture", fixture_path, "Fixture file")->required()->check(CLI::ExistingFile);
    verify->add_option("--cap", cap, "Translation search budget")->capture_default_str();
    verify->callback([&] { action = [&] { return cmd_verify(fixture_path, cap); }; });

    auto* grammar = app.add_subcommand("grammar", "Grammar membership and generation");
    grammar->require_subcommand(1);
    std::string grammar_path, word;
    std::size_t max_len = 0, gen_cap = kDefaultGenerateCap;
    auto* gcheck = grammar->add_subcommand("check", "Test whether a string is in the language");
    gcheck->add_option("grammar", grammar_path, "Grammar file")->required()->check(CLI::ExistingFile);
    gcheck->add_option("string", word, "Candidate string")->required();
    gcheck->callback([&] { action = [&] { return cmd_grammar_check(grammar_path, word); }; });
    auto* ggen = grammar->add_subcommand("gen", "List every string up to a length");
    ggen->add_option("grammar", grammar_path, "Grammar file")->required()->check(CLI::ExistingFile);
    ggen->add_option("--max-len", max_len, "Maximum string length")->required();
    ggen->add_option("--cap", gen_cap, "Search budget")->capture_default_str();
    ggen->callback([&] { action = [&] { return cmd_grammar_gen(grammar_path, max_len, gen_cap); }; });

    auto* translate = app.add_subcommand("translate", "Translate genes to proteins");
    std::string seq_path, table_path;
    bool frame = false, names = false;
    translate->add_option("sequences", seq_path, "FASTA file or one sequence per line")->required()->check(CLI::ExistingFile);
    translate->add_option("--table", table_path, "Codon table file (default: standard code)")->check(CLI::ExistingFile);
    translate->add_flag("--frame", frame, "Translate codon by codon without gene checks; stops print as *");
    translate->add_flag("--names", names, "Prefix each protein with its sequence name and a tab");
    translate->callback([&] { action = [&] { return cmd_translate(seq_path, table_path, frame, names); }; });

    auto* motif = app.add_subcommand("motif", "Sequence motifs");
    motif->require_subcommand(1);
    std::string pattern;
    bool anchored = false;
    std::size_t class_cap = 2;
    auto* mmatch = motif->add_subcommand("match", "Report offsets where a pattern matches");
    mmatch->add_option("pattern", pattern, "Pattern, e.g. \"M x(3) {S,T} G\"")->required();
    mmatch->add_option("sequences", seq_path, "FASTA file or one sequence per line")->required()->check(CLI::ExistingFile);
    mmatch->add_flag("--anchored", anchored, "Match at offset 0 only");
    mmatch->callback([&] { action = [&] { return cmd_motif_match(pattern, seq_path, anchored); }; });
    auto* mderive = motif->add_subcommand("derive", "Derive the shared motif of aligned sequences");
    mderive->add_option("sequences", seq_path, "FASTA file or one sequence per line")->required()->check(CLI::ExistingFile);
    mderive->add_option("--class-cap", class_cap, "Largest any-of class before a wildcard is used")->capture_default_str();
    mderive->callback([&] { action = [&] { return cmd_motif_derive(seq_path, class_cap); }; });

    auto* graph = app.add_subcommand("graph", "Graph representations and relations");
    graph->require_subcommand(1);
    std::string graph_a, graph_b, target = "edges";
    std::size_t k = 3, significance = 0;
    auto* gconvert = graph->add_subcommand("convert", "Convert between representations");
    gconvert->add_option("input", graph_a, "Graph file or graph6 lines")->required()->check(CLI::ExistingFile);
    gconvert->add_option("--to", target, "Output representation")
        ->check(CLI::IsMember({"edges", "adjlist", "matrix", "g6"}))
        ->capture_default_str();
    gconvert->callback([&] { action = [&] { return cmd_graph_convert(graph_a, target); }; });
    auto* giso = graph->add_subcommand("iso", "Find an isomorphism");
    giso->add_option("a", graph_a, "First graph")->required()->check(CLI::ExistingFile);
    giso->add_option("b", graph_b, "Second graph")->required()->check(CLI::ExistingFile);
    giso->callback([&] { action = [&] { return cmd_graph_iso(graph_a, graph_b); }; });
    auto* gsub = graph->add_subcommand("sub", "Find a subgraph embedding");
    gsub->add_option("small", graph_a, "Pattern graph")->required()->check(CLI::ExistingFile);
    gsub->add_option("big", graph_b, "Host graph")->required()->check(CLI::ExistingFile);
    gsub->callback([&] { action = [&] { return cmd_graph_sub(graph_a, graph_b); }; });
    auto* gmotifs = graph->add_subcommand("motifs", "Census of k-vertex induced subgraphs");
    gmotifs->add_option("graph", graph_a, "Graph file")->required()->check(CLI::ExistingFile);
    gmotifs->add_option("-k", k, "Motif size")->check(CLI::IsMember({3, 4}))->capture_default_str();
    gmotifs->add_option("--significance", significance, "Number of rewired graphs for the background")
        ->capture_default_str();
    gmotifs->add_option("--seed", seed, "Random seed")->envname("OBSERVE_SEED")->capture_default_str();
    gmotifs->callback([&] { action = [&] { return cmd_graph_motifs(graph_a, k, significance, seed); }; });

    auto* automaton = app.add_subcommand("automaton", "Automaton state spaces");
    automaton->require_subcommand(1);
    std::string automaton_path;
    auto* agraph = automaton->add_subcommand("graph", "Print the state-space digraph");
    agraph->add_option("file", automaton_path, "Automaton file")->required()->check(CLI::ExistingFile);
    agraph->callback([&] { action = [&] { return cmd_automaton_graph(automaton_path); }; });

    auto* percolate = app.add_subcommand("percolate", "Largest-component fraction of random graphs");
    std::size_t n = 0, steps = 12, trials = 100;
    double p_from = 0.0, p_to = 1.0;
    percolate->add_option("-n", n, "Vertices")->required();
    percolate->add_option("--p-from", p_from, "First edge probability")->required()->check(CLI::Range(0.0, 1.0));
    percolate->add_option("--p-to", p_to, "Last edge probability")->required()->check(CLI::Range(0.0, 1.0));
    percolate->add_option("--steps", steps, "Points in the sweep")->capture_default_str();
    percolate->add_option("--trials", trials, "Graphs per point")->capture_default_str();
    percolate->add_option("--seed", seed, "Random seed")->envname("OBSERVE_SEED")->capture_default_str();
    percolate->callback([&] { action = [&] { return cmd_percolate(n, p_from, p_to, steps, trials, seed); }; });

    auto* tree = app.add_subcommand("tree", "Family tree queries");
    tree->require_subcommand(1);
    std::string tree_path, relation, person_u, person_v;
    bool as_tree = false;
    auto* tquery = tree->add_subcommand("query", "Evaluate a kinship relation");
    tquery->add_option("file", tree_path, "Kinship file")->required()->check(CLI::ExistingFile);
    tquery->add_option("relation", relation,
                       "is_child_of, is_parent_of, partnered, is_related_to, is_descendant_of or is_predecessor_of")
        ->required();
    tquery->add_option("u", person_u, "First person")->required();
    tquery->add_option("v", person_v, "Second person")->required();
    tquery->callback([&] { action = [&] { return cmd_tree_query(tree_path, relation, person_u, person_v); }; });
    auto* tdesc = tree->add_subcommand("descendants", "List a person's descendants");
    tdesc->add_option("file", tree_path, "Kinship file")->required()->check(CLI::ExistingFile);
    tdesc->add_option("u", person_u, "Person")->required();
    tdesc->add_flag("--tree", as_tree, "Print an indented descendant tree");
    tdesc->callback([&] { action = [&] { return cmd_tree_descendants(tree_path, person_u, as_tree); }; });

    auto* complexity = app.add_subcommand("complexity", "Relative complexity of a graph or sequences");
    std::string complexity_path;
    bool canonical = false;
    complexity->add_option("file", complexity_path, "Graph file or sequence file")->required()->check(CLI::ExistingFile);
    complexity->add_flag("--canonical", canonical, "Describe graphs by their canonical graph6 string");
    complexity->callback([&] { action = [&] { return cmd_complexity(complexity_path, canonical); }; });

    auto* lzw = app.add_subcommand("lzw", "LZW compression");
    lzw->require_subcommand(1);
    std::string lzw_path, alphabet;
    auto* lcompress = lzw->add_subcommand("compress", "Print the code sequence of a text file");
    lcompress->add_option("file", lzw_path, "Input text")->required()->check(CLI::ExistingFile);
    lcompress->add_option("--alphabet", alphabet, "Symbols in dictionary order")->required();
    lcompress->callback([&] { action = [&] { return cmd_lzw(true, lzw_path, alphabet); }; });
    auto* ldecompress = lzw->add_subcommand("decompress", "Rebuild text from whitespace-separated codes");
    ldecompress->add_option("file", lzw_path, "Code file")->required()->check(CLI::ExistingFile);
    ldecompress->add_option("--alphabet", alphabet, "Symbols in dictionary order")->required();
    ldecompress->callback([&] { action = [&] { return cmd_lzw(false, lzw_path, alphabet); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        return action ? action() : 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
