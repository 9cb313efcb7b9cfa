#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "observe/complexity.hpp"
#include "observe/core.hpp"
#include "observe/error.hpp"
#include "observe/familytree.hpp"
#include "observe/fixture.hpp"
#include "observe/genetics.hpp"
#include "observe/graphs.hpp"
#include "observe/motifs.hpp"
#include "observe/strings.hpp"

namespace py = pybind11;
using namespace observe;

namespace {

std::string verdict_of(const std::string& fixture_text, std::uint64_t cap) {
    const auto fx = parse_fixture(fixture_text);
    std::vector<ObservationSystem> obs;
    for (const auto& alg : fx.algorithms) obs.push_back(fx.observations_for(alg));
    return to_string(classify(fx.objects, obs, fx.algorithms, cap));
}

CodonTable table_from(const std::string& text) {
    if (text.empty()) return CodonTable::standard();
    std::istringstream in(text);
    return CodonTable::read(in);
}

KinshipGraph kinship_from(const std::string& text) {
    std::istringstream in(text);
    return read_kinship(in);
}

py::dict census_dict(const MotifCensus& c) {
    py::dict d;
    d["k"] = c.k;
    d["directed"] = c.directed;
    d["counts"] = c.counts;
    if (c.background) d["background"] = *c.background;
    else d["background"] = py::none();
    return d;
}

}  // namespace

PYBIND11_MODULE(_observe, m) {
    m.doc() = "Observement toolkit bindings";
    m.attr("__version__") = OBSERVE_VERSION;

    auto base = py::register_exception<Error>(m, "ObserveError", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<CapExceeded>(m, "CapExceeded", base.ptr());
    py::register_exception<SearchExhausted>(m, "SearchExhausted", base.ptr());

    m.def("classify_fixture", &verdict_of, py::arg("text"), py::arg("cap") = kDefaultTranslationCap,
          "Verdict of a fixture given as text: 'strong', 'weak' or 'not-observement'.");

    m.def("grammar_member", [](const std::string& grammar, const std::string& s) {
        return membership(parse_grammar(grammar), s);
    }, py::arg("grammar"), py::arg("s"));
    m.def("grammar_generate", [](const std::string& grammar, std::size_t max_len, std::size_t cap) {
        return generate(parse_grammar(grammar), max_len, cap);
    }, py::arg("grammar"), py::arg("max_len"), py::arg("cap") = kDefaultGenerateCap);

    m.def("translate_gene", [](const std::string& dna, const std::string& table) {
        return translate_gene(DnaString(dna), table_from(table)).str();
    }, py::arg("dna"), py::arg("table") = "");
    m.def("translate_frame", [](const std::string& dna, const std::string& table) {
        return frame_to_string(translate_frame(DnaString(dna), table_from(table)));
    }, py::arg("dna"), py::arg("table") = "");

    py::class_<Graph>(m, "Graph")
        .def(py::init<std::size_t>())
        .def(py::init<std::size_t, const std::vector<VertexPair>&>())
        .def_static("from_graph6", &decode_graph6)
        .def("graph6", [](const Graph& g) { return encode_graph6(g); })
        .def("add_edge", &Graph::add_edge)
        .def("has_edge", &Graph::has_edge)
        .def_property_readonly("order", &Graph::order)
        .def_property_readonly("edges", [](const Graph& g) {
            return std::vector<VertexPair>(g.edges().begin(), g.edges().end());
        })
        .def("__eq__", [](const Graph& a, const Graph& b) { return a == b; })
        .def("__repr__", [](const Graph& g) { return "Graph('" + encode_graph6(g) + "')"; });

    m.def("are_isomorphic", &are_isomorphic, py::arg("a"), py::arg("b"));
    m.def("is_subgraph", &is_subgraph, py::arg("small"), py::arg("big"));
    m.def("er_random_graph", &er_random_graph, py::arg("n"), py::arg("p"), py::arg("seed"));
    m.def("percolation_sweep", [](std::size_t n, const std::vector<double>& ps, std::size_t trials,
                                  std::uint64_t seed) {
        std::vector<std::pair<double, double>> out;
        for (const auto& pt : percolation_sweep(n, ps, trials, seed)) out.emplace_back(pt.p, pt.mean_fraction);
        return out;
    }, py::arg("n"), py::arg("p_values"), py::arg("trials"), py::arg("seed"));

    m.def("match_motif", [](const std::string& pattern, const std::string& s, bool anchored) {
        return match_motif(parse_motif(pattern), s, anchored ? MatchMode::Anchored : MatchMode::Search);
    }, py::arg("pattern"), py::arg("s"), py::arg("anchored") = false);
    m.def("derive_motif", [](const std::vector<std::string>& seqs, std::size_t class_cap) {
        return derive_motif(seqs, class_cap).to_string();
    }, py::arg("seqs"), py::arg("class_cap") = 2);
    m.def("motif_census", [](const Graph& g, std::size_t k) { return census_dict(count_network_motifs(g, k)); },
          py::arg("g"), py::arg("k"));
    m.def("motif_significance", [](const Graph& g, std::size_t k, std::size_t rewires, std::uint64_t seed) {
        return census_dict(motif_significance(g, k, rewires, seed));
    }, py::arg("g"), py::arg("k"), py::arg("rewires"), py::arg("seed"));

    m.def("kinship_query", [](const std::string& text, const std::string& rel, const std::string& u,
                              const std::string& v) {
        return query(kinship_from(text), parse_kinship(rel), u, v);
    }, py::arg("text"), py::arg("relation"), py::arg("u"), py::arg("v"));
    m.def("descendants", [](const std::string& text, const std::string& person) {
        const auto g = kinship_from(text);
        return g.descendants(person);
    }, py::arg("text"), py::arg("person"));

    m.def("lzw_compress", [](const std::string& s, const std::string& alphabet) {
        return lzw_compress(s, alphabet).codes;
    }, py::arg("s"), py::arg("alphabet"));
    m.def("lzw_decompress", [](const std::vector<std::size_t>& codes, const std::string& alphabet) {
        return lzw_decompress(codes, alphabet);
    }, py::arg("codes"), py::arg("alphabet"));
    m.def("canonical_string", [](const Graph& g, bool canonical) {
        return canonical_string(g, canonical ? StringMode::Canonical : StringMode::Labeled);
    }, py::arg("g"), py::arg("canonical") = true);
    m.def("relative_complexity", [](const std::string& s) {
        const auto r = relative_complexity(std::string_view(s));
        return std::tuple{r.total, r.primary, r.secondary};
    }, py::arg("s"));
}
