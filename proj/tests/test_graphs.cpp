#include <random>
#include <sstream>

#include "doctest.h"
#include "observe/error.hpp"
#include "observe/graphs.hpp"
#include "oracles.hpp"

using namespace observe;

namespace {

Graph random_graph(std::mt19937_64& rng, std::size_t n) {
    return er_random_graph(n, std::uniform_real_distribution<double>(0.0, 1.0)(rng), rng());
}

VertexMap random_perm(std::mt19937_64& rng, std::size_t n) {
    VertexMap p(n);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

}  // namespace

TEST_CASE("graph invariants") {
    Graph g(3);
    CHECK_THROWS_AS(g.add_edge(1, 1), Error);
    CHECK_THROWS_AS(g.add_edge(0, 3), Error);
    g.add_edge(2, 0);
    CHECK(g.has_edge(0, 2));
    CHECK(g.edges().contains({0, 2}));
    CHECK_THROWS_AS(g.add_edge(0, 2), Error);
    CHECK_THROWS_AS(g.set_labels({"a"}), Error);

    Digraph d(2);
    CHECK_THROWS_AS(d.add_arc(0, 0), Error);
    Digraph loops(2, true);
    CHECK_NOTHROW(loops.add_arc(0, 0));
}

TEST_CASE("representation fixtures") {
    auto empty = to_adjacency_matrix(Graph(4));
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) CHECK_FALSE(empty.at(i, j));

    auto k3 = to_adjacency_matrix(Graph::complete(3));
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(k3.at(i, j) == (i != j));
    CHECK(to_edge_list(Graph::complete(3)).edges == std::vector<VertexPair>{{0, 1}, {0, 2}, {1, 2}});

    AdjacencyMatrix asym(2);
    asym.set(0, 1);
    CHECK_THROWS_AS(from_adjacency_matrix(asym), Error);
    CHECK_THROWS_AS(from_adjacency_list(AdjacencyList{{{1}, {}}, {}}), Error);
}

TEST_CASE("representation round trips for every graph on up to 5 vertices") {
    for (std::size_t n = 0; n <= 5; ++n)
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << oracle::pair_count(n)); ++mask) {
            auto g = oracle::graph_from_mask(n, mask);
            auto back = from_edge_list(to_edge_list(from_adjacency_list(to_adjacency_list(from_adjacency_matrix(to_adjacency_matrix(g))))));
            REQUIRE(back == g);
        }
}

TEST_CASE("labels survive conversion") {
    Graph g(3, {{0, 1}, {1, 2}});
    g.set_labels({"frog", "insect", "plant"});
    CHECK(from_adjacency_matrix(to_adjacency_matrix(g)) == g);
    CHECK(from_adjacency_list(to_adjacency_list(g)) == g);
    CHECK(from_edge_list(to_edge_list(g)) == g);
}

TEST_CASE("graph6 fixtures from the format description") {
    CHECK(encode_graph6(Graph(0)) == "?");
    CHECK(encode_graph6(Graph(1)) == "@");
    CHECK(encode_graph6(Graph(2, {{0, 1}})) == "A_");
    CHECK(encode_graph6(Graph(2)) == "A?");
    CHECK(encode_graph6(Graph::complete(3)) == "Bw");
    CHECK(encode_graph6(Graph(5, {{0, 2}, {0, 4}, {1, 3}, {3, 4}})) == "DQc");

    CHECK(decode_graph6("@") == Graph(1));
    CHECK(decode_graph6("DQc") == Graph(5, {{0, 2}, {0, 4}, {1, 3}, {3, 4}}));
    CHECK_THROWS_AS(decode_graph6(""), Error);
    CHECK_THROWS_AS(decode_graph6(std::string("A") + char(62)), Error);
    CHECK_THROWS_AS(decode_graph6("A"), Error);      // missing data byte
    CHECK_THROWS_AS(decode_graph6("A__"), Error);    // trailing byte
    CHECK_THROWS_AS(decode_graph6("A`"), Error);     // padding bit set
    CHECK_THROWS_AS(decode_graph6("~?@?"), Error);   // long form
    CHECK_THROWS_AS(encode_graph6(Graph(63)), CapExceeded);
    CHECK(encode_graph6(Graph(62)).size() == graph6_length(62));
}

TEST_CASE("graph6 agrees with the reference encoder and inverts exactly for n <= 6") {
    for (std::size_t n = 0; n <= 6; ++n)
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << oracle::pair_count(n)); ++mask) {
            auto g = oracle::graph_from_mask(n, mask);
            auto code = encode_graph6(g);
            REQUIRE(code == oracle::graph6(g));
            REQUIRE(code.size() == graph6_length(n));
            REQUIRE(decode_graph6(code) == g);
            REQUIRE(encode_graph6(decode_graph6(code)) == code);
        }
}

TEST_CASE("graph6 round trip on larger random graphs") {
    std::mt19937_64 rng(30);
    for (int trial = 0; trial < 1000; ++trial) {
        auto g = random_graph(rng, rng() % 31);
        REQUIRE(decode_graph6(encode_graph6(g)) == g);
        REQUIRE(from_adjacency_matrix(to_adjacency_matrix(g)) == g);
        REQUIRE(from_adjacency_list(to_adjacency_list(g)) == g);
    }
}

TEST_CASE("isomorphism fixtures") {
    auto p = Graph::path(3);
    auto id = are_isomorphic(p, p);
    REQUIRE(id);
    CHECK(*id == VertexMap{0, 1, 2});

    // b-a-c: centre vertex 0.
    Graph q(3, {{1, 0}, {0, 2}});
    auto w = are_isomorphic(p, q);
    REQUIRE(w);
    CHECK(*w == VertexMap{1, 0, 2});
    CHECK_FALSE(are_isomorphic(Graph::complete(3), p));
    CHECK_FALSE(are_isomorphic(Graph(3), Graph(4)));
    CHECK_THROWS_AS(are_isomorphic(Graph(11), Graph(11)), CapExceeded);
}

TEST_CASE("isomorphism agrees with the permutation oracle for n <= 4") {
    for (std::size_t n = 0; n <= 4; ++n) {
        const auto total = std::uint64_t{1} << oracle::pair_count(n);
        for (std::uint64_t a = 0; a < total; ++a)
            for (std::uint64_t b = 0; b < total; ++b) {
                auto ga = oracle::graph_from_mask(n, a);
                auto gb = oracle::graph_from_mask(n, b);
                auto w = are_isomorphic(ga, gb);
                REQUIRE(w.has_value() == oracle::isomorphic(ga, gb));
                if (w) REQUIRE(ga.relabeled(*w) == gb);
            }
    }
}

TEST_CASE("isomorphism is reflexive, symmetric and relabeling-invariant") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 1 + rng() % 10;
        auto g = random_graph(rng, n);
        auto h = g.relabeled(random_perm(rng, n));
        REQUIRE(are_isomorphic(g, g));
        auto w = are_isomorphic(g, h);
        REQUIRE(w);
        CHECK(g.relabeled(*w) == h);
        CHECK(are_isomorphic(h, g));
        auto dg = g.degrees();
        auto dh = h.degrees();
        std::sort(dg.begin(), dg.end());
        std::sort(dh.begin(), dh.end());
        CHECK(dg == dh);

        auto other = random_graph(rng, n);
        CHECK(are_isomorphic(g, other).has_value() == are_isomorphic(other, g).has_value());
    }
}

TEST_CASE("subgraph fixtures") {
    auto trivial = is_subgraph(Graph(0), Graph::path(4));
    REQUIRE(trivial);
    CHECK(trivial->empty());
    auto tri = is_subgraph(Graph::complete(3), Graph::complete(4));
    REQUIRE(tri);
    CHECK(*tri == VertexMap{0, 1, 2});
    Graph tree(5, {{0, 1}, {0, 2}, {1, 3}, {1, 4}});
    CHECK_FALSE(is_subgraph(Graph::complete(3), tree));
    CHECK(is_subgraph(Graph::path(3), tree));
    CHECK_THROWS_AS(is_subgraph(Graph(9), Graph(9)), CapExceeded);
}

TEST_CASE("subgraph agrees with the injection oracle for n <= 4") {
    for (std::size_t n = 0; n <= 4; ++n)
        for (std::size_t m = n; m <= 4; ++m)
            for (std::uint64_t a = 0; a < (std::uint64_t{1} << oracle::pair_count(n)); ++a)
                for (std::uint64_t b = 0; b < (std::uint64_t{1} << oracle::pair_count(m)); ++b) {
                    auto ga = oracle::graph_from_mask(n, a);
                    auto gb = oracle::graph_from_mask(m, b);
                    auto w = is_subgraph(ga, gb);
                    REQUIRE(w.has_value() == oracle::subgraph(ga, gb));
                    if (w) {
                        std::set<Vertex> distinct(w->begin(), w->end());
                        REQUIRE(distinct.size() == n);
                        for (auto [u, v] : ga.edges()) REQUIRE(gb.has_edge((*w)[u], (*w)[v]));
                    }
                }
}

TEST_CASE("mutual subgraphs of equal size are isomorphic") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 1 + rng() % 6;
        auto g = random_graph(rng, n);
        auto id = is_subgraph(g, g);
        REQUIRE(id);
        VertexMap identity(n);
        std::iota(identity.begin(), identity.end(), 0);
        CHECK(*id == identity);
        auto h = random_graph(rng, n);
        if (g.size() == h.size() && is_subgraph(g, h) && is_subgraph(h, g)) CHECK(are_isomorphic(g, h));
    }
}

TEST_CASE("state space graphs") {
    auto identity = state_space_graph(Automaton{{"a", "b", "c"}, {0, 1, 2}});
    CHECK(identity.arcs() == std::set<VertexPair>{{0, 0}, {1, 1}, {2, 2}});
    auto cycle = state_space_graph(Automaton{{"a", "b", "c"}, {1, 2, 0}});
    CHECK(cycle.arcs() == std::set<VertexPair>{{0, 1}, {1, 2}, {2, 0}});
    CHECK_THROWS_AS(state_space_graph(Automaton{{"a"}, {}}), Error);
    CHECK_THROWS_AS(state_space_graph(Automaton{{"a"}, {3}}), Error);

    std::istringstream in("# toggle\non -> off\noff -> on\nstuck -> stuck\n");
    auto a = read_automaton(in);
    CHECK(a.states == std::vector<std::string>{"on", "off", "stuck"});
    CHECK(a.successor == std::vector<std::size_t>{1, 0, 2});
    std::istringstream dangling("a -> b\n");
    CHECK_THROWS_AS(read_automaton(dangling), Error);
    std::istringstream twice("a -> a\na -> a\n");
    CHECK_THROWS_AS(read_automaton(twice), ParseError);
}

TEST_CASE("random automata give functional graphs with the rho property") {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng() % 20;
        Automaton a;
        for (std::size_t i = 0; i < n; ++i) {
            a.states.push_back("s" + std::to_string(i));
            a.successor.push_back(rng() % n);
        }
        auto g = state_space_graph(a);
        for (Vertex v = 0; v < n; ++v) REQUIRE(g.out_degree(v) == 1);
        for (std::size_t start = 0; start < n; ++start) {
            // After n steps the orbit is on its cycle; the cycle returns within n more.
            std::size_t x = start;
            for (std::size_t i = 0; i < n; ++i) x = a.successor[x];
            std::size_t y = a.successor[x];
            std::size_t steps = 1;
            while (y != x && steps <= n) {
                y = a.successor[y];
                ++steps;
            }
            REQUIRE(y == x);
        }
    }
}

TEST_CASE("Erdos-Renyi graphs") {
    CHECK(er_random_graph(10, 0.0, 1).size() == 0);
    CHECK(er_random_graph(10, 1.0, 1) == Graph::complete(10));
    CHECK(er_random_graph(30, 0.3, 9) == er_random_graph(30, 0.3, 9));
    CHECK_FALSE(er_random_graph(30, 0.3, 9) == er_random_graph(30, 0.3, 10));
    CHECK_THROWS_AS(er_random_graph(3, 1.5, 0), Error);
}

TEST_CASE("components and percolation endpoints") {
    Graph g(6, {{0, 1}, {1, 2}, {4, 5}});
    CHECK(connected_components(g) == std::vector<std::vector<Vertex>>{{0, 1, 2}, {3}, {4, 5}});
    CHECK(largest_component_size(g) == 3);

    auto ends = percolation_sweep(100, {0.0, 1.0}, 5, 3);
    CHECK(ends[0].mean_fraction == doctest::Approx(0.01));
    CHECK(ends[1].mean_fraction == doctest::Approx(1.0));
    CHECK_THROWS_AS(percolation_sweep(10, {0.5}, 0, 1), Error);
}

TEST_CASE("percolation sweep shows the phase change") {
    const auto ps = linspace(0.001, 0.03, 12);
    auto sweep = percolation_sweep(200, ps, 100, 7);
    auto at = percolation_sweep(200, {0.0025, 0.02}, 100, 7);
    CHECK(at[0].mean_fraction < 0.1);
    CHECK(at[1].mean_fraction > 0.6);
    std::vector<double> fractions;
    for (const auto& pt : sweep) fractions.push_back(pt.mean_fraction);
    CHECK(oracle::spearman(ps, fractions) > 0.95);
    CHECK(percolation_sweep(200, ps, 100, 7).back().mean_fraction == sweep.back().mean_fraction);
}

TEST_CASE("graph files") {
    std::istringstream in("# food web\ngraph 3\nlabel 0 plant\nlabel 2 big frog\n0 1\n1 2\n");
    auto f = read_graph_file(in);
    CHECK_FALSE(f.directed);
    CHECK(f.graph.size() == 2);
    CHECK(f.graph.labels() == std::vector<std::string>{"plant", "", "big frog"});
    std::ostringstream out;
    write_graph_file(out, f.graph);
    std::istringstream again(out.str());
    CHECK(read_graph_file(again).graph == f.graph);

    std::istringstream di("digraph 2\n0 1\n1 1\n");
    auto d = read_graph_file(di);
    CHECK(d.directed);
    CHECK(d.digraph.has_arc(1, 1));

    auto parse_error_line = [](const std::string& text) -> std::size_t {
        std::istringstream s(text);
        try {
            read_graph_file(s);
        } catch (const ParseError& e) {
            return e.line();
        }
        return 0;
    };
    CHECK(parse_error_line("0 1\n") == 1);
    CHECK(parse_error_line("graph 2\n0 5\n") == 2);
    CHECK(parse_error_line("graph 2\n0 1\n0 1\n") == 3);
    CHECK(parse_error_line("graph 2\n0 1 2\n") == 2);
    CHECK(parse_error_line("") == 1);
}
