#include <random>

#include "doctest.h"
#include "observe/complexity.hpp"
#include "observe/error.hpp"
#include "oracles.hpp"

using namespace observe;

namespace {

std::string random_alphabet(std::mt19937_64& rng, std::size_t size) {
    std::string pool = "abcdefghijklmnopqrstuvwxyz";
    std::shuffle(pool.begin(), pool.end(), rng);
    return pool.substr(0, size);
}

VertexMap random_perm(std::mt19937_64& rng, std::size_t n) {
    VertexMap p(n);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

}  // namespace

TEST_CASE("LZW hand-simulated fixture") {
    // "ababab" over (a=0, b=1):
    //   w    next  w+next  action
    //   a    b     ab      emit 0, add ab=2, w=b
    //   b    a     ba      emit 1, add ba=3, w=a
    //   a    b     ab      known, w=ab
    //   ab   a     aba     emit 2, add aba=4, w=a
    //   a    b     ab      known, w=ab
    //   ab   end           emit 2
    auto o = lzw_compress("ababab", "ab");
    CHECK(o.codes == std::vector<std::size_t>{0, 1, 2, 2});
    CHECK(o.dictionary == std::vector<std::string>{"ab", "ba", "aba"});
    CHECK(lzw_decompress(o, "ab") == "ababab");

    CHECK(lzw_compress("", "ab").codes.empty());
    CHECK(lzw_decompress(std::vector<std::size_t>{}, "ab").empty());
}

TEST_CASE("LZW code that refers to the entry being defined") {
    // "abababa": the last code 4 (aba) is emitted before the decoder has it.
    auto o = lzw_compress("abababa", "ab");
    CHECK(o.codes == std::vector<std::size_t>{0, 1, 2, 4});
    CHECK(lzw_decompress(o, "ab") == "abababa");
    auto run = lzw_compress("aaaa", "a");
    CHECK(run.codes == std::vector<std::size_t>{0, 1, 0});
    CHECK(lzw_decompress(run, "a") == "aaaa");
}

TEST_CASE("LZW errors") {
    CHECK_THROWS_AS(lzw_compress("abc", "ab"), Error);
    CHECK_THROWS_AS(lzw_compress("a", ""), Error);
    CHECK_THROWS_AS(lzw_compress("a", "aa"), Error);
    CHECK_THROWS_AS(lzw_decompress(std::vector<std::size_t>{0, 1, 99}, "ab"), Error);
    CHECK_THROWS_AS(lzw_decompress(std::vector<std::size_t>{2}, "ab"), Error);
}

TEST_CASE("LZW round trip and reference agreement") {
    std::mt19937_64 rng(10);
    for (int trial = 0; trial < 2000; ++trial) {
        const auto alphabet = random_alphabet(rng, 2 + rng() % 19);
        std::string s;
        for (auto n = rng() % 201; n > 0; --n) s += alphabet[rng() % alphabet.size()];
        auto o = lzw_compress(s, alphabet);
        REQUIRE(lzw_decompress(o, alphabet) == s);
        REQUIRE(o.codes == oracle::lzw(s, alphabet));
        REQUIRE(o == lzw_compress(s, alphabet));
        for (std::size_t i = 0; i < o.codes.size(); ++i) REQUIRE(o.codes[i] < alphabet.size() + i);
    }
}

TEST_CASE("canonical strings") {
    CHECK(canonical_string(Graph::complete(3), StringMode::Labeled) == "Bw");
    Graph p(3, {{0, 1}, {1, 2}});
    CHECK(canonical_string(p, StringMode::Labeled) == encode_graph6(p));
    CHECK(canonical_string(p) != canonical_string(Graph::complete(3)));
    CHECK(canonical_string(p) == canonical_string(Graph(3, {{0, 2}, {1, 2}})));
    CHECK_THROWS_AS(canonical_string(Graph(9)), CapExceeded);
    CHECK_NOTHROW(canonical_string(Graph(9), StringMode::Labeled));

    std::mt19937_64 rng(1);
    for (std::size_t k = 0; k <= 6; ++k) {
        const auto code = canonical_string(Graph(k));
        CHECK(code == encode_graph6(Graph(k)));
        CHECK(canonical_string(Graph(k).relabeled(random_perm(rng, k))) == code);
    }
}

TEST_CASE("canonical string is the minimum graph6 code over all orders") {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + rng() % 6;
        auto g = er_random_graph(n, 0.5, rng());
        std::string best;
        VertexMap perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        do {
            auto c = oracle::graph6(g.relabeled(perm));
            if (best.empty() || c < best) best = c;
        } while (std::next_permutation(perm.begin(), perm.end()));
        CHECK(canonical_string(g) == best);
    }
}

TEST_CASE("canonical strings separate exactly the isomorphism classes") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 1 + rng() % 6;
        auto a = er_random_graph(n, 0.5, rng());
        auto b = rng() % 2 ? a.relabeled(random_perm(rng, n)) : er_random_graph(n, 0.5, rng());
        CHECK((canonical_string(a) == canonical_string(b)) == are_isomorphic(a, b).has_value());
    }
}

TEST_CASE("relative complexity") {
    CHECK(relative_complexity("") == ComplexityReport{});
    auto flat = relative_complexity("aaaaaaaa");
    auto rich = relative_complexity("abcdefgh");
    CHECK(flat.total == 8);
    CHECK(rich.total == 8);
    CHECK(flat.secondary < rich.secondary);
    CHECK(rich.secondary == 8);
    CHECK(rich.primary == 7 * 2);

    CHECK(relative_complexity(Graph(3)).total == relative_complexity(Graph::complete(3)).total);
    CHECK(relative_complexity(Graph(3)).total == 2);

    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = rng() % 9;
        auto g = er_random_graph(n, std::uniform_real_distribution<double>(0, 1)(rng), rng());
        CHECK(relative_complexity(g) == relative_complexity(canonical_string(g)));
        CHECK(relative_complexity(g) == relative_complexity(canonical_string(g), graph6_alphabet()));
        CHECK(relative_complexity(g, StringMode::Labeled) == relative_complexity(encode_graph6(g)));
    }
}

TEST_CASE("graph6 code length depends only on the order") {
    std::mt19937_64 rng(2);
    for (std::size_t n = 0; n <= 40; ++n) {
        const std::size_t expected = 1 + (n * (n > 0 ? n - 1 : 0) / 2 + 5) / 6;
        CHECK(encode_graph6(Graph(n)).size() == expected);
        CHECK(encode_graph6(er_random_graph(n, 0.5, rng())).size() == expected);
        if (n >= 2) CHECK(encode_graph6(Graph::complete(n)).size() == expected);
    }
}
