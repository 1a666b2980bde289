// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "evograph/graph.hpp"
#include "oracles.hpp"

using namespace evograph;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::Internal;
}

std::vector<std::vector<int>> rows_of(const ExactMatrix& m) {
    std::vector<std::vector<int>> out;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        std::vector<int> row;
        for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(static_cast<int>(numerator(m(i, k))));
        out.push_back(row);
    }
    return out;
}

}  // namespace

TEST_CASE("build_graph validates its input") {
    CHECK(code_of([] { build_graph(3, {{1, 1}, {1, 2}, {2, 3}}); }) == ErrorCode::LoopEdge);
    CHECK(code_of([] { build_graph(3, {{1, 2}, {2, 1}, {2, 3}}); }) == ErrorCode::DuplicateEdge);
    CHECK(code_of([] { build_graph(4, {{1, 2}, {3, 4}}); }) == ErrorCode::Disconnected);
    CHECK(code_of([] { build_graph(3, {{1, 4}, {2, 3}}); }) == ErrorCode::OutOfRange);
    Graph one = build_graph(1, {});
    CHECK(one.order() == 1);
    CHECK(adjacency_matrix(one)(0, 0) == 0);
}

TEST_CASE("tadpole(4,1) adjacency") {
    Graph g = build_graph(5, {{1, 2}, {2, 3}, {1, 4}, {3, 4}, {4, 5}});
    std::vector<std::vector<int>> expected{
        {0, 1, 0, 1, 0}, {1, 0, 1, 0, 0}, {0, 1, 0, 1, 0}, {1, 0, 1, 0, 1}, {0, 0, 0, 1, 0}};
    CHECK(rows_of(adjacency_matrix(g)) == expected);
    CHECK(generate_family("tadpole:4,1") == g);
}

TEST_CASE("bull adjacency") {
    std::vector<std::vector<int>> expected{
        {0, 0, 1, 0, 0}, {0, 0, 0, 1, 0}, {1, 0, 0, 1, 1}, {0, 1, 1, 0, 1}, {0, 0, 1, 1, 0}};
    CHECK(rows_of(adjacency_matrix(generate_family("bull"))) == expected);
}

TEST_CASE("twin partitions") {
    for (int m : {1, 3, 5}) {
        auto tp = twin_partition(generate_family("tadpole:4," + std::to_string(m)));
        CHECK(tp.classes[0] == std::vector<int>{1, 3});
        CHECK(tp.classes.size() == static_cast<std::size_t>(4 + m - 1));
    }
    CHECK(twin_partition(generate_family("bull")).classes.size() == 5);
    auto c22 = twin_partition(generate_family("cmn:2,2")).classes;
    CHECK(c22 == std::vector<std::vector<int>>{{1}, {2}, {3, 4}, {5, 6}});
}

TEST_CASE("regularity classes") {
    auto c4 = classify_regularity(generate_family("cycle:4"));
    REQUIRE(std::holds_alternative<Regular>(c4));
    CHECK(std::get<Regular>(c4).k == 2);
    auto k13 = classify_regularity(generate_family("star:3"));
    REQUIRE(std::holds_alternative<Biregular>(k13));
    CHECK(std::get<Biregular>(k13).k1 == 1);
    CHECK(std::get<Biregular>(k13).k2 == 3);
    CHECK(std::get<Biregular>(k13).part1 == std::vector<int>{2, 3, 4});
    CHECK(std::get<Biregular>(k13).part2 == std::vector<int>{1});
    CHECK(std::holds_alternative<Neither>(classify_regularity(generate_family("bull"))));
    CHECK(std::holds_alternative<Regular>(classify_regularity(generate_family("cycle:3"))));
    CHECK(describe(k13) == "Biregular(1,3)");
}

TEST_CASE("singularity") {
    CHECK(is_singular(generate_family("bull")).singular);
    CHECK(is_singular(generate_family("tadpole:4,1")).singular);
    CHECK_FALSE(is_singular(generate_family("path:4")).singular);
    CHECK(is_singular(generate_family("path:5")).singular);
    CHECK(is_singular(generate_family("path:4")).determinant == 1);
    CHECK(is_singular(generate_family("cycle:5")).determinant == 2);
}

TEST_CASE("family generators") {
    Graph c23 = generate_family("cmn:2,3");
    CHECK(c23.order() == 7);
    CHECK(c23.edges().size() == 6);
    Graph cat = generate_family("caterpillar:1,2,2");
    CHECK(cat.order() == 8);
    CHECK(cat.neighbors(4) == std::vector<int>{1});
    CHECK(cat.neighbors(5) == std::vector<int>{2});
    Graph t43 = generate_family("tadpole:4,3");
    CHECK(t43.order() == 7);
    CHECK(t43.adjacent(4, 5));
    CHECK(t43.adjacent(6, 7));
    CHECK(code_of([] { generate_family("caterpillar:1,-1"); }) == ErrorCode::InvalidParameter);
    CHECK(code_of([] { generate_family("cycle:2"); }) == ErrorCode::InvalidParameter);
    CHECK(code_of([] { generate_family("wheel:5"); }) == ErrorCode::Parse);
    CHECK(std::holds_alternative<Regular>(classify_regularity(generate_family("cycle:3"))));
    CHECK(format_family(parse_family("kbip:2,3")) == "complete_bipartite:2,3");
}

TEST_CASE("edge-list format") {
    Graph g = generate_family("bull");
    CHECK(parse_edge_list(format_edge_list(g)) == g);
    CHECK(parse_edge_list("# comment\n3 2\n1 2 # first\n\n2 3\n") == generate_family("path:3"));
    try {
        parse_edge_list("3 2\n1 2\n2 x\n");
        FAIL("expected a parse error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Parse);
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    CHECK(code_of([] { parse_edge_list("3 2\n1 2\n"); }) == ErrorCode::Parse);
    CHECK(code_of([] { load_graph("/nonexistent/graph.txt"); }) == ErrorCode::Io);
    CHECK(load_graph("bull") == g);
}

TEST_CASE("property: structural invariants on random graphs") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + trial % 8;
        Graph g = oracle::random_graph(rng, n, 0.3);
        ExactMatrix a = adjacency_matrix(g);
        for (int i = 1; i <= n; ++i) {
            Rational sum = 0;
            CHECK(a(i - 1, i - 1) == 0);
            for (int k = 1; k <= n; ++k) {
                CHECK(a(i - 1, k - 1) == a(k - 1, i - 1));
                sum += a(i - 1, k - 1);
            }
            CHECK(sum == g.degree(i));
        }

        // Twin relation against brute force.
        auto tp = twin_partition(g);
        std::vector<int> cls(n + 1, -1);
        for (std::size_t c = 0; c < tp.classes.size(); ++c)
            for (int v : tp.classes[c]) cls[v] = static_cast<int>(c);
        for (int u = 1; u <= n; ++u)
            for (int v = 1; v <= n; ++v) CHECK((cls[u] == cls[v]) == oracle::twins(g, u, v));

        auto rc = classify_regularity(g);
        if (auto r = std::get_if<Regular>(&rc))
            for (int v = 1; v <= n; ++v) CHECK(g.degree(v) == r->k);
        if (auto b = std::get_if<Biregular>(&rc)) {
            for (int u : b->part1)
                for (int v : b->part1) CHECK_FALSE(g.adjacent(u, v));
            for (int u : b->part2)
                for (int v : b->part2) CHECK_FALSE(g.adjacent(u, v));
            for (int u : b->part1) CHECK(g.degree(u) == b->k1);
            for (int u : b->part2) CHECK(g.degree(u) == b->k2);
        }

        if (n <= 7) {
            auto s = is_singular(g);
            long long det = oracle::cofactor_det(oracle::adjacency(g));
            CHECK(s.determinant == det);
            std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
            for (int i = 0; i < n; ++i)
                for (int k = 0; k < n; ++k) m[i][k] = a(i, k);
            CHECK(s.singular == (oracle::gauss_rank(m) < static_cast<std::size_t>(n)));
        }
    }
}
