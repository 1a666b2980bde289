// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <json.hpp>

#include <numeric>

#include "evograph/hom_system.hpp"
#include "evograph/numeric_search.hpp"
#include "oracles.hpp"

using namespace evograph;

namespace {

ExactMatrix scalar_identity(int n, const Rational& s) {
    ExactMatrix t(n, n, Rational(0));
    for (int i = 0; i < n; ++i) t(i, i) = s;
    return t;
}

const Constraint& find(const HomSystem& sys, const std::string& tag) {
    for (const Constraint& c : sys.constraints)
        if (c.tag() == tag) return c;
    FAIL("missing constraint " << tag);
    throw;
}

}  // namespace

TEST_CASE("constraint counts and order") {
    HomSystem sys = derive_constraints(generate_family("tadpole:4,1"));
    CHECK(sys.var_count() == 25);
    CHECK(sys.constraints.size() == 75);
    for (int n = 1; n <= 7; ++n) {
        HomSystem s = derive_constraints(generate_family("path:" + std::to_string(n)));
        CHECK(s.constraints.size() == static_cast<std::size_t>(n * n * (n - 1) / 2 + n * n));
        for (int r = 1; r <= n; ++r) {
            for (int i = 1; i <= n; ++i) {
                for (int j = i + 1; j <= n; ++j) {
                    const Constraint& c = s.constraints[prodzero_index(n, r, i, j)];
                    CHECK(c.tag() == "prodzero:" + std::to_string(r) + ":" + std::to_string(i) + ":" + std::to_string(j));
                }
                CHECK(s.constraints[square_index(n, i, r)].tag() ==
                      "square:" + std::to_string(i) + ":" + std::to_string(r));
            }
        }
    }
}

TEST_CASE("individual constraints of tadpole(4,1)") {
    HomSystem sys = derive_constraints(generate_family("tadpole:4,1"));
    const Constraint& sq = find(sys, "square:5:5");
    REQUIRE(sq.terms.size() == 2);
    // t_5_4^2 - t_4_5
    CHECK(sq.terms[0].vars == std::vector<int>{var_id(5, 5, 4), var_id(5, 5, 4)});
    CHECK(sq.terms[0].coeff == 1);
    CHECK(sq.terms[1].vars == std::vector<int>{var_id(5, 4, 5)});
    CHECK(sq.terms[1].coeff == -1);
    for (int i = 1; i <= 5; ++i) {
        for (int j = i + 1; j <= 5; ++j) {
            const Constraint& pz = find(sys, "prodzero:5:" + std::to_string(i) + ":" + std::to_string(j));
            REQUIRE(pz.terms.size() == 1);
            CHECK(pz.terms[0].vars == std::vector<int>{var_id(5, i, 4), var_id(5, j, 4)});
        }
    }
    CHECK(var_name(5, var_id(5, 4, 5)) == "t_4_5");
}

TEST_CASE("residual examples") {
    Graph c4 = generate_family("cycle:4");
    HomSystem s4 = derive_constraints(c4);
    CHECK(residual(s4, ExactMatrix(4, 4, Rational(0))).zero);
    CHECK(residual(s4, scalar_identity(4, Rational(1, 2))).zero);
    CHECK(is_homomorphism_direct(c4, scalar_identity(4, Rational(1, 2))));
    CHECK(is_isomorphism(c4, scalar_identity(4, Rational(1, 2))));
    CHECK_FALSE(is_isomorphism(c4, ExactMatrix(4, 4, Rational(0))));
    CHECK(is_homomorphism_direct(c4, ExactMatrix(4, 4, Rational(0))));

    Graph bull = generate_family("bull");
    HomSystem sb = derive_constraints(bull);
    ExactResidual r = residual(sb, scalar_identity(5, 1));
    CHECK_FALSE(r.zero);
    // Square(3, 1) at the identity: [3 ~ 1] - [1 ~ 3] / deg 3 = 2/3.
    CHECK(r.values[square_index(5, 3, 1)] == RadicalNumber(Rational(2, 3)));
    CHECK(r.values[square_index(5, 1, 1)].is_zero());
    CHECK_FALSE(is_homomorphism_direct(bull, scalar_identity(5, 1)));

    Graph p2 = generate_family("path:2");
    CHECK(is_isomorphism(p2, scalar_identity(2, 1)));

    FloatCandidate half(4, 4, 0.0);
    for (int i = 0; i < 4; ++i) half(i, i) = 0.5;
    CHECK(residual(s4, half).max_norm == 0.0);
    CHECK_THROWS_AS(residual(s4, ExactMatrix(3, 3, Rational(0))), Error);
}

TEST_CASE("system dump") {
    auto j = nlohmann::json::parse(system_to_json(derive_constraints(generate_family("path:2"))));
    CHECK(j["variables"][1] == "t_1_2");
    CHECK(j["constraints"].size() == 6);
    CHECK(j["constraints"][0]["tag"] == "prodzero:1:1:2");
}

TEST_CASE("property: constraint system agrees with the direct oracle") {
    std::vector<std::string> corpus{"path:2", "path:3", "path:4", "path:5", "path:6", "cycle:3",
                                    "cycle:4", "cycle:5", "cycle:6", "bull",   "tadpole:4,1", "cmn:2,2"};
    std::mt19937_64 rng(2024);
    int agreements_on_homs = 0;
    for (const auto& name : corpus) {
        Graph g = generate_family(name);
        HomSystem sys = derive_constraints(g);
        const int n = g.order();
        for (int trial = 0; trial < 100; ++trial) {
            ExactMatrix t = oracle::random_candidate(rng, n);
            CHECK(residual(sys, t).zero == is_homomorphism_direct(g, t));
        }
        // Known homomorphisms and near misses.
        if (auto cf = closed_form_iso(g)) {
            CHECK(residual(sys, *cf).zero);
            CHECK(is_homomorphism_direct(g, *cf));
            HomCandidate off = *cf;
            off(0, 0) = off(0, 0) + RadicalNumber(Rational(1, 7));
            CHECK(residual(sys, off).zero == is_homomorphism_direct(g, off));
            CHECK_FALSE(residual(sys, off).zero);
            ++agreements_on_homs;
        }
    }
    CHECK(agreements_on_homs == 6);
}

TEST_CASE("property: relabelling preserves solutions") {
    std::mt19937_64 rng(7);
    for (const char* name : {"cycle:4", "star:3", "kbip:2,3", "cycle:5"}) {
        Graph g = generate_family(name);
        auto cf = closed_form_iso(g);
        REQUIRE(cf);
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<int> perm(g.order());
            std::iota(perm.begin(), perm.end(), 1);
            std::shuffle(perm.begin(), perm.end(), rng);
            Graph h = oracle::relabel(g, perm);
            CHECK(residual(derive_constraints(h), oracle::permute(*cf, perm)).zero);
            ExactMatrix t = oracle::random_candidate(rng, g.order());
            CHECK(residual(derive_constraints(g), t).zero ==
                  residual(derive_constraints(h), oracle::permute(t, perm)).zero);
        }
    }
    // Composing (1/2) I with a rotation of C4 gives another homomorphism.
    Graph c4 = generate_family("cycle:4");
    for (int shift = 1; shift < 4; ++shift) {
        ExactMatrix t(4, 4, Rational(0));
        for (int i = 0; i < 4; ++i) t(i, (i + shift) % 4) = Rational(1, 2);
        CHECK(is_homomorphism_direct(c4, t));
        CHECK(residual(derive_constraints(c4), t).zero);
    }
}

TEST_CASE("property: the null map solves every system") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        Graph g = oracle::random_graph(rng, 1 + trial % 8, 0.3);
        HomSystem sys = derive_constraints(g);
        CHECK(residual(sys, ExactMatrix(g.order(), g.order(), Rational(0))).zero);
        const int n = g.order();
        CHECK(sys.constraints.size() == static_cast<std::size_t>(n * n * (n - 1) / 2 + n * n));
    }
}
