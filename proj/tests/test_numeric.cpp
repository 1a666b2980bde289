// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <json.hpp>

#include <chrono>
#include <cmath>

#include "evograph/numeric_search.hpp"
#include "oracles.hpp"

using namespace evograph;

namespace {

FloatCandidate random_point(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    FloatCandidate t(n, n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) t(i, k) = u(rng);
    return t;
}

}  // namespace

TEST_CASE("property: gradient agrees with central differences") {
    std::mt19937_64 rng(31);
    const double h = 1e-6;
    double worst = 0;
    for (int pair = 0; pair < 50; ++pair) {
        const int n = 1 + pair % 6;
        Graph g = n == 1 ? build_graph(1, {}) : oracle::random_graph(rng, n, 0.4);
        HomSystem sys = derive_constraints(g);
        FloatCandidate t = random_point(rng, n);
        FloatCandidate grad = gradient(sys, t);
        double num = 0, den = 0;
        for (int i = 0; i < n; ++i) {
            for (int k = 0; k < n; ++k) {
                FloatCandidate up = t, down = t;
                up(i, k) += h;
                down(i, k) -= h;
                const double fd = (objective(sys, up) - objective(sys, down)) / (2 * h);
                num += (fd - grad(i, k)) * (fd - grad(i, k));
                den += grad(i, k) * grad(i, k);
            }
        }
        const double rel = std::sqrt(num) / std::max(std::sqrt(den), 1e-12);
        worst = std::max(worst, rel);
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("objective and gradient at simple points") {
    HomSystem sys = derive_constraints(generate_family("cycle:4"));
    FloatCandidate zero(4, 4, 0.0);
    CHECK(objective(sys, zero) == 0.0);
    FloatCandidate g0 = gradient(sys, zero);
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) CHECK(g0(i, k) == 0.0);
    FloatCandidate half(4, 4, 0.0);
    for (int i = 0; i < 4; ++i) half(i, i) = 0.5;
    CHECK(objective(sys, half) == 0.0);
    FloatCandidate one(4, 4, 0.0);
    for (int i = 0; i < 4; ++i) one(i, i) = 1.0;
    // At the identity only the square constraints are nonzero.
    double expected = 0;
    Graph c4 = generate_family("cycle:4");
    for (int i = 1; i <= 4; ++i) {
        for (int r = 1; r <= 4; ++r) {
            double s = c4.adjacent(r, i) ? 1.0 : 0.0;
            double avg = 0;
            for (int l : c4.neighbors(i)) avg += (l == r) ? 1.0 : 0.0;
            s -= avg / c4.degree(i);
            expected += s * s;
        }
    }
    CHECK(std::abs(objective(sys, one) - expected) < 1e-12);
}

TEST_CASE("closed-form isomorphisms") {
    for (const char* name : {"cycle:3", "cycle:4", "cycle:5", "cycle:6", "star:3", "star:4", "kbip:2,3"}) {
        CAPTURE(name);
        auto start = std::chrono::steady_clock::now();
        Graph g = generate_family(name);
        auto t = closed_form_iso(g);
        REQUIRE(t);
        CHECK(residual(derive_constraints(g), *t).zero);
        CHECK(is_isomorphism(g, *t));
        FloatCandidate f(g.order(), g.order(), 0.0);
        for (int i = 0; i < g.order(); ++i)
            for (int k = 0; k < g.order(); ++k) f(i, k) = (*t)(i, k).to_double();
        CHECK(residual(derive_constraints(g), f).max_norm < 1e-12);
        CHECK(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() < 1.0);
    }
    // Star K_{1,3}: the centre gets 9^(-1/3), the leaves 3^(-1/3).
    auto k13 = *closed_form_iso(generate_family("star:3"));
    CHECK(k13(0, 0) == RadicalNumber::power(9, -1, 3));
    CHECK(k13(1, 1) == RadicalNumber::power(3, -1, 3));
    CHECK(k13(0, 0) * k13(0, 0) * k13(0, 0) == RadicalNumber(Rational(1, 9)));
    auto c5 = *closed_form_iso(generate_family("cycle:5"));
    CHECK(c5(2, 2) == RadicalNumber(Rational(1, 2)));
    CHECK(c5(2, 3).is_zero());
    CHECK_FALSE(closed_form_iso(generate_family("bull")));
    CHECK_FALSE(closed_form_iso(generate_family("path:4")));
}

TEST_CASE("search outcomes") {
    SearchConfig cfg;
    cfg.restarts = 200;
    cfg.seed = 42;
    for (const char* name : {"bull", "cmn:2,2", "tadpole:4,1"}) {
        CAPTURE(name);
        SearchOutcome out = find_homomorphism(generate_family(name), cfg);
        CHECK(out.kind == OutcomeKind::NoneFound);
        CHECK(out.restarts == 200);
        CHECK(out.accepted == 0);
    }
    SearchOutcome c4 = find_homomorphism(generate_family("cycle:4"), cfg);
    REQUIRE(c4.kind == OutcomeKind::VerifiedHom);
    REQUIRE(c4.exact);
    CHECK(residual(derive_constraints(generate_family("cycle:4")), *c4.exact).zero);
    CHECK(c4.residual < 1e-10);
    auto j = nlohmann::json::parse(outcome_to_json(c4));
    CHECK(j["outcome"] == "verified_hom");
}

TEST_CASE("search is deterministic for a fixed seed") {
    SearchConfig cfg;
    cfg.restarts = 20;
    cfg.seed = 7;
    cfg.threads = 1;
    SearchOutcome a = find_homomorphism(generate_family("path:4"), cfg);
    cfg.threads = 3;
    SearchOutcome b = find_homomorphism(generate_family("path:4"), cfg);
    CHECK(outcome_to_json(a) == outcome_to_json(b));
}

TEST_CASE("single vertex and invalid configurations") {
    SearchOutcome out = find_homomorphism(build_graph(1, {}), SearchConfig{});
    CHECK(out.kind == OutcomeKind::VerifiedHom);
    SearchConfig bad;
    bad.restarts = 0;
    CHECK_THROWS_AS(validate(bad), Error);
    bad = {};
    bad.tau_res = -1;
    CHECK_THROWS_AS(find_homomorphism(generate_family("path:2"), bad), Error);
}

TEST_CASE("exact reconstruction from floats") {
    HomSystem sys = derive_constraints(generate_family("star:3"));
    auto exact = *closed_form_iso(generate_family("star:3"));
    FloatCandidate f(4, 4, 0.0);
    for (int i = 0; i < 4; ++i) f(i, i) = exact(i, i).to_double() + 1e-11;
    auto back = reconstruct(sys, f);
    REQUIRE(back);
    CHECK(*back == exact);
    FloatCandidate half(4, 4, 0.0);
    for (int i = 0; i < 4; ++i) half(i, i) = 0.5;
    CHECK_FALSE(reconstruct(sys, half));
    CHECK_FALSE(reconstruct(sys, FloatCandidate(4, 4, 0.0)));
}
