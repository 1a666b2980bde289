// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <json.hpp>

#include <numeric>

#include "evograph/deduction.hpp"
#include "evograph/numeric_search.hpp"
#include "oracles.hpp"

using namespace evograph;

namespace {

const std::vector<std::string> kNullOnly{"cmn:2,2",           "cmn:2,3",           "cmn:3,2",
                                         "cmn:3,3",           "caterpillar:1,2,2", "caterpillar:1,2,2,2",
                                         "tadpole:4,1",       "tadpole:4,3",       "bull"};
const std::vector<std::string> kHasIso{"cycle:3", "cycle:4", "cycle:5", "kbip:2,3", "star:4", "path:2"};

int count_rule(const ProofLog& log, const std::string& rule) {
    int c = 0;
    for (const auto& s : log.steps) c += s.rule == rule;
    return c;
}

// True when t satisfies the fact, for facts that mention no equation.
bool holds(const Fact& f, const HomCandidate& t, int n) {
    auto at = [&](int id) { return t(var_row(n, id) - 1, var_col(n, id) - 1); };
    switch (f.kind) {
        case FactKind::Zero:
            return at(f.vars[0]).is_zero();
        case FactKind::NonZero:
            return !at(f.vars[0]).is_zero();
        case FactKind::Equal:
            return at(f.vars[0]) == at(f.vars[1]);
        case FactKind::EqualSquare:
            return at(f.vars[0]) * at(f.vars[0]) == at(f.vars[1]);
        case FactKind::Mutex:
            for (std::size_t a = 0; a < f.vars.size(); ++a)
                for (std::size_t b = a + 1; b < f.vars.size(); ++b)
                    if (!(at(f.vars[a]) * at(f.vars[b])).is_zero()) return false;
            return true;
        default:
            return true;
    }
}

}  // namespace

TEST_CASE("leaf rules on the bull") {
    HomSystem sys = derive_constraints(generate_family("bull"));
    DeductionState st(sys);
    st.apply_leaf_rules();
    CHECK(st.saturate() == DeductionState::Status::Open);
    for (auto [i, k] : std::vector<std::pair<int, int>>{{1, 3}, {2, 3}, {5, 3}, {3, 1}, {4, 1}})
        CHECK(st.is_zero(var_id(5, i, k)));
    CHECK_FALSE(st.is_zero(var_id(5, 1, 1)));

    const std::size_t before = st.facts().size();
    st.apply_leaf_twin_cross_rules();
    CHECK(st.facts().size() == before);
    CHECK(count_rule(st.log(), rules::LeafTwinCross) == 0);
}

TEST_CASE("leaf rules on a path of two vertices give only mutex facts") {
    DeductionState st(derive_constraints(generate_family("path:2")));
    st.apply_leaf_rules();
    REQUIRE_FALSE(st.log().steps.empty());
    for (const auto& s : st.log().steps) CHECK(s.conclusion.kind == FactKind::Mutex);
    CHECK(st.facts().empty());
}

TEST_CASE("twin-leaf rules on C(2,2)") {
    HomSystem sys = derive_constraints(generate_family("cmn:2,2"));
    DeductionState st(sys);
    st.apply_leaf_rules();
    CHECK(count_rule(st.log(), rules::LeafTwinZero) > 0);
    CHECK(count_rule(st.log(), rules::LeafMutex) > 0);
    for (const auto& s : st.log().steps)
        if (s.rule == rules::LeafTwinZero && s.conclusion.kind == FactKind::Zero)
            CHECK(st.is_zero(s.conclusion.vars[0]));
    st.apply_leaf_twin_cross_rules();
    CHECK(count_rule(st.log(), rules::LeafTwinCross) > 0);
}

TEST_CASE("null-only instances are certified and replay") {
    for (const auto& name : kNullOnly) {
        CAPTURE(name);
        HomSystem sys = derive_constraints(generate_family(name));
        Verdict v = prove_null_only(sys);
        REQUIRE(v.kind == VerdictKind::NullOnly);
        CHECK(v.depth <= 8);
        CHECK(v.log.steps.back().conclusion.kind == FactKind::Null);
        CHECK(v.log.steps.back().branch.empty());
        ReplayResult r = replay_proof_checked(sys, v.log);
        CHECK_MESSAGE(r.ok, r.reason);
        CHECK(replay_proof(sys, proof_from_json(proof_to_json(v.log))));
    }
}

TEST_CASE("graphs with isomorphisms are never certified null-only") {
    for (const auto& name : kHasIso) {
        CAPTURE(name);
        Verdict v = prove_null_only(generate_family(name));
        CHECK(v.kind != VerdictKind::NullOnly);
        if (v.kind == VerdictKind::FoundStructure) {
            const int n = generate_family(name).order();
            HomCandidate t(n, n, RadicalNumber(0));
            for (const Fact& f : v.facts) {
                REQUIRE(f.kind == FactKind::Value);
                REQUIRE(f.value.is_rational());
                t(var_row(n, f.vars[0]) - 1, var_col(n, f.vars[0]) - 1) = RadicalNumber(f.value.rational());
            }
            CHECK(residual(derive_constraints(generate_family(name)), t).zero);
        }
    }
}

TEST_CASE("tampered proofs are rejected") {
    HomSystem sys = derive_constraints(generate_family("bull"));
    Verdict v = prove_null_only(sys);
    REQUIRE(v.kind == VerdictKind::NullOnly);

    int tampered = 0;
    for (std::size_t i = 0; i < v.log.steps.size(); ++i) {
        if (v.log.steps[i].conclusion.kind != FactKind::Zero) continue;
        ProofLog bad = v.log;
        Fact& c = bad.steps[i].conclusion;
        c = Fact::value_of(c.vars[0], FieldElem(1));
        ReplayResult r = replay_proof_checked(sys, bad);
        CHECK_FALSE(r.ok);
        CHECK(r.index == static_cast<int>(i));
        if (++tampered == 5) break;
    }
    CHECK(tampered > 0);

    ProofLog truncated = v.log;
    truncated.steps.pop_back();
    CHECK_FALSE(replay_proof(sys, truncated));

    // The same log does not certify a relabelled bull.
    Graph moved = oracle::relabel(generate_family("bull"), {5, 4, 3, 2, 1});
    CHECK_FALSE(replay_proof(derive_constraints(moved), v.log));
}

TEST_CASE("proof JSON round trip") {
    Verdict v = prove_null_only(generate_family("cmn:2,2"));
    ProofLog back = proof_from_json(proof_to_json(v.log));
    REQUIRE(back.steps.size() == v.log.steps.size());
    CHECK(back.n == v.log.n);
    for (std::size_t i = 0; i < back.steps.size(); ++i) {
        CHECK(back.steps[i].rule == v.log.steps[i].rule);
        CHECK(back.steps[i].premises == v.log.steps[i].premises);
        CHECK(back.steps[i].conclusion == v.log.steps[i].conclusion);
        CHECK(back.steps[i].branch == v.log.steps[i].branch);
    }
    auto j = nlohmann::json::parse(verdict_to_json(v));
    CHECK(j["verdict"] == "null_only");
    CHECK_FALSE(proof_to_text(v.log).empty());
    CHECK_THROWS_AS(proof_from_json("{\"n\": 2, \"steps\": [{}]}"), Error);
}

TEST_CASE("budgets") {
    Budget tiny;
    tiny.step_limit = 5;
    Verdict v = prove_null_only(generate_family("cmn:3,3"), tiny);
    CHECK(v.kind == VerdictKind::Unknown);
    CHECK_FALSE(v.reason.empty());
    Budget shallow;
    shallow.max_depth = 0;
    Verdict w = prove_null_only(generate_family("cycle:4"), shallow);
    CHECK(w.kind != VerdictKind::NullOnly);
}

TEST_CASE("property: root-level conclusions hold at known isomorphisms") {
    std::mt19937_64 rng(17);
    for (const char* name : {"cycle:3", "cycle:4", "cycle:5", "cycle:6", "star:3", "star:4", "kbip:2,3", "path:2"}) {
        Graph g0 = generate_family(name);
        for (int trial = 0; trial < 3; ++trial) {
            std::vector<int> perm(g0.order());
            std::iota(perm.begin(), perm.end(), 1);
            if (trial > 0) std::shuffle(perm.begin(), perm.end(), rng);
            Graph g = oracle::relabel(g0, perm);
            auto iso = closed_form_iso(g);
            REQUIRE(iso);
            const int n = g.order();
            DeductionState st(derive_constraints(g));
            st.apply_leaf_rules();
            st.apply_leaf_twin_cross_rules();
            CHECK(st.saturate() == DeductionState::Status::Open);
            for (const Fact& f : st.facts()) {
                CAPTURE(f.str(n));
                CHECK(holds(f, *iso, n));
            }
        }
    }
}
