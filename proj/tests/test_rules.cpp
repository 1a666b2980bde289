// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <numeric>
#include <optional>

#include "evograph/deduction.hpp"
#include "evograph/numeric_search.hpp"
#include "oracles.hpp"

using namespace evograph;

namespace {

// Brute-force automorphisms as 1-based permutations.
std::vector<std::vector<int>> automorphisms(const Graph& g) {
    std::vector<std::vector<int>> out;
    std::vector<int> p(g.order());
    std::iota(p.begin(), p.end(), 1);
    do {
        bool ok = true;
        for (const auto& e : g.edges()) ok = ok && g.adjacent(p[e.u - 1], p[e.v - 1]);
        if (ok) out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

// t composed with the algebra automorphism induced by p: e_i -> e_p(i).
HomCandidate compose(const HomCandidate& t, const std::vector<int>& p) {
    HomCandidate out(t.rows(), t.cols(), RadicalNumber(0));
    for (std::size_t i = 0; i < t.rows(); ++i)
        for (std::size_t k = 0; k < t.cols(); ++k) out(i, p[k] - 1) = t(i, k);
    return out;
}

RadicalNumber eval(const Polynomial& p, const HomCandidate& t, int n) {
    RadicalNumber sum(0);
    for (const auto& [m, c] : p.terms()) {
        REQUIRE(c.is_rational());
        RadicalNumber v(c.rational());
        for (int x : m) v *= t(var_row(n, x) - 1, var_col(n, x) - 1);
        sum += v;
    }
    return sum;
}

bool holds(const Fact& f, const HomCandidate& t, int n) {
    auto at = [&](int id) { return t(var_row(n, id) - 1, var_col(n, id) - 1); };
    switch (f.kind) {
        case FactKind::Zero:
            return at(f.vars[0]).is_zero();
        case FactKind::NonZero:
            return !at(f.vars[0]).is_zero();
        case FactKind::Value:
            return !f.value.is_rational() || at(f.vars[0]) == RadicalNumber(f.value.rational());
        case FactKind::Equal:
            return at(f.vars[0]) == at(f.vars[1]);
        case FactKind::EqualSquare:
            return at(f.vars[0]) * at(f.vars[0]) == at(f.vars[1]);
        case FactKind::Mutex:
            for (std::size_t a = 0; a < f.vars.size(); ++a)
                for (std::size_t b = a + 1; b < f.vars.size(); ++b)
                    if (!(at(f.vars[a]) * at(f.vars[b])).is_zero()) return false;
            return true;
        case FactKind::Equation: {
            for (const auto& term : f.equation.terms())
                if (!term.second.is_rational()) return true;
            return eval(f.equation, t, n).is_zero();
        }
        case FactKind::Contradiction:
        case FactKind::Null:
            return false;
    }
    return false;
}

// A conclusion of a different shape that no rule could justify from the same
// premises. Absent when the fact has no such counterpart.
std::optional<Fact> perturb(const Fact& f) {
    switch (f.kind) {
        case FactKind::Zero:
            return Fact::nonzero(f.vars[0]);
        case FactKind::NonZero:
            return Fact::zero(f.vars[0]);
        case FactKind::Value:
            return Fact::value_of(f.vars[0], f.value + FieldElem(1));
        case FactKind::Equation:
            if (f.equation.is_constant()) return std::nullopt;
            return Fact::eq(f.equation + Polynomial::constant(FieldElem(1)));
        case FactKind::Null:
            return Fact::zero(0);
        default:
            return std::nullopt;
    }
}

}  // namespace

TEST_CASE("property: rule conclusions hold at every known homomorphism") {
    for (const char* name : {"cycle:3", "cycle:4", "cycle:5", "cycle:6", "star:3", "kbip:2,3", "path:2", "path:3"}) {
        CAPTURE(name);
        Graph g = generate_family(name);
        const int n = g.order();
        std::vector<HomCandidate> sols;
        if (auto iso = closed_form_iso(g))
            for (const auto& p : automorphisms(g)) sols.push_back(compose(*iso, p));
        REQUIRE_FALSE(sols.empty());
        HomSystem sys = derive_constraints(g);
        for (const auto& t : sols) REQUIRE(residual(sys, t).zero);

        DeductionState st(sys);
        st.apply_leaf_rules();
        st.apply_leaf_twin_cross_rules();
        st.saturate();
        int checked = 0;
        for (const auto& step : st.log().steps) {
            if (!step.branch.empty() || step.rule == rules::BranchOpen) continue;
            for (const auto& t : sols) {
                CAPTURE(step.rule);
                CAPTURE(step.conclusion.str(n));
                CHECK(holds(step.conclusion, t, n));
            }
            ++checked;
        }
        CHECK(checked > 0);
    }
}

TEST_CASE("property: every logged step is accepted alone and rejected when perturbed") {
    for (const char* name : {"bull", "cmn:2,2", "tadpole:4,1", "caterpillar:1,2,2"}) {
        CAPTURE(name);
        HomSystem sys = derive_constraints(generate_family(name));
        Verdict v = prove_null_only(sys);
        REQUIRE(v.kind == VerdictKind::NullOnly);
        int perturbed = 0;
        for (int i = 0; i < static_cast<int>(v.log.steps.size()); ++i) {
            CAPTURE(i);
            CAPTURE(v.log.steps[i].rule);
            ReplayResult ok = check_step(sys, v.log, i);
            CHECK_MESSAGE(ok.ok, ok.reason);
            const std::string& rule = v.log.steps[i].rule;
            if (rule == rules::BranchOpen || rule == rules::LeafMutex) continue;
            auto alt = perturb(v.log.steps[i].conclusion);
            if (!alt) continue;
            ProofLog bad = v.log;
            bad.steps[i].conclusion = *alt;
            CHECK_FALSE(check_step(sys, bad, i).ok);
            ++perturbed;
        }
        CHECK(perturbed > 0);
    }
}

TEST_CASE("premises must precede their step") {
    HomSystem sys = derive_constraints(generate_family("bull"));
    Verdict v = prove_null_only(sys);
    REQUIRE(v.kind == VerdictKind::NullOnly);
    for (std::size_t i = 0; i < v.log.steps.size(); ++i) {
        bool has_step_premise = false;
        for (int p : v.log.steps[i].premises) has_step_premise = has_step_premise || p >= 0;
        if (!has_step_premise) continue;
        ProofLog bad = v.log;
        for (int& p : bad.steps[i].premises)
            if (p >= 0) p = static_cast<int>(i);
        CHECK_FALSE(check_step(sys, bad, static_cast<int>(i)).ok);
        break;
    }
    ProofLog bad = v.log;
    bad.steps[0].rule = "no-such-rule";
    CHECK_FALSE(replay_proof(sys, bad));
}
