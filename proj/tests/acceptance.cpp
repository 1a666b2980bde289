// SPDX-License-Identifier: Apache-2.0
// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "evograph/algebra.hpp"
#include "evograph/deduction.hpp"
#include "evograph/numeric_search.hpp"
#include "oracles.hpp"

using namespace evograph;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Check {
    bool ok = true;
    std::ostringstream why;
    void require(bool cond, const std::string& what) {
        if (!cond) {
            if (ok) why << what;
            ok = false;
        }
    }
};

const std::vector<std::string> kNullOnly{"cmn:2,2",           "cmn:2,3",
                                         "cmn:3,2",           "cmn:3,3",
                                         "caterpillar:1,2,2", "caterpillar:1,2,2,2",
                                         "tadpole:4,1",       "tadpole:4,3",
                                         "bull"};

Check criterion1() {
    Check c;
    Graph g = generate_family("tadpole:4,1");
    const int expected[5][5] = {
        {0, 1, 0, 1, 0}, {1, 0, 1, 0, 0}, {0, 1, 0, 1, 0}, {1, 0, 1, 0, 1}, {0, 0, 0, 1, 0}};
    ExactMatrix a = adjacency_matrix(g);
    for (int i = 0; i < 5; ++i)
        for (int k = 0; k < 5; ++k) c.require(a(i, k) == expected[i][k], "adjacency entry mismatch");
    EvolutionAlgebra rw = build_rw_algebra(g);
    const Rational h(1, 2), t(1, 3);
    const Rational rows[5][5] = {{0, h, 0, h, 0}, {h, 0, h, 0, 0}, {0, h, 0, h, 0}, {t, 0, t, 0, t}, {0, 0, 0, 1, 0}};
    for (int i = 0; i < 5; ++i)
        for (int k = 0; k < 5; ++k) c.require(rw.M(i, k) == rows[i][k], "random-walk row mismatch");
    return c;
}

Check criterion2() {
    Check c;
    const auto t0 = Clock::now();
    std::mt19937_64 rng(20240601);
    for (const char* name : {"path:2", "path:3", "path:4", "path:5", "path:6", "cycle:3", "cycle:4", "cycle:5",
                             "cycle:6", "bull", "tadpole:4,1", "cmn:2,2"}) {
        Graph g = generate_family(name);
        HomSystem sys = derive_constraints(g);
        for (int trial = 0; trial < 100; ++trial) {
            ExactMatrix t = oracle::random_candidate(rng, g.order());
            c.require(residual(sys, t).zero == is_homomorphism_direct(g, t), std::string("disagreement on ") + name);
        }
        if (auto iso = closed_form_iso(g))
            c.require(residual(sys, *iso).zero && is_homomorphism_direct(g, *iso),
                      std::string("closed form rejected on ") + name);
    }
    c.require(since(t0) < 30.0, "exceeded 30 s");
    return c;
}

Check criterion3() {
    Check c;
    for (const char* name : {"cycle:3", "cycle:4", "cycle:5", "cycle:6", "star:3", "star:4", "kbip:2,3"}) {
        const auto t0 = Clock::now();
        Graph g = generate_family(name);
        std::optional<HomCandidate> t;
        try {
            t = closed_form_iso(g);
        } catch (const Error& e) {
            c.require(false, std::string(name) + ": " + e.what());
            continue;
        }
        if (!t) {
            c.require(false, std::string("no closed form for ") + name);
            continue;
        }
        c.require(residual(derive_constraints(g), *t).zero, std::string("exact residual on ") + name);
        c.require(is_isomorphism(g, *t), std::string("not an isomorphism on ") + name);
        FloatCandidate f(g.order(), g.order(), 0.0);
        for (int i = 0; i < g.order(); ++i)
            for (int k = 0; k < g.order(); ++k) f(i, k) = (*t)(i, k).to_double();
        c.require(residual(derive_constraints(g), f).max_norm < 1e-12, std::string("float residual on ") + name);
        c.require(since(t0) < 1.0, std::string("over 1 s on ") + name);
    }
    return c;
}

std::vector<std::pair<HomSystem, Verdict>> g_logs;

Check criterion4() {
    Check c;
    for (const auto& name : kNullOnly) {
        const auto t0 = Clock::now();
        HomSystem sys = derive_constraints(generate_family(name));
        Verdict v = prove_null_only(sys);
        const double secs = since(t0);
        c.require(v.kind == VerdictKind::NullOnly, name + ": " + verdict_name(v.kind) + " (" + v.reason + ")");
        c.require(v.depth <= 8, name + ": depth over 8");
        c.require(secs < 10.0, name + ": over 10 s");
        if (v.kind == VerdictKind::NullOnly) {
            ReplayResult r = replay_proof_checked(sys, v.log);
            c.require(r.ok, name + ": replay failed at step " + std::to_string(r.index) + ": " + r.reason);
            g_logs.emplace_back(std::move(sys), std::move(v));
        }
    }
    return c;
}

Check criterion5() {
    Check c;
    for (const char* name : {"cycle:3", "cycle:4", "cycle:5", "kbip:2,3", "star:4", "path:2"}) {
        Verdict v = prove_null_only(generate_family(name));
        c.require(v.kind != VerdictKind::NullOnly, std::string("null-only claimed for ") + name);
    }
    return c;
}

Check criterion6() {
    Check c;
    const auto t0 = Clock::now();
    SearchConfig cfg;
    cfg.restarts = 200;
    cfg.seed = 1;
    for (const char* name : {"bull", "cmn:2,2", "tadpole:4,1"}) {
        SearchOutcome out = find_homomorphism(generate_family(name), cfg);
        c.require(out.kind == OutcomeKind::NoneFound, std::string(name) + ": " + outcome_name(out.kind));
        c.require(out.accepted == 0, std::string(name) + ": accepted a non-null point");
    }
    SearchOutcome c4 = find_homomorphism(generate_family("cycle:4"), cfg);
    c.require(c4.kind == OutcomeKind::VerifiedHom, std::string("cycle:4: ") + outcome_name(c4.kind));
    c.require(since(t0) < 60.0, "exceeded 60 s");
    return c;
}

Check criterion7() {
    Check c;
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    const double h = 1e-6;
    for (int pair = 0; pair < 50; ++pair) {
        const int n = 1 + pair % 6;
        Graph g = n == 1 ? build_graph(1, {}) : oracle::random_graph(rng, n, 0.4);
        HomSystem sys = derive_constraints(g);
        FloatCandidate t(n, n);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) t(i, k) = u(rng);
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
        c.require(rel < 1e-6, "relative error " + std::to_string(rel) + " at pair " + std::to_string(pair));
    }
    return c;
}

Check criterion8() {
    Check c;
    for (auto [name, singular] : std::vector<std::pair<const char*, bool>>{
             {"bull", true}, {"tadpole:4,1", true}, {"cycle:4", true}, {"path:5", true}, {"path:4", false},
             {"cycle:5", false}}) {
        Graph g = generate_family(name);
        Singularity s = is_singular(g);
        const long long det = oracle::cofactor_det(oracle::adjacency(g));
        c.require(s.determinant == det, std::string("determinant mismatch on ") + name);
        c.require(s.singular == singular && (det == 0) == singular, std::string("singularity wrong on ") + name);
    }
    return c;
}

Check criterion9() {
    Check c;
    c.require(g_logs.size() == kNullOnly.size(), "missing logs from criterion 4");
    for (const auto& [sys, v] : g_logs) {
        c.require(replay_proof(sys, proof_from_json(proof_to_json(v.log))), "serialized log does not replay");
        ProofLog bad = v.log;
        bool flipped = false;
        for (auto& step : bad.steps) {
            if (step.conclusion.kind == FactKind::Zero) {
                step.conclusion = Fact::nonzero(step.conclusion.vars[0]);
                flipped = true;
                break;
            }
        }
        c.require(flipped, "no zero conclusion to flip");
        try {
            require_replay(sys, bad);
            c.require(false, "flipped log accepted");
        } catch (const Error& e) {
            c.require(e.code() == ErrorCode::InvalidStep, std::string("wrong error: ") + e.what());
        }
    }
    return c;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Check()>>> criteria{
        {"adjacency and random-walk matrices of tadpole(4,1)", criterion1},
        {"constraint system matches the direct oracle", criterion2},
        {"closed-form isomorphisms", criterion3},
        {"null-only certificates within budget", criterion4},
        {"no false null-only verdicts", criterion5},
        {"numeric search outcomes", criterion6},
        {"gradient against central differences", criterion7},
        {"determinants against cofactor expansion", criterion8},
        {"proof logs replay and flipped steps are rejected", criterion9},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = Clock::now();
        Check c;
        try {
            c = criteria[i].second();
        } catch (const std::exception& e) {
            c.ok = false;
            c.why << "exception: " << e.what();
        }
        std::printf("%s %zu %s (%.2fs)%s%s\n", c.ok ? "PASS" : "FAIL", i + 1, criteria[i].first, since(t0),
                    c.ok ? "" : ": ", c.why.str().c_str());
        failed += !c.ok;
    }
    return failed ? 1 : 0;
}
