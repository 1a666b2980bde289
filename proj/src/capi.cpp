// SPDX-License-Identifier: Apache-2.0
#include "evograph/evograph.h"

#include <json.hpp>

#include <cstdlib>
#include <cstring>
#include <string>

#include "evograph/algebra.hpp"
#include "evograph/report.hpp"

struct evg_graph {
    evograph::Graph g;
};

struct evg_proof {
    evograph::HomSystem sys;
    evograph::Verdict verdict;
};

namespace {

thread_local std::string last_error;

evg_status fail(evg_status s, const std::string& msg) {
    last_error = msg;
    return s;
}

template <class F>
evg_status guard(F&& body) {
    try {
        last_error.clear();
        body();
        return EVG_OK;
    } catch (const evograph::Error& e) {
        return fail(static_cast<evg_status>(e.code()), e.what());
    } catch (const std::exception& e) {
        return fail(EVG_ERR_UNKNOWN, e.what());
    } catch (...) {
        return fail(EVG_ERR_UNKNOWN, "unknown exception");
    }
}

char* dup(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

evograph::Budget to_budget(const evg_budget* b) {
    evograph::Budget out;
    if (!b) return out;
    out.max_depth = b->max_depth;
    out.step_limit = b->step_limit;
    out.root_width = b->root_width;
    out.inner_width = b->inner_width;
    return out;
}

evograph::SearchConfig to_config(const evg_search_config* c) {
    evograph::SearchConfig out;
    if (!c) return out;
    out.restarts = c->restarts;
    out.max_iterations = c->max_iterations;
    out.tau_res = c->tau_res;
    out.tau_null = c->tau_null;
    out.init_scale = c->init_scale;
    out.seed = c->seed;
    out.threads = c->threads;
    return out;
}

evograph::AnalyzeOptions to_options(const evg_analyze_options* o) {
    evograph::AnalyzeOptions out;
    if (!o) return out;
    out.budget = to_budget(&o->budget);
    out.search = to_config(&o->search);
    out.fast = o->fast != 0;
    if (o->proof_path) out.proof_path = o->proof_path;
    return out;
}

#define EVG_REQUIRE(p)                                                          \
    do {                                                                        \
        if (!(p)) return fail(EVG_ERR_NULL_ARGUMENT, "null argument: " #p);     \
    } while (0)

}  // namespace

extern "C" {

const char* evg_version(void) { return "0.1.0"; }

const char* evg_last_error(void) { return last_error.c_str(); }

const char* evg_status_name(evg_status status) {
    switch (status) {
        case EVG_OK: return "ok";
        case EVG_ERR_NULL_ARGUMENT: return "null-argument";
        case EVG_ERR_UNKNOWN: return "unknown";
        default:
            if (status >= 1 && status <= 12) return evograph::error_code_name(static_cast<evograph::ErrorCode>(status));
            return "unknown";
    }
}

void evg_string_free(char* s) { std::free(s); }

void evg_budget_default(evg_budget* out) {
    if (!out) return;
    evograph::Budget b;
    *out = {b.max_depth, b.step_limit, b.root_width, b.inner_width};
}

void evg_search_config_default(evg_search_config* out) {
    if (!out) return;
    evograph::SearchConfig c;
    *out = {c.restarts, c.max_iterations, c.tau_res, c.tau_null, c.init_scale, c.seed, c.threads};
}

void evg_analyze_options_default(evg_analyze_options* out) {
    if (!out) return;
    evg_budget_default(&out->budget);
    evg_search_config_default(&out->search);
    out->fast = 0;
    out->proof_path = nullptr;
}

evg_status evg_graph_from_edges(int n, const int* edges, int edge_count, evg_graph** out) {
    EVG_REQUIRE(out);
    EVG_REQUIRE(edges || edge_count == 0);
    return guard([&] {
        std::vector<evograph::Edge> es;
        for (int i = 0; i < edge_count; ++i) es.push_back({edges[2 * i], edges[2 * i + 1]});
        *out = new evg_graph{evograph::build_graph(n, es)};
    });
}

evg_status evg_graph_from_family(const char* descriptor, evg_graph** out) {
    EVG_REQUIRE(descriptor);
    EVG_REQUIRE(out);
    return guard([&] { *out = new evg_graph{evograph::generate_family(std::string(descriptor))}; });
}

evg_status evg_graph_load(const char* input, evg_graph** out) {
    EVG_REQUIRE(input);
    EVG_REQUIRE(out);
    return guard([&] { *out = new evg_graph{evograph::load_graph(input)}; });
}

void evg_graph_free(evg_graph* g) { delete g; }

int evg_graph_order(const evg_graph* g) { return g ? g->g.order() : 0; }

evg_status evg_graph_edge_list(const evg_graph* g, char** out) {
    EVG_REQUIRE(g);
    EVG_REQUIRE(out);
    return guard([&] { *out = dup(evograph::format_edge_list(g->g)); });
}

evg_status evg_graph_singular(const evg_graph* g, int* singular, char** determinant) {
    EVG_REQUIRE(g);
    EVG_REQUIRE(singular);
    return guard([&] {
        evograph::Singularity s = evograph::is_singular(g->g);
        *singular = s.singular ? 1 : 0;
        if (determinant) *determinant = dup(s.determinant.str());
    });
}

evg_status evg_algebra_json(const evg_graph* g, int random_walk, char** out) {
    EVG_REQUIRE(g);
    EVG_REQUIRE(out);
    return guard([&] {
        auto alg = random_walk ? evograph::build_rw_algebra(g->g) : evograph::build_adjacency_algebra(g->g);
        *out = dup(evograph::algebra_to_json(alg));
    });
}

evg_status evg_system_json(const evg_graph* g, char** out) {
    EVG_REQUIRE(g);
    EVG_REQUIRE(out);
    return guard([&] { *out = dup(evograph::system_to_json(evograph::derive_constraints(g->g))); });
}

evg_status evg_prove(const evg_graph* g, const evg_budget* budget, evg_proof** out) {
    EVG_REQUIRE(g);
    EVG_REQUIRE(out);
    return guard([&] {
        auto* p = new evg_proof{evograph::derive_constraints(g->g), {}};
        try {
            p->verdict = evograph::prove_null_only(p->sys, to_budget(budget));
        } catch (...) {
            delete p;
            throw;
        }
        *out = p;
    });
}

evg_verdict evg_proof_verdict(const evg_proof* p) {
    if (!p) return EVG_UNKNOWN;
    switch (p->verdict.kind) {
        case evograph::VerdictKind::NullOnly: return EVG_NULL_ONLY;
        case evograph::VerdictKind::FoundStructure: return EVG_FOUND_STRUCTURE;
        default: return EVG_UNKNOWN;
    }
}

evg_status evg_proof_json(const evg_proof* p, char** out) {
    EVG_REQUIRE(p);
    EVG_REQUIRE(out);
    return guard([&] { *out = dup(evograph::verdict_to_json(p->verdict)); });
}

evg_status evg_proof_log_json(const evg_proof* p, char** out) {
    EVG_REQUIRE(p);
    EVG_REQUIRE(out);
    return guard([&] { *out = dup(evograph::proof_to_json(p->verdict.log)); });
}

evg_status evg_proof_text(const evg_proof* p, char** out) {
    EVG_REQUIRE(p);
    EVG_REQUIRE(out);
    return guard([&] {
        const evograph::Verdict& v = p->verdict;
        std::string text = evograph::proof_to_text(v.log);
        text += std::string("verdict: ") + evograph::verdict_name(v.kind) + " (" + v.reason + ")\n";
        for (const auto& f : v.facts) text += "  " + f.str(v.log.n) + "\n";
        *out = dup(text);
    });
}

void evg_proof_free(evg_proof* p) { delete p; }

evg_status evg_replay(const evg_graph* g, const char* log_json, int* ok, char** reason) {
    EVG_REQUIRE(g);
    EVG_REQUIRE(log_json);
    EVG_REQUIRE(ok);
    return guard([&] {
        evograph::HomSystem sys = evograph::derive_constraints(g->g);
        evograph::ProofLog log = evograph::proof_from_json(log_json);
        if (log.n != sys.n) throw evograph::Error(evograph::ErrorCode::DimensionMismatch, "proof log is for another order");
        evograph::ReplayResult r = evograph::replay_proof_checked(sys, log);
        *ok = r.ok ? 1 : 0;
        if (reason) *reason = dup(r.ok ? std::string() : "step " + std::to_string(r.index) + ": " + r.reason);
    });
}

evg_status evg_search(const evg_graph* g, const evg_search_config* cfg, evg_outcome* kind, char** json) {
    EVG_REQUIRE(g);
    return guard([&] {
        evograph::SearchOutcome o = evograph::find_homomorphism(g->g, to_config(cfg));
        if (kind) *kind = static_cast<evg_outcome>(o.kind);
        if (json) *json = dup(evograph::outcome_to_json(o));
    });
}

evg_status evg_closed_form(const evg_graph* g, int* found, char** json) {
    EVG_REQUIRE(g);
    EVG_REQUIRE(found);
    return guard([&] {
        auto t = evograph::closed_form_iso(g->g);
        *found = t ? 1 : 0;
        if (!json) return;
        nlohmann::json rows = nlohmann::json::array();
        if (t) {
            for (std::size_t i = 0; i < t->rows(); ++i) {
                std::vector<std::string> row;
                for (std::size_t k = 0; k < t->cols(); ++k) row.push_back((*t)(i, k).str());
                rows.push_back(row);
            }
        }
        *json = dup(rows.dump());
    });
}

evg_status evg_analyze(const evg_graph* g, const char* label, const evg_analyze_options* opts, int as_json,
                       char** out) {
    EVG_REQUIRE(g);
    EVG_REQUIRE(out);
    return guard([&] {
        evograph::Analysis a = evograph::analyze(g->g, label ? label : "graph", to_options(opts));
        *out = dup(as_json ? evograph::report_to_json(a.report) : evograph::report_to_text(a.report));
    });
}

evg_status evg_corpus(const evg_analyze_options* opts, int as_json, int* all_pass, char** out) {
    EVG_REQUIRE(out);
    return guard([&] {
        auto rows = evograph::run_corpus(to_options(opts));
        bool pass = true;
        for (const auto& r : rows) pass = pass && r.pass;
        if (all_pass) *all_pass = pass ? 1 : 0;
        *out = dup(as_json ? evograph::corpus_to_json(rows) : evograph::corpus_to_text(rows));
    });
}

evg_status evg_sweep(const char* spec, const evg_analyze_options* opts, int as_json, int* tripwires, char** out) {
    EVG_REQUIRE(spec);
    EVG_REQUIRE(out);
    return guard([&] {
        auto rows = evograph::run_sweep(spec, to_options(opts));
        if (tripwires) {
            *tripwires = 0;
            for (const auto& r : rows) *tripwires += r.verdict == "tripwire";
        }
        *out = dup(as_json ? evograph::sweep_to_json(rows) : evograph::sweep_to_csv(rows));
    });
}

}  // extern "C"
