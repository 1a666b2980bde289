// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <json.hpp>

#include <string>

#include "evograph/evograph.h"

namespace {

std::string take(char* s) {
    std::string out = s ? s : "";
    evg_string_free(s);
    return out;
}

}  // namespace

TEST_CASE("graph handles") {
    evg_graph* g = nullptr;
    const int edges[] = {1, 2, 2, 3};
    REQUIRE(evg_graph_from_edges(3, edges, 2, &g) == EVG_OK);
    CHECK(evg_graph_order(g) == 3);
    char* text = nullptr;
    REQUIRE(evg_graph_edge_list(g, &text) == EVG_OK);
    CHECK(take(text).find("1 2") != std::string::npos);
    int singular = -1;
    char* det = nullptr;
    REQUIRE(evg_graph_singular(g, &singular, &det) == EVG_OK);
    CHECK(singular == 1);
    CHECK(take(det) == "0");
    evg_graph_free(g);

    const int loop[] = {1, 1};
    g = nullptr;
    CHECK(evg_graph_from_edges(2, loop, 1, &g) == EVG_ERR_LOOP_EDGE);
    CHECK(g == nullptr);
    CHECK(std::string(evg_last_error()).size() > 0);
    CHECK(evg_graph_from_family("wheel:4", &g) == EVG_ERR_PARSE);
    CHECK(evg_graph_from_family(nullptr, &g) == EVG_ERR_NULL_ARGUMENT);
    CHECK(evg_graph_load("/nonexistent/file.txt", &g) != EVG_OK);
    CHECK(std::string(evg_status_name(EVG_ERR_INVALID_STEP)).size() > 0);
    CHECK(evg_graph_order(nullptr) == 0);
    evg_graph_free(nullptr);
}

TEST_CASE("prove and replay through the C interface") {
    evg_graph* g = nullptr;
    REQUIRE(evg_graph_from_family("bull", &g) == EVG_OK);
    evg_proof* p = nullptr;
    REQUIRE(evg_prove(g, nullptr, &p) == EVG_OK);
    CHECK(evg_proof_verdict(p) == EVG_NULL_ONLY);
    char* log = nullptr;
    REQUIRE(evg_proof_log_json(p, &log) == EVG_OK);
    std::string log_json = take(log);
    int ok = 0;
    char* reason = nullptr;
    REQUIRE(evg_replay(g, log_json.c_str(), &ok, &reason) == EVG_OK);
    CHECK(ok == 1);
    evg_string_free(reason);

    auto j = nlohmann::json::parse(log_json);
    for (auto& step : j["steps"]) {
        if (step["conclusion"]["kind"] == "zero") {
            step["conclusion"]["kind"] = "nonzero";
            break;
        }
    }
    ok = 1;
    reason = nullptr;
    REQUIRE(evg_replay(g, j.dump().c_str(), &ok, &reason) == EVG_OK);
    CHECK(ok == 0);
    CHECK_FALSE(take(reason).empty());
    CHECK(evg_replay(g, "not json", &ok, nullptr) == EVG_ERR_PARSE);

    char* js = nullptr;
    REQUIRE(evg_proof_json(p, &js) == EVG_OK);
    CHECK(nlohmann::json::parse(take(js))["verdict"] == "null_only");
    char* txt = nullptr;
    REQUIRE(evg_proof_text(p, &txt) == EVG_OK);
    CHECK_FALSE(take(txt).empty());
    evg_proof_free(p);
    evg_graph_free(g);
}

TEST_CASE("search, closed forms and analysis") {
    evg_graph* g = nullptr;
    REQUIRE(evg_graph_from_family("cycle:4", &g) == EVG_OK);
    int found = 0;
    char* cf = nullptr;
    REQUIRE(evg_closed_form(g, &found, &cf) == EVG_OK);
    CHECK(found == 1);
    take(cf);

    evg_search_config cfg;
    evg_search_config_default(&cfg);
    CHECK(cfg.restarts == 200);
    cfg.restarts = 20;
    evg_outcome kind = EVG_NONE_FOUND;
    char* out = nullptr;
    REQUIRE(evg_search(g, &cfg, &kind, &out) == EVG_OK);
    CHECK(kind == EVG_VERIFIED_HOM);
    take(out);
    cfg.restarts = 0;
    CHECK(evg_search(g, &cfg, &kind, &out) == EVG_ERR_INVALID_PARAMETER);

    evg_analyze_options opts;
    evg_analyze_options_default(&opts);
    opts.fast = 1;
    char* report = nullptr;
    REQUIRE(evg_analyze(g, "cycle:4", &opts, 1, &report) == EVG_OK);
    CHECK(nlohmann::json::parse(take(report))["input"] == "cycle:4");

    char* alg = nullptr;
    REQUIRE(evg_algebra_json(g, 1, &alg) == EVG_OK);
    CHECK(take(alg).find("1/2") != std::string::npos);
    char* sys = nullptr;
    REQUIRE(evg_system_json(g, &sys) == EVG_OK);
    take(sys);
    evg_graph_free(g);

    int tripwires = -1;
    char* csv = nullptr;
    REQUIRE(evg_sweep("tadpole:4,m for m in 1,2", &opts, 0, &tripwires, &csv) == EVG_OK);
    CHECK(tripwires == 0);
    CHECK(take(csv).find("tadpole:4,2") != std::string::npos);
    CHECK(evg_sweep("cycle:n for n in 1..x", &opts, 0, nullptr, &csv) == EVG_ERR_INVALID_RANGE);
    CHECK(std::string(evg_version()).size() > 0);
}
