// SPDX-License-Identifier: Apache-2.0
// Command-line front end over libevograph.
#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "evograph/evograph.h"

namespace {

enum Exit { kOk = 0, kTripwire = 1, kInput = 2, kBudget = 3 };

struct Flags {
    bool json = false;
    bool fast = false;
    unsigned long long seed = 1;
    int restarts = 200;
    int depth = 8;
    std::string proof;
    std::string out;
};

struct Text {
    char* p = nullptr;
    ~Text() { evg_string_free(p); }
    std::string str() const { return p ? p : ""; }
};

using GraphPtr = std::unique_ptr<evg_graph, decltype(&evg_graph_free)>;

int report(evg_status s) {
    std::cerr << "evograph: " << evg_status_name(s) << ": " << evg_last_error() << '\n';
    return s == EVG_ERR_INTERNAL ? kTripwire : kInput;
}

evg_analyze_options options(const Flags& f) {
    evg_analyze_options o;
    evg_analyze_options_default(&o);
    o.budget.max_depth = f.depth;
    o.search.seed = f.seed;
    o.search.restarts = f.restarts;
    o.fast = f.fast ? 1 : 0;
    o.proof_path = f.proof.empty() ? nullptr : f.proof.c_str();
    return o;
}

int emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return kOk;
    }
    std::ofstream out(path);
    if (!out) {
        std::cerr << "evograph: cannot write '" << path << "'\n";
        return kInput;
    }
    out << text;
    if (!text.empty() && text.back() != '\n') out << '\n';
    return kOk;
}

int load(const std::string& input, GraphPtr& g) {
    evg_graph* raw = nullptr;
    evg_status s = evg_graph_load(input.c_str(), &raw);
    if (s != EVG_OK) return report(s);
    g.reset(raw);
    return kOk;
}

int cmd_analyze(const std::string& input, const Flags& f) {
    GraphPtr g(nullptr, evg_graph_free);
    if (int rc = load(input, g)) return rc;
    evg_analyze_options o = options(f);
    Text out;
    if (evg_status s = evg_analyze(g.get(), input.c_str(), &o, f.json, &out.p); s != EVG_OK) return report(s);
    return emit(out.str(), f.out);
}

int cmd_derive(const std::string& input, const Flags& f) {
    GraphPtr g(nullptr, evg_graph_free);
    if (int rc = load(input, g)) return rc;
    Text out;
    if (evg_status s = evg_system_json(g.get(), &out.p); s != EVG_OK) return report(s);
    return emit(out.str(), f.out);
}

int cmd_prove(const std::string& input, const Flags& f) {
    GraphPtr g(nullptr, evg_graph_free);
    if (int rc = load(input, g)) return rc;
    evg_budget b;
    evg_budget_default(&b);
    b.max_depth = f.depth;
    evg_proof* raw = nullptr;
    if (evg_status s = evg_prove(g.get(), &b, &raw); s != EVG_OK) return report(s);
    std::unique_ptr<evg_proof, decltype(&evg_proof_free)> p(raw, evg_proof_free);
    Text out;
    evg_status s = f.json ? evg_proof_json(p.get(), &out.p) : evg_proof_text(p.get(), &out.p);
    if (s != EVG_OK) return report(s);
    if (int rc = emit(out.str(), f.out)) return rc;
    if (!f.proof.empty()) {
        Text log;
        if (evg_status ls = evg_proof_log_json(p.get(), &log.p); ls != EVG_OK) return report(ls);
        if (int rc = emit(log.str(), f.proof)) return rc;
    }
    return evg_proof_verdict(p.get()) == EVG_UNKNOWN ? kBudget : kOk;
}

int cmd_replay(const std::string& input, const std::string& log_path) {
    GraphPtr g(nullptr, evg_graph_free);
    if (int rc = load(input, g)) return rc;
    std::ifstream in(log_path);
    if (!in) {
        std::cerr << "evograph: cannot read '" << log_path << "'\n";
        return kInput;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    int ok = 0;
    Text reason;
    if (evg_status s = evg_replay(g.get(), buf.str().c_str(), &ok, &reason.p); s != EVG_OK) return report(s);
    std::cout << (ok ? "accepted: the only homomorphism is the null map" : "rejected: " + reason.str()) << '\n';
    return ok ? kOk : kInput;
}

int cmd_search(const std::string& input, const Flags& f) {
    GraphPtr g(nullptr, evg_graph_free);
    if (int rc = load(input, g)) return rc;
    evg_search_config c;
    evg_search_config_default(&c);
    c.seed = f.seed;
    c.restarts = f.restarts;
    evg_outcome kind = EVG_NONE_FOUND;
    Text out;
    if (evg_status s = evg_search(g.get(), &c, &kind, &out.p); s != EVG_OK) return report(s);
    if (f.json) return emit(out.str(), f.out);
    static const char* names[] = {"none found", "candidate (not verified exactly)", "verified homomorphism"};
    std::string text = std::string("outcome: ") + names[kind] + "\n" + out.str();
    int found = 0;
    Text cf;
    if (evg_status s = evg_closed_form(g.get(), &found, &cf.p); s != EVG_OK) return report(s);
    if (found) text += "\nclosed form: " + cf.str();
    return emit(text, f.out);
}

int cmd_corpus(const Flags& f) {
    evg_analyze_options o = options(f);
    o.proof_path = nullptr;
    int pass = 0;
    Text out;
    if (evg_status s = evg_corpus(&o, f.json, &pass, &out.p); s != EVG_OK) return report(s);
    if (int rc = emit(out.str(), f.out)) return rc;
    return pass ? kOk : kBudget;
}

int cmd_sweep(const std::string& spec, const Flags& f) {
    evg_analyze_options o = options(f);
    o.proof_path = nullptr;
    int trips = 0;
    Text out;
    if (evg_status s = evg_sweep(spec.c_str(), &o, f.json, &trips, &out.p); s != EVG_OK) return report(s);
    if (int rc = emit(out.str(), f.out)) return rc;
    return trips ? kTripwire : kOk;
}

int cmd_gen(const std::string& family, const Flags& f) {
    evg_graph* raw = nullptr;
    if (evg_status s = evg_graph_from_family(family.c_str(), &raw); s != EVG_OK) return report(s);
    GraphPtr g(raw, evg_graph_free);
    Text out;
    if (evg_status s = evg_graph_edge_list(g.get(), &out.p); s != EVG_OK) return report(s);
    return emit("# " + family + "\n" + out.str(), f.out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Homomorphisms between the random-walk and adjacency evolution algebras of a graph"};
    app.require_subcommand(1);
    Flags f;
    std::string input, extra;

    auto common = [&](CLI::App* sub, bool search, bool deduce) {
        sub->add_flag("--json", f.json, "JSON output");
        sub->add_option("-o,--out", f.out, "write output to a file");
        if (search) {
            sub->add_option("--seed", f.seed, "search seed")->capture_default_str();
            sub->add_option("--restarts", f.restarts, "search restarts")->check(CLI::PositiveNumber)->capture_default_str();
        }
        if (deduce) sub->add_option("--depth", f.depth, "case-split depth")->check(CLI::NonNegativeNumber)->capture_default_str();
    };

    auto* analyze = app.add_subcommand("analyze", "classify a graph, run deduction and search");
    analyze->add_option("input", input, "family descriptor or edge-list file")->required();
    analyze->add_flag("--fast", f.fast, "skip the numeric search");
    analyze->add_option("--proof", f.proof, "write the proof log (JSON) here");
    common(analyze, true, true);

    auto* derive = app.add_subcommand("derive", "print the homomorphism constraint system as JSON");
    derive->add_option("input", input, "family descriptor or edge-list file")->required();
    common(derive, false, false);

    auto* prove = app.add_subcommand("prove", "run the deduction engine and print the proof log");
    prove->add_option("input", input, "family descriptor or edge-list file")->required();
    prove->add_option("--proof", f.proof, "also write the replayable proof log (JSON) here");
    common(prove, false, true);

    auto* replay = app.add_subcommand("replay", "check a proof log independently");
    replay->add_option("input", input, "family descriptor or edge-list file")->required();
    replay->add_option("log", extra, "proof log JSON file")->required();

    auto* search = app.add_subcommand("search", "numeric search for nonzero homomorphisms");
    search->add_option("input", input, "family descriptor or edge-list file")->required();
    common(search, true, false);

    auto* corpus = app.add_subcommand("paper", "run the reference corpus");
    corpus->add_flag("--fast", f.fast, "skip the numeric search");
    common(corpus, true, true);

    auto* sweep = app.add_subcommand("sweep", "run a family sweep, e.g. \"tadpole:4,m for m in 1,3,5\"");
    sweep->add_option("spec", extra, "family template and ranges")->required();
    sweep->add_flag("--fast", f.fast, "skip the numeric search");
    common(sweep, true, true);

    auto* gen = app.add_subcommand("gen", "write the edge list of a family member");
    gen->add_option("family", extra, "family descriptor")->required();
    common(gen, false, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInput;
    }

    if (*analyze) return cmd_analyze(input, f);
    if (*derive) return cmd_derive(input, f);
    if (*prove) return cmd_prove(input, f);
    if (*replay) return cmd_replay(input, extra);
    if (*search) return cmd_search(input, f);
    if (*corpus) return cmd_corpus(f);
    if (*sweep) return cmd_sweep(extra, f);
    if (*gen) return cmd_gen(extra, f);
    return kInput;
}
