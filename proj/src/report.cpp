// SPDX-License-Identifier: Apache-2.0
#include "evograph/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "evograph/algebra.hpp"

namespace evograph {

using nlohmann::json;

const char* prediction_name(Prediction p) {
    switch (p) {
        case Prediction::Isomorphic: return "isomorphic";
        case Prediction::NullOnly: return "null-only";
        case Prediction::IsomorphicConstructive: return "isomorphic-constructive";
        case Prediction::OpenExpectNull: return "open-expect-null-only";
    }
    return "?";
}

Prediction predict(bool singular, const RegularityClass& rc) {
    const bool structured = !std::holds_alternative<Neither>(rc);
    if (!singular) return structured ? Prediction::Isomorphic : Prediction::NullOnly;
    return structured ? Prediction::IsomorphicConstructive : Prediction::OpenExpectNull;
}

namespace {

double since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool expects_iso(Prediction p) { return p == Prediction::Isomorphic || p == Prediction::IsomorphicConstructive; }

}  // namespace

Analysis analyze(const Graph& g, const std::string& label, const AnalyzeOptions& opts) {
    const auto t0 = std::chrono::steady_clock::now();
    Analysis a;
    AnalysisReport& r = a.report;
    r.input = label;
    r.n = g.order();
    for (int v = 1; v <= g.order(); ++v) r.degrees.push_back(g.degree(v));
    std::sort(r.degrees.begin(), r.degrees.end());
    Singularity s = is_singular(g);
    r.singular = s.singular;
    r.determinant = s.determinant.str();
    RegularityClass rc = classify_regularity(g);
    r.regularity = describe(rc);
    r.twins = twin_partition(g).classes;
    r.prediction = predict(s.singular, rc);
    if (auto cf = closed_form_iso(g)) {
        for (std::size_t i = 0; i < cf->rows(); ++i) {
            std::vector<std::string> row;
            for (std::size_t k = 0; k < cf->cols(); ++k) row.push_back((*cf)(i, k).str());
            r.closed_form.push_back(std::move(row));
        }
    }

    HomSystem sys = derive_constraints(g);
    a.verdict = prove_null_only(sys, opts.budget);
    r.verdict = verdict_name(a.verdict.kind);
    r.verdict_reason = a.verdict.reason;
    r.proof_steps = a.verdict.log.steps.size();
    r.depth = a.verdict.depth;
    const bool null_only = a.verdict.kind == VerdictKind::NullOnly;
    if (null_only) {
        ReplayResult rr = replay_proof_checked(sys, a.verdict.log);
        if (!rr.ok)
            throw Error(ErrorCode::Internal, "proof log rejected at step " + std::to_string(rr.index) + ": " + rr.reason);
        r.proof_replayed = true;
    }
    if (!opts.proof_path.empty()) {
        std::ofstream out(opts.proof_path);
        if (!out) throw Error(ErrorCode::Io, "cannot write '" + opts.proof_path + "'");
        out << proof_to_json(a.verdict.log) << '\n';
        r.proof_path = opts.proof_path;
    }
    if (null_only && (expects_iso(r.prediction) || !r.closed_form.empty()))
        throw Error(ErrorCode::Internal, "null-only verdict on a graph with a closed-form isomorphism");

    if (!opts.fast) {
        a.search = find_homomorphism(sys, opts.search);
        r.numeric = outcome_name(a.search->kind);
        if (std::isfinite(a.search->best_residual)) r.best_residual = a.search->best_residual;
        r.numeric_isomorphism = a.search->isomorphism;
        if (null_only && a.search->kind != OutcomeKind::NoneFound)
            throw Error(ErrorCode::Internal, "null-only verdict but the search found a nonzero solution");
    }
    r.seconds = since(t0);
    return a;
}

std::string report_to_json(const AnalysisReport& r) {
    json j{{"input", r.input},
           {"n", r.n},
           {"degrees", r.degrees},
           {"singular", r.singular},
           {"determinant", r.determinant},
           {"regularity", r.regularity},
           {"twins", r.twins},
           {"prediction", prediction_name(r.prediction)},
           {"closed_form", r.closed_form},
           {"verdict", r.verdict},
           {"verdict_reason", r.verdict_reason},
           {"proof_steps", r.proof_steps},
           {"depth", r.depth},
           {"proof_replayed", r.proof_replayed},
           {"proof_path", r.proof_path},
           {"numeric", r.numeric},
           {"numeric_isomorphism", r.numeric_isomorphism},
           {"seconds", r.seconds}};
    j["best_residual"] = r.best_residual ? json(*r.best_residual) : json(nullptr);
    return j.dump();
}

AnalysisReport report_from_json(const std::string& text) {
    AnalysisReport r;
    try {
        json j = json::parse(text);
        r.input = j.at("input").get<std::string>();
        r.n = j.at("n").get<int>();
        r.degrees = j.at("degrees").get<std::vector<int>>();
        r.singular = j.at("singular").get<bool>();
        r.determinant = j.at("determinant").get<std::string>();
        r.regularity = j.at("regularity").get<std::string>();
        r.twins = j.at("twins").get<std::vector<std::vector<int>>>();
        const std::string p = j.at("prediction").get<std::string>();
        bool known = false;
        for (Prediction c : {Prediction::Isomorphic, Prediction::NullOnly, Prediction::IsomorphicConstructive,
                             Prediction::OpenExpectNull}) {
            if (p == prediction_name(c)) {
                r.prediction = c;
                known = true;
            }
        }
        if (!known) throw Error(ErrorCode::Parse, "unknown prediction '" + p + "'");
        r.closed_form = j.at("closed_form").get<std::vector<std::vector<std::string>>>();
        r.verdict = j.at("verdict").get<std::string>();
        r.verdict_reason = j.at("verdict_reason").get<std::string>();
        r.proof_steps = j.at("proof_steps").get<std::size_t>();
        r.depth = j.at("depth").get<int>();
        r.proof_replayed = j.at("proof_replayed").get<bool>();
        r.proof_path = j.at("proof_path").get<std::string>();
        r.numeric = j.at("numeric").get<std::string>();
        if (!j.at("best_residual").is_null()) r.best_residual = j.at("best_residual").get<double>();
        r.numeric_isomorphism = j.at("numeric_isomorphism").get<bool>();
        r.seconds = j.at("seconds").get<double>();
    } catch (const json::exception& e) {
        throw Error(ErrorCode::Parse, e.what());
    }
    return r;
}

std::string report_to_text(const AnalysisReport& r) {
    std::ostringstream out;
    out << "graph        " << r.input << " (n = " << r.n << ")\n";
    out << "degrees     ";
    for (int d : r.degrees) out << ' ' << d;
    out << "\nadjacency    " << (r.singular ? "singular" : "nonsingular") << ", det = " << r.determinant << '\n';
    out << "regularity   " << r.regularity << '\n';
    out << "twin classes";
    for (const auto& c : r.twins) {
        out << " {";
        for (std::size_t i = 0; i < c.size(); ++i) out << (i ? "," : "") << c[i];
        out << '}';
    }
    out << "\nprediction   " << prediction_name(r.prediction) << '\n';
    if (!r.closed_form.empty()) {
        out << "closed form  diagonal";
        for (std::size_t i = 0; i < r.closed_form.size(); ++i) out << ' ' << r.closed_form[i][i];
        out << " (isomorphism)\n";
    }
    out << "deduction    " << r.verdict << ": " << r.verdict_reason << " (" << r.proof_steps << " steps, depth "
        << r.depth << (r.proof_replayed ? ", replayed" : "") << ")\n";
    if (r.verdict == verdict_name(VerdictKind::NullOnly)) out << "             the only homomorphism is the null map\n";
    if (!r.proof_path.empty()) out << "proof log    " << r.proof_path << '\n';
    out << "numeric      " << r.numeric;
    if (r.best_residual) out << ", best non-null residual " << *r.best_residual;
    if (r.numeric_isomorphism) out << ", isomorphism";
    out << '\n';
    return out.str();
}

// ---- reference corpus -----------------------------------------------------------

std::vector<CorpusRow> run_corpus(const AnalyzeOptions& opts) {
    std::vector<CorpusRow> rows;
    auto timed = [&](const std::string& name, const std::string& expected, auto&& body) {
        const auto t0 = std::chrono::steady_clock::now();
        CorpusRow row{name, expected, "", false, 0};
        try {
            row.pass = body(row.observed);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::Internal) throw;
            row.observed = std::string("error: ") + e.what();
        }
        row.seconds = since(t0);
        rows.push_back(std::move(row));
    };

    timed("tadpole:4,1 matrices", "adjacency and random-walk rows", [](std::string& obs) {
        Graph g = generate_family("tadpole:4,1");
        const int adj[5][5] = {{0, 1, 0, 1, 0}, {1, 0, 1, 0, 0}, {0, 1, 0, 1, 0}, {1, 0, 1, 0, 1}, {0, 0, 0, 1, 0}};
        ExactMatrix a = adjacency_matrix(g);
        bool ok = true;
        for (int i = 0; i < 5; ++i)
            for (int k = 0; k < 5; ++k) ok = ok && a(i, k) == adj[i][k];
        EvolutionAlgebra rw = build_rw_algebra(g);
        for (int i = 0; i < 5; ++i)
            for (int k = 0; k < 5; ++k) ok = ok && rw.M(i, k) == Rational(adj[i][k]) / g.degree(i + 1);
        ok = ok && rw.M(0, 1) == Rational(1, 2) && rw.M(3, 4) == Rational(1, 3) && rw.M(4, 3) == 1;
        obs = ok ? "match" : "mismatch";
        return ok;
    });

    for (const char* name : {"cmn:2,2", "cmn:2,3", "cmn:3,2", "cmn:3,3", "caterpillar:1,2,2", "caterpillar:1,2,2,2",
                             "tadpole:4,1", "tadpole:4,3", "bull"}) {
        const std::string expected = opts.fast ? "null_only, replayed" : "null_only, replayed, none_found";
        timed(name, expected, [&](std::string& obs) {
            Analysis a = analyze(generate_family(std::string(name)), name, opts);
            obs = a.report.verdict + (a.report.proof_replayed ? ", replayed" : "");
            if (!opts.fast) obs += ", " + a.report.numeric;
            return obs == expected;
        });
    }

    for (const char* name : {"cycle:3", "cycle:4", "cycle:5", "cycle:6", "star:3", "star:4", "kbip:2,3"}) {
        timed(name, "closed-form isomorphism, not null_only", [&](std::string& obs) {
            Graph g = generate_family(std::string(name));
            auto cf = closed_form_iso(g);
            Verdict v = prove_null_only(g, opts.budget);
            obs = std::string(cf ? "closed-form isomorphism" : "no closed form") + ", " + verdict_name(v.kind);
            return cf && is_isomorphism(g, *cf) && v.kind != VerdictKind::NullOnly;
        });
    }

    if (!opts.fast) {
        timed("cycle:4 search", "verified_hom", [&](std::string& obs) {
            SearchOutcome o = find_homomorphism(generate_family("cycle:4"), opts.search);
            obs = outcome_name(o.kind);
            return o.kind == OutcomeKind::VerifiedHom;
        });
    }
    return rows;
}

std::string corpus_to_text(const std::vector<CorpusRow>& rows) {
    std::size_t w = 8;
    for (const CorpusRow& r : rows) w = std::max(w, r.instance.size());
    std::ostringstream out;
    int passed = 0;
    for (const CorpusRow& r : rows) {
        passed += r.pass;
        out << (r.pass ? "PASS  " : "FAIL  ") << r.instance << std::string(w - r.instance.size() + 2, ' ') << r.observed;
        char buf[32];
        std::snprintf(buf, sizeof buf, "  (%.3f s)", r.seconds);
        out << buf << '\n';
    }
    out << passed << '/' << rows.size() << " passed\n";
    return out.str();
}

std::string corpus_to_json(const std::vector<CorpusRow>& rows) {
    json arr = json::array();
    for (const CorpusRow& r : rows)
        arr.push_back({{"instance", r.instance},
                       {"expected", r.expected},
                       {"observed", r.observed},
                       {"pass", r.pass},
                       {"seconds", r.seconds}});
    return arr.dump();
}

// ---- sweeps ---------------------------------------------------------------------

namespace {

[[noreturn]] void bad_range(const std::string& spec, const std::string& why) {
    throw Error(ErrorCode::InvalidRange, "sweep '" + spec + "': " + why);
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(trim(cur));
    if (!s.empty() && s.back() == sep) out.push_back("");
    return out;
}

int to_int(const std::string& spec, const std::string& s) {
    try {
        std::size_t used = 0;
        int v = std::stoi(s, &used);
        if (used != s.size()) bad_range(spec, "'" + s + "' is not an integer");
        return v;
    } catch (const std::logic_error&) {
        bad_range(spec, "'" + s + "' is not an integer");
    }
}

std::vector<int> parse_values(const std::string& spec, const std::string& text) {
    std::vector<int> out;
    const std::string t = trim(text);
    if (t.empty()) bad_range(spec, "missing values");
    auto dots = t.find("..");
    if (dots != std::string::npos) {
        int lo = to_int(spec, trim(t.substr(0, dots))), hi = to_int(spec, trim(t.substr(dots + 2)));
        for (int v = lo; v <= hi; ++v) out.push_back(v);
        return out;
    }
    for (const std::string& part : split(t, ',')) out.push_back(to_int(spec, part));
    return out;
}

bool is_name(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isalpha(static_cast<unsigned char>(c)); });
}

}  // namespace

std::vector<std::string> expand_sweep(const std::string& spec) {
    const auto pos = spec.find(" for ");
    if (trim(spec).ends_with(" for")) bad_range(spec, "missing ranges after 'for'");
    const std::string tmpl = trim(pos == std::string::npos ? spec : spec.substr(0, pos));
    if (tmpl.empty()) bad_range(spec, "missing family template");
    std::vector<std::string> names;
    std::vector<std::vector<int>> values;
    if (pos != std::string::npos) {
        for (const std::string& clause : split(spec.substr(pos + 5), ';')) {
            const auto in = clause.find(" in");
            if (in == std::string::npos) bad_range(spec, "expected '<vars> in <values>'");
            std::vector<int> vals = parse_values(spec, clause.substr(in + 3));
            for (const std::string& v : split(clause.substr(0, in), ',')) {
                if (!is_name(v)) bad_range(spec, "bad variable name '" + v + "'");
                if (std::find(names.begin(), names.end(), v) != names.end()) bad_range(spec, "variable '" + v + "' repeated");
                names.push_back(v);
                values.push_back(vals);
            }
        }
    }

    const auto colon = tmpl.find(':');
    const std::string family = tmpl.substr(0, colon);
    std::vector<std::string> params;
    if (colon != std::string::npos) params = split(tmpl.substr(colon + 1), ',');
    for (const std::string& p : params) {
        if (is_name(p) && std::find(names.begin(), names.end(), p) == names.end())
            bad_range(spec, "variable '" + p + "' has no range");
    }

    std::vector<std::string> out;
    for (const auto& v : values)
        if (v.empty()) return out;
    std::vector<std::size_t> idx(names.size(), 0);
    while (true) {
        std::map<std::string, int> env;
        for (std::size_t i = 0; i < names.size(); ++i) env[names[i]] = values[i][idx[i]];
        std::string inst = family;
        for (std::size_t i = 0; i < params.size(); ++i)
            inst += (i ? "," : ":") + (env.count(params[i]) ? std::to_string(env[params[i]]) : params[i]);
        out.push_back(inst);
        std::size_t k = names.size();
        while (k > 0) {
            --k;
            if (++idx[k] < values[k].size()) break;
            idx[k] = 0;
            if (k == 0) return out;
        }
        if (names.empty()) return out;
    }
}

std::vector<SweepRow> run_sweep(const std::string& spec, const AnalyzeOptions& opts) {
    const std::vector<std::string> instances = expand_sweep(spec);
    std::vector<SweepRow> rows(instances.size());
    AnalyzeOptions inner = opts;
    inner.proof_path.clear();
    inner.search.threads = 1;
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < instances.size(); i = next++) {
            SweepRow& row = rows[i];
            row.instance = instances[i];
            const auto t0 = std::chrono::steady_clock::now();
            try {
                Analysis a = analyze(generate_family(instances[i]), instances[i], inner);
                row.regularity = a.report.regularity;
                row.singular = a.report.singular;
                row.verdict = a.report.verdict;
                row.best_residual = a.report.best_residual;
            } catch (const Error& e) {
                if (e.code() == ErrorCode::Internal) row.verdict = "tripwire";
                row.error = e.what();
            }
            row.seconds = since(t0);
        }
    };
    int threads = 0;
    if (const char* env = std::getenv("EVOGRAPH_THREADS")) threads = std::atoi(env);
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    threads = std::clamp<int>(threads, 1, std::max<int>(1, static_cast<int>(instances.size())));
    if (threads == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < threads; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    return rows;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    out << "instance,regularity,singular,verdict,best_residual,seconds,error\n";
    auto quote = [](const std::string& s) {
        std::string q = "\"";
        for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
        return q + "\"";
    };
    for (const SweepRow& r : rows) {
        out << quote(r.instance) << ',' << quote(r.regularity) << ',' << (r.singular ? "yes" : "no") << ','
            << r.verdict << ',';
        if (r.best_residual) out << *r.best_residual;
        out << ',' << r.seconds << ',' << quote(r.error) << '\n';
    }
    return out.str();
}

std::string sweep_to_json(const std::vector<SweepRow>& rows) {
    json arr = json::array();
    for (const SweepRow& r : rows) {
        json j{{"instance", r.instance}, {"regularity", r.regularity}, {"singular", r.singular},
               {"verdict", r.verdict},   {"seconds", r.seconds}};
        j["best_residual"] = r.best_residual ? json(*r.best_residual) : json(nullptr);
        if (!r.error.empty()) j["error"] = r.error;
        arr.push_back(std::move(j));
    }
    return arr.dump();
}

}  // namespace evograph
