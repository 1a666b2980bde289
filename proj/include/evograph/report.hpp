// SPDX-License-Identifier: Apache-2.0
// Per-graph analysis reports, the reference corpus run and family sweeps.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "evograph/deduction.hpp"
#include "evograph/numeric_search.hpp"

namespace evograph {

enum class Prediction {
    Isomorphic,              // nonsingular, regular or biregular
    NullOnly,                // nonsingular, neither
    IsomorphicConstructive,  // singular, regular or biregular
    OpenExpectNull,          // singular, neither
};
const char* prediction_name(Prediction p);
Prediction predict(bool singular, const RegularityClass& rc);

struct AnalysisReport {
    std::string input;
    int n = 0;
    std::vector<int> degrees;  // non-decreasing
    bool singular = false;
    std::string determinant;
    std::string regularity;
    std::vector<std::vector<int>> twins;
    Prediction prediction = Prediction::OpenExpectNull;
    std::vector<std::vector<std::string>> closed_form;  // empty when absent

    std::string verdict;  // verdict_name()
    std::string verdict_reason;
    std::size_t proof_steps = 0;
    int depth = 0;
    bool proof_replayed = false;
    std::string proof_path;

    std::string numeric = "skipped";  // outcome_name() or "skipped"
    std::optional<double> best_residual;
    bool numeric_isomorphism = false;

    double seconds = 0;

    bool operator==(const AnalysisReport&) const = default;
};

struct AnalyzeOptions {
    Budget budget;
    SearchConfig search;
    bool fast = false;       // skip numeric search
    std::string proof_path;  // write the proof log here when non-empty
};

struct Analysis {
    AnalysisReport report;
    Verdict verdict;
    std::optional<SearchOutcome> search;
};

// Throws Error(Internal) when the verdict contradicts the prediction or the
// numeric evidence (soundness tripwire).
Analysis analyze(const Graph& g, const std::string& label, const AnalyzeOptions& opts = {});

std::string report_to_json(const AnalysisReport& r);
AnalysisReport report_from_json(const std::string& text);
std::string report_to_text(const AnalysisReport& r);

struct CorpusRow {
    std::string instance;
    std::string expected;
    std::string observed;
    bool pass = false;
    double seconds = 0;
};

std::vector<CorpusRow> run_corpus(const AnalyzeOptions& opts);
std::string corpus_to_text(const std::vector<CorpusRow>& rows);
std::string corpus_to_json(const std::vector<CorpusRow>& rows);

// "tadpole:4,m for m in 1,3,5", "cmn:m,n for m,n in 2..3",
// "caterpillar:1,a,b for a in 2..3; b in 1,2". Throws InvalidRange.
std::vector<std::string> expand_sweep(const std::string& spec);

struct SweepRow {
    std::string instance;
    std::string regularity;
    bool singular = false;
    std::string verdict;
    std::optional<double> best_residual;
    double seconds = 0;
    std::string error;  // non-empty when the instance could not be analysed
};

// Rows in expansion order; workers capped by EVOGRAPH_THREADS.
std::vector<SweepRow> run_sweep(const std::string& spec, const AnalyzeOptions& opts);
std::string sweep_to_csv(const std::vector<SweepRow>& rows);
std::string sweep_to_json(const std::vector<SweepRow>& rows);

}  // namespace evograph
