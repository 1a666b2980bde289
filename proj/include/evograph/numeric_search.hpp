// SPDX-License-Identifier: Apache-2.0
// Damped least-squares search for nonzero homomorphisms, exact
// reconstruction of converged candidates, and closed-form isomorphisms for
// regular and biregular graphs.
#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "evograph/hom_system.hpp"

namespace evograph {

struct SearchConfig {
    int restarts = 200;
    int max_iterations = 500;
    double tau_res = 1e-10;   // residual max-norm accepted as a solution
    double tau_null = 1e-6;   // entry max-norm below which a point is null
    double init_scale = 1.5;  // entries start uniform in [-scale, scale]
    std::uint64_t seed = 1;
    int threads = 0;  // 0: EVOGRAPH_THREADS, else hardware concurrency
};

// Throws InvalidParameter.
void validate(const SearchConfig& cfg);

enum class OutcomeKind { NoneFound, Candidate, VerifiedHom };
const char* outcome_name(OutcomeKind k);

struct SearchOutcome {
    OutcomeKind kind = OutcomeKind::NoneFound;
    // Smallest residual max-norm over converged non-null points (infinity if none).
    double best_residual = 0;
    // Candidate / VerifiedHom: the float point and its residual.
    FloatCandidate point;
    double residual = 0;
    // VerifiedHom only.
    std::optional<HomCandidate> exact;
    bool isomorphism = false;
    int restarts = 0;
    int null_basin = 0;  // restarts that converged to the null map
    int accepted = 0;    // non-null points with residual below tau_res
    int best_restart = -1;
};

// Sum of squared constraint residuals.
double objective(const HomSystem& sys, const FloatCandidate& t);
// Analytic gradient of objective().
FloatCandidate gradient(const HomSystem& sys, const FloatCandidate& t);

// Snaps entries to p/q (q <= 64) or q * 2^(a/6) * 3^(b/6) and verifies the
// result exactly; absent when no snapped matrix is a nonzero homomorphism.
std::optional<HomCandidate> reconstruct(const HomSystem& sys, const FloatCandidate& t);

// Regular(k): (1/k) I. Biregular(k1, k2): diag with (k1^2 k2)^(-1/3) on the
// degree-k1 side and (k1 k2^2)^(-1/3) on the other. Absent for Neither.
std::optional<HomCandidate> closed_form_iso(const Graph& g);

SearchOutcome find_homomorphism(const Graph& g, const SearchConfig& cfg = {});
SearchOutcome find_homomorphism(const HomSystem& sys, const SearchConfig& cfg = {});

std::string outcome_to_json(const SearchOutcome& out);

}  // namespace evograph
