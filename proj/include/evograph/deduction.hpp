// SPDX-License-Identifier: Apache-2.0
// Sound fact derivation over the homomorphism system, with lemma-style case
// splits and a proof log that replay_proof can check.
#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "evograph/proof_log.hpp"

namespace evograph {

struct Budget {
    int max_depth = 8;
    std::size_t step_limit = 1'000'000;
    int root_width = 2;   // case-split candidates tried at depth 0
    int inner_width = 1;  // and below
};

enum class VerdictKind { NullOnly, Unknown, FoundStructure };
const char* verdict_name(VerdictKind k);

struct Verdict {
    VerdictKind kind = VerdictKind::Unknown;
    ProofLog log;
    // Unknown: facts known at the root. FoundStructure: a nonzero exact
    // assignment (Value facts, omitted variables are zero) solving the system.
    std::vector<Fact> facts;
    std::string reason;
    std::size_t steps = 0;  // rule applications, including abandoned branches
    int depth = 0;          // deepest case split opened
};

class DeductionState {
public:
    // Keeps its own copy of sys.
    explicit DeductionState(const HomSystem& sys);

    // Leaf corollaries: mutex columns and twin-leaf zeros.
    void apply_leaf_rules();
    // Twin-leaf pair plus a third leaf.
    void apply_leaf_twin_cross_rules();

    enum class Status { Open, Null, Contradiction };
    // Runs the propagation loop to a fixpoint. Throws Error(Internal) on a
    // contradiction outside every branch, which would mean an unsound rule.
    Status saturate();

    bool is_zero(int var) const;
    std::optional<FieldElem> value(int var) const;
    bool is_nonzero(int var) const;
    std::vector<Polynomial> equations() const;
    std::vector<Fact> facts() const;
    const ProofLog& log() const;

    struct Impl;

private:
    friend class Prover;
    std::shared_ptr<Impl> impl_;
};

Verdict prove_null_only(const HomSystem& sys, const Budget& budget = {});
Verdict prove_null_only(const Graph& g, const Budget& budget = {});

std::string verdict_to_json(const Verdict& v);

}  // namespace evograph
