// SPDX-License-Identifier: Apache-2.0
// Deduction facts, proof steps and the independent replay checker.
#pragma once

#include <string>
#include <vector>

#include "evograph/hom_system.hpp"
#include "evograph/polynomial.hpp"

namespace evograph {

enum class FactKind { Zero, Value, NonZero, Equal, EqualSquare, Mutex, Equation, Contradiction, Null };

const char* fact_kind_name(FactKind k);

struct Fact {
    FactKind kind = FactKind::Contradiction;
    // Zero/Value/NonZero: {x}. Equal: {x, y} for x = y. EqualSquare: {x, y}
    // for x^2 = y. Mutex: members, pairwise products vanish.
    std::vector<int> vars;
    FieldElem value;      // Value
    Polynomial equation;  // Equation: equation = 0

    static Fact zero(int x) { return {FactKind::Zero, {x}, {}, {}}; }
    static Fact nonzero(int x) { return {FactKind::NonZero, {x}, {}, {}}; }
    static Fact value_of(int x, const FieldElem& v) { return {FactKind::Value, {x}, v, {}}; }
    static Fact equal(int x, int y) { return {FactKind::Equal, {x, y}, {}, {}}; }
    static Fact equal_square(int x, int y) { return {FactKind::EqualSquare, {x, y}, {}, {}}; }
    static Fact mutex(std::vector<int> xs) { return {FactKind::Mutex, std::move(xs), {}, {}}; }
    static Fact eq(Polynomial p) { return {FactKind::Equation, {}, {}, std::move(p)}; }
    static Fact contradiction() { return {FactKind::Contradiction, {}, {}, {}}; }
    static Fact null() { return {FactKind::Null, {}, {}, {}}; }

    bool operator==(const Fact& o) const {
        return kind == o.kind && vars == o.vars && value == o.value && equation == o.equation;
    }
    std::string str(int n) const;
};

// Premise encoding: id >= 0 is an earlier step, id < 0 is constraint -id-1.
inline int constraint_ref(int index) { return -index - 1; }
inline bool is_constraint_ref(int ref) { return ref < 0; }
inline int constraint_index(int ref) { return -ref - 1; }

namespace rules {
inline constexpr const char* LeafMutex = "leaf-mutex";
inline constexpr const char* LeafTwinZero = "leaf-twin-zero";
inline constexpr const char* LeafTwinCross = "leaf-twin-cross";
inline constexpr const char* Substitute = "substitute";
inline constexpr const char* SquareSumZero = "square-sum-zero";
inline constexpr const char* SingleMonomialZero = "single-monomial-zero";
inline constexpr const char* ProductNonzeroCancel = "product-nonzero-cancel";
inline constexpr const char* MutexElim = "mutex-elim";
inline constexpr const char* LinearSolve = "linear-solve";
inline constexpr const char* QuadSolveNonzero = "quad-solve-nonzero";
inline constexpr const char* NegativeSquare = "negative-square";
inline constexpr const char* ValueConflict = "value-conflict";
inline constexpr const char* ColumnZeroPropagate = "column-zero-propagate";
inline constexpr const char* BranchOpen = "branch-open";
inline constexpr const char* BranchClose = "branch-close";
inline constexpr const char* LinearCombine = "linear-combine";
inline constexpr const char* RootSolve = "root-solve";
inline constexpr const char* NonzeroDerive = "nonzero-derive";
}  // namespace rules

struct ProofStep {
    std::string rule;
    std::vector<int> premises;
    Fact conclusion;
    std::vector<int> branch;  // ids of enclosing branch-open steps, outermost first
    // substitute: variable replaced by premises[i+1].
    std::vector<int> sub_vars;
    // linear-combine: multiplier of premises[i].
    std::vector<FieldElem> coefficients;
};

struct ProofLog {
    int n = 0;
    std::vector<ProofStep> steps;
};

std::string proof_to_json(const ProofLog& log);
ProofLog proof_from_json(const std::string& text);
std::string proof_to_text(const ProofLog& log);

struct ReplayResult {
    bool ok = false;
    int index = -1;  // failing step, or -1
    std::string reason;
};

// Re-derives every step from its premises with the named rule only, then
// requires a Null conclusion outside all branches.
ReplayResult replay_proof_checked(const HomSystem& sys, const ProofLog& log);
bool replay_proof(const HomSystem& sys, const ProofLog& log);
// Throws Error(InvalidStep) naming the first rejected step.
void require_replay(const HomSystem& sys, const ProofLog& log);
// Checks step `index` alone, taking its premises as given.
ReplayResult check_step(const HomSystem& sys, const ProofLog& log, int index);

}  // namespace evograph
