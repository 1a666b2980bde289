// SPDX-License-Identifier: Apache-2.0
// Proof checker. Each step is re-derived from its cited premises alone; no
// state from the deduction engine is consulted.
#include <algorithm>
#include <optional>
#include <set>

#include "evograph/proof_log.hpp"

namespace evograph {

namespace {

struct StepFailure {
    std::string reason;
};

[[noreturn]] void fail(const std::string& reason) { throw StepFailure{reason}; }

void expect(bool ok, const char* reason) {
    if (!ok) fail(reason);
}

bool is_prefix(const std::vector<int>& a, const std::vector<int>& b) {
    return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
}

class Checker {
public:
    Checker(const HomSystem& sys, const ProofLog& log) : sys_(sys), log_(log), n_(sys.n) {
        for (const Constraint& c : sys.constraints) {
            std::vector<Polynomial::TermT> terms;
            for (const Term& t : c.terms) {
                Monomial m = t.vars.size() == 1 ? Monomial{t.vars[0]} : Monomial{t.vars[0], t.vars[1]};
                terms.push_back({m, FieldElem(t.coeff)});
            }
            constraints_.push_back(Polynomial::from_terms(std::move(terms)));
        }
    }

    ReplayResult run() {
        if (log_.n != n_) return {false, 0, "log is for a graph of order " + std::to_string(log_.n)};
        for (std::size_t i = 0; i < log_.steps.size(); ++i) {
            cur_ = static_cast<int>(i);
            try {
                check_context();
                check_step();
            } catch (const StepFailure& f) {
                return {false, cur_, f.reason};
            } catch (const Error& e) {
                return {false, cur_, e.what()};
            }
        }
        for (const ProofStep& s : log_.steps)
            if (s.conclusion.kind == FactKind::Null && s.branch.empty()) return {true, -1, ""};
        return {false, static_cast<int>(log_.steps.size()), "no unconditional null-map conclusion"};
    }

    ReplayResult run_one(int index) {
        if (log_.n != n_) return {false, 0, "log is for a graph of order " + std::to_string(log_.n)};
        if (index < 0 || index >= static_cast<int>(log_.steps.size())) return {false, index, "no such step"};
        cur_ = index;
        try {
            check_context();
            check_step();
        } catch (const StepFailure& f) {
            return {false, cur_, f.reason};
        } catch (const Error& e) {
            return {false, cur_, e.what()};
        }
        return {true, -1, ""};
    }

private:
    const HomSystem& sys_;
    const ProofLog& log_;
    int n_;
    int cur_ = 0;
    std::vector<Polynomial> constraints_;

    const ProofStep& here() const { return log_.steps[cur_]; }

    const ProofStep& earlier(int ref) const {
        if (ref < 0 || ref >= cur_) fail("premise is not an earlier step");
        return log_.steps[ref];
    }

    void check_var(int v) const {
        if (v < 0 || v >= n_ * n_) fail("variable id out of range");
    }

    void check_context() {
        const ProofStep& s = here();
        const auto& ctx = s.branch;
        if (s.rule == rules::BranchOpen) {
            expect(!ctx.empty() && ctx.back() == cur_, "branch-open must open its own context");
            std::vector<int> parent(ctx.begin(), ctx.end() - 1);
            check_context_valid(parent);
        } else {
            check_context_valid(ctx);
        }
        for (int v : s.conclusion.vars) check_var(v);
        if (s.rule == rules::BranchClose) return;  // premises live in the child context
        for (int r : s.premises) {
            if (is_constraint_ref(r)) {
                if (constraint_index(r) >= static_cast<int>(constraints_.size())) fail("constraint id out of range");
                continue;
            }
            const ProofStep& p = earlier(r);
            if (!is_prefix(p.branch, ctx)) fail("premise belongs to a different branch");
        }
    }

    void check_context_valid(const std::vector<int>& ctx) const {
        if (ctx.empty()) return;
        int b = ctx.back();
        if (b < 0 || b >= cur_) fail("branch context refers to a later step");
        const ProofStep& o = log_.steps[b];
        if (o.rule != rules::BranchOpen || o.branch != ctx) fail("branch context is not an open branch");
    }

    std::optional<Polynomial> equation_of(int ref) const {
        if (is_constraint_ref(ref)) return constraints_.at(constraint_index(ref));
        const Fact& f = earlier(ref).conclusion;
        switch (f.kind) {
            case FactKind::Equation: return f.equation;
            case FactKind::Zero: return Polynomial::variable(f.vars[0]);
            case FactKind::Value: return Polynomial::variable(f.vars[0]) - Polynomial::constant(f.value);
            case FactKind::Equal: return Polynomial::variable(f.vars[0]) - Polynomial::variable(f.vars[1]);
            case FactKind::EqualSquare:
                return Polynomial::monomial(Monomial{f.vars[0], f.vars[0]}) - Polynomial::variable(f.vars[1]);
            default: return std::nullopt;
        }
    }

    Polynomial equation(int ref) const {
        auto p = equation_of(ref);
        if (!p) fail("premise is not an equation");
        return *p;
    }

    // Variable proved nonzero by the premise.
    int nonzero_var(int ref) const {
        if (is_constraint_ref(ref)) fail("constraint cited as a nonzero fact");
        const Fact& f = earlier(ref).conclusion;
        if (f.kind == FactKind::NonZero) return f.vars[0];
        if (f.kind == FactKind::Value && !f.value.is_zero()) return f.vars[0];
        fail("premise is not a nonzero fact");
    }

    const Fact& fact(int ref) const {
        if (is_constraint_ref(ref)) fail("constraint cited as a fact");
        return earlier(ref).conclusion;
    }

    const Polynomial& conclusion_equation() const {
        expect(here().conclusion.kind == FactKind::Equation, "conclusion must be an equation");
        expect(!here().conclusion.equation.is_zero(), "conclusion is the zero polynomial");
        return here().conclusion.equation;
    }

    void expect_conclusion(FactKind k) const {
        if (here().conclusion.kind != k) fail(std::string("conclusion must be ") + fact_kind_name(k));
    }

    void check_step() {
        const std::string& r = here().rule;
        if (r == rules::Substitute) return substitute();
        if (r == rules::ProductNonzeroCancel) return cancel();
        if (r == rules::LinearCombine) return linear_combine();
        if (r == rules::SquareSumZero) return square_sum();
        if (r == rules::SingleMonomialZero) return single_monomial();
        if (r == rules::MutexElim) return mutex_elim();
        if (r == rules::LinearSolve) return linear_solve();
        if (r == rules::QuadSolveNonzero) return quad_solve();
        if (r == rules::RootSolve) return root_solve();
        if (r == rules::NonzeroDerive) return nonzero_derive();
        if (r == rules::NegativeSquare) return negative_square();
        if (r == rules::ValueConflict) return value_conflict();
        if (r == rules::ColumnZeroPropagate) return column_zero();
        if (r == rules::BranchOpen) return branch_open();
        if (r == rules::BranchClose) return branch_close();
        if (r == rules::LeafMutex) return leaf_mutex();
        if (r == rules::LeafTwinZero) return leaf_twin_zero();
        if (r == rules::LeafTwinCross) return leaf_twin_cross();
        fail("unknown rule '" + r + "'");
    }

    void substitute() {
        const ProofStep& s = here();
        expect(s.premises.size() >= 2, "substitute needs a target and at least one source");
        expect(s.sub_vars.size() + 1 == s.premises.size(), "one substituted variable per source");
        Polynomial p = equation(s.premises[0]);
        for (std::size_t k = 0; k < s.sub_vars.size(); ++k) {
            int x = s.sub_vars[k];
            check_var(x);
            Polynomial e = equation(s.premises[k + 1]);
            expect(e.count(x) == 1, "source must contain the variable exactly once");
            FieldElem a = e.coeff(Monomial::var(x));
            expect(!a.is_zero(), "source must be linear in the variable");
            Polynomial rest = e - Polynomial::monomial(Monomial::var(x), a);
            Polynomial q = rest.scaled(-a.inverse());
            expect(p.substitution_degree(x, q.degree()) <= Monomial::kMaxDegree, "substitution degree too large");
            p = p.substitute(x, q);
        }
        expect(!p.is_zero(), "substitution yields the zero polynomial");
        expect(Polynomial::proportional(p, conclusion_equation()), "conclusion does not match substitution");
    }

    void cancel() {
        const ProofStep& s = here();
        expect(s.premises.size() >= 2, "cancel needs an equation and nonzero facts");
        Polynomial p = equation(s.premises[0]);
        expect(!p.is_zero(), "cannot cancel in the zero polynomial");
        std::vector<Polynomial::TermT> terms = p.terms();
        for (std::size_t k = 1; k < s.premises.size(); ++k) {
            int x = nonzero_var(s.premises[k]);
            int e = Monomial::kMaxDegree;
            for (const auto& t : terms) e = std::min(e, t.first.count(x));
            expect(e >= 1, "cancelled variable is not a common factor");
            for (auto& t : terms) t.first = t.first.divide(x, e);
        }
        Polynomial q = Polynomial::from_terms(std::move(terms));
        expect(Polynomial::proportional(q, conclusion_equation()), "conclusion does not match cancellation");
    }

    void linear_combine() {
        const ProofStep& s = here();
        expect(!s.premises.empty(), "linear-combine needs premises");
        expect(s.coefficients.size() == s.premises.size(), "one coefficient per premise");
        Polynomial sum;
        for (std::size_t k = 0; k < s.premises.size(); ++k) sum.add_scaled(equation(s.premises[k]), s.coefficients[k]);
        expect(!sum.is_zero(), "combination is the zero polynomial");
        expect(Polynomial::proportional(sum, conclusion_equation()), "conclusion does not match combination");
    }

    static int sign_of(const FieldElem& c) {
        auto sg = c.sign();
        if (!sg) fail("coefficient sign cannot be decided");
        return *sg;
    }

    void square_sum() {
        const ProofStep& s = here();
        expect(s.premises.size() == 1, "square-sum-zero takes one equation");
        Polynomial p = equation(s.premises[0]);
        expect(!p.is_zero(), "empty equation");
        int sign = 0;
        bool has_constant = false;
        std::set<int> bases;
        for (const auto& [m, c] : p.terms()) {
            if (m.degree() == 0) {
                has_constant = true;
            } else {
                expect(m.is_pure_power() && m.degree() % 2 == 0, "term is not an even power of one variable");
                bases.insert(m[0]);
            }
            int sg = sign_of(c);
            expect(sign == 0 || sg == sign, "coefficients differ in sign");
            sign = sg;
        }
        const Fact& f = here().conclusion;
        if (f.kind == FactKind::Contradiction) {
            expect(has_constant, "no constant term to contradict");
            return;
        }
        expect_conclusion(FactKind::Zero);
        expect(!has_constant, "constant term present");
        expect(bases.count(f.vars[0]) == 1, "variable does not occur in the sum");
    }

    void single_monomial() {
        const ProofStep& s = here();
        expect(!s.premises.empty(), "single-monomial-zero needs an equation");
        Polynomial p = equation(s.premises[0]);
        expect(p.size() == 1 && p.terms()[0].first.degree() > 0, "equation is not a single monomial");
        std::set<int> nz;
        for (std::size_t k = 1; k < s.premises.size(); ++k) nz.insert(nonzero_var(s.premises[k]));
        std::vector<int> vs = p.terms()[0].first.vars();
        const Fact& f = here().conclusion;
        if (f.kind == FactKind::Contradiction) {
            for (int v : vs) expect(nz.count(v) == 1, "some factor is not known nonzero");
            return;
        }
        expect_conclusion(FactKind::Zero);
        int x = f.vars[0];
        expect(std::find(vs.begin(), vs.end(), x) != vs.end(), "variable is not a factor");
        for (int v : vs)
            if (v != x) expect(nz.count(v) == 1, "other factor is not known nonzero");
    }

    void mutex_elim() {
        const ProofStep& s = here();
        expect(!s.premises.empty(), "mutex-elim needs an equation");
        Polynomial p = equation(s.premises[0]);
        std::vector<int> bases;
        for (const auto& [m, c] : p.terms()) {
            expect(m.degree() == 2 && m.is_pure_power(), "term is not a square");
            bases.push_back(m[0]);
        }
        std::set<std::pair<int, int>> pairs;
        for (std::size_t k = 1; k < s.premises.size(); ++k) {
            int ref = s.premises[k];
            if (!is_constraint_ref(ref) && earlier(ref).conclusion.kind == FactKind::Mutex) {
                const auto& vs = earlier(ref).conclusion.vars;
                for (std::size_t a = 0; a < vs.size(); ++a)
                    for (std::size_t b = a + 1; b < vs.size(); ++b)
                        pairs.insert({std::min(vs[a], vs[b]), std::max(vs[a], vs[b])});
                continue;
            }
            Polynomial e = equation(ref);
            expect(e.size() == 1, "product evidence must be a single monomial");
            const Monomial& m = e.terms()[0].first;
            expect(m.degree() == 2 && m[0] != m[1], "product evidence must be x*y");
            pairs.insert({m[0], m[1]});
        }
        for (std::size_t a = 0; a < bases.size(); ++a)
            for (std::size_t b = a + 1; b < bases.size(); ++b)
                expect(pairs.count({std::min(bases[a], bases[b]), std::max(bases[a], bases[b])}) == 1,
                       "a pair of squared variables lacks a vanishing product");
        expect_conclusion(FactKind::Zero);
        expect(std::find(bases.begin(), bases.end(), here().conclusion.vars[0]) != bases.end(),
               "variable does not occur in the sum");
    }

    // a*x^d + b with b possibly zero; returns false if p has another shape.
    static bool binomial(const Polynomial& p, int& x, int& d, FieldElem& a, FieldElem& b) {
        if (p.size() < 1 || p.size() > 2) return false;
        const auto& top = p.terms().back();
        if (top.first.degree() == 0 || !top.first.is_pure_power()) return false;
        x = top.first[0];
        d = top.first.degree();
        a = top.second;
        b = FieldElem(0);
        if (p.size() == 2) {
            if (p.terms()[0].first.degree() != 0) return false;
            b = p.terms()[0].second;
        }
        return true;
    }

    void expect_value(int x, const FieldElem& v) const {
        const Fact& f = here().conclusion;
        if (v.is_zero()) {
            expect(f.kind == FactKind::Zero && f.vars[0] == x, "expected a zero conclusion");
            return;
        }
        expect(f.kind == FactKind::Value && f.vars[0] == x, "expected a value conclusion for the solved variable");
        expect(f.value == v, "value does not solve the equation");
    }

    void linear_solve() {
        const ProofStep& s = here();
        expect(s.premises.size() == 1, "linear-solve takes one equation");
        int x, d;
        FieldElem a, b;
        expect(binomial(equation(s.premises[0]), x, d, a, b) && d == 1, "equation is not a*x + b");
        expect_value(x, -b / a);
    }

    void quad_solve() {
        const ProofStep& s = here();
        expect(s.premises.size() == 2, "quad-solve-nonzero takes an equation and a nonzero fact");
        Polynomial p = equation(s.premises[0]);
        int x = nonzero_var(s.premises[1]);
        expect(p.size() == 2 && p.terms()[0].first == Monomial::var(x) && p.terms()[1].first == Monomial::power(x, 2),
               "equation is not a*x^2 + b*x");
        expect_value(x, -p.terms()[0].second / p.terms()[1].second);
    }

    void root_solve() {
        const ProofStep& s = here();
        expect(s.premises.size() == 1, "root-solve takes one equation");
        int x, d;
        FieldElem a, b;
        expect(binomial(equation(s.premises[0]), x, d, a, b) && !b.is_zero(), "equation is not a*x^d + b, b != 0");
        expect(d % 2 == 1, "only odd roots are unique over the reals");
        expect_conclusion(FactKind::Value);
        expect(here().conclusion.vars[0] == x, "value for a different variable");
        expect(here().conclusion.value.pow(d) == -b / a, "value is not a root");
    }

    void nonzero_derive() {
        const ProofStep& s = here();
        expect(s.premises.size() == 1, "nonzero-derive takes one equation");
        int x, d;
        FieldElem a, b;
        expect(binomial(equation(s.premises[0]), x, d, a, b) && !b.is_zero(), "equation is not a*x^d + b, b != 0");
        expect_conclusion(FactKind::NonZero);
        expect(here().conclusion.vars[0] == x, "nonzero fact for a different variable");
    }

    void negative_square() {
        const ProofStep& s = here();
        expect(s.premises.size() == 1, "negative-square takes one equation");
        int x, d;
        FieldElem a, b;
        expect(binomial(equation(s.premises[0]), x, d, a, b) && d % 2 == 0, "equation is not a*x^(2k) + b");
        expect(sign_of(-b / a) < 0, "even power equals a non-negative value");
        expect_conclusion(FactKind::Contradiction);
    }

    void value_conflict() {
        const ProofStep& s = here();
        expect_conclusion(FactKind::Contradiction);
        if (s.premises.size() == 1) {
            Polynomial p = equation(s.premises[0]);
            expect(p.is_constant() && !p.is_zero(), "equation is not a nonzero constant");
            return;
        }
        expect(s.premises.size() == 2, "value-conflict takes one or two premises");
        const Fact& f = fact(s.premises[0]);
        const Fact& g = fact(s.premises[1]);
        auto nonzero = [](const Fact& h) {
            return h.kind == FactKind::NonZero || (h.kind == FactKind::Value && !h.value.is_zero());
        };
        auto conflicting = [&](const Fact& u, const Fact& v) {
            if (u.kind == FactKind::Null) return nonzero(v);
            if (u.kind == FactKind::Zero) return nonzero(v) && v.vars[0] == u.vars[0];
            if (u.kind == FactKind::Value && v.kind == FactKind::Value)
                return u.vars[0] == v.vars[0] && u.value != v.value;
            return false;
        };
        expect(conflicting(f, g) || conflicting(g, f), "premises do not conflict");
    }

    void column_zero() {
        const ProofStep& s = here();
        expect_conclusion(FactKind::Null);
        std::set<int> zeros;
        for (int r : s.premises) {
            const Fact& f = fact(r);
            expect(f.kind == FactKind::Zero, "premise is not a zero fact");
            zeros.insert(f.vars[0]);
        }
        expect(!zeros.empty(), "no zero facts cited");
        int k = var_col(n_, *zeros.begin());
        for (int i = 1; i <= n_; ++i) expect(zeros.count(var_id(n_, i, k)) == 1, "column is not entirely zero");
    }

    void branch_open() {
        const ProofStep& s = here();
        expect(s.premises.empty(), "branch-open takes no premises");
        expect_conclusion(FactKind::NonZero);
    }

    void branch_close() {
        const ProofStep& s = here();
        expect(s.premises.size() == 2, "branch-close takes the open step and its contradiction");
        const ProofStep& o = earlier(s.premises[0]);
        const ProofStep& c = earlier(s.premises[1]);
        expect(o.rule == rules::BranchOpen, "first premise is not a branch-open step");
        expect(s.premises[0] < s.premises[1], "contradiction precedes the branch");
        expect(c.conclusion.kind == FactKind::Contradiction, "second premise is not a contradiction");
        expect(c.branch == o.branch, "contradiction is not in the opened branch");
        std::vector<int> parent(o.branch.begin(), o.branch.end() - 1);
        expect(s.branch == parent, "branch-close must return to the parent context");
        expect_conclusion(FactKind::Zero);
        expect(s.conclusion.vars[0] == o.conclusion.vars[0], "closed variable differs from the assumption");
    }

    std::vector<int> leaves() const {
        std::vector<int> out;
        for (int v = 1; v <= n_; ++v)
            if (sys_.graph.degree(v) == 1) out.push_back(v);
        return out;
    }
    int anchor(int leaf) const { return sys_.graph.neighbors(leaf)[0]; }

    void leaf_mutex() {
        expect_conclusion(FactKind::Mutex);
        const auto& vs = here().conclusion.vars;
        for (int l : leaves()) {
            std::vector<int> col;
            for (int i = 1; i <= n_; ++i) col.push_back(var_id(n_, i, anchor(l)));
            if (vs == col) return;
        }
        fail("mutex set is not the column of a leaf's neighbour");
    }

    void leaf_twin_zero() {
        expect_conclusion(FactKind::Zero);
        int x = here().conclusion.vars[0];
        auto ls = leaves();
        for (int l : ls) {
            for (int u : ls) {
                if (u == l || anchor(u) != anchor(l)) continue;
                int k = anchor(l);
                for (int v : {var_id(n_, u, k), var_id(n_, l, k), var_id(n_, k, l), var_id(n_, k, u)})
                    if (v == x) return;
            }
        }
        fail("no twin leaves justify this zero");
    }

    void leaf_twin_cross() {
        const Fact& f = here().conclusion;
        auto ls = leaves();
        for (int l : ls) {
            for (int u : ls) {
                if (u == l || anchor(u) != anchor(l)) continue;
                for (int w : ls) {
                    if (w == l || w == u) continue;
                    int kl = anchor(l), kw = anchor(w);
                    if (f.kind == FactKind::Zero) {
                        for (int v : {var_id(n_, u, kw), var_id(n_, l, kw), var_id(n_, kl, w)})
                            if (v == f.vars[0]) return;
                    } else if (f.kind == FactKind::EqualSquare) {
                        int base = var_id(n_, w, kl);
                        if (f.vars[0] == base && (f.vars[1] == var_id(n_, kw, l) || f.vars[1] == var_id(n_, kw, u))) return;
                    } else if (f.kind == FactKind::Equal) {
                        if (f.vars[0] == var_id(n_, kw, l) && f.vars[1] == var_id(n_, kw, u)) return;
                    }
                }
            }
        }
        fail("no twin-leaf configuration justifies this fact");
    }
};

}  // namespace

ReplayResult replay_proof_checked(const HomSystem& sys, const ProofLog& log) { return Checker(sys, log).run(); }

ReplayResult check_step(const HomSystem& sys, const ProofLog& log, int index) { return Checker(sys, log).run_one(index); }

bool replay_proof(const HomSystem& sys, const ProofLog& log) { return replay_proof_checked(sys, log).ok; }

void require_replay(const HomSystem& sys, const ProofLog& log) {
    ReplayResult r = replay_proof_checked(sys, log);
    if (!r.ok) throw Error(ErrorCode::InvalidStep, "step " + std::to_string(r.index) + ": " + r.reason);
}

}  // namespace evograph
