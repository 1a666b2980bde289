// SPDX-License-Identifier: Apache-2.0
#include "evograph/deduction.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace evograph {

const char* verdict_name(VerdictKind k) {
    switch (k) {
        case VerdictKind::NullOnly: return "null_only";
        case VerdictKind::Unknown: return "unknown";
        case VerdictKind::FoundStructure: return "found_structure";
    }
    return "?";
}

namespace {

constexpr int kMaxDerivedDegree = 4;

struct BudgetExhausted {};
// A contradiction was logged at this step.
struct Closed {
    int step;
};

struct Shared {
    const HomSystem* sys;
    std::shared_ptr<const HomSystem> owned;  // set when the state outlives its caller's system
    ProofLog log;
    std::size_t steps = 0;
    std::size_t limit = 0;
    int max_depth_seen = 0;
};

// p = scale * (polynomial of ref)
struct Eq {
    Polynomial p;
    int ref = 0;
    FieldElem scale{1};
};

struct AffineDef {
    Polynomial eq;  // defining equation, x occurs once and linearly
    Polynomial rhs;
    int ref;
};

struct MonoHash {
    std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

}  // namespace

struct DeductionState::Impl {
    std::shared_ptr<Shared> shared;
    int n = 0;
    int nv = 0;
    std::vector<int> zero, val_ref, nz;
    std::vector<FieldElem> val;
    std::vector<std::optional<AffineDef>> aff;
    std::map<std::pair<int, int>, int> prodzero;
    std::vector<Eq> eqs;
    std::vector<int> ctx;
    const FieldSpec* field = nullptr;
};

namespace {

using Impl = DeductionState::Impl;

class Engine {
public:
    explicit Engine(Impl& st) : st_(st), sh_(*st.shared) {}

    // ---- logging and fact store -------------------------------------------------

    int log(const char* rule, std::vector<int> premises, Fact conclusion, std::vector<int> subs = {},
            std::vector<FieldElem> coeffs = {}) {
        if (++sh_.steps > sh_.limit) throw BudgetExhausted{};
        sh_.log.steps.push_back({rule, std::move(premises), std::move(conclusion), st_.ctx, std::move(subs),
                                 std::move(coeffs)});
        return static_cast<int>(sh_.log.steps.size()) - 1;
    }

    [[noreturn]] void contradiction(const char* rule, std::vector<int> premises) {
        throw Closed{log(rule, std::move(premises), Fact::contradiction())};
    }

    bool set_zero(int x, const char* rule, std::vector<int> premises) {
        if (st_.zero[x] >= 0) return false;
        int id = log(rule, std::move(premises), Fact::zero(x));
        st_.zero[x] = id;
        if (st_.nz[x] >= 0) contradiction(rules::ValueConflict, {id, st_.nz[x]});
        return true;
    }

    bool set_value(int x, const FieldElem& v, const char* rule, std::vector<int> premises) {
        if (v.is_zero()) return set_zero(x, rule, std::move(premises));
        if (st_.val_ref[x] >= 0 && st_.val[x] == v) return false;
        int id = log(rule, std::move(premises), Fact::value_of(x, v));
        if (st_.zero[x] >= 0) contradiction(rules::ValueConflict, {st_.zero[x], id});
        if (st_.val_ref[x] >= 0) contradiction(rules::ValueConflict, {st_.val_ref[x], id});
        st_.val[x] = v;
        st_.val_ref[x] = id;
        if (st_.nz[x] < 0) st_.nz[x] = id;
        if (!v.is_rational()) st_.field = v.field();
        return true;
    }

    bool set_nonzero(int x, const char* rule, std::vector<int> premises) {
        if (st_.nz[x] >= 0) return false;
        int id = log(rule, std::move(premises), Fact::nonzero(x));
        if (st_.zero[x] >= 0) contradiction(rules::ValueConflict, {st_.zero[x], id});
        st_.nz[x] = id;
        return true;
    }

    void add_equation(const Polynomial& p, int ref) {
        Eq e{p.normalized(), ref, FieldElem(1)};
        if (!p.is_zero()) e.scale = e.p.leading().second / p.leading().second;
        st_.eqs.push_back(std::move(e));
    }

    // ---- reduction ---------------------------------------------------------------

    // Substitutes definitions, zeros and values, cancels nonzero common
    // factors and normalises. With log=false the result carries ref -1.
    Eq reduce(const Eq& e, bool logged) {
        Eq cur = e;
        std::vector<int> prem{cur.ref}, subs;
        bool touched = false;
        for (int v : cur.p.vars()) {
            if (!st_.aff[v]) continue;
            cur.p = cur.p.substitute(v, st_.aff[v]->rhs);
            prem.push_back(st_.aff[v]->ref);
            subs.push_back(v);
            touched = true;
        }
        std::vector<int> vs = cur.p.vars();
        bool fixed = false;
        for (int v : vs) fixed = fixed || st_.zero[v] >= 0 || st_.val_ref[v] >= 0;
        if (fixed) {
            std::vector<Polynomial::TermT> terms;
            for (const auto& [m, c] : cur.p.terms()) {
                FieldElem coeff = c;
                std::vector<int> rest;
                bool dead = false;
                for (int v : m) {
                    if (st_.zero[v] >= 0) {
                        dead = true;
                        break;
                    }
                    if (st_.val_ref[v] >= 0)
                        coeff *= st_.val[v];
                    else
                        rest.push_back(v);
                }
                if (dead) continue;
                Monomial mm;
                for (int v : rest) mm = mm * Monomial::var(v);
                terms.push_back({mm, coeff});
            }
            cur.p = Polynomial::from_terms(std::move(terms));
            for (int v : vs) {
                if (st_.zero[v] >= 0) {
                    prem.push_back(st_.zero[v]);
                    subs.push_back(v);
                } else if (st_.val_ref[v] >= 0) {
                    prem.push_back(st_.val_ref[v]);
                    subs.push_back(v);
                }
            }
            touched = true;
        }
        if (cur.p.is_zero()) return {Polynomial(), -1, FieldElem(1)};
        if (touched) {
            cur.p = cur.p.normalized();
            cur.scale = FieldElem(1);
            cur.ref = logged ? log(rules::Substitute, std::move(prem), Fact::eq(cur.p), std::move(subs)) : -1;
        }
        // Cancel common factors known to be nonzero.
        if (cur.p.size() > 0 && cur.p.terms()[0].first.degree() > 0) {
            std::vector<int> cancel_prem{cur.ref};
            std::vector<std::pair<int, int>> cuts;
            for (int v : cur.p.terms()[0].first.vars()) {
                if (st_.nz[v] < 0) continue;
                int k = Monomial::kMaxDegree;
                for (const auto& t : cur.p.terms()) k = std::min(k, t.first.count(v));
                if (k > 0) {
                    cuts.push_back({v, k});
                    cancel_prem.push_back(st_.nz[v]);
                }
            }
            if (!cuts.empty()) {
                std::vector<Polynomial::TermT> terms = cur.p.terms();
                for (auto& t : terms)
                    for (auto [v, k] : cuts) t.first = t.first.divide(v, k);
                cur.p = Polynomial::from_terms(std::move(terms)).normalized();
                cur.scale = FieldElem(1);
                cur.ref = logged ? log(rules::ProductNonzeroCancel, std::move(cancel_prem), Fact::eq(cur.p)) : -1;
                touched = true;
            }
        }
        if (!touched) return e;
        return cur;
    }

    // ---- pattern rules -----------------------------------------------------------

    std::vector<int> nonzero_refs(const Monomial& m, int except) const {
        std::vector<int> out;
        for (int v : m.vars())
            if (v != except && st_.nz[v] >= 0) out.push_back(st_.nz[v]);
        return out;
    }

    static bool even_power_or_constant(const Monomial& m) {
        return m.degree() == 0 || (m.is_pure_power() && m.degree() % 2 == 0);
    }

    bool analyze(const Eq& e) {
        const Polynomial& p = e.p;
        if (p.is_zero()) return false;
        if (p.is_constant()) contradiction(rules::ValueConflict, {e.ref});

        if (p.size() == 1) {
            const Monomial& m = p.terms()[0].first;
            std::vector<int> unknown;
            for (int v : m.vars())
                if (st_.nz[v] < 0) unknown.push_back(v);
            if (unknown.empty()) {
                std::vector<int> prem{e.ref};
                for (int r : nonzero_refs(m, -1)) prem.push_back(r);
                contradiction(rules::SingleMonomialZero, std::move(prem));
            }
            if (unknown.size() == 1) {
                std::vector<int> prem{e.ref};
                for (int r : nonzero_refs(m, unknown[0])) prem.push_back(r);
                return set_zero(unknown[0], rules::SingleMonomialZero, std::move(prem));
            }
            if (m.degree() == 2 && m[0] != m[1]) st_.prodzero.emplace(std::make_pair(m[0], m[1]), e.ref);
            return false;
        }

        bool squares = true;
        for (const auto& t : p.terms()) squares = squares && even_power_or_constant(t.first);
        if (squares) {
            std::set<int> signs;
            bool decided = true;
            for (const auto& t : p.terms()) {
                auto sg = t.second.sign();
                if (!sg) decided = false;
                else signs.insert(*sg);
            }
            if (decided && signs.size() == 1) {
                if (p.terms()[0].first.degree() == 0) contradiction(rules::SquareSumZero, {e.ref});
                bool changed = false;
                for (const auto& t : p.terms()) changed |= set_zero(t.first[0], rules::SquareSumZero, {e.ref});
                return changed;
            }
            bool pure = p.terms()[0].first.degree() == 2;
            for (const auto& t : p.terms()) pure = pure && t.first.degree() == 2;
            if (pure) {
                std::vector<int> prem{e.ref};
                bool all = true;
                for (std::size_t a = 0; a < p.size() && all; ++a) {
                    for (std::size_t b = a + 1; b < p.size() && all; ++b) {
                        int x = p.terms()[a].first[0], y = p.terms()[b].first[0];
                        auto it = st_.prodzero.find({std::min(x, y), std::max(x, y)});
                        if (it == st_.prodzero.end())
                            all = false;
                        else if (std::find(prem.begin() + 1, prem.end(), it->second) == prem.end())
                            prem.push_back(it->second);
                    }
                }
                if (all) {
                    bool changed = false;
                    for (const auto& t : p.terms()) changed |= set_zero(t.first[0], rules::MutexElim, prem);
                    return changed;
                }
            }
        }

        std::vector<int> vs = p.vars();
        if (vs.size() >= 2 && p.degree() == 1) {
            define_affine(e, vs.back());
            return true;
        }
        if (vs.size() == 1 && p.size() == 2 && p.terms()[0].first.degree() == 0) {
            int x = vs[0];
            int d = p.terms()[1].first.degree();
            FieldElem c = -p.terms()[0].second / p.terms()[1].second;
            if (d == 1) return set_value(x, c, rules::LinearSolve, {e.ref});
            return root_solve(x, d, c, e.ref);
        }
        return false;
    }

    bool root_solve(int x, int d, const FieldElem& c, int ref) {
        if (d % 2 == 0) {
            auto sg = c.sign();
            if (!sg) return false;
            if (*sg < 0) contradiction(rules::NegativeSquare, {ref});
            return set_nonzero(x, rules::NonzeroDerive, {ref});
        }
        if (c.is_rational()) {
            Rational r;
            if (rational_root(c.rational(), d, r)) return set_value(x, FieldElem(r), rules::RootSolve, {ref});
            if (st_.field == nullptr) {
                // Lower the degree while the radicand is an odd perfect power.
                int dd = d;
                Rational cc = c.rational();
                for (bool again = true; again;) {
                    again = false;
                    for (int k = 3; k <= dd; k += 2) {
                        Rational rr;
                        if (dd % k == 0 && rational_root(cc, k, rr)) {
                            dd /= k;
                            cc = rr;
                            again = true;
                            break;
                        }
                    }
                }
                if (dd > 1) {
                    FieldElem alpha = FieldElem::generator(intern_field(dd, cc));
                    return set_value(x, alpha, rules::RootSolve, {ref});
                }
            }
        }
        if (st_.field != nullptr) {
            const int fd = st_.field->degree;
            for (int k = 0; k < fd; ++k) {
                std::vector<Rational> coords(fd, Rational(0));
                coords[k] = 1;
                FieldElem ak = FieldElem::from_coords(st_.field, coords);
                FieldElem q = c / ak.pow(d);
                Rational r;
                if (q.is_rational() && rational_root(q.rational(), d, r))
                    return set_value(x, FieldElem(r) * ak, rules::RootSolve, {ref});
            }
        }
        return set_nonzero(x, rules::NonzeroDerive, {ref});
    }

    static Polynomial solve_for(const Polynomial& eq, int x) {
        FieldElem a = eq.coeff(Monomial::var(x));
        return (eq - Polynomial::monomial(Monomial::var(x), a)).scaled(-a.inverse());
    }

    void define_affine(const Eq& e, int x) {
        Polynomial rhs = solve_for(e.p, x);
        for (int y = 0; y < st_.nv; ++y) {
            if (!st_.aff[y] || st_.aff[y]->rhs.count(x) == 0) continue;
            Polynomial eq = st_.aff[y]->eq.substitute(x, rhs).normalized();
            int id = log(rules::Substitute, {st_.aff[y]->ref, e.ref}, Fact::eq(eq), {x});
            st_.aff[y] = AffineDef{eq, solve_for(eq, y), id};
        }
        st_.aff[x] = AffineDef{e.p, rhs, e.ref};
    }

    // ---- derived equations -------------------------------------------------------

    static bool simple(const Polynomial& p) {
        if (p.size() <= 2) return true;
        bool squares = true;
        for (const auto& t : p.terms()) squares = squares && even_power_or_constant(t.first);
        return squares || p.vars().size() == 1;
    }

    bool keep(const Eq& r) const { return !r.p.is_zero() && r.p.degree() <= kMaxDerivedDegree && simple(r.p); }

    std::vector<Eq> derive_by_definitions() {
        std::unordered_map<int, std::vector<int>> where;
        for (std::size_t i = 0; i < st_.eqs.size(); ++i)
            for (int v : st_.eqs[i].p.vars()) where[v].push_back(static_cast<int>(i));
        std::vector<Eq> out;
        for (std::size_t di = 0; di < st_.eqs.size(); ++di) {
            const Eq& def = st_.eqs[di];
            for (const auto& [m, c] : def.p.terms()) {
                if (m.degree() != 1) continue;
                int x = m[0];
                if (def.p.count(x) != 1) continue;
                Polynomial q = solve_for(def.p, x);
                if (q.degree() > 2) continue;
                for (int ti : where[x]) {
                    if (ti == static_cast<int>(di)) continue;
                    const Eq& target = st_.eqs[ti];
                    if (target.p.substitution_degree(x, q.degree()) > Monomial::kMaxDegree) continue;
                    Polynomial s = target.p.substitute(x, q);
                    if (s.is_zero()) continue;
                    Eq probe{s.normalized(), -1, FieldElem(1)};
                    Eq r = reduce(probe, false);
                    if (!keep(r)) continue;
                    Eq logged{probe.p, log(rules::Substitute, {target.ref, def.ref}, Fact::eq(probe.p), {x}), FieldElem(1)};
                    out.push_back(reduce(logged, true));
                }
            }
        }
        return out;
    }

    // Monomial order for elimination: linear_first puts degree-1 monomials on top.
    static bool mono_less(const Monomial& a, const Monomial& b, bool linear_first) {
        if (!linear_first) return a < b;
        auto rank = [](const Monomial& m) { return m.degree() == 0 ? -99 : -m.degree(); };
        if (rank(a) != rank(b)) return rank(a) < rank(b);
        return a < b;
    }

    static const Monomial& lead_of(const Polynomial& p, bool linear_first) {
        const Monomial* best = &p.terms()[0].first;
        for (const auto& t : p.terms())
            if (mono_less(*best, t.first, linear_first)) best = &t.first;
        return *best;
    }

    struct Row {
        Polynomial p;
        std::map<int, FieldElem> combo;  // store index -> multiplier
    };

    static void eliminate(Row& r, const Row& b, const Monomial& m) {
        FieldElem f = -(r.p.coeff(m) / b.p.coeff(m));
        r.p.add_scaled(b.p, f);
        for (const auto& [k, c] : b.combo) {
            FieldElem& slot = r.combo[k];
            slot += c * f;
            if (slot.is_zero()) r.combo.erase(k);
        }
    }

    std::vector<Eq> derive_by_elimination(bool linear_first) {
        std::vector<Row> pivots;
        std::unordered_map<Monomial, int, MonoHash> pivot_of;
        for (std::size_t i = 0; i < st_.eqs.size(); ++i) {
            Row r{st_.eqs[i].p, {{static_cast<int>(i), FieldElem(1)}}};
            while (!r.p.is_zero()) {
                const Monomial& lm = lead_of(r.p, linear_first);
                auto it = pivot_of.find(lm);
                if (it == pivot_of.end()) break;
                Monomial key = lm;
                eliminate(r, pivots[it->second], key);
            }
            if (r.p.is_zero()) continue;
            pivot_of[lead_of(r.p, linear_first)] = static_cast<int>(pivots.size());
            pivots.push_back(std::move(r));
        }
        // Back substitution, smallest pivots first.
        std::vector<std::pair<Monomial, int>> order(pivot_of.begin(), pivot_of.end());
        std::sort(order.begin(), order.end(),
                  [&](const auto& a, const auto& b) { return mono_less(a.first, b.first, linear_first); });
        for (const auto& [key, idx] : order) {
            Row& r = pivots[idx];
            while (true) {
                const Monomial* target = nullptr;
                for (const auto& t : r.p.terms()) {
                    if (t.first == key || !pivot_of.count(t.first)) continue;
                    if (!target || mono_less(*target, t.first, linear_first)) target = &t.first;
                }
                if (!target) break;
                Monomial m = *target;
                eliminate(r, pivots[pivot_of[m]], m);
            }
        }
        std::vector<Eq> out;
        for (const auto& [key, idx] : order) {
            const Row& r = pivots[idx];
            if (r.combo.size() < 2) continue;
            Eq probe{r.p.normalized(), -1, FieldElem(1)};
            if (!keep(reduce(probe, false))) continue;
            std::vector<int> prem;
            std::vector<FieldElem> coeffs;
            for (const auto& [k, c] : r.combo) {
                prem.push_back(st_.eqs[k].ref);
                coeffs.push_back(c * st_.eqs[k].scale);
            }
            Eq logged{probe.p, log(rules::LinearCombine, std::move(prem), Fact::eq(probe.p), {}, std::move(coeffs)),
                      FieldElem(1)};
            out.push_back(reduce(logged, true));
        }
        return out;
    }

    // ---- saturation --------------------------------------------------------------

    // Returns the step of a Null conclusion, or -1.
    int column_zero() {
        const int n = st_.n;
        for (int k = 1; k <= n; ++k) {
            std::vector<int> prem;
            for (int i = 1; i <= n; ++i) {
                int z = st_.zero[var_id(n, i, k)];
                if (z < 0) break;
                prem.push_back(z);
            }
            if (static_cast<int>(prem.size()) != n) continue;
            int id = log(rules::ColumnZeroPropagate, std::move(prem), Fact::null());
            if (!st_.ctx.empty()) contradiction(rules::ValueConflict, {id, st_.ctx.back()});
            return id;
        }
        return -1;
    }

    void reduce_store() {
        std::unordered_set<Polynomial, PolynomialHash> seen;
        std::vector<Eq> out;
        for (const Eq& e : st_.eqs) {
            Eq r = reduce(e, true);
            if (r.p.is_zero() || !seen.insert(r.p).second) continue;
            out.push_back(std::move(r));
        }
        st_.eqs = std::move(out);
    }

    bool analyze_fresh(Eq& e) {
        e = reduce(e, true);
        return analyze(e);
    }

    DeductionState::Status saturate() {
        while (true) {
            bool changed = false;
            reduce_store();
            for (std::size_t i = 0; i < st_.eqs.size(); ++i) changed |= analyze_fresh(st_.eqs[i]);
            if (column_zero() >= 0) return DeductionState::Status::Null;
            if (changed) continue;

            std::vector<Eq> fresh = derive_by_definitions();
            for (bool lin : {false, true})
                for (Eq& e : derive_by_elimination(lin)) fresh.push_back(std::move(e));
            for (Eq& e : fresh) changed |= analyze_fresh(e);
            if (column_zero() >= 0) return DeductionState::Status::Null;
            if (changed) continue;

            std::unordered_set<Polynomial, PolynomialHash> have;
            for (const Eq& e : st_.eqs) have.insert(e.p);
            bool added = false;
            for (Eq& e : fresh) {
                if (e.p.is_zero() || !have.insert(e.p).second) continue;
                st_.eqs.push_back(std::move(e));
                added = true;
            }
            if (!added) return DeductionState::Status::Open;
        }
    }

    // ---- leaf corollaries --------------------------------------------------------

    std::vector<int> leaves() const {
        std::vector<int> out;
        const Graph& g = sh_.sys->graph;
        if (g.order() < 2) return out;
        for (int v = 1; v <= g.order(); ++v)
            if (g.degree(v) == 1) out.push_back(v);
        return out;
    }
    int anchor(int leaf) const { return sh_.sys->graph.neighbors(leaf)[0]; }

    void leaf_rules() {
        const int n = st_.n;
        auto ls = leaves();
        std::set<int> done;
        for (int l : ls) {
            int k = anchor(l);
            if (!done.insert(k).second) continue;
            std::vector<int> prem, col;
            for (int i = 1; i <= n; ++i) {
                col.push_back(var_id(n, i, k));
                for (int j = i + 1; j <= n; ++j) prem.push_back(constraint_ref(prodzero_index(n, l, i, j)));
            }
            int id = log(rules::LeafMutex, std::move(prem), Fact::mutex(col));
            for (std::size_t a = 0; a < col.size(); ++a)
                for (std::size_t b = a + 1; b < col.size(); ++b) st_.prodzero.emplace(std::make_pair(col[a], col[b]), id);
        }
        for (int l : ls) {
            for (int u : ls) {
                if (u <= l || anchor(u) != anchor(l)) continue;
                int k = anchor(l);
                std::vector<int> prem{constraint_ref(prodzero_index(n, l, l, u)), constraint_ref(square_index(n, l, l)),
                                      constraint_ref(square_index(n, l, u)), constraint_ref(square_index(n, u, u)),
                                      constraint_ref(square_index(n, u, l))};
                for (int v : {var_id(n, u, k), var_id(n, l, k), var_id(n, k, l), var_id(n, k, u)})
                    set_zero(v, rules::LeafTwinZero, prem);
            }
        }
    }

    void leaf_cross_rules() {
        const int n = st_.n;
        auto ls = leaves();
        std::set<std::vector<int>> emitted;
        for (int l : ls) {
            for (int u : ls) {
                if (u <= l || anchor(u) != anchor(l)) continue;
                const int kl = anchor(l);
                for (int w : ls) {
                    if (w == l || w == u || anchor(w) == kl) continue;
                    const int kw = anchor(w);
                    std::vector<int> zprem{constraint_ref(prodzero_index(n, w, l, u)), constraint_ref(square_index(n, l, w)),
                                           constraint_ref(square_index(n, u, w))};
                    for (int v : {var_id(n, u, kw), var_id(n, l, kw), var_id(n, kl, w)})
                        set_zero(v, rules::LeafTwinCross, zprem);
                    int base = var_id(n, w, kl);
                    int yl = var_id(n, kw, l), yu = var_id(n, kw, u);
                    auto emit = [&](Fact f, std::vector<int> prem, Polynomial p) {
                        std::vector<int> key{static_cast<int>(f.kind)};
                        key.insert(key.end(), f.vars.begin(), f.vars.end());
                        if (!emitted.insert(key).second) return;
                        int id = log(rules::LeafTwinCross, std::move(prem), std::move(f));
                        add_equation(p, id);
                    };
                    Polynomial sq = Polynomial::monomial(Monomial{base, base});
                    emit(Fact::equal_square(base, yl), {constraint_ref(square_index(n, w, l))}, sq - Polynomial::variable(yl));
                    emit(Fact::equal_square(base, yu), {constraint_ref(square_index(n, w, u))}, sq - Polynomial::variable(yu));
                    emit(Fact::equal(yl, yu), {constraint_ref(square_index(n, w, l)), constraint_ref(square_index(n, w, u))},
                         Polynomial::variable(yl) - Polynomial::variable(yu));
                }
            }
        }
    }

    // ---- branching support -------------------------------------------------------

    std::vector<int> candidates() const {
        std::vector<int> occ(st_.nv, 0), fac(st_.nv, 0);
        for (const Eq& e : st_.eqs) {
            for (int v : e.p.vars()) occ[v]++;
            std::vector<int> common = e.p.terms()[0].first.vars();
            for (const auto& t : e.p.terms()) {
                std::vector<int> keep;
                for (int v : common)
                    if (t.first.contains(v)) keep.push_back(v);
                common = std::move(keep);
            }
            for (int v : common) fac[v]++;
        }
        std::vector<int> out;
        for (int v = 0; v < st_.nv; ++v)
            if (occ[v] > 0 && st_.zero[v] < 0 && st_.nz[v] < 0 && st_.val_ref[v] < 0 && !st_.aff[v]) out.push_back(v);
        std::sort(out.begin(), out.end(), [&](int a, int b) {
            if (fac[a] != fac[b]) return fac[a] > fac[b];
            if (occ[a] != occ[b]) return occ[a] > occ[b];
            return a < b;
        });
        return out;
    }

    // Exact assignment implied by the facts with free variables set to 0;
    // empty unless it is a nonzero solution of the original system.
    std::vector<Fact> structure() const {
        std::vector<FieldElem> x(st_.nv, FieldElem(0));
        for (int v = 0; v < st_.nv; ++v)
            if (st_.val_ref[v] >= 0) x[v] = st_.val[v];
        for (int v = 0; v < st_.nv; ++v) {
            if (!st_.aff[v]) continue;
            FieldElem sum(0);
            for (const auto& [m, c] : st_.aff[v]->rhs.terms()) {
                FieldElem t = c;
                for (int w : m) t *= x[w];
                sum += t;
            }
            x[v] = sum;
        }
        bool nonzero = false;
        for (const auto& v : x) nonzero = nonzero || !v.is_zero();
        if (!nonzero) return {};
        for (const Constraint& c : sh_.sys->constraints) {
            FieldElem sum(0);
            for (const Term& t : c.terms) {
                FieldElem v = x[t.vars[0]];
                if (t.vars.size() == 2) v *= x[t.vars[1]];
                sum += v * FieldElem(t.coeff);
            }
            if (!sum.is_zero()) return {};
        }
        std::vector<Fact> out;
        for (int v = 0; v < st_.nv; ++v)
            if (!x[v].is_zero()) out.push_back(Fact::value_of(v, x[v]));
        return out;
    }

    std::vector<Fact> facts() const {
        std::vector<Fact> out;
        for (int v = 0; v < st_.nv; ++v) {
            if (st_.zero[v] >= 0)
                out.push_back(Fact::zero(v));
            else if (st_.val_ref[v] >= 0)
                out.push_back(Fact::value_of(v, st_.val[v]));
            else if (st_.nz[v] >= 0)
                out.push_back(Fact::nonzero(v));
        }
        return out;
    }

    Impl& st_;
    Shared& sh_;
};

std::shared_ptr<Impl> fresh_state(const HomSystem& sys, std::size_t limit) {
    auto st = std::make_shared<Impl>();
    st->shared = std::make_shared<Shared>();
    st->shared->sys = &sys;
    st->shared->limit = limit;
    st->shared->log.n = sys.n;
    st->n = sys.n;
    st->nv = sys.n * sys.n;
    st->zero.assign(st->nv, -1);
    st->val_ref.assign(st->nv, -1);
    st->nz.assign(st->nv, -1);
    st->val.assign(st->nv, FieldElem(0));
    st->aff.assign(st->nv, std::nullopt);
    Engine eng(*st);
    for (std::size_t c = 0; c < sys.constraints.size(); ++c) {
        std::vector<Polynomial::TermT> terms;
        for (const Term& t : sys.constraints[c].terms) {
            Monomial m = t.vars.size() == 1 ? Monomial{t.vars[0]} : Monomial{t.vars[0], t.vars[1]};
            terms.push_back({m, FieldElem(t.coeff)});
        }
        Polynomial p = Polynomial::from_terms(std::move(terms));
        if (!p.is_zero()) eng.add_equation(p, constraint_ref(static_cast<int>(c)));
    }
    return st;
}

}  // namespace

class Prover {
public:
    Prover(const HomSystem& sys, const Budget& budget) : sys_(sys), budget_(budget) {}

    Verdict run() {
        Verdict v;
        auto root = fresh_state(sys_, budget_.step_limit);
        Shared& sh = *root->shared;
        try {
            Engine eng(*root);
            eng.leaf_rules();
            eng.leaf_cross_rules();
            bool closed = refute(*root, 0);
            if (closed) {
                v.kind = VerdictKind::NullOnly;
                v.reason = "every variable is forced to zero";
            } else if (!found_.empty()) {
                v.kind = VerdictKind::FoundStructure;
                v.facts = found_;
                v.reason = "facts admit a nonzero exact solution";
            } else {
                v.kind = VerdictKind::Unknown;
                v.facts = Engine(*root).facts();
                v.reason = "case splits exhausted at depth " + std::to_string(budget_.max_depth);
            }
        } catch (const BudgetExhausted&) {
            v.kind = VerdictKind::Unknown;
            v.facts = Engine(*root).facts();
            v.reason = "step limit reached";
        } catch (const Closed&) {
            throw Error(ErrorCode::Internal, "contradiction without assumptions: the null map was refuted");
        }
        v.log = std::move(sh.log);
        v.steps = sh.steps;
        v.depth = sh.max_depth_seen;
        return v;
    }

private:
    const HomSystem& sys_;
    Budget budget_;
    std::vector<Fact> found_;
    int closing_step_ = -1;

    // True when the state is closed: Null at the root, a logged contradiction
    // (closing_step_) inside a branch.
    bool refute(Impl& st, int depth) {
        Engine eng(st);
        if (settle(eng, st)) return true;
        while (true) {
            if (depth >= budget_.max_depth) return note_structure(eng);
            std::vector<int> cands = eng.candidates();
            const int width = depth == 0 ? budget_.root_width : budget_.inner_width;
            bool progressed = false;
            for (int c = 0; c < width && c < static_cast<int>(cands.size()); ++c) {
                const int x = cands[c];
                Shared& sh = *st.shared;
                const std::size_t mark = sh.log.steps.size();
                Impl sub = st;
                Engine sub_eng(sub);
                int open = static_cast<int>(sh.log.steps.size());
                sub.ctx.push_back(open);
                sub_eng.log(rules::BranchOpen, {}, Fact::nonzero(x));
                sub.nz[x] = open;
                sh.max_depth_seen = std::max(sh.max_depth_seen, depth + 1);
                if (!refute(sub, depth + 1)) {
                    sh.log.steps.resize(mark);
                    continue;
                }
                int close = eng.log(rules::BranchClose, {open, closing_step_}, Fact::zero(x));
                st.zero[x] = close;
                if (settle(eng, st)) return true;
                progressed = true;
                break;
            }
            if (!progressed) return note_structure(eng);
        }
    }

    bool settle(Engine& eng, Impl& st) {
        try {
            if (eng.saturate() == DeductionState::Status::Null) {
                closing_step_ = static_cast<int>(st.shared->log.steps.size()) - 1;
                return true;
            }
        } catch (const Closed& c) {
            if (st.ctx.empty()) throw;
            closing_step_ = c.step;
            return true;
        }
        return false;
    }

    bool note_structure(const Engine& eng) {
        if (found_.empty()) found_ = eng.structure();
        return false;
    }
};

DeductionState::DeductionState(const HomSystem& sys) {
    auto owned = std::make_shared<const HomSystem>(sys);
    impl_ = fresh_state(*owned, Budget{}.step_limit);
    impl_->shared->owned = std::move(owned);
}

void DeductionState::apply_leaf_rules() { Engine(*impl_).leaf_rules(); }
void DeductionState::apply_leaf_twin_cross_rules() { Engine(*impl_).leaf_cross_rules(); }

DeductionState::Status DeductionState::saturate() {
    try {
        return Engine(*impl_).saturate();
    } catch (const Closed&) {
        if (impl_->ctx.empty()) throw Error(ErrorCode::Internal, "contradiction without assumptions");
        return Status::Contradiction;
    } catch (const BudgetExhausted&) {
        return Status::Open;
    }
}

bool DeductionState::is_zero(int var) const { return impl_->zero.at(var) >= 0; }
bool DeductionState::is_nonzero(int var) const { return impl_->nz.at(var) >= 0; }
std::optional<FieldElem> DeductionState::value(int var) const {
    if (impl_->zero.at(var) >= 0) return FieldElem(0);
    if (impl_->val_ref.at(var) >= 0) return impl_->val[var];
    return std::nullopt;
}
std::vector<Polynomial> DeductionState::equations() const {
    std::vector<Polynomial> out;
    for (const auto& e : impl_->eqs) out.push_back(e.p);
    return out;
}
std::vector<Fact> DeductionState::facts() const { return Engine(*impl_).facts(); }
const ProofLog& DeductionState::log() const { return impl_->shared->log; }

Verdict prove_null_only(const HomSystem& sys, const Budget& budget) { return Prover(sys, budget).run(); }

Verdict prove_null_only(const Graph& g, const Budget& budget) {
    HomSystem sys = derive_constraints(g);
    return prove_null_only(sys, budget);
}

std::string verdict_to_json(const Verdict& v) {
    nlohmann::json facts = nlohmann::json::array();
    for (const Fact& f : v.facts) facts.push_back(f.str(v.log.n));
    nlohmann::json j{{"verdict", verdict_name(v.kind)},
                     {"reason", v.reason},
                     {"steps", v.steps},
                     {"depth", v.depth},
                     {"facts", facts},
                     {"proof", nlohmann::json::parse(proof_to_json(v.log))}};
    return j.dump();
}

}  // namespace evograph
