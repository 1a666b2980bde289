// SPDX-License-Identifier: Apache-2.0
#include "evograph/hom_system.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>

namespace evograph {

std::string var_name(int n, int id) {
    return "t_" + std::to_string(var_row(n, id)) + "_" + std::to_string(var_col(n, id));
}

std::string Constraint::tag() const {
    if (kind == ConstraintKind::ProdZero)
        return "prodzero:" + std::to_string(a) + ":" + std::to_string(b) + ":" + std::to_string(c);
    return "square:" + std::to_string(a) + ":" + std::to_string(b);
}

HomSystem derive_constraints(const Graph& g) {
    HomSystem sys{g, g.order(), {}};
    const int n = g.order();
    sys.constraints.reserve(n * n * (n - 1) / 2 + n * n);
    for (int r = 1; r <= n; ++r) {
        for (int i = 1; i <= n; ++i) {
            for (int j = i + 1; j <= n; ++j) {
                Constraint c{ConstraintKind::ProdZero, r, i, j, {}};
                for (int k : g.neighbors(r)) c.terms.push_back({Rational(1), {var_id(n, i, k), var_id(n, j, k)}});
                sys.constraints.push_back(std::move(c));
            }
        }
    }
    for (int r = 1; r <= n; ++r) {
        for (int i = 1; i <= n; ++i) {
            Constraint c{ConstraintKind::Square, i, r, 0, {}};
            for (int k : g.neighbors(r)) c.terms.push_back({Rational(1), {var_id(n, i, k), var_id(n, i, k)}});
            if (g.degree(i) > 0) {
                Rational w(-1, g.degree(i));
                for (int l : g.neighbors(i)) c.terms.push_back({w, {var_id(n, l, r)}});
            }
            sys.constraints.push_back(std::move(c));
        }
    }
    return sys;
}

HomCandidate to_candidate(const ExactMatrix& t) {
    HomCandidate out(t.rows(), t.cols());
    for (std::size_t i = 0; i < t.rows(); ++i)
        for (std::size_t k = 0; k < t.cols(); ++k) out(i, k) = RadicalNumber(t(i, k));
    return out;
}

namespace {

template <class M>
void check_shape(const HomSystem& sys, const M& t) {
    if (static_cast<int>(t.rows()) != sys.n || static_cast<int>(t.cols()) != sys.n)
        throw Error(ErrorCode::DimensionMismatch, "candidate is not " + std::to_string(sys.n) + "x" + std::to_string(sys.n));
}

}  // namespace

ExactResidual residual(const HomSystem& sys, const HomCandidate& t) {
    check_shape(sys, t);
    ExactResidual out{{}, true};
    out.values.reserve(sys.constraints.size());
    for (const Constraint& c : sys.constraints) {
        out.values.push_back(evaluate(c, t, sys.n));
        out.zero = out.zero && out.values.back().is_zero();
    }
    return out;
}

ExactResidual residual(const HomSystem& sys, const ExactMatrix& t) { return residual(sys, to_candidate(t)); }

FloatResidual residual(const HomSystem& sys, const FloatCandidate& t) {
    check_shape(sys, t);
    FloatResidual out{{}, 0.0};
    out.values.reserve(sys.constraints.size());
    for (const Constraint& c : sys.constraints) {
        double v = evaluate(c, t, sys.n);
        out.values.push_back(v);
        out.max_norm = std::max(out.max_norm, std::abs(v));
    }
    return out;
}

namespace {

using Vec = std::vector<RadicalNumber>;

Vec apply_map(const HomCandidate& t, const Vec& x) {
    const std::size_t n = t.rows();
    Vec out(n, RadicalNumber(0));
    for (std::size_t i = 0; i < n; ++i) {
        if (x[i].is_zero()) continue;
        for (std::size_t k = 0; k < n; ++k)
            if (!t(i, k).is_zero()) out[k] += x[i] * t(i, k);
    }
    return out;
}

Vec basis(int n, int i) {
    Vec e(n, RadicalNumber(0));
    e[i] = RadicalNumber(1);
    return e;
}

}  // namespace

bool is_homomorphism_direct(const Graph& g, const HomCandidate& t) {
    const int n = g.order();
    if (static_cast<int>(t.rows()) != n || static_cast<int>(t.cols()) != n)
        throw Error(ErrorCode::DimensionMismatch, "candidate dimension does not match graph order");
    EvolutionAlgebra codomain = build_adjacency_algebra(g);
    // A single vertex has no random walk; its square is taken as 0.
    EvolutionAlgebra domain = n == 1 ? EvolutionAlgebra{1, ExactMatrix(1, 1, Rational(0)), AlgebraKind::RandomWalk}
                                     : build_rw_algebra(g);
    std::vector<Vec> images;
    for (int i = 0; i < n; ++i) images.push_back(apply_map(t, basis(n, i)));
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            Vec lhs = apply_map(t, multiply(domain, basis(n, i), basis(n, j)));
            Vec rhs = multiply(codomain, images[i], images[j]);
            if (lhs != rhs) return false;
        }
    }
    return true;
}

bool is_homomorphism_direct(const Graph& g, const ExactMatrix& t) { return is_homomorphism_direct(g, to_candidate(t)); }

bool is_isomorphism(const Graph& g, const HomCandidate& t) {
    if (!is_homomorphism_direct(g, t)) return false;
    bool rational = true;
    for (std::size_t i = 0; i < t.rows() && rational; ++i)
        for (std::size_t k = 0; k < t.cols() && rational; ++k) rational = t(i, k).is_rational();
    if (rational) {
        ExactMatrix q(t.rows(), t.cols());
        for (std::size_t i = 0; i < t.rows(); ++i)
            for (std::size_t k = 0; k < t.cols(); ++k) q(i, k) = t(i, k).rational_value();
        return rank(q) == t.rows();
    }
    return !berkowitz_determinant(t).is_zero();
}

bool is_isomorphism(const Graph& g, const ExactMatrix& t) { return is_isomorphism(g, to_candidate(t)); }

std::string system_to_json(const HomSystem& sys) {
    nlohmann::json vars = nlohmann::json::array();
    for (int id = 0; id < sys.var_count(); ++id) vars.push_back(var_name(sys.n, id));
    nlohmann::json cons = nlohmann::json::array();
    for (const Constraint& c : sys.constraints) {
        nlohmann::json terms = nlohmann::json::array();
        for (const Term& t : c.terms) terms.push_back({{"coeff", to_string(t.coeff)}, {"monomial", t.vars}});
        cons.push_back({{"tag", c.tag()}, {"terms", terms}});
    }
    return nlohmann::json{{"n", sys.n}, {"variables", vars}, {"constraints", cons}}.dump();
}

}  // namespace evograph
