// SPDX-License-Identifier: Apache-2.0
// Quadratic constraints on T = (t_ik) for f: A_RW(G) -> A(G), f(e_i) = sum_k t_ik e_k.
#pragma once

#include <string>
#include <vector>

#include "evograph/algebra.hpp"
#include "evograph/radical.hpp"

namespace evograph {

// Variable t_ik (1-indexed i, k) has id (i-1)*n + (k-1).
inline int var_id(int n, int i, int k) { return (i - 1) * n + (k - 1); }
inline int var_row(int n, int id) { return id / n + 1; }
inline int var_col(int n, int id) { return id % n + 1; }
std::string var_name(int n, int id);  // "t_i_k"

struct Term {
    Rational coeff;
    std::vector<int> vars;  // one or two variable ids, sorted
};

enum class ConstraintKind { ProdZero, Square };

struct Constraint {
    ConstraintKind kind;
    int a;  // ProdZero: r      Square: i
    int b;  // ProdZero: i      Square: r
    int c;  // ProdZero: j      Square: unused
    std::vector<Term> terms;

    std::string tag() const;  // "prodzero:r:i:j" or "square:i:r"
};

struct HomSystem {
    Graph graph;
    int n = 0;
    std::vector<Constraint> constraints;

    int var_count() const { return n * n; }
};

// ProdZero(r,i,j) for i<j, r-major; then Square(i,r), r-major.
HomSystem derive_constraints(const Graph& g);

// Positions of individual constraints in that ordering (1-indexed vertices).
inline int prodzero_index(int n, int r, int i, int j) {
    int pair = (i - 1) * n - (i - 1) * i / 2 + (j - i - 1);
    return (r - 1) * (n * (n - 1) / 2) + pair;
}
inline int square_index(int n, int i, int r) { return n * n * (n - 1) / 2 + (r - 1) * n + (i - 1); }

template <class S>
using Candidate = Matrix<S>;
using HomCandidate = Candidate<RadicalNumber>;
using FloatCandidate = Matrix<double>;

HomCandidate to_candidate(const ExactMatrix& t);

inline double scale(double v, const Rational& q) { return v * to_double(q); }
template <class S>
S scale(const S& v, const Rational& q) { return v * q; }

template <class S>
S evaluate(const Constraint& c, const Candidate<S>& t, int n) {
    S sum(0);
    for (const Term& term : c.terms) {
        S v = t(term.vars[0] / n, term.vars[0] % n);
        if (term.vars.size() == 2) v = v * t(term.vars[1] / n, term.vars[1] % n);
        sum += scale(v, term.coeff);
    }
    return sum;
}

struct ExactResidual {
    std::vector<RadicalNumber> values;
    bool zero;
};
struct FloatResidual {
    std::vector<double> values;
    double max_norm;
};

ExactResidual residual(const HomSystem& sys, const HomCandidate& t);
ExactResidual residual(const HomSystem& sys, const ExactMatrix& t);
FloatResidual residual(const HomSystem& sys, const FloatCandidate& t);

// Checks f(e_i e_j) = f(e_i) f(e_j) for all i <= j by expanding in the two
// algebras; shares no code with derive_constraints.
bool is_homomorphism_direct(const Graph& g, const HomCandidate& t);
bool is_homomorphism_direct(const Graph& g, const ExactMatrix& t);
bool is_isomorphism(const Graph& g, const HomCandidate& t);
bool is_isomorphism(const Graph& g, const ExactMatrix& t);

std::string system_to_json(const HomSystem& sys);

}  // namespace evograph
