// SPDX-License-Identifier: Apache-2.0
// Evolution algebras given by a structure matrix: e_i*e_j = 0 for i != j and
// e_i*e_i = sum_k M[i][k] e_k.
#pragma once

#include <string>
#include <vector>

#include "evograph/graph.hpp"

namespace evograph {

enum class AlgebraKind { Adjacency, RandomWalk };

struct EvolutionAlgebra {
    int n = 0;
    ExactMatrix M;
    AlgebraKind kind = AlgebraKind::Adjacency;
};

using Element = std::vector<Rational>;

EvolutionAlgebra build_adjacency_algebra(const Graph& g);
// Throws IsolatedVertex when some vertex has degree 0.
EvolutionAlgebra build_rw_algebra(const Graph& g);

Element basis_element(int n, int i);  // e_i, 1-indexed

// Bilinear product sum_i x_i y_i (row i of M). S is any ring accepting
// multiplication by Rational.
template <class S>
std::vector<S> multiply(const EvolutionAlgebra& alg, const std::vector<S>& x, const std::vector<S>& y) {
    if (static_cast<int>(x.size()) != alg.n || static_cast<int>(y.size()) != alg.n)
        throw Error(ErrorCode::DimensionMismatch, "element length does not match algebra dimension");
    std::vector<S> out(alg.n, S(0));
    for (int i = 0; i < alg.n; ++i) {
        S w = x[i] * y[i];
        if (w == S(0)) continue;
        for (int k = 0; k < alg.n; ++k) {
            const Rational& c = alg.M(i, k);
            if (c != 0) out[k] += w * c;
        }
    }
    return out;
}

bool is_markov(const EvolutionAlgebra& alg);

std::string algebra_to_json(const EvolutionAlgebra& alg);
std::string algebra_to_text(const EvolutionAlgebra& alg);
EvolutionAlgebra algebra_from_json(const std::string& text);

}  // namespace evograph
