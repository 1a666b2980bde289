// SPDX-License-Identifier: Apache-2.0
#include "evograph/algebra.hpp"

#include <json.hpp>

#include <sstream>

namespace evograph {

EvolutionAlgebra build_adjacency_algebra(const Graph& g) {
    return {g.order(), adjacency_matrix(g), AlgebraKind::Adjacency};
}

EvolutionAlgebra build_rw_algebra(const Graph& g) {
    const int n = g.order();
    EvolutionAlgebra alg{n, ExactMatrix(n, n, Rational(0)), AlgebraKind::RandomWalk};
    for (int i = 1; i <= n; ++i) {
        if (g.degree(i) == 0)
            throw Error(ErrorCode::IsolatedVertex, "vertex " + std::to_string(i) + " has no neighbours");
        Rational w(1, g.degree(i));
        for (int k : g.neighbors(i)) alg.M(i - 1, k - 1) = w;
    }
    return alg;
}

Element basis_element(int n, int i) {
    if (i < 1 || i > n) throw Error(ErrorCode::OutOfRange, "basis index outside 1.." + std::to_string(n));
    Element e(n, Rational(0));
    e[i - 1] = 1;
    return e;
}

bool is_markov(const EvolutionAlgebra& alg) {
    for (int i = 0; i < alg.n; ++i) {
        Rational sum = 0;
        for (int k = 0; k < alg.n; ++k) {
            const Rational& c = alg.M(i, k);
            if (c < 0 || c > 1) return false;
            sum += c;
        }
        if (sum != 1) return false;
    }
    return true;
}

std::string algebra_to_json(const EvolutionAlgebra& alg) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < alg.n; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int k = 0; k < alg.n; ++k) row.push_back(to_string(alg.M(i, k)));
        rows.push_back(row);
    }
    nlohmann::json j{{"dimension", alg.n},
                     {"kind", alg.kind == AlgebraKind::Adjacency ? "adjacency" : "random_walk"},
                     {"rows", rows}};
    return j.dump();
}

std::string algebra_to_text(const EvolutionAlgebra& alg) {
    std::ostringstream out;
    for (int i = 0; i < alg.n; ++i) {
        out << "e" << i + 1 << "^2 =";
        bool any = false;
        for (int k = 0; k < alg.n; ++k) {
            const Rational& c = alg.M(i, k);
            if (c == 0) continue;
            out << (any ? " + " : " ");
            if (c != 1) out << to_string(c) << " ";
            out << "e" << k + 1;
            any = true;
        }
        if (!any) out << " 0";
        out << '\n';
    }
    return out.str();
}

EvolutionAlgebra algebra_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::Parse, e.what());
    }
    EvolutionAlgebra alg;
    alg.n = j.at("dimension").get<int>();
    alg.kind = j.at("kind").get<std::string>() == "adjacency" ? AlgebraKind::Adjacency : AlgebraKind::RandomWalk;
    alg.M = ExactMatrix(alg.n, alg.n, Rational(0));
    const auto& rows = j.at("rows");
    if (static_cast<int>(rows.size()) != alg.n) throw Error(ErrorCode::DimensionMismatch, "row count mismatch");
    for (int i = 0; i < alg.n; ++i) {
        if (static_cast<int>(rows[i].size()) != alg.n) throw Error(ErrorCode::DimensionMismatch, "row length mismatch");
        for (int k = 0; k < alg.n; ++k) alg.M(i, k) = parse_rational(rows[i][k].get<std::string>());
    }
    return alg;
}

}  // namespace evograph
