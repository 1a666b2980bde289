// SPDX-License-Identifier: Apache-2.0
#include "evograph/proof_log.hpp"

#include <json.hpp>

#include <sstream>

namespace evograph {

using nlohmann::json;

const char* fact_kind_name(FactKind k) {
    switch (k) {
        case FactKind::Zero: return "zero";
        case FactKind::Value: return "value";
        case FactKind::NonZero: return "nonzero";
        case FactKind::Equal: return "equal";
        case FactKind::EqualSquare: return "equal_square";
        case FactKind::Mutex: return "mutex";
        case FactKind::Equation: return "equation";
        case FactKind::Contradiction: return "contradiction";
        case FactKind::Null: return "null";
    }
    return "?";
}

namespace {

FactKind fact_kind_from(const std::string& s) {
    for (FactKind k : {FactKind::Zero, FactKind::Value, FactKind::NonZero, FactKind::Equal, FactKind::EqualSquare,
                       FactKind::Mutex, FactKind::Equation, FactKind::Contradiction, FactKind::Null})
        if (s == fact_kind_name(k)) return k;
    throw Error(ErrorCode::Parse, "unknown fact kind '" + s + "'");
}

json elem_to_json(const FieldElem& e) {
    if (e.is_rational()) return to_string(e.rational());
    json coords = json::array();
    for (std::size_t i = 0; i < e.coord_count(); ++i) coords.push_back(to_string(e.coord(i)));
    return {{"degree", e.field()->degree}, {"radicand", to_string(e.field()->radicand)}, {"coords", coords}};
}

FieldElem elem_from_json(const json& j) {
    if (j.is_string()) return FieldElem(parse_rational(j.get<std::string>()));
    const FieldSpec* f = intern_field(j.at("degree").get<int>(), parse_rational(j.at("radicand").get<std::string>()));
    std::vector<Rational> coords;
    for (const auto& c : j.at("coords")) coords.push_back(parse_rational(c.get<std::string>()));
    return FieldElem::from_coords(f, coords);
}

json poly_to_json(const Polynomial& p) {
    json out = json::array();
    for (const auto& [m, c] : p.terms()) {
        std::vector<int> ids(m.begin(), m.end());
        out.push_back({{"coeff", elem_to_json(c)}, {"monomial", ids}});
    }
    return out;
}

Polynomial poly_from_json(const json& j, int var_count) {
    std::vector<Polynomial::TermT> terms;
    for (const auto& t : j) {
        std::vector<int> ids = t.at("monomial").get<std::vector<int>>();
        if (static_cast<int>(ids.size()) > Monomial::kMaxDegree) throw Error(ErrorCode::Parse, "monomial degree too large");
        Monomial m;
        for (int id : ids) {
            if (id < 0 || id >= var_count) throw Error(ErrorCode::Parse, "variable id out of range");
            m = m * Monomial::var(id);
        }
        terms.push_back({m, elem_from_json(t.at("coeff"))});
    }
    return Polynomial::from_terms(std::move(terms));
}

json fact_to_json(const Fact& f) {
    json j{{"kind", fact_kind_name(f.kind)}};
    if (!f.vars.empty()) j["vars"] = f.vars;
    if (f.kind == FactKind::Value) j["value"] = elem_to_json(f.value);
    if (f.kind == FactKind::Equation) j["equation"] = poly_to_json(f.equation);
    return j;
}

Fact fact_from_json(const json& j, int var_count) {
    Fact f;
    f.kind = fact_kind_from(j.at("kind").get<std::string>());
    if (j.contains("vars")) f.vars = j.at("vars").get<std::vector<int>>();
    for (int v : f.vars)
        if (v < 0 || v >= var_count) throw Error(ErrorCode::Parse, "variable id out of range");
    if (j.contains("value")) f.value = elem_from_json(j.at("value"));
    if (j.contains("equation")) f.equation = poly_from_json(j.at("equation"), var_count);
    return f;
}

json ref_to_json(int ref) {
    if (is_constraint_ref(ref)) return "c:" + std::to_string(constraint_index(ref));
    return ref;
}

int ref_from_json(const json& j) {
    if (j.is_number_integer()) {
        int v = j.get<int>();
        if (v < 0) throw Error(ErrorCode::Parse, "negative step id");
        return v;
    }
    std::string s = j.get<std::string>();
    if (s.rfind("c:", 0) != 0) throw Error(ErrorCode::Parse, "bad premise reference '" + s + "'");
    return constraint_ref(std::stoi(s.substr(2)));
}

}  // namespace

std::string Fact::str(int n) const {
    auto v = [&](int i) { return var_name(n, vars[i]); };
    switch (kind) {
        case FactKind::Zero: return v(0) + " = 0";
        case FactKind::Value: return v(0) + " = " + value.str();
        case FactKind::NonZero: return v(0) + " != 0";
        case FactKind::Equal: return v(0) + " = " + v(1);
        case FactKind::EqualSquare: return v(0) + "^2 = " + v(1);
        case FactKind::Mutex: {
            std::string s = "mutex{";
            for (std::size_t i = 0; i < vars.size(); ++i) s += (i ? "," : "") + v(static_cast<int>(i));
            return s + "}";
        }
        case FactKind::Equation: return equation.str(n) + " = 0";
        case FactKind::Contradiction: return "contradiction";
        case FactKind::Null: return "null map";
    }
    return "?";
}

std::string proof_to_json(const ProofLog& log) {
    json steps = json::array();
    for (std::size_t i = 0; i < log.steps.size(); ++i) {
        const ProofStep& s = log.steps[i];
        json prem = json::array();
        for (int r : s.premises) prem.push_back(ref_to_json(r));
        json j{{"id", i}, {"rule", s.rule}, {"premises", prem}, {"conclusion", fact_to_json(s.conclusion)},
               {"branch", s.branch}};
        if (!s.sub_vars.empty()) j["subs"] = s.sub_vars;
        if (!s.coefficients.empty()) {
            json cs = json::array();
            for (const auto& c : s.coefficients) cs.push_back(elem_to_json(c));
            j["coefficients"] = cs;
        }
        steps.push_back(std::move(j));
    }
    return json{{"n", log.n}, {"steps", steps}}.dump();
}

ProofLog proof_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::Parse, e.what());
    }
    ProofLog log;
    try {
        log.n = j.at("n").get<int>();
        const int var_count = log.n * log.n;
        for (const auto& s : j.at("steps")) {
            ProofStep st;
            st.rule = s.at("rule").get<std::string>();
            for (const auto& p : s.at("premises")) st.premises.push_back(ref_from_json(p));
            st.conclusion = fact_from_json(s.at("conclusion"), var_count);
            st.branch = s.at("branch").get<std::vector<int>>();
            if (s.contains("subs")) st.sub_vars = s.at("subs").get<std::vector<int>>();
            if (s.contains("coefficients"))
                for (const auto& c : s.at("coefficients")) st.coefficients.push_back(elem_from_json(c));
            log.steps.push_back(std::move(st));
        }
    } catch (const json::exception& e) {
        throw Error(ErrorCode::Parse, e.what());
    }
    return log;
}

std::string proof_to_text(const ProofLog& log) {
    std::ostringstream out;
    for (std::size_t i = 0; i < log.steps.size(); ++i) {
        const ProofStep& s = log.steps[i];
        out << '#' << i << ' ' << std::string(2 * s.branch.size(), ' ') << s.rule;
        if (!s.premises.empty()) {
            out << " [";
            for (std::size_t k = 0; k < s.premises.size(); ++k) {
                int r = s.premises[k];
                out << (k ? " " : "");
                if (is_constraint_ref(r))
                    out << "c" << constraint_index(r);
                else
                    out << '#' << r;
            }
            out << ']';
        }
        out << " => " << s.conclusion.str(log.n) << '\n';
    }
    return out.str();
}

}  // namespace evograph
