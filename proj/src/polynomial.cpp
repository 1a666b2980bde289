// SPDX-License-Identifier: Apache-2.0
#include "evograph/polynomial.hpp"

#include <algorithm>

#include "evograph/hom_system.hpp"

namespace evograph {

Monomial::Monomial(std::initializer_list<int> vars) {
    if (vars.size() > kMaxDegree) throw Error(ErrorCode::Internal, "monomial degree overflow");
    for (int v : vars) v_[n_++] = static_cast<std::uint16_t>(v);
    std::sort(v_.begin(), v_.begin() + n_);
}

Monomial Monomial::power(int v, int e) {
    if (e > kMaxDegree) throw Error(ErrorCode::Internal, "monomial degree overflow");
    Monomial m;
    for (int i = 0; i < e; ++i) m.v_[m.n_++] = static_cast<std::uint16_t>(v);
    return m;
}

int Monomial::count(int var) const {
    int c = 0;
    for (int i = 0; i < n_; ++i) c += v_[i] == var;
    return c;
}

std::vector<int> Monomial::vars() const {
    std::vector<int> out;
    for (int i = 0; i < n_; ++i)
        if (out.empty() || out.back() != v_[i]) out.push_back(v_[i]);
    return out;
}

Monomial Monomial::operator*(const Monomial& o) const {
    if (n_ + o.n_ > kMaxDegree) throw Error(ErrorCode::Internal, "monomial degree overflow");
    Monomial m;
    std::merge(v_.begin(), v_.begin() + n_, o.v_.begin(), o.v_.begin() + o.n_, m.v_.begin());
    m.n_ = static_cast<std::uint8_t>(n_ + o.n_);
    return m;
}

Monomial Monomial::without(int var) const {
    Monomial m;
    for (int i = 0; i < n_; ++i)
        if (v_[i] != var) m.v_[m.n_++] = v_[i];
    return m;
}

Monomial Monomial::divide(int var, int times) const {
    Monomial m;
    for (int i = 0; i < n_; ++i) {
        if (v_[i] == var && times > 0) {
            --times;
            continue;
        }
        m.v_[m.n_++] = v_[i];
    }
    if (times > 0) throw Error(ErrorCode::Internal, "monomial is not divisible");
    return m;
}

std::size_t Monomial::hash() const {
    std::size_t h = n_;
    for (int i = 0; i < n_; ++i) h = h * 1000003u + v_[i];
    return h;
}

Polynomial Polynomial::constant(const FieldElem& c) { return monomial(Monomial(), c); }

Polynomial Polynomial::monomial(const Monomial& m, const FieldElem& c) {
    Polynomial p;
    if (!c.is_zero()) p.terms_.push_back({m, c});
    return p;
}

Polynomial Polynomial::from_terms(std::vector<TermT> terms) {
    std::sort(terms.begin(), terms.end(), [](const TermT& a, const TermT& b) { return a.first < b.first; });
    Polynomial p;
    for (auto& t : terms) {
        if (!p.terms_.empty() && p.terms_.back().first == t.first) {
            p.terms_.back().second += t.second;
            if (p.terms_.back().second.is_zero()) p.terms_.pop_back();
        } else if (!t.second.is_zero()) {
            p.terms_.push_back(std::move(t));
        }
    }
    return p;
}

int Polynomial::degree() const {
    int d = 0;
    for (const auto& t : terms_) d = std::max(d, t.first.degree());
    return d;
}

std::vector<int> Polynomial::vars() const {
    std::vector<int> out;
    for (const auto& t : terms_)
        for (int v : t.first) out.push_back(v);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

int Polynomial::count(int var) const {
    int c = 0;
    for (const auto& t : terms_) c += t.first.count(var);
    return c;
}

FieldElem Polynomial::coeff(const Monomial& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const TermT& t, const Monomial& key) { return t.first < key; });
    if (it != terms_.end() && it->first == m) return it->second;
    return FieldElem(0);
}

Polynomial& Polynomial::add_scaled(const Polynomial& o, const FieldElem& c) {
    if (c.is_zero() || o.terms_.empty()) return *this;
    std::vector<TermT> out;
    out.reserve(terms_.size() + o.terms_.size());
    auto a = terms_.begin();
    auto b = o.terms_.begin();
    while (a != terms_.end() || b != o.terms_.end()) {
        if (b == o.terms_.end() || (a != terms_.end() && a->first < b->first)) {
            out.push_back(std::move(*a++));
        } else if (a == terms_.end() || b->first < a->first) {
            FieldElem v = b->second * c;
            if (!v.is_zero()) out.push_back({b->first, std::move(v)});
            ++b;
        } else {
            FieldElem v = a->second + b->second * c;
            if (!v.is_zero()) out.push_back({a->first, std::move(v)});
            ++a;
            ++b;
        }
    }
    terms_ = std::move(out);
    return *this;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) { return add_scaled(o, FieldElem(1)); }
Polynomial& Polynomial::operator-=(const Polynomial& o) { return add_scaled(o, FieldElem(-1)); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
    std::vector<TermT> out;
    out.reserve(terms_.size() * o.terms_.size());
    for (const auto& a : terms_)
        for (const auto& b : o.terms_) out.push_back({a.first * b.first, a.second * b.second});
    return from_terms(std::move(out));
}

Polynomial Polynomial::scaled(const FieldElem& c) const {
    if (c.is_zero()) return {};
    Polynomial p = *this;
    for (auto& t : p.terms_) t.second *= c;
    return p;
}

int Polynomial::substitution_degree(int var, int qdeg) const {
    int d = 0;
    for (const auto& t : terms_) {
        int k = t.first.count(var);
        d = std::max(d, t.first.degree() - k + k * qdeg);
    }
    return d;
}

Polynomial Polynomial::substitute(int var, const Polynomial& q) const {
    std::vector<TermT> out;
    std::vector<Polynomial> powers{Polynomial::constant(FieldElem(1))};
    for (const auto& t : terms_) {
        int k = t.first.count(var);
        if (k == 0) {
            out.push_back(t);
            continue;
        }
        while (static_cast<int>(powers.size()) <= k) powers.push_back(powers.back() * q);
        Monomial rest = t.first.without(var);
        for (const auto& pt : powers[k].terms_) out.push_back({rest * pt.first, t.second * pt.second});
    }
    return from_terms(std::move(out));
}

Polynomial Polynomial::substitute(int var, const FieldElem& value) const {
    std::vector<TermT> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
        int k = t.first.count(var);
        if (k == 0) {
            out.push_back(t);
        } else if (!value.is_zero()) {
            out.push_back({t.first.without(var), t.second * value.pow(k)});
        }
    }
    return from_terms(std::move(out));
}

Polynomial Polynomial::normalized() const {
    if (terms_.empty()) return {};
    const FieldElem& lead = terms_.back().second;
    if (lead.is_one()) return *this;
    return scaled(lead.inverse());
}

bool Polynomial::proportional(const Polynomial& a, const Polynomial& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    if (a.terms_.empty()) return true;
    FieldElem c = a.terms_.back().second / b.terms_.back().second;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
        if (a.terms_[i].first != b.terms_[i].first) return false;
        if (a.terms_[i].second != b.terms_[i].second * c) return false;
    }
    return true;
}

std::size_t Polynomial::hash() const {
    std::size_t h = terms_.size();
    for (const auto& t : terms_) h = h * 31 + t.first.hash() * 17 + t.second.hash();
    return h;
}

std::string Polynomial::str(int n) const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        if (!out.empty()) out += " + ";
        const Monomial& m = it->first;
        bool unit = it->second.is_one();
        if (!unit || m.degree() == 0) out += it->second.str();
        std::vector<int> vs = m.vars();
        for (std::size_t i = 0; i < vs.size(); ++i) {
            if (!unit || i > 0) out += "*";
            out += var_name(n, vs[i]);
            int k = m.count(vs[i]);
            if (k > 1) out += "^" + std::to_string(k);
        }
    }
    return out;
}

}  // namespace evograph
