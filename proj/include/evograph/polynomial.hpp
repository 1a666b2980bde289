// SPDX-License-Identifier: Apache-2.0
// Sparse multivariate polynomials over FieldElem coefficients.
#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "evograph/number_field.hpp"

namespace evograph {

class Monomial {
public:
    static constexpr int kMaxDegree = 8;

    Monomial() = default;
    explicit Monomial(std::initializer_list<int> vars);
    static Monomial var(int v) { return Monomial{v}; }
    static Monomial power(int v, int e);

    int degree() const { return n_; }
    int operator[](int i) const { return v_[i]; }
    const std::uint16_t* begin() const { return v_.data(); }
    const std::uint16_t* end() const { return v_.data() + n_; }
    int count(int var) const;
    bool contains(int var) const { return count(var) > 0; }
    // Single variable raised to a power (including degree 1).
    bool is_pure_power() const { return n_ > 0 && v_[0] == v_[n_ - 1]; }
    std::vector<int> vars() const;  // distinct, sorted

    Monomial operator*(const Monomial& o) const;
    Monomial without(int var) const;         // drops every occurrence
    Monomial divide(int var, int times) const;

    // Shorter first, then lexicographic.
    friend bool operator<(const Monomial& a, const Monomial& b) {
        if (a.n_ != b.n_) return a.n_ < b.n_;
        for (int i = 0; i < a.n_; ++i)
            if (a.v_[i] != b.v_[i]) return a.v_[i] < b.v_[i];
        return false;
    }
    friend bool operator==(const Monomial& a, const Monomial& b) {
        if (a.n_ != b.n_) return false;
        for (int i = 0; i < a.n_; ++i)
            if (a.v_[i] != b.v_[i]) return false;
        return true;
    }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }
    std::size_t hash() const;

private:
    std::array<std::uint16_t, kMaxDegree> v_{};
    std::uint8_t n_ = 0;
};

class Polynomial {
public:
    using TermT = std::pair<Monomial, FieldElem>;

    Polynomial() = default;
    static Polynomial constant(const FieldElem& c);
    static Polynomial monomial(const Monomial& m, const FieldElem& c = FieldElem(1));
    static Polynomial variable(int v) { return monomial(Monomial::var(v)); }
    // Terms may be unsorted and repeated.
    static Polynomial from_terms(std::vector<TermT> terms);

    const std::vector<TermT>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.degree() == 0); }
    int degree() const;
    std::vector<int> vars() const;
    int count(int var) const;  // total occurrences across monomials
    FieldElem coeff(const Monomial& m) const;
    FieldElem constant_term() const { return coeff(Monomial()); }

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& add_scaled(const Polynomial& o, const FieldElem& c);
    Polynomial operator*(const Polynomial& o) const;
    Polynomial scaled(const FieldElem& c) const;
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

    // Degree after replacing var by a polynomial of degree qdeg.
    int substitution_degree(int var, int qdeg) const;
    Polynomial substitute(int var, const Polynomial& q) const;
    Polynomial substitute(int var, const FieldElem& value) const;

    // Divides by the coefficient of the largest monomial.
    Polynomial normalized() const;
    const TermT& leading() const { return terms_.back(); }
    // Some nonzero c with a = c*b.
    static bool proportional(const Polynomial& a, const Polynomial& b);

    bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }
    std::size_t hash() const;
    std::string str(int n) const;

private:
    std::vector<TermT> terms_;  // sorted by monomial, nonzero coefficients
};

struct PolynomialHash {
    std::size_t operator()(const Polynomial& p) const { return p.hash(); }
};

}  // namespace evograph
