// SPDX-License-Identifier: Apache-2.0
// Exact real numbers of the form sum_j q_j * prod_p p^(e_pj/6), q_j rational.
// Distinct radical monomials with 0 < e < 6 are linearly independent over Q,
// so the normal form decides equality.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "evograph/rational.hpp"

namespace evograph {

class RadicalNumber {
public:
    // Sorted (prime, exponent in sixths) pairs with exponent in 1..5.
    using Key = std::vector<std::pair<std::uint64_t, int>>;

    RadicalNumber() = default;
    RadicalNumber(int v) : RadicalNumber(Rational(v)) {}
    RadicalNumber(const Rational& q);

    // base^(num/den) for a positive rational base; den must divide 6.
    static RadicalNumber power(const Rational& base, int num, int den);
    // Parses the output of str().
    static RadicalNumber parse(const std::string& text);

    RadicalNumber& operator+=(const RadicalNumber& o);
    RadicalNumber& operator-=(const RadicalNumber& o);
    RadicalNumber& operator*=(const RadicalNumber& o);
    RadicalNumber& operator*=(const Rational& q);

    friend RadicalNumber operator+(RadicalNumber a, const RadicalNumber& b) { return a += b; }
    friend RadicalNumber operator-(RadicalNumber a, const RadicalNumber& b) { return a -= b; }
    friend RadicalNumber operator*(RadicalNumber a, const RadicalNumber& b) { return a *= b; }
    friend RadicalNumber operator*(RadicalNumber a, const Rational& q) { return a *= q; }
    friend RadicalNumber operator*(const Rational& q, RadicalNumber a) { return a *= q; }
    RadicalNumber operator-() const;

    bool operator==(const RadicalNumber& o) const { return terms_ == o.terms_; }
    bool operator!=(const RadicalNumber& o) const { return terms_ != o.terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_rational() const;
    Rational rational_value() const;  // requires is_rational()
    double to_double() const;
    std::string str() const;
    std::size_t term_count() const { return terms_.size(); }

private:
    std::map<Key, Rational> terms_;

    void add_term(const Key& key, const Rational& q);
};

}  // namespace evograph
