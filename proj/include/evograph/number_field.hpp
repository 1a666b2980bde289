// SPDX-License-Identifier: Apache-2.0
// Q and simple real extensions Q(alpha), alpha the real root of x^d = c with
// d odd and x^d - c irreducible.
#pragma once

#include <boost/container/small_vector.hpp>

#include <cstddef>
#include <optional>
#include <string>

#include "evograph/rational.hpp"

namespace evograph {

struct FieldSpec {
    int degree;
    Rational radicand;
};

// Irreducibility over Q of x^d - c for odd d >= 1 (Capelli).
bool is_irreducible_binomial(int d, const Rational& c);
// Interned; throws InvalidParameter if d is even or the binomial is reducible.
const FieldSpec* intern_field(int d, const Rational& c);

class FieldElem {
public:
    FieldElem() : v_(1, Rational(0)) {}
    FieldElem(int v) : v_(1, Rational(v)) {}
    FieldElem(const Rational& q) : v_(1, q) {}

    static FieldElem generator(const FieldSpec* f);
    // sum_i coords[i] alpha^i in field f.
    static FieldElem from_coords(const FieldSpec* f, const std::vector<Rational>& coords);

    const FieldSpec* field() const { return f_; }
    bool is_rational() const { return f_ == nullptr; }
    const Rational& rational() const { return v_[0]; }
    std::size_t coord_count() const { return v_.size(); }
    const Rational& coord(std::size_t i) const { return v_[i]; }
    bool is_zero() const { return f_ == nullptr && v_[0] == 0; }
    bool is_one() const { return f_ == nullptr && v_[0] == 1; }

    FieldElem& operator+=(const FieldElem& o);
    FieldElem& operator-=(const FieldElem& o);
    FieldElem& operator*=(const FieldElem& o);
    FieldElem& operator/=(const FieldElem& o);
    friend FieldElem operator+(FieldElem a, const FieldElem& b) { return a += b; }
    friend FieldElem operator-(FieldElem a, const FieldElem& b) { return a -= b; }
    friend FieldElem operator*(FieldElem a, const FieldElem& b) { return a *= b; }
    friend FieldElem operator/(FieldElem a, const FieldElem& b) { return a /= b; }
    FieldElem operator-() const;
    FieldElem inverse() const;
    FieldElem pow(unsigned e) const;

    bool operator==(const FieldElem& o) const { return f_ == o.f_ && v_ == o.v_; }
    bool operator!=(const FieldElem& o) const { return !(*this == o); }

    // -1, 0 or 1; nullopt when high-precision evaluation cannot separate the
    // value from zero.
    std::optional<int> sign() const;
    double to_double() const;
    std::size_t hash() const;
    std::string str() const;

private:
    const FieldSpec* f_ = nullptr;
    boost::container::small_vector<Rational, 1> v_;

    void lift_to(const FieldSpec* f);
    void unify(FieldElem& o);
    void demote();
};

}  // namespace evograph
