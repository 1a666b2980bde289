// SPDX-License-Identifier: Apache-2.0
#include "evograph/number_field.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <deque>
#include <functional>
#include <mutex>

namespace evograph {

using Real = boost::multiprecision::cpp_bin_float_100;

bool is_irreducible_binomial(int d, const Rational& c) {
    if (d < 1 || d % 2 == 0 || c == 0) return false;
    int m = d;
    for (int p = 2; p <= m; ++p) {
        if (m % p) continue;
        Rational r;
        if (rational_root(c, static_cast<unsigned>(p), r)) return false;
        while (m % p == 0) m /= p;
    }
    return true;
}

const FieldSpec* intern_field(int d, const Rational& c) {
    if (!is_irreducible_binomial(d, c))
        throw Error(ErrorCode::InvalidParameter, "x^" + std::to_string(d) + " - " + to_string(c) + " is not an irreducible odd binomial");
    static std::mutex mu;
    static std::deque<FieldSpec> fields;
    std::lock_guard<std::mutex> lock(mu);
    for (const FieldSpec& f : fields)
        if (f.degree == d && f.radicand == c) return &f;
    fields.push_back({d, c});
    return &fields.back();
}

FieldElem FieldElem::generator(const FieldSpec* f) {
    FieldElem e;
    if (f->degree == 1) {
        e.v_[0] = f->radicand;
        return e;
    }
    e.f_ = f;
    e.v_.assign(f->degree, Rational(0));
    e.v_[1] = 1;
    return e;
}

FieldElem FieldElem::from_coords(const FieldSpec* f, const std::vector<Rational>& coords) {
    FieldElem e;
    if (f == nullptr || f->degree == 1) {
        if (coords.size() > 1)
            for (std::size_t i = 1; i < coords.size(); ++i)
                if (coords[i] != 0) throw Error(ErrorCode::InvalidParameter, "coordinates outside Q");
        e.v_[0] = coords.empty() ? Rational(0) : coords[0];
        return e;
    }
    if (static_cast<int>(coords.size()) != f->degree)
        throw Error(ErrorCode::DimensionMismatch, "field element needs " + std::to_string(f->degree) + " coordinates");
    e.f_ = f;
    e.v_.assign(coords.begin(), coords.end());
    e.demote();
    return e;
}

void FieldElem::lift_to(const FieldSpec* f) {
    if (f_ == f) return;
    if (f_ != nullptr) throw Error(ErrorCode::Internal, "mixing elements of different number fields");
    Rational q = v_[0];
    f_ = f;
    v_.assign(f->degree, Rational(0));
    v_[0] = q;
}

void FieldElem::unify(FieldElem& o) {
    if (f_ == o.f_) return;
    if (f_ == nullptr)
        lift_to(o.f_);
    else
        o.lift_to(f_);
}

void FieldElem::demote() {
    if (f_ == nullptr) return;
    for (std::size_t i = 1; i < v_.size(); ++i)
        if (v_[i] != 0) return;
    f_ = nullptr;
    v_.resize(1);
}

FieldElem& FieldElem::operator+=(const FieldElem& o) {
    if (f_ == o.f_) {
        for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
    } else {
        FieldElem b = o;
        unify(b);
        for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += b.v_[i];
    }
    demote();
    return *this;
}

FieldElem& FieldElem::operator-=(const FieldElem& o) { return *this += -o; }

FieldElem& FieldElem::operator*=(const FieldElem& o) {
    if (f_ == nullptr && o.f_ == nullptr) {
        v_[0] *= o.v_[0];
        return *this;
    }
    if (o.f_ == nullptr) {
        for (auto& x : v_) x *= o.v_[0];
        demote();
        return *this;
    }
    if (f_ == nullptr) {
        Rational q = v_[0];
        *this = o;
        for (auto& x : v_) x *= q;
        demote();
        return *this;
    }
    if (f_ != o.f_) throw Error(ErrorCode::Internal, "mixing elements of different number fields");
    const std::size_t d = v_.size();
    std::vector<Rational> r(2 * d, Rational(0));
    for (std::size_t i = 0; i < d; ++i) {
        if (v_[i] == 0) continue;
        for (std::size_t j = 0; j < d; ++j)
            if (o.v_[j] != 0) r[i + j] += v_[i] * o.v_[j];
    }
    for (std::size_t k = d; k < 2 * d; ++k)
        if (r[k] != 0) r[k - d] += r[k] * f_->radicand;
    for (std::size_t i = 0; i < d; ++i) v_[i] = r[i];
    demote();
    return *this;
}

FieldElem FieldElem::inverse() const {
    if (is_zero()) throw Error(ErrorCode::Internal, "division by zero");
    if (f_ == nullptr) return FieldElem(Rational(1) / v_[0]);
    // Solve (this * x) = 1 through the multiplication matrix.
    const std::size_t d = v_.size();
    std::vector<std::vector<Rational>> m(d, std::vector<Rational>(d + 1, Rational(0)));
    for (std::size_t j = 0; j < d; ++j) {
        std::vector<Rational> e(d, Rational(0));
        e[j] = 1;
        FieldElem col = *this * from_coords(f_, e);
        col.lift_to(f_);
        for (std::size_t i = 0; i < d; ++i) m[i][j] = col.v_[i];
    }
    m[0][d] = 1;
    for (std::size_t c = 0; c < d; ++c) {
        std::size_t p = c;
        while (p < d && m[p][c] == 0) ++p;
        if (p == d) throw Error(ErrorCode::Internal, "singular multiplication matrix");
        std::swap(m[c], m[p]);
        Rational pv = m[c][c];
        for (auto& x : m[c]) x /= pv;
        for (std::size_t r = 0; r < d; ++r) {
            if (r == c || m[r][c] == 0) continue;
            Rational f = m[r][c];
            for (std::size_t k = 0; k <= d; ++k) m[r][k] -= f * m[c][k];
        }
    }
    std::vector<Rational> x(d);
    for (std::size_t i = 0; i < d; ++i) x[i] = m[i][d];
    return from_coords(f_, x);
}

FieldElem& FieldElem::operator/=(const FieldElem& o) {
    if (f_ == nullptr && o.f_ == nullptr) {
        if (o.v_[0] == 0) throw Error(ErrorCode::Internal, "division by zero");
        v_[0] /= o.v_[0];
        return *this;
    }
    return *this *= o.inverse();
}

FieldElem FieldElem::operator-() const {
    FieldElem out = *this;
    for (auto& x : out.v_) x = -x;
    return out;
}

FieldElem FieldElem::pow(unsigned e) const {
    FieldElem out(1);
    for (unsigned i = 0; i < e; ++i) out *= *this;
    return out;
}

namespace {

Real real_of(const Rational& q) { return Real(numerator(q)) / Real(denominator(q)); }

Real alpha_of(const FieldSpec& f) {
    Real c = real_of(f.radicand);
    Real a = boost::multiprecision::pow(boost::multiprecision::abs(c), Real(1) / f.degree);
    return c < 0 ? Real(-a) : a;
}

}  // namespace

std::optional<int> FieldElem::sign() const {
    if (f_ == nullptr) return v_[0] == 0 ? 0 : (v_[0] > 0 ? 1 : -1);
    Real a = alpha_of(*f_);
    Real sum = 0, mag = 0, p = 1;
    for (const auto& x : v_) {
        Real t = real_of(x) * p;
        sum += t;
        mag += boost::multiprecision::abs(t);
        p *= a;
    }
    if (boost::multiprecision::abs(sum) <= mag * Real("1e-80")) return std::nullopt;
    return sum > 0 ? 1 : -1;
}

double FieldElem::to_double() const {
    if (f_ == nullptr) return evograph::to_double(v_[0]);
    Real a = alpha_of(*f_);
    Real sum = 0, p = 1;
    for (const auto& x : v_) {
        sum += real_of(x) * p;
        p *= a;
    }
    return sum.convert_to<double>();
}

std::size_t FieldElem::hash() const {
    std::size_t h = std::hash<const void*>()(f_);
    for (const auto& x : v_) {
        std::size_t hn = std::hash<std::string>()(to_string(x));
        h ^= hn + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

std::string FieldElem::str() const {
    if (f_ == nullptr) return to_string(v_[0]);
    std::string out = "(";
    bool first = true;
    for (std::size_t i = 0; i < v_.size(); ++i) {
        if (v_[i] == 0) continue;
        if (!first) out += " + ";
        out += to_string(v_[i]);
        if (i == 1) out += "*a";
        if (i > 1) out += "*a^" + std::to_string(i);
        first = false;
    }
    return out + " | a^" + std::to_string(f_->degree) + "=" + to_string(f_->radicand) + ")";
}

}  // namespace evograph
