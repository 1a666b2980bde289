// SPDX-License-Identifier: Apache-2.0
#include "evograph/radical.hpp"

#include <cmath>
#include <numeric>

namespace evograph {

namespace {

std::vector<std::pair<std::uint64_t, int>> factor(BigInt v) {
    std::vector<std::pair<std::uint64_t, int>> out;
    for (std::uint64_t p = 2; v > 1; ++p) {
        if (BigInt(p) * p > v) {
            out.push_back({v.convert_to<std::uint64_t>(), 1});
            break;
        }
        int e = 0;
        while (v % p == 0) {
            v /= p;
            ++e;
        }
        if (e) out.push_back({p, e});
        if (p > 1000000)
            throw Error(ErrorCode::InvalidParameter, "radical base too large to factor");
    }
    return out;
}

BigInt ipow(std::uint64_t p, int e) {
    BigInt r = 1;
    for (int i = 0; i < e; ++i) r *= p;
    return r;
}

// Splits p^(E/6) into an integral power times p^(r/6) with 0 <= r < 6.
void accumulate(std::map<std::uint64_t, int>& sixths, Rational& coeff, std::uint64_t p, long e) {
    long f = e >= 0 ? e / 6 : -((-e + 5) / 6);
    long r = e - 6 * f;
    if (f > 0) coeff *= Rational(ipow(p, static_cast<int>(f)));
    if (f < 0) coeff /= Rational(ipow(p, static_cast<int>(-f)));
    if (r) sixths[p] += static_cast<int>(r);
}

RadicalNumber::Key normalise(std::map<std::uint64_t, int>& sixths, Rational& coeff) {
    RadicalNumber::Key key;
    for (auto& [p, e] : sixths) {
        while (e >= 6) {
            coeff *= p;
            e -= 6;
        }
        if (e) key.push_back({p, e});
    }
    return key;
}

}  // namespace

RadicalNumber::RadicalNumber(const Rational& q) {
    if (q != 0) terms_[{}] = q;
}

RadicalNumber RadicalNumber::power(const Rational& base, int num, int den) {
    if (base <= 0) throw Error(ErrorCode::InvalidParameter, "radical base must be positive");
    if (den <= 0 || 6 % den != 0) throw Error(ErrorCode::InvalidParameter, "radical index must divide 6");
    const long scale = 6 / den;
    std::map<std::uint64_t, int> sixths;
    Rational coeff = 1;
    for (auto [p, e] : factor(numerator(base))) accumulate(sixths, coeff, p, static_cast<long>(e) * num * scale);
    for (auto [p, e] : factor(denominator(base))) accumulate(sixths, coeff, p, -static_cast<long>(e) * num * scale);
    RadicalNumber out;
    Key key = normalise(sixths, coeff);
    out.add_term(key, coeff);
    return out;
}

void RadicalNumber::add_term(const Key& key, const Rational& q) {
    if (q == 0) return;
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(key, q);
        return;
    }
    it->second += q;
    if (it->second == 0) terms_.erase(it);
}

RadicalNumber& RadicalNumber::operator+=(const RadicalNumber& o) {
    for (const auto& [k, q] : o.terms_) add_term(k, q);
    return *this;
}

RadicalNumber& RadicalNumber::operator-=(const RadicalNumber& o) {
    for (const auto& [k, q] : o.terms_) add_term(k, -q);
    return *this;
}

RadicalNumber& RadicalNumber::operator*=(const RadicalNumber& o) {
    RadicalNumber out;
    for (const auto& [ka, qa] : terms_) {
        for (const auto& [kb, qb] : o.terms_) {
            std::map<std::uint64_t, int> sixths;
            for (auto [p, e] : ka) sixths[p] += e;
            for (auto [p, e] : kb) sixths[p] += e;
            Rational coeff = qa * qb;
            Key key = normalise(sixths, coeff);
            out.add_term(key, coeff);
        }
    }
    terms_ = std::move(out.terms_);
    return *this;
}

RadicalNumber& RadicalNumber::operator*=(const Rational& q) {
    if (q == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [k, c] : terms_) c *= q;
    return *this;
}

RadicalNumber RadicalNumber::operator-() const {
    RadicalNumber out = *this;
    for (auto& [k, c] : out.terms_) c = -c;
    return out;
}

bool RadicalNumber::is_rational() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rational RadicalNumber::rational_value() const {
    if (!is_rational()) throw Error(ErrorCode::InvalidParameter, "radical number is not rational");
    return terms_.empty() ? Rational(0) : terms_.begin()->second;
}

double RadicalNumber::to_double() const {
    double sum = 0;
    for (const auto& [k, q] : terms_) {
        double v = evograph::to_double(q);
        for (auto [p, e] : k) v *= std::pow(static_cast<double>(p), e / 6.0);
        sum += v;
    }
    return sum;
}

std::string RadicalNumber::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [k, q] : terms_) {
        if (!out.empty()) out += " + ";
        out += to_string(q);
        for (auto [p, e] : k) {
            int g = std::gcd(e, 6);
            out += "*" + std::to_string(p) + "^(" + std::to_string(e / g) + "/" + std::to_string(6 / g) + ")";
        }
    }
    return out;
}

RadicalNumber RadicalNumber::parse(const std::string& text) {
    RadicalNumber out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find(" + ", pos);
        std::string term = text.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
        std::size_t star = term.find('*');
        RadicalNumber t(parse_rational(term.substr(0, star)));
        while (star != std::string::npos) {
            std::size_t next = term.find('*', star + 1);
            std::string f = term.substr(star + 1, next == std::string::npos ? std::string::npos : next - star - 1);
            std::size_t caret = f.find("^(");
            std::size_t slash = f.find('/', caret);
            if (caret == std::string::npos || slash == std::string::npos || f.back() != ')')
                throw Error(ErrorCode::Parse, "malformed radical factor '" + f + "'");
            Rational base = parse_rational(f.substr(0, caret));
            int num = std::stoi(f.substr(caret + 2, slash - caret - 2));
            int den = std::stoi(f.substr(slash + 1, f.size() - slash - 2));
            t *= power(base, num, den);
            star = next;
        }
        out += t;
        if (end == std::string::npos) break;
        pos = end + 3;
    }
    return out;
}

}  // namespace evograph
