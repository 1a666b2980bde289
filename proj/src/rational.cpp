// SPDX-License-Identifier: Apache-2.0
#include "evograph/rational.hpp"

#include <boost/multiprecision/integer.hpp>

#include <cctype>

namespace evograph {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::LoopEdge: return "LoopEdge";
        case ErrorCode::DuplicateEdge: return "DuplicateEdge";
        case ErrorCode::Disconnected: return "Disconnected";
        case ErrorCode::OutOfRange: return "OutOfRange";
        case ErrorCode::InvalidParameter: return "InvalidParameter";
        case ErrorCode::Parse: return "Parse";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::IsolatedVertex: return "IsolatedVertex";
        case ErrorCode::InvalidStep: return "InvalidStep";
        case ErrorCode::InvalidRange: return "InvalidRange";
        case ErrorCode::Io: return "Io";
        case ErrorCode::Internal: return "Internal";
    }
    return "Unknown";
}

namespace {

BigInt parse_integer(std::string_view s, std::string_view whole) {
    std::size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
        neg = s[i] == '-';
        ++i;
    }
    if (i == s.size()) throw Error(ErrorCode::Parse, "malformed rational '" + std::string(whole) + "'");
    BigInt v = 0;
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            throw Error(ErrorCode::Parse, "malformed rational '" + std::string(whole) + "'");
        v = v * 10 + (s[i] - '0');
    }
    return neg ? BigInt(-v) : v;
}

bool integer_root(const BigInt& a, unsigned d, BigInt& root) {
    if (a < 0) return false;
    if (a == 0 || d == 1) {
        root = a;
        return true;
    }
    // Newton iteration from above on floor(a^(1/d)).
    BigInt x = BigInt(1) << (boost::multiprecision::msb(a) / d + 1);
    while (true) {
        BigInt y = ((d - 1) * x + a / boost::multiprecision::pow(x, d - 1)) / d;
        if (y >= x) break;
        x = y;
    }
    if (boost::multiprecision::pow(x, d) != a) return false;
    root = x;
    return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(text, text));
    BigInt num = parse_integer(text.substr(0, slash), text);
    BigInt den = parse_integer(text.substr(slash + 1), text);
    if (den == 0) throw Error(ErrorCode::Parse, "zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
}

std::string to_string(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

bool rational_root(const Rational& q, unsigned d, Rational& root) {
    if (d == 0) return false;
    BigInt num = numerator(q);
    bool neg = num < 0;
    if (neg && d % 2 == 0) return false;
    if (neg) num = -num;
    BigInt a, b;
    if (!integer_root(num, d, a) || !integer_root(denominator(q), d, b)) return false;
    root = Rational(neg ? BigInt(-a) : a, b);
    return true;
}

BigInt bareiss_determinant(Matrix<BigInt> m) {
    const std::size_t n = m.rows();
    if (n != m.cols()) throw Error(ErrorCode::DimensionMismatch, "determinant of a non-square matrix");
    if (n == 0) return 1;
    int sign = 1;
    BigInt prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0) ++p;
            if (p == n) return 0;
            for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(p, c));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
            }
            m(i, k) = 0;
        }
        prev = m(k, k);
    }
    return sign < 0 ? BigInt(-m(n - 1, n - 1)) : m(n - 1, n - 1);
}

Rational determinant(const ExactMatrix& m) {
    const std::size_t n = m.rows();
    if (n != m.cols()) throw Error(ErrorCode::DimensionMismatch, "determinant of a non-square matrix");
    // Scale each row to integers, then divide the scale back out.
    Matrix<BigInt> z(n, n);
    Rational scale = 1;
    for (std::size_t r = 0; r < n; ++r) {
        BigInt l = 1;
        for (std::size_t c = 0; c < n; ++c) l = boost::multiprecision::lcm(l, denominator(m(r, c)));
        for (std::size_t c = 0; c < n; ++c) z(r, c) = numerator(m(r, c)) * (l / denominator(m(r, c)));
        scale *= l;
    }
    return Rational(bareiss_determinant(std::move(z))) / scale;
}

std::size_t rank(ExactMatrix m) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c) == 0) ++p;
        if (p == m.rows()) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(p, j));
        for (std::size_t i = r + 1; i < m.rows(); ++i) {
            if (m(i, c) == 0) continue;
            Rational f = m(i, c) / m(r, c);
            for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
        }
        ++r;
    }
    return r;
}

}  // namespace evograph
