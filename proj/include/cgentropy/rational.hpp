// SPDX-License-Identifier: Apache-2.0
#pragma once

/**
 * @file rational.hpp
 * @brief Exact rational arithmetic over arbitrary-precision integers.
 *
 * Values are always kept in lowest terms with a positive denominator,
 * so equality is plain field comparison and conversions to double round
 * exactly once for small operands.
 */

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cgentropy {

using BigInt = boost::multiprecision::cpp_int;

/// Floor division for any signed integer type (denominator > 0).
template <class I>
I floor_div(const I& num, const I& den) {
    I q = num / den;
    if ((num % den != 0) && ((num < 0) != (den < 0))) --q;
    return q;
}

class Rational {
    BigInt num_;  // carries the sign
    BigInt den_;  // always positive

    void reduce() {
        if (den_ == 0) throw std::domain_error("Rational: zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        if (num_ == 0) {
            den_ = 1;
            return;
        }
        BigInt g = boost::multiprecision::gcd(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

  public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT: implicit by design
    Rational(BigInt n) : num_(std::move(n)), den_(1) {}
    Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { reduce(); }
    Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) { reduce(); }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    bool is_negative() const { return num_ < 0; }
    bool is_positive() const { return num_ > 0; }

    double to_double() const {
        return num_.convert_to<double>() / den_.convert_to<double>();
    }

    /// Largest integer <= value.
    BigInt floor() const { return floor_div(num_, den_); }
    /// Smallest integer >= value.
    BigInt ceil() const { return -floor_div(BigInt(-num_), den_); }
    /// Fractional part in [0, 1): x - floor(x).
    Rational fract() const { return *this - Rational(floor()); }

    Rational operator-() const {
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }

    Rational operator+(const Rational& o) const {
        return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    Rational operator-(const Rational& o) const {
        return Rational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
    }
    Rational operator*(const Rational& o) const {
        return Rational(num_ * o.num_, den_ * o.den_);
    }
    Rational operator/(const Rational& o) const {
        if (o.num_ == 0) throw std::domain_error("Rational: division by zero");
        return Rational(num_ * o.den_, den_ * o.num_);
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    Rational reciprocal() const {
        if (num_ == 0) throw std::domain_error("Rational: reciprocal of zero");
        Rational r;
        if (num_ < 0) {
            r.num_ = -den_;
            r.den_ = -num_;
        } else {
            r.num_ = den_;
            r.den_ = num_;
        }
        return r;
    }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const { return num_ * o.den_ < o.num_ * den_; }
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator<=(const Rational& o) const { return !(o < *this); }
    bool operator>=(const Rational& o) const { return !(*this < o); }

    /// "num/den", or just "num" for integers.
    std::string to_string() const {
        if (den_ == 1) return num_.str();
        return num_.str() + "/" + den_.str();
    }

    /// Parses "a/b", "a", or a plain decimal like "1.5" (exact base-10).
    static Rational parse(std::string_view text) {
        auto bad = [&] { throw std::invalid_argument("Rational: cannot parse '" + std::string(text) + "'"); };
        if (text.empty()) bad();
        auto slash = text.find('/');
        if (slash != std::string_view::npos) {
            std::string n(text.substr(0, slash)), d(text.substr(slash + 1));
            if (n.empty() || d.empty()) bad();
            try {
                return Rational(BigInt(n), BigInt(d));
            } catch (const std::domain_error&) {
                bad();
            } catch (const std::runtime_error&) {
                bad();
            }
        }
        auto dot = text.find('.');
        if (dot != std::string_view::npos) {
            std::string whole(text.substr(0, dot)), frac(text.substr(dot + 1));
            if (frac.empty()) bad();
            bool neg = !whole.empty() && whole[0] == '-';
            if (whole.empty() || whole == "-" || whole == "+") whole += '0';
            try {
                BigInt scale = 1;
                for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
                BigInt value = BigInt(whole) * scale;
                BigInt f(frac);
                if (neg)
                    value -= f;
                else
                    value += f;
                return Rational(value, scale);
            } catch (const std::domain_error&) {
                bad();
            } catch (const std::runtime_error&) {
                bad();
            }
        }
        try {
            return Rational(BigInt(std::string(text)));
        } catch (const std::runtime_error&) {
            bad();
        }
        return Rational();  // unreachable
    }
};

inline Rational abs(const Rational& r) { return r.is_negative() ? -r : r; }
inline Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace cgentropy
