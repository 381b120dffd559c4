#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>

namespace psearch {

/// Exact arbitrary-precision rational scalar.
///
/// Always canonical: lowest terms, positive denominator, zero stored as 0/1.
/// Every comparison and arithmetic operation is exact; this is the carrier
/// for lambda values, comparison roots and problem coefficients.
class Rational {
  public:
    Rational() : value_(0) {}
    Rational(int n) : value_(n) {}
    Rational(long n) : value_(n) {}
    Rational(long long n) : value_(static_cast<long>(n)) {}

    Rational(long long num, long long den);

    /// Parses "p/q" or "p" with optional sign; "/1" is assumed when the
    /// denominator is omitted. Throws std::invalid_argument on malformed input.
    static Rational from_string(std::string_view text);

    /// Wraps an existing GMP rational (canonicalized on entry).
    static Rational from_mpq(mpq_class value);

    int sign() const { return sgn(value_); }
    bool is_zero() const { return sign() == 0; }

    std::string str() const;             // "p/q", or "p" when q == 1
    std::string numerator_str() const;
    std::string denominator_str() const;

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(mpq_class(a.value_ + b.value_));
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(mpq_class(a.value_ - b.value_));
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(mpq_class(a.value_ * b.value_));
    }
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational operator-() const { return Rational(mpq_class(-value_)); }

    Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
    Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
    Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
    Rational& operator/=(const Rational& o);

    friend bool operator==(const Rational& a, const Rational& b) {
        return mpq_equal(a.value_.get_mpq_t(), b.value_.get_mpq_t()) != 0;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) < 0; }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r);

  private:
    explicit Rational(mpq_class value) : value_(std::move(value)) {}

    mpq_class value_;  // kept canonical by gmpxx arithmetic
};

}  // namespace psearch
