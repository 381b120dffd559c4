#include "psearch/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace psearch {

Rational::Rational(long long num, long long den) {
    if (den == 0) {
        throw std::invalid_argument("Rational: zero denominator");
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    value_ = mpq_class(static_cast<long>(num), static_cast<unsigned long>(den));
    value_.canonicalize();
}

Rational Rational::from_mpq(mpq_class value) {
    value.canonicalize();
    return Rational(std::move(value));
}

Rational Rational::from_string(std::string_view text) {
    if (text.empty()) {
        throw std::invalid_argument("Rational: empty string");
    }
    const std::string s(text);
    mpq_class v;
    // mpq_class::set_str accepts "num/den"; validate shape first so that
    // garbage like "1/2/3" or stray spaces is rejected uniformly.
    const auto slash = s.find('/');
    const auto valid_int = [](std::string_view part) {
        if (!part.empty() && (part[0] == '+' || part[0] == '-')) part.remove_prefix(1);
        if (part.empty()) return false;
        for (char c : part) {
            if (c < '0' || c > '9') return false;
        }
        return true;
    };
    bool ok;
    if (slash == std::string::npos) {
        ok = valid_int(s);
    } else {
        std::string_view den = std::string_view(s).substr(slash + 1);
        ok = valid_int(std::string_view(s).substr(0, slash)) && valid_int(den) &&
             den.find('-') == std::string_view::npos && den.find('+') == std::string_view::npos;
    }
    std::string digits = s;
    if (!digits.empty() && digits[0] == '+') digits.erase(0, 1);  // GMP rejects a leading '+'
    if (!ok || v.set_str(digits, 10) != 0) {
        throw std::invalid_argument("Rational: malformed rational '" + s + "'");
    }
    if (sgn(v.get_den()) == 0) {
        throw std::invalid_argument("Rational: zero denominator in '" + s + "'");
    }
    v.canonicalize();
    return Rational(std::move(v));
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) {
        throw std::invalid_argument("Rational: division by zero");
    }
    return Rational(mpq_class(a.value_ / b.value_));
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) {
        throw std::invalid_argument("Rational: division by zero");
    }
    value_ /= o.value_;
    return *this;
}

std::string Rational::str() const {
    return value_.get_str();
}

std::string Rational::numerator_str() const {
    return value_.get_num().get_str();
}

std::string Rational::denominator_str() const {
    return value_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.value_;
}

}  // namespace psearch
