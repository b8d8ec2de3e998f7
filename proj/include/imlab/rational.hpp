// Exact rational arithmetic on 64-bit integers, with overflow checking.
// Used wherever exponent bookkeeping must be exact rather than floating.
#pragma once

#include <cstdint>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace imlab {

class Rational {
public:
    constexpr Rational() : num_(0), den_(1) {}
    constexpr Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(checked_add(checked_mul(a.num_, b.den_), checked_mul(b.num_, a.den_)),
                        checked_mul(a.den_, b.den_));
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(checked_sub(checked_mul(a.num_, b.den_), checked_mul(b.num_, a.den_)),
                        checked_mul(a.den_, b.den_));
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(checked_mul(a.num_, b.num_), checked_mul(a.den_, b.den_));
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
        return Rational(checked_mul(a.num_, b.den_), checked_mul(a.den_, b.num_));
    }
    Rational operator-() const { return Rational(-num_, den_); }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    // Parses "p", "-p/q", with optional surrounding whitespace.
    static Rational parse(const std::string& text) {
        std::size_t begin = text.find_first_not_of(" \t");
        std::size_t end = text.find_last_not_of(" \t");
        if (begin == std::string::npos) throw std::invalid_argument("Rational: empty string");
        std::string body = text.substr(begin, end - begin + 1);
        std::size_t slash = body.find('/');
        try {
            if (slash == std::string::npos) return Rational(parse_int(body));
            return Rational(parse_int(body.substr(0, slash)), parse_int(body.substr(slash + 1)));
        } catch (const std::invalid_argument&) {
            throw std::invalid_argument("Rational: cannot parse '" + text + "'");
        }
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    std::int64_t num_;
    std::int64_t den_;

    void normalize() {
        if (den_ == 0) throw std::domain_error("Rational: zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
        if (num_ == 0) den_ = 1;
    }

    static std::int64_t parse_int(const std::string& s) {
        std::size_t pos = 0;
        long long v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing characters");
        return v;
    }

    static std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
        __int128 r = static_cast<__int128>(a) * b;
        if (r > INT64_MAX || r < INT64_MIN) throw std::overflow_error("Rational: multiply overflow");
        return static_cast<std::int64_t>(r);
    }
    static std::int64_t checked_add(std::int64_t a, std::int64_t b) {
        __int128 r = static_cast<__int128>(a) + b;
        if (r > INT64_MAX || r < INT64_MIN) throw std::overflow_error("Rational: add overflow");
        return static_cast<std::int64_t>(r);
    }
    static std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
        __int128 r = static_cast<__int128>(a) - b;
        if (r > INT64_MAX || r < INT64_MIN) throw std::overflow_error("Rational: subtract overflow");
        return static_cast<std::int64_t>(r);
    }
};

// A rational extended with the single value +infinity; models Lebesgue
// exponents q in [1, inf] where exact arithmetic on 1/q is wanted.
class ExtRational {
public:
    ExtRational() : value_(0), infinite_(false) {}
    ExtRational(Rational v) : value_(v), infinite_(false) {}
    ExtRational(std::int64_t v) : value_(v), infinite_(false) {}
    static ExtRational infinity() { ExtRational e; e.infinite_ = true; return e; }

    bool is_infinite() const { return infinite_; }
    const Rational& finite_value() const {
        if (infinite_) throw std::domain_error("ExtRational: value is infinite");
        return value_;
    }
    // 1/x, with 1/inf = 0. Throws on x = 0.
    Rational reciprocal() const {
        if (infinite_) return Rational(0);
        return Rational(1) / value_;
    }
    double to_double() const {
        return infinite_ ? std::numeric_limits<double>::infinity() : value_.to_double();
    }
    std::string str() const { return infinite_ ? "inf" : value_.str(); }

    friend bool operator==(const ExtRational& a, const ExtRational& b) {
        if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
        return a.value_ == b.value_;
    }

    static ExtRational parse(const std::string& text) {
        std::size_t begin = text.find_first_not_of(" \t");
        std::size_t end = text.find_last_not_of(" \t");
        if (begin == std::string::npos) throw std::invalid_argument("ExtRational: empty string");
        std::string body = text.substr(begin, end - begin + 1);
        if (body == "inf" || body == "infinity") return infinity();
        return ExtRational(Rational::parse(body));
    }

private:
    Rational value_;
    bool infinite_;
};

}  // namespace imlab
