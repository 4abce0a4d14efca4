#pragma once

#include <cstdint>
#include <string>

namespace mixcast {

// Exact rational over checked 128-bit integers. Every operation reduces the
// result and throws std::overflow_error rather than wrapping, which is enough
// headroom for all the factorial ratios and weight products this project
// needs (factorials up to ~31! before reduction).
class Rational {
public:
    using Int = __int128;

    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT: implicit by design
    Rational(std::int64_t n, std::int64_t d);

    static Rational from_int128(Int n, Int d);

    // Parses "3/10", "0.3" or "7"; decimal strings convert exactly.
    static Rational parse(const std::string& text);

    Rational operator-() const;
    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const;

    Rational pow(int e) const;  // e >= 0

    bool is_zero() const { return num_ == 0; }
    bool is_one() const { return num_ == 1 && den_ == 1; }
    Int num() const { return num_; }
    Int den() const { return den_; }

    double to_double() const;
    std::string to_string() const;  // "num/den", or "num" when integral

    // n! as a rational, n <= 33 (the 128-bit ceiling).
    static Rational factorial(int n);

private:
    Int num_;
    Int den_;  // > 0, gcd(|num|, den) == 1

    void reduce();
};

}  // namespace mixcast
