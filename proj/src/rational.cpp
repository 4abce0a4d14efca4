#include "mixcast/rational.hpp"

#include <stdexcept>

namespace mixcast {

namespace {

using Int = Rational::Int;

Int abs128(Int v) { return v < 0 ? -v : v; }

Int gcd128(Int a, Int b) {
    a = abs128(a);
    b = abs128(b);
    while (b != 0) {
        Int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

Int checked_mul(Int a, Int b) {
    Int out;
    if (__builtin_mul_overflow(a, b, &out)) {
        throw std::overflow_error("Rational: 128-bit multiply overflow");
    }
    return out;
}

Int checked_add(Int a, Int b) {
    Int out;
    if (__builtin_add_overflow(a, b, &out)) {
        throw std::overflow_error("Rational: 128-bit add overflow");
    }
    return out;
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) {
    if (d == 0) throw std::invalid_argument("Rational: zero denominator");
    reduce();
}

Rational Rational::from_int128(Int n, Int d) {
    if (d == 0) throw std::invalid_argument("Rational: zero denominator");
    Rational r;
    r.num_ = n;
    r.den_ = d;
    r.reduce();
    return r;
}

void Rational::reduce() {
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    if (num_ == 0) {
        den_ = 1;
        return;
    }
    const Int g = gcd128(num_, den_);
    num_ /= g;
    den_ /= g;
}

Rational Rational::parse(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("Rational: empty string");
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
        const long long n = std::stoll(text.substr(0, slash));
        const long long d = std::stoll(text.substr(slash + 1));
        return Rational(n, d);
    }
    const auto dot = text.find('.');
    if (dot == std::string::npos) {
        return Rational(std::stoll(text));
    }
    // Exact decimal: digits over a power of ten.
    const std::string head = text.substr(0, dot);
    const std::string tail = text.substr(dot + 1);
    bool negative = !head.empty() && head[0] == '-';
    Int num = 0;
    for (char c : head) {
        if (c == '-' || c == '+') continue;
        if (c < '0' || c > '9') throw std::invalid_argument("Rational: bad decimal '" + text + "'");
        num = checked_add(checked_mul(num, 10), c - '0');
    }
    Int den = 1;
    for (char c : tail) {
        if (c < '0' || c > '9') throw std::invalid_argument("Rational: bad decimal '" + text + "'");
        num = checked_add(checked_mul(num, 10), c - '0');
        den = checked_mul(den, 10);
    }
    if (negative) num = -num;
    return from_int128(num, den);
}

Rational Rational::operator-() const {
    Rational r = *this;
    r.num_ = -r.num_;
    return r;
}

Rational Rational::operator+(const Rational& o) const {
    return from_int128(checked_add(checked_mul(num_, o.den_), checked_mul(o.num_, den_)),
                       checked_mul(den_, o.den_));
}

Rational Rational::operator-(const Rational& o) const { return *this + (-o); }

Rational Rational::operator*(const Rational& o) const {
    // Cross-reduce first so intermediates stay small.
    const Int g1 = gcd128(num_, o.den_);
    const Int g2 = gcd128(o.num_, den_);
    return from_int128(checked_mul(num_ / g1, o.num_ / g2), checked_mul(den_ / g2, o.den_ / g1));
}

Rational Rational::operator/(const Rational& o) const {
    if (o.num_ == 0) throw std::invalid_argument("Rational: division by zero");
    return *this * from_int128(o.den_, o.num_);
}

bool Rational::operator<(const Rational& o) const {
    return checked_mul(num_, o.den_) < checked_mul(o.num_, den_);
}

Rational Rational::pow(int e) const {
    if (e < 0) throw std::invalid_argument("Rational::pow: negative exponent");
    Rational result(1);
    Rational base = *this;
    while (e > 0) {
        if (e & 1) result *= base;
        base = (e > 1) ? base * base : base;
        e >>= 1;
    }
    return result;
}

double Rational::to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
}

namespace {
std::string int128_to_string(Int v) {
    if (v == 0) return "0";
    const bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
    std::string digits;
    while (u > 0) {
        digits.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
        u /= 10;
    }
    if (neg) digits.push_back('-');
    return std::string(digits.rbegin(), digits.rend());
}
}  // namespace

std::string Rational::to_string() const {
    if (den_ == 1) return int128_to_string(num_);
    return int128_to_string(num_) + "/" + int128_to_string(den_);
}

Rational Rational::factorial(int n) {
    if (n < 0) throw std::invalid_argument("Rational::factorial: negative argument");
    Int f = 1;
    for (int i = 2; i <= n; ++i) f = checked_mul(f, i);
    return from_int128(f, 1);
}

}  // namespace mixcast
