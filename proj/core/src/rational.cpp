#include "seqper/rational.hpp"

namespace seqper {

namespace {

i128 checked_mul(i128 a, i128 b) {
    i128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw usage_error("rational arithmetic overflows 128 bits");
    return r;
}

i128 checked_add(i128 a, i128 b) {
    i128 r;
    if (__builtin_add_overflow(a, b, &r)) throw usage_error("rational arithmetic overflows 128 bits");
    return r;
}

} // namespace

Rational::Rational(i128 n, i128 d) {
    if (d == 0) throw usage_error("rational with zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    i128 g = gcd_i128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    num = n;
    den = d;
}

Rational Rational::operator-() const {
    Rational r;
    r.num = -num;
    r.den = den;
    return r;
}

Rational Rational::operator+(const Rational& o) const {
    return Rational(checked_add(checked_mul(num, o.den), checked_mul(o.num, den)),
                    checked_mul(den, o.den));
}

Rational Rational::operator-(const Rational& o) const { return *this + (-o); }

Rational Rational::operator*(const Rational& o) const {
    return Rational(checked_mul(num, o.num), checked_mul(den, o.den));
}

Rational Rational::inverse() const {
    if (num == 0) throw usage_error("inverse of zero rational");
    return Rational(den, num);
}

std::string Rational::to_string() const {
    if (den == 1) return to_string_i128(num);
    return to_string_i128(num) + "/" + to_string_i128(den);
}

Rational Rational::parse(const std::string& s) {
    auto slash = s.find('/');
    auto parse_int = [](const std::string& t) -> i128 {
        std::string u = t;
        bool neg = false;
        if (!u.empty() && (u[0] == '-' || u[0] == '+')) {
            neg = u[0] == '-';
            u = u.substr(1);
        }
        u128 mag = parse_u128(u);
        if (mag > u128(1) << 126) throw usage_error("rational literal too large: " + t);
        return neg ? -i128(mag) : i128(mag);
    };
    if (slash == std::string::npos) return Rational(parse_int(s));
    return Rational(parse_int(s.substr(0, slash)), parse_int(s.substr(slash + 1)));
}

} // namespace seqper
