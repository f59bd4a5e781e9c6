#pragma once

#include <string>

#include "seqper/arith.hpp"

namespace seqper {

// Exact rational on 128-bit integers. Holds the small coefficients this
// library deals in (scalars, polynomial coefficients, bases); overflow in
// an intermediate throws rather than wrapping.
struct Rational {
    i128 num = 0;
    i128 den = 1; // > 0, gcd(num, den) = 1

    Rational() = default;
    Rational(i128 n, i128 d = 1);

    bool is_zero() const { return num == 0; }
    bool is_integer() const { return den == 1; }

    Rational operator-() const;
    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational inverse() const;
    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }

    std::string to_string() const;
    // "3", "-3/2"
    static Rational parse(const std::string& s);
};

} // namespace seqper
