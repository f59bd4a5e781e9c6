#pragma once

#include <map>
#include <string>
#include <vector>

#include "seqper/rational.hpp"

namespace seqper {

// Integer polynomial in one variable x, dense ascending coefficients.
// Used for binomial-coefficient sequences like C(2p, p) = C(2x, x)|_{x=p}.
struct IntPoly {
    std::vector<i64> coeffs; // coeffs[i] * x^i

    i128 eval(u64 x) const;
    bool is_zero() const;
    std::string to_string() const;
    // Accepts e.g. "2x", "x-1", "3*x^2 + 1", "x".
    static IntPoly parse(const std::string& s);
};

// Rational-coefficient polynomial in variables x1..xn (exponent-vector keyed).
struct MultiPoly {
    // exponent vector (padded with zeros) -> coefficient, coefficients nonzero
    std::map<std::vector<unsigned>, Rational> terms;

    unsigned num_variables() const;
    bool is_zero() const { return terms.empty(); }
    void add_term(std::vector<unsigned> exps, const Rational& c);
    // Evaluate mod p given values[i] = (x_{i+1} mod p); throws
    // exceptional_prime if p divides a coefficient denominator.
    u64 eval_mod_p(const std::vector<u64>& values, u64 p) const;
    std::string to_string() const;
    // Grammar: sum of terms, term = factor ('*' factor)*, factor = rational
    // | x<k> ['^' exp] | '(' poly ')'.  E.g. "x1*x2 - 3/2*x1^2 + 1".
    static MultiPoly parse(const std::string& s);
};

} // namespace seqper
