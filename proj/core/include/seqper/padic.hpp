#pragma once

#include <string>

#include "seqper/arith.hpp"
#include "seqper/polynomial.hpp"
#include "seqper/rational.hpp"

namespace seqper {

/*
 * One p-adic number known to finite precision:
 *
 *     x = p^shift * mantissa  +  O(p^(shift + rel_prec))
 *
 * Canonical form keeps 0 <= mantissa < p^rel_prec with mantissa = 0 or
 * p not dividing mantissa (any p-factor of the mantissa is folded into the
 * shift, shrinking rel_prec so the absolute precision shift + rel_prec is
 * preserved). A zero mantissa means "zero at this absolute precision": the
 * valuation is only bounded below by abs_prec().
 *
 * Addition tracks absolute precision (min of the operands'), multiplication
 * tracks relative precision (min of the operands'). Values are immutable.
 */
class PadicValue {
public:
    PadicValue() = default;

    // Canonicalizes: reduces mantissa mod p^rel_prec and folds its p-part
    // into the shift, keeping the absolute precision shift + rel_prec.
    static PadicValue from_parts(u64 p, int shift, u128 mantissa, unsigned rel_prec);
    static PadicValue zero(u64 p, int abs_prec);
    static PadicValue one(u64 p, unsigned rel_prec);
    static PadicValue from_integer(i128 value, u64 p, unsigned rel_prec);

    u64 prime() const { return p_; }
    int shift() const { return shift_; }
    u128 mantissa() const { return mantissa_; }
    unsigned rel_prec() const { return rel_prec_; }
    int abs_prec() const { return shift_ + int(rel_prec_); }

    bool is_zero() const { return mantissa_ == 0; }
    // Exact valuation when the mantissa is nonzero, else the lower bound.
    int valuation_lower_bound() const { return is_zero() ? abs_prec() : shift_; }
    bool valuation_is_exact() const { return !is_zero(); }

    // Residue mod p^k for shift >= 0 values with abs_prec >= k.
    u128 residue_mod(unsigned k) const;

    PadicValue truncate_abs(int new_abs_prec) const;
    PadicValue with_shift_added(int delta) const; // multiply by p^delta

    std::string to_string() const;

    friend PadicValue padic_add(const PadicValue& a, const PadicValue& b);
    friend PadicValue padic_neg(const PadicValue& a);
    friend PadicValue padic_mul(const PadicValue& a, const PadicValue& b);
    friend PadicValue padic_inv(const PadicValue& a);

private:
    u64 p_ = 0;
    int shift_ = 0;
    u128 mantissa_ = 0;
    unsigned rel_prec_ = 0;
};

PadicValue padic_add(const PadicValue& a, const PadicValue& b);
PadicValue padic_neg(const PadicValue& a);
PadicValue padic_mul(const PadicValue& a, const PadicValue& b);
PadicValue padic_inv(const PadicValue& a);
PadicValue padic_sub(const PadicValue& a, const PadicValue& b);
PadicValue padic_div(const PadicValue& a, const PadicValue& b);
PadicValue padic_pow(const PadicValue& a, unsigned e);

// True when a and b have the same residue at their shared absolute precision.
bool same_at_shared_precision(const PadicValue& a, const PadicValue& b);

// num/den as a canonical p-adic value at relative precision rel_prec.
PadicValue reduce_rational(i128 num, i128 den, u64 p, unsigned rel_prec);
PadicValue reduce_rational(const Rational& r, u64 p, unsigned rel_prec);

// (r^(p-1) - 1)/p to relative precision rel_prec. r must be a p-unit;
// otherwise exceptional_prime. r = +-1 gives exact zero.
PadicValue fermat_quotient(const Rational& r, u64 p, unsigned rel_prec);

// Truncated log series sum_{n>=1} (-1)^(n+1) (u-1)^n / n, correct to
// absolute precision n_abs. Requires u = 1 mod p and p odd. The truncation
// length is the smallest T with T - floor(log_p T) >= n_abs.
PadicValue padic_log_unit(const PadicValue& u, unsigned n_abs);

// Binomial coefficient C(n_poly(p), k_poly(p)) as a p-adic value: valuation
// from the base-p carry count, unit part from p-stripped factor products.
PadicValue binomial_padic(const IntPoly& n_poly, const IntPoly& k_poly, u64 p, unsigned rel_prec);
PadicValue binomial_padic_int(i128 n, i128 k, u64 p, unsigned rel_prec);

} // namespace seqper
