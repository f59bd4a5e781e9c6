#include "seqper/padic.hpp"

#include <algorithm>

namespace seqper {

PadicValue PadicValue::from_parts(u64 p, int shift, u128 mantissa, unsigned rel_prec) {
    if (p < 2) throw usage_error("PadicValue: prime must be >= 2");
    if (rel_prec == 0) throw usage_error("PadicValue: rel_prec must be positive");
    u128 pn = pow_checked(p, rel_prec);
    mantissa %= pn;
    PadicValue v;
    v.p_ = p;
    if (mantissa == 0) {
        v.shift_ = shift + int(rel_prec) - 1;
        v.mantissa_ = 0;
        v.rel_prec_ = 1;
        return v;
    }
    unsigned fold = vp_u128(mantissa, p);
    if (fold >= rel_prec) throw usage_error("PadicValue: canonicalization underflow");
    v.shift_ = shift + int(fold);
    v.rel_prec_ = rel_prec - fold;
    v.mantissa_ = mantissa / pow_checked(p, fold);
    // mantissa < p^rel_prec / p^fold holds after the division, no re-reduce.
    return v;
}

PadicValue PadicValue::zero(u64 p, int abs_prec) {
    if (p < 2) throw usage_error("PadicValue: prime must be >= 2");
    PadicValue v;
    v.p_ = p;
    v.shift_ = abs_prec - 1;
    v.mantissa_ = 0;
    v.rel_prec_ = 1;
    return v;
}

PadicValue PadicValue::one(u64 p, unsigned rel_prec) { return from_parts(p, 0, 1, rel_prec); }

PadicValue PadicValue::from_integer(i128 value, u64 p, unsigned rel_prec) {
    return reduce_rational(value, 1, p, rel_prec);
}

u128 PadicValue::residue_mod(unsigned k) const {
    if (abs_prec() < int(k))
        throw precision_error("residue mod p^" + std::to_string(k) + " requested at absolute precision " +
                              std::to_string(abs_prec()));
    if (is_zero()) return 0;
    if (shift_ < 0) throw usage_error("residue_mod on a value with negative valuation");
    if (shift_ >= int(k)) return 0;
    u128 pk = pow_checked(p_, k);
    return mulmod(mantissa_, pow_checked(p_, unsigned(shift_)), pk);
}

PadicValue PadicValue::truncate_abs(int new_abs_prec) const {
    if (new_abs_prec > abs_prec())
        throw precision_error("truncate_abs cannot raise precision (" + std::to_string(abs_prec()) +
                              " -> " + std::to_string(new_abs_prec) + ")");
    if (new_abs_prec == abs_prec()) return *this;
    if (is_zero() || shift_ >= new_abs_prec) return zero(p_, new_abs_prec);
    unsigned n = unsigned(new_abs_prec - shift_);
    return from_parts(p_, shift_, mantissa_ % pow_checked(p_, n), n);
}

PadicValue PadicValue::with_shift_added(int delta) const {
    PadicValue v = *this;
    v.shift_ += delta;
    return v;
}

std::string PadicValue::to_string() const {
    if (is_zero()) return "O(" + std::to_string(p_) + "^" + std::to_string(abs_prec()) + ")";
    std::string s = to_string_u128(mantissa_);
    if (shift_ != 0) s = std::to_string(p_) + "^" + std::to_string(shift_) + "*" + s;
    return s + " + O(" + std::to_string(p_) + "^" + std::to_string(abs_prec()) + ")";
}

namespace {

void require_same_prime(const PadicValue& a, const PadicValue& b) {
    if (a.prime() != b.prime())
        throw usage_error("p-adic operands with mismatched primes " + std::to_string(a.prime()) +
                          " and " + std::to_string(b.prime()));
}

} // namespace

PadicValue padic_add(const PadicValue& a, const PadicValue& b) {
    require_same_prime(a, b);
    const u64 p = a.prime();
    int abs = std::min(a.abs_prec(), b.abs_prec());
    if (a.is_zero() && b.is_zero()) return PadicValue::zero(p, abs);
    if (a.is_zero()) return b.truncate_abs(abs);
    if (b.is_zero()) return a.truncate_abs(abs);
    int base = std::min(a.shift(), b.shift());
    if (abs <= base) return PadicValue::zero(p, abs);
    unsigned len = unsigned(abs - base);
    u128 pn = pow_checked(p, len);
    u128 ma = mulmod(a.mantissa(), pow_checked(p, unsigned(a.shift() - base)), pn);
    u128 mb = mulmod(b.mantissa(), pow_checked(p, unsigned(b.shift() - base)), pn);
    u128 m = ma + mb >= pn ? ma + mb - pn : ma + mb;
    return PadicValue::from_parts(p, base, m, len);
}

PadicValue padic_neg(const PadicValue& a) {
    if (a.is_zero()) return a;
    u128 pn = pow_checked(a.prime(), a.rel_prec());
    return PadicValue::from_parts(a.prime(), a.shift(), pn - a.mantissa(), a.rel_prec());
}

PadicValue padic_mul(const PadicValue& a, const PadicValue& b) {
    require_same_prime(a, b);
    const u64 p = a.prime();
    if (a.is_zero() || b.is_zero())
        return PadicValue::zero(p, a.valuation_lower_bound() + b.valuation_lower_bound());
    unsigned n = std::min(a.rel_prec(), b.rel_prec());
    u128 pn = pow_checked(p, n);
    u128 m = mulmod(a.mantissa() % pn, b.mantissa() % pn, pn);
    PadicValue v = PadicValue::from_parts(p, a.shift() + b.shift(), m, n);
    return v;
}

PadicValue padic_inv(const PadicValue& a) {
    if (a.is_zero()) throw usage_error("inverse of a p-adic zero");
    u128 pn = pow_checked(a.prime(), a.rel_prec());
    return PadicValue::from_parts(a.prime(), -a.shift(), invmod(a.mantissa(), pn), a.rel_prec());
}

PadicValue padic_sub(const PadicValue& a, const PadicValue& b) { return padic_add(a, padic_neg(b)); }

PadicValue padic_div(const PadicValue& a, const PadicValue& b) { return padic_mul(a, padic_inv(b)); }

PadicValue padic_pow(const PadicValue& a, unsigned e) {
    if (e == 0) return PadicValue::one(a.prime(), std::max(1u, a.rel_prec()));
    PadicValue acc = a;
    for (unsigned i = 1; i < e; ++i) acc = padic_mul(acc, a);
    return acc;
}

bool same_at_shared_precision(const PadicValue& a, const PadicValue& b) {
    return padic_sub(a, b).is_zero();
}

PadicValue reduce_rational(i128 num, i128 den, u64 p, unsigned rel_prec) {
    if (den == 0) throw usage_error("reduce_rational: zero denominator");
    if (p < 2) throw usage_error("reduce_rational: prime must be >= 2");
    if (rel_prec == 0) throw usage_error("reduce_rational: rel_prec must be positive");
    if (num == 0) return PadicValue::zero(p, int(rel_prec));
    bool neg = (num < 0) != (den < 0);
    u128 n = num < 0 ? u128(-(num + 1)) + 1 : u128(num);
    u128 d = den < 0 ? u128(-(den + 1)) + 1 : u128(den);
    unsigned vn = vp_u128(n, p);
    unsigned vd = vp_u128(d, p);
    n /= pow_checked(p, vn);
    d /= pow_checked(p, vd);
    u128 pn = pow_checked(p, rel_prec);
    u128 m = mulmod(n % pn, invmod(d % pn, pn), pn);
    if (neg && m != 0) m = pn - m;
    return PadicValue::from_parts(p, int(vn) - int(vd), m, rel_prec);
}

PadicValue reduce_rational(const Rational& r, u64 p, unsigned rel_prec) {
    return reduce_rational(r.num, r.den, p, rel_prec);
}

PadicValue fermat_quotient(const Rational& r, u64 p, unsigned rel_prec) {
    if (r.is_zero()) throw exceptional_prime("Fermat quotient of zero");
    if (u128(r.num < 0 ? -r.num : r.num) % p == 0 || u128(r.den) % p == 0)
        throw exceptional_prime("base not a p-unit");
    if (r.num == r.den || r.num == -r.den) return PadicValue::zero(p, int(rel_prec));
    // r^(p-1) = 1 + p*q with q the quotient; working absolute precision grows
    // until the quotient's relative precision reaches rel_prec.
    unsigned work = rel_prec;
    for (;;) {
        u128 mod = pow_checked(p, work + 1);
        u128 base = reduce_rational(r, p, work + 1).residue_mod(work + 1);
        u128 power = powmod(base, p - 1, mod);
        u128 diff = power >= 1 ? power - 1 : mod - 1 + power;
        if (diff % p != 0) throw error("fermat_quotient: Fermat's little theorem violated; p not prime?");
        u128 q = diff / p; // known mod p^work
        PadicValue v = PadicValue::from_parts(p, 0, q, work);
        if (v.is_zero() || v.rel_prec() >= rel_prec) {
            if (v.is_zero() && work < rel_prec + 24) {
                // valuation higher than current window: widen and retry
                work += rel_prec;
                continue;
            }
            return v;
        }
        work = unsigned(int(rel_prec) + v.shift());
    }
}

PadicValue padic_log_unit(const PadicValue& u, unsigned n_abs) {
    const u64 p = u.prime();
    if (p == 2) throw usage_error("padic_log_unit requires an odd prime");
    if (n_abs == 0) throw usage_error("padic_log_unit: target precision must be positive");
    if (u.abs_prec() < int(n_abs))
        throw precision_error("padic_log_unit: operand carries absolute precision " +
                              std::to_string(u.abs_prec()) + " < " + std::to_string(n_abs));
    PadicValue x = padic_sub(u.truncate_abs(int(n_abs)), PadicValue::one(p, n_abs));
    if (x.is_zero()) return PadicValue::zero(p, int(n_abs));
    if (x.shift() < 1) throw usage_error("padic_log_unit: operand is not = 1 mod p");

    auto ilog_p = [p](u64 t) {
        unsigned k = 0;
        u64 q = t;
        while (q >= p) {
            q /= p;
            ++k;
        }
        return k;
    };
    // smallest T with T - floor(log_p T) >= n_abs; all later terms have
    // valuation >= n (term valuation is n - v_p(n) >= n - floor(log_p n))
    u64 trunc = 1;
    while (trunc - ilog_p(trunc) < n_abs) ++trunc;

    unsigned guard = ilog_p(trunc) + 1;
    u128 work_mod = pow_checked(p, n_abs + guard);
    u128 out_mod = pow_checked(p, n_abs);
    u128 xr = mulmod(x.mantissa(), pow_checked(p, unsigned(x.shift())), work_mod);
    u128 x_pow = 1;
    u128 acc = 0;
    for (u64 n = 1; n <= trunc; ++n) {
        x_pow = mulmod(x_pow, xr, work_mod);
        u64 unit = n;
        unsigned v = 0;
        while (unit % p == 0) {
            unit /= p;
            ++v;
        }
        // x_pow has valuation >= n > v, so the division is exact.
        u128 term = (x_pow / pow_checked(p, v)) % out_mod;
        term = mulmod(term, invmod(unit % out_mod, out_mod), out_mod);
        if (n % 2 == 0 && term != 0) term = out_mod - term;
        acc += term;
        if (acc >= out_mod) acc -= out_mod;
    }
    return PadicValue::from_parts(p, 0, acc, n_abs);
}

namespace {

// Carry count of k + (n-k) in base p (Kummer): the p-adic valuation of C(n,k).
unsigned binomial_valuation(u128 n, u128 k, u64 p) {
    u128 nk = n - k;
    unsigned v = 0;
    for (u128 q = p; q <= n; q *= p) {
        v += unsigned(n / q - k / q - nk / q);
        if (q > n / p) break;
    }
    return v;
}

} // namespace

PadicValue binomial_padic_int(i128 n, i128 k, u64 p, unsigned rel_prec) {
    if (n < 0 || k < 0) throw usage_error("binomial_padic: negative argument");
    if (k > n) throw usage_error("binomial_padic: k exceeds n");
    if (k == 0 || k == n) return PadicValue::one(p, rel_prec);
    if (k > n - k) k = n - k;
    unsigned val = binomial_valuation(u128(n), u128(k), p);
    u128 pn = pow_checked(p, rel_prec);
    u128 num = 1, den = 1;
    for (i128 i = 1; i <= k; ++i) {
        u128 f = u128(n - k + i);
        while (f % p == 0) f /= p;
        num = mulmod(num, f % pn, pn);
        u128 g = u128(i);
        while (g % p == 0) g /= p;
        den = mulmod(den, g % pn, pn);
    }
    u128 unit = mulmod(num, invmod(den, pn), pn);
    return PadicValue::from_parts(p, int(val), unit, rel_prec);
}

PadicValue binomial_padic(const IntPoly& n_poly, const IntPoly& k_poly, u64 p, unsigned rel_prec) {
    return binomial_padic_int(n_poly.eval(p), k_poly.eval(p), p, rel_prec);
}

} // namespace seqper
