#include "seqper/zeta.hpp"

#include <algorithm>

namespace seqper {

PadicValue PadicZetaTable::zeta(unsigned w) const {
    if (w < 2 || w >= M) return PadicValue::zero(p, int(M));
    return entries[w];
}

namespace {

u128 binom_u128(u64 n, u64 k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    u128 r = 1;
    for (u64 i = 1; i <= k; ++i) {
        r = r * (n - k + i);
        r /= i; // exact: prefix of the multiplicative formula
    }
    return r;
}

} // namespace

PadicZetaTable zeta_table(u64 p, unsigned M) {
    if (M < 4) throw usage_error("zeta_table: need M >= 4");
    if (p <= M) throw usage_error("zeta_table: need p > M (got p=" + std::to_string(p) +
                                  ", M=" + std::to_string(M) + ")");
    PadicZetaTable t;
    t.p = p;
    t.M = M;
    t.entries.assign(M, PadicValue::zero(p, int(M)));
    // Odd weights, descending. At odd s = w-2 the depth-1 series reads
    //   p^s H(s) = -sum_{l>=2 even} C(s+l-1, l) zeta(s+l)  (even zetas = 0),
    // so zeta(w) = -(p^(w-2) H(w-2) + higher odd terms) / C(w-1, 2).
    unsigned top = M - 1;
    if (top % 2 == 0) --top;
    for (unsigned w = top; w >= 3; w -= 2) {
        const unsigned s = w - 2;
        u128 h = detail::mhs_core(Composition{{s}}, p, M);
        PadicValue acc = PadicValue::from_parts(p, int(s), h, M).truncate_abs(int(M));
        for (unsigned wp = w + 2; wp <= M - 1; wp += 2) {
            PadicValue c = PadicValue::from_integer(i128(binom_u128(wp - 1, wp - s)), p, M);
            acc = padic_add(acc, padic_mul(c, t.entries[wp]));
        }
        PadicValue lead = PadicValue::from_integer(-i128(binom_u128(w - 1, 2)), p, M);
        t.entries[w] = padic_div(acc, lead).truncate_abs(int(M));
        if (t.entries[w].valuation_lower_bound() < int(w))
            throw error("zeta_table: entry of weight " + std::to_string(w) + " has valuation " +
                        std::to_string(t.entries[w].valuation_lower_bound()) + " at p=" +
                        std::to_string(p) + "; table construction is broken");
    }
    return t;
}

CheckResult washington_check(unsigned r, unsigned s, u64 p, unsigned M) {
    return washington_check(r, s, zeta_table(p, M));
}

CheckResult washington_check(unsigned r, unsigned s, const PadicZetaTable& table) {
    if (r == 0 || s == 0) throw usage_error("washington_check: r and s must be positive");
    const u64 p = table.p;
    const unsigned M = table.M;
    CheckResult res;
    res.subject = "washington(r=" + std::to_string(r) + ", s=" + std::to_string(s) +
                  ", p=" + std::to_string(p) + ", M=" + std::to_string(M) + ")";

    // Left side, summed directly: p^s * sum_{n <= p r, p !| n} n^{-s} mod p^M.
    const u128 pm = pow_checked(p, M);
    u128 lhs_sum = 0;
    for (u64 n = 1; n <= u64(p) * r; ++n) {
        if (n % p == 0) continue;
        u128 inv = invmod(n % pm, pm);
        u128 t = inv;
        for (unsigned e = 1; e < s; ++e) t = mulmod(t, inv, pm);
        lhs_sum += t;
        if (lhs_sum >= pm) lhs_sum -= pm;
    }
    PadicValue lhs = PadicValue::from_parts(p, int(s), lhs_sum, M).truncate_abs(int(M));

    // Right side from the zeta table. Writing n = ip + u and expanding
    // (ip + u)^{-s} binomially gives
    //   lhs = sum_m (-1)^m C(s+m-1, m) P_m(r) p^(s+m) H_{p-1}(s+m),
    // with P_m(r) = 0^m + 1^m + ... + (r-1)^m, and each harmonic factor
    // expands in zeta values through the depth-1 series. Weights >= M drop.
    std::vector<i128> coeff(M, 0);
    for (unsigned m = 0; s + m <= M - 1; ++m) {
        const unsigned sp = s + m;
        i128 power_sum = m == 0 ? 1 : 0; // 0^0 = 1
        for (unsigned i = 1; i < r; ++i) {
            i128 ip = 1;
            for (unsigned e = 0; e < m; ++e) ip *= i;
            power_sum += ip;
        }
        if (power_sum == 0) continue;
        i128 base = i128(binom_u128(s + m - 1, m)) * power_sum;
        if (m % 2 == 1) base = -base;
        for (unsigned w = sp; w <= M - 1; ++w) {
            i128 series = (w == sp ? 1 : 0);
            i128 tail = i128(binom_u128(w - 1, w - sp));
            series += sp % 2 == 0 ? tail : -tail;
            coeff[w] += base * series;
        }
    }
    PadicValue rhs = PadicValue::zero(p, int(M));
    for (unsigned w = 2; w <= M - 1; ++w) {
        if (coeff[w] == 0) continue;
        rhs = padic_add(rhs, padic_mul(PadicValue::from_integer(coeff[w], p, M), table.zeta(w)));
    }
    rhs = rhs.truncate_abs(int(M));

    res.holds = same_at_shared_precision(lhs, rhs);
    if (!res.holds)
        res.detail = "lhs = " + lhs.to_string() + ", rhs = " + rhs.to_string();
    return res;
}

CheckResult jarossay_depth1_check(unsigned s, u64 p, unsigned M) {
    return jarossay_depth1_check(s, zeta_table(p, M));
}

CheckResult jarossay_depth1_check(unsigned s, const PadicZetaTable& table) {
    const u64 p = table.p;
    const unsigned M = table.M;
    if (s == 0 || s >= M) throw usage_error("jarossay_depth1_check: need 0 < s < M");
    CheckResult res;
    res.subject = "jarossay_depth1(s=" + std::to_string(s) + ", p=" + std::to_string(p) +
                  ", M=" + std::to_string(M) + ")";

    u128 h = detail::mhs_core(Composition{{s}}, p, M);
    PadicValue lhs = PadicValue::from_parts(p, int(s), h, M).truncate_abs(int(M));

    PadicValue rhs = table.zeta(s);
    for (unsigned l = 0; s + l <= M - 1; ++l) {
        u128 c = binom_u128(s + l - 1, l);
        PadicValue term = padic_mul(PadicValue::from_integer(i128(c), p, M), table.zeta(s + l));
        rhs = s % 2 == 0 ? padic_add(rhs, term) : padic_sub(rhs, term);
    }
    rhs = rhs.truncate_abs(int(M));

    res.holds = same_at_shared_precision(lhs, rhs);
    if (!res.holds)
        res.detail = "lhs = " + lhs.to_string() + ", rhs = " + rhs.to_string();
    return res;
}

SeqElement sym_image(const Composition& s, std::shared_ptr<const PrimeWindow> window,
                     const ExecPolicy& policy) {
    return finite_mzv(s, std::move(window), policy)
        .relabeled("zetaSym(" + s.to_string() + ")",
                   "sym_image(s=(" + s.to_string() +
                       ")): mod-p image of the weight-normalized symmetrized element");
}

CongruenceReport sym_reversal_check(const Composition& s, std::shared_ptr<const PrimeWindow> window,
                                    u64 cutoff, const ExecPolicy& policy) {
    SeqElement lhs = sym_image(s, window, policy);
    SeqElement rhs = sym_image(s.reversed(), window, policy);
    int sign = s.weight() % 2 == 0 ? 1 : -1;
    CongruenceReport rep = congruent_mod_pn(lhs, seq_scale(rhs, Rational(sign)), 1, cutoff);
    rep.subject = "zetaSym(" + s.to_string() + ") = (-1)^" + std::to_string(s.weight()) +
                  " zetaSym(" + s.reversed().to_string() + ")";
    return rep;
}

void AhatSeries::validate() const {
    for (std::size_t i = 1; i < terms.size(); ++i)
        if (terms[i].b < terms[i - 1].b)
            throw usage_error("AhatSeries: stored p-power exponents must be nondecreasing");
}

SeqElement eval_ahat_series(const AhatSeries& series, std::shared_ptr<const PrimeWindow> window,
                            unsigned M, const ExecPolicy& policy) {
    series.validate();
    std::vector<AhatTerm> kept;
    for (const auto& t : series.terms) {
        if (t.coeff.is_zero()) continue;
        if (t.b >= int(M)) continue; // harmonic factor is p-integral: below p^M
        if (int(M) - t.b > 32)
            throw usage_error("eval_ahat_series: term needs working precision beyond 32 digits");
        kept.push_back(t);
    }
    std::string label = "ahat[" + std::to_string(series.terms.size()) + " terms]@" + std::to_string(M);
    return SeqElement::build(
        std::move(window), label, "eval_ahat_series(M=" + std::to_string(M) + ")", policy,
        [kept, M](u64 p) {
            PadicValue acc = PadicValue::zero(p, int(M));
            for (const auto& t : kept) {
                unsigned prec = unsigned(int(M) - t.b);
                if (p <= u64(t.s.weight()) + prec)
                    throw exceptional_prime("p <= |s| + prec for a series term");
                u128 h = detail::mhs_core(t.s, p, prec);
                PadicValue hv = PadicValue::from_parts(p, t.b, h, prec);
                acc = padic_add(acc, padic_mul(reduce_rational(t.coeff, p, prec), hv));
            }
            return acc.truncate_abs(int(M));
        });
}

} // namespace seqper
