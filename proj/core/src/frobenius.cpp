#include "seqper/frobenius.hpp"

#include <algorithm>
#include <mutex>

#include "seqper/parallel.hpp"

namespace seqper {

FrobeniusMatrixSeq::FrobeniusMatrixSeq(unsigned dim, std::vector<int> hodge_levels,
                                       std::shared_ptr<const PrimeWindow> window,
                                       std::vector<Entry> entries, std::string label)
    : dim_(dim), hodge_(std::move(hodge_levels)), window_(std::move(window)),
      entries_(std::move(entries)), label_(std::move(label)) {
    if (dim_ == 0) throw usage_error("FrobeniusMatrixSeq: dimension must be positive");
    if (hodge_.size() != dim_) throw usage_error("FrobeniusMatrixSeq: one Hodge level per column");
    if (!window_) throw usage_error("FrobeniusMatrixSeq: missing window");
    if (entries_.size() != window_->size())
        throw usage_error("FrobeniusMatrixSeq: one entry per window prime");
    for (const auto& e : entries_)
        if (!e.exceptional && e.mat.size() != std::size_t(dim_) * dim_)
            throw usage_error("FrobeniusMatrixSeq: matrix with wrong dimension");
}

FrobeniusMatrixSeq FrobeniusMatrixSeq::with_hodge_levels(std::vector<int> levels) const {
    if (levels.size() != dim_) throw usage_error("with_hodge_levels: one level per column");
    FrobeniusMatrixSeq c = *this;
    c.hodge_ = std::move(levels);
    c.label_ += " (relabeled Hodge levels)";
    return c;
}

namespace {

PadicValue det_rec(const std::vector<PadicValue>& m, std::vector<unsigned> cols, unsigned row,
                   unsigned dim, u64 p) {
    if (cols.size() == 1) return m[row * dim + cols[0]];
    PadicValue acc = PadicValue::zero(p, 64);
    for (std::size_t i = 0; i < cols.size(); ++i) {
        std::vector<unsigned> rest;
        rest.reserve(cols.size() - 1);
        for (std::size_t j = 0; j < cols.size(); ++j)
            if (j != i) rest.push_back(cols[j]);
        PadicValue minor = det_rec(m, rest, row + 1, dim, p);
        PadicValue term = padic_mul(m[row * dim + cols[i]], minor);
        acc = i % 2 == 0 ? padic_add(acc, term) : padic_sub(acc, term);
    }
    return acc;
}

} // namespace

SeqElement FrobeniusMatrixSeq::det() const {
    std::vector<SeqElement::Entry> out(entries_.size());
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i].exceptional) {
            out[i] = SeqElement::Entry::exceptional_mark(entries_[i].reason);
            continue;
        }
        std::vector<unsigned> cols(dim_);
        for (unsigned c = 0; c < dim_; ++c) cols[c] = c;
        out[i] = SeqElement::Entry::of(det_rec(entries_[i].mat, cols, 0, dim_, window_->primes[i]));
    }
    return SeqElement(window_, std::move(out), "det(" + label_ + ")", "determinant of " + label_);
}

FrobeniusMatrixSeq kummer_frobenius(const Rational& r, std::shared_ptr<const PrimeWindow> window,
                                    unsigned rel_prec, const ExecPolicy& policy) {
    if (r.is_zero() || (r.num == r.den) || (r.num == -r.den))
        throw usage_error("kummer_frobenius: base must differ from 0 and +-1");
    const unsigned dim = 2;
    std::vector<FrobeniusMatrixSeq::Entry> entries(window->size());
    const auto& primes = window->primes;
    parallel_for(primes.size(), policy, [&](std::size_t i) {
        const u64 p = primes[i];
        auto& e = entries[i];
        if (p == 2) {
            e = {true, {}, "p = 2 (log needs an odd prime)"};
            return;
        }
        if (u128(r.num < 0 ? -r.num : r.num) % p == 0 || u128(r.den) % p == 0) {
            e = {true, {}, "p divides the base"};
            return;
        }
        PadicValue base = reduce_rational(r, p, rel_prec);
        u128 pn = pow_checked(p, rel_prec);
        PadicValue unit = PadicValue::from_parts(p, 0, powmod(base.residue_mod(rel_prec), p - 1, pn),
                                                 rel_prec);
        PadicValue logv = padic_log_unit(unit, rel_prec);
        e.exceptional = false;
        e.mat = {PadicValue::one(p, rel_prec), logv, PadicValue::zero(p, int(rel_prec)),
                 PadicValue::from_parts(p, 1, 1, rel_prec >= 2 ? rel_prec - 1 : 1)};
    });
    return FrobeniusMatrixSeq(dim, {0, 1}, std::move(window), std::move(entries),
                              "kummer(" + r.to_string() + ")");
}

FrobeniusMatrixSeq projective_line_h2(std::shared_ptr<const PrimeWindow> window, unsigned rel_prec) {
    std::vector<FrobeniusMatrixSeq::Entry> entries(window->size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
        entries[i].exceptional = false;
        entries[i].mat = {PadicValue::from_parts(window->primes[i], 1, 1, rel_prec)};
    }
    return FrobeniusMatrixSeq(1, {1}, std::move(window), std::move(entries), "P1-H2");
}

FrobeniusMatrixSeq tensor_product(const FrobeniusMatrixSeq& a, const FrobeniusMatrixSeq& b) {
    if (!a.window().same_range(b.window()))
        throw usage_error("tensor_product: matrices on different windows");
    const unsigned da = a.dim(), db = b.dim(), d = da * db;
    std::vector<int> hodge(d);
    for (unsigned i = 0; i < da; ++i)
        for (unsigned j = 0; j < db; ++j) hodge[i * db + j] = a.hodge_levels()[i] + b.hodge_levels()[j];
    std::vector<FrobeniusMatrixSeq::Entry> entries(a.entries().size());
    for (std::size_t k = 0; k < entries.size(); ++k) {
        const auto& ea = a.entries()[k];
        const auto& eb = b.entries()[k];
        if (ea.exceptional || eb.exceptional) {
            entries[k] = {true, {}, ea.exceptional ? ea.reason : eb.reason};
            continue;
        }
        auto& m = entries[k].mat;
        m.resize(std::size_t(d) * d);
        for (unsigned i1 = 0; i1 < da; ++i1)
            for (unsigned i2 = 0; i2 < db; ++i2)
                for (unsigned j1 = 0; j1 < da; ++j1)
                    for (unsigned j2 = 0; j2 < db; ++j2)
                        m[(i1 * db + i2) * d + (j1 * db + j2)] =
                            padic_mul(ea.mat[i1 * da + j1], eb.mat[i2 * db + j2]);
    }
    return FrobeniusMatrixSeq(d, std::move(hodge), a.window_ptr(), std::move(entries),
                              "(" + a.label() + " (x) " + b.label() + ")");
}

FrobeniusMatrixSeq tate_twist(const FrobeniusMatrixSeq& a, int n) {
    std::vector<int> hodge = a.hodge_levels();
    for (int& h : hodge) h -= n;
    std::vector<FrobeniusMatrixSeq::Entry> entries = a.entries();
    for (auto& e : entries) {
        if (e.exceptional) continue;
        for (auto& v : e.mat) v = v.with_shift_added(-n);
    }
    return FrobeniusMatrixSeq(a.dim(), std::move(hodge), a.window_ptr(), std::move(entries),
                              a.label() + "(" + std::to_string(n) + ")");
}

RatMatrix RatMatrix::parse(const std::string& s) {
    RatMatrix m;
    std::size_t pos = 0;
    std::vector<std::vector<Rational>> rows;
    while (pos <= s.size()) {
        std::size_t semi = s.find(';', pos);
        std::string row = s.substr(pos, semi == std::string::npos ? std::string::npos : semi - pos);
        std::vector<Rational> vals;
        std::size_t rp = 0;
        while (rp <= row.size() && !row.empty()) {
            std::size_t comma = row.find(',', rp);
            vals.push_back(Rational::parse(
                row.substr(rp, comma == std::string::npos ? std::string::npos : comma - rp)));
            if (comma == std::string::npos) break;
            rp = comma + 1;
        }
        if (!vals.empty()) rows.push_back(std::move(vals));
        if (semi == std::string::npos) break;
        pos = semi + 1;
    }
    if (rows.empty()) throw usage_error("matrix parse: empty input");
    m.rows = unsigned(rows.size());
    m.cols = unsigned(rows[0].size());
    for (const auto& r : rows) {
        if (r.size() != m.cols) throw usage_error("matrix parse: ragged rows");
        m.data.insert(m.data.end(), r.begin(), r.end());
    }
    return m;
}

CongruenceReport hom_check(const RatMatrix& A, const FrobeniusMatrixSeq& F,
                           const FrobeniusMatrixSeq& G, u64 cutoff) {
    if (!F.window().same_range(G.window()))
        throw usage_error("hom_check: matrices on different windows");
    if (A.cols != F.dim() || A.rows != G.dim())
        throw usage_error("hom_check: intertwiner shape must be dim(G) x dim(F)");
    CongruenceReport rep;
    rep.modulus_exponent = -1;
    rep.cutoff = cutoff;
    rep.subject = "A*" + F.label() + " = " + G.label() + "*A";
    const auto& primes = F.window().primes;
    for (std::size_t k = 0; k < primes.size(); ++k) {
        const u64 p = primes[k];
        if (p < cutoff) continue;
        const auto& ef = F.entries()[k];
        const auto& eg = G.entries()[k];
        if (ef.exceptional || eg.exceptional) {
            ++rep.skipped_exceptional;
            continue;
        }
        ++rep.checked;
        bool bad = false;
        for (unsigned i = 0; i < G.dim() && !bad; ++i) {
            for (unsigned j = 0; j < F.dim() && !bad; ++j) {
                // (A F)_{ij} vs (G A)_{ij}; rational entries adopt the
                // matrix entry's own precision so they never bind.
                PadicValue lhs = PadicValue::zero(p, 64);
                for (unsigned t = 0; t < F.dim(); ++t) {
                    const PadicValue& m = ef.mat[t * F.dim() + j];
                    lhs = padic_add(lhs, padic_mul(reduce_rational(A.at(i, t), p,
                                                                   std::max(1u, m.rel_prec())),
                                                   m));
                }
                PadicValue rhs = PadicValue::zero(p, 64);
                for (unsigned t = 0; t < G.dim(); ++t) {
                    const PadicValue& m = eg.mat[i * G.dim() + t];
                    rhs = padic_add(rhs, padic_mul(m, reduce_rational(A.at(t, j), p,
                                                                      std::max(1u, m.rel_prec()))));
                }
                if (!same_at_shared_precision(lhs, rhs)) bad = true;
            }
        }
        if (bad) rep.violations.push_back({p, "intertwining fails at available precision"});
    }
    rep.holds = rep.violations.empty();
    return rep;
}

HodgeCheckResult hodge_divisibility_check(const FrobeniusMatrixSeq& F, u64 cutoff) {
    HodgeCheckResult res;
    res.subject = F.label();
    const auto& primes = F.window().primes;
    for (std::size_t k = 0; k < primes.size(); ++k) {
        const u64 p = primes[k];
        if (p < cutoff) continue;
        const auto& e = F.entries()[k];
        if (e.exceptional) {
            ++res.skipped_exceptional;
            continue;
        }
        ++res.checked;
        for (unsigned col = 0; col < F.dim(); ++col) {
            const int need = F.hodge_levels()[col];
            for (unsigned row = 0; row < F.dim(); ++row) {
                const PadicValue& v = e.mat[row * F.dim() + col];
                if (v.valuation_lower_bound() >= need) continue;
                std::string why = v.valuation_is_exact()
                                      ? "valuation " + std::to_string(v.valuation_lower_bound())
                                      : "only known >= " + std::to_string(v.valuation_lower_bound());
                res.violations.push_back({p, "entry (" + std::to_string(row) + "," +
                                                 std::to_string(col) + ") needs valuation >= " +
                                                 std::to_string(need) + ", " + why});
            }
        }
    }
    res.holds = res.violations.empty();
    return res;
}

std::vector<u64> wieferich_search(const Rational& r, const PrimeWindow& window,
                                  const ExecPolicy& policy) {
    if (r.is_zero() || r.num == r.den || r.num == -r.den)
        throw usage_error("wieferich_search: base must differ from 0 and +-1");
    std::vector<char> hit(window.size(), 0);
    parallel_for(window.size(), policy, [&](std::size_t i) {
        const u64 p = window.primes[i];
        if (u128(r.num < 0 ? -r.num : r.num) % p == 0 || u128(r.den) % p == 0) return;
        const u128 p2 = u128(p) * p;
        i128 n = r.num % i128(p2);
        if (n < 0) n += i128(p2);
        u128 base = mulmod(u128(n), invmod(u128(r.den) % p2, p2), p2);
        hit[i] = powmod(base, p - 1, p2) == 1 ? 1 : 0;
    });
    std::vector<u64> found;
    for (std::size_t i = 0; i < hit.size(); ++i)
        if (hit[i]) found.push_back(window.primes[i]);
    return found;
}

EllipticResult elliptic_ap(i64 a4, i64 a6, std::shared_ptr<const PrimeWindow> window,
                           unsigned rel_prec, const ExecPolicy& policy) {
    const i128 disc = -16 * (4 * i128(a4) * a4 * a4 + 27 * i128(a6) * a6);
    if (disc == 0) throw usage_error("elliptic_ap: singular curve (4*a4^3 + 27*a6^2 = 0)");

    struct Slot {
        bool good = false;
        i64 ap = 0;
        std::string reason;
    };
    std::vector<Slot> slots(window->size());
    const auto& primes = window->primes;
    parallel_for(primes.size(), policy, [&](std::size_t i) {
        const u64 p = primes[i];
        auto& slot = slots[i];
        if (p < 5) {
            slot.reason = "p < 5 (short Weierstrass model)";
            return;
        }
        if (vp_i128(disc, p) > 0) {
            slot.reason = "bad reduction (p divides the discriminant)";
            return;
        }
        // #E(F_p) = p + 1 + sum_x chi(x^3 + a4 x + a6) via a squares table.
        std::vector<char> is_square(p, 0);
        for (u64 x = 0; x < p; ++x) is_square[u64((u128(x) * x) % p)] = 1;
        i64 a4r = i64(((a4 % i64(p)) + i64(p)) % i64(p));
        i64 a6r = i64(((a6 % i64(p)) + i64(p)) % i64(p));
        i64 chi_sum = 0;
        for (u64 x = 0; x < p; ++x) {
            u64 fx = u64((u128(x) * x % p * x + u128(a4r) * x + u128(a6r)) % p);
            if (fx == 0) continue;
            chi_sum += is_square[fx] ? 1 : -1;
        }
        slot.good = true;
        slot.ap = -chi_sum; // a_p = p + 1 - #E = -sum chi
        const i128 bound = 4 * i128(p);
        if (i128(slot.ap) * slot.ap > bound)
            throw error("elliptic_ap: Hasse bound violated at p=" + std::to_string(p) +
                        " (a_p=" + std::to_string(slot.ap) + "); point count is broken");
    });

    std::string curve = "y^2 = x^3 + " + std::to_string(a4) + "x + " + std::to_string(a6);
    std::vector<SeqElement::Entry> ap_entries(window->size());
    std::vector<FrobeniusMatrixSeq::Entry> frob_entries(window->size());
    EllipticResult res;
    for (std::size_t i = 0; i < slots.size(); ++i) {
        const u64 p = primes[i];
        if (!slots[i].good) {
            ap_entries[i] = SeqElement::Entry::exceptional_mark(slots[i].reason);
            frob_entries[i] = {true, {}, slots[i].reason};
            continue;
        }
        const i64 ap = slots[i].ap;
        ap_entries[i] = SeqElement::Entry::of(PadicValue::from_integer(ap, p, rel_prec));
        PadicValue minus_p =
            padic_neg(PadicValue::from_parts(p, 1, 1, rel_prec >= 2 ? rel_prec - 1 : 1));
        frob_entries[i].exceptional = false;
        frob_entries[i].mat = {PadicValue::from_integer(ap, p, rel_prec), minus_p,
                               PadicValue::one(p, rel_prec), PadicValue::zero(p, int(rel_prec))};
        res.char_polys.push_back({p, ap});
    }
    res.ap = SeqElement(window, std::move(ap_entries), "ap(" + std::to_string(a4) + "," +
                        std::to_string(a6) + ")", "traces of " + curve);
    res.frobenius = FrobeniusMatrixSeq(2, {0, 1}, window, std::move(frob_entries),
                                       "frobenius(" + curve + ")");
    res.hasse_ok = true; // violations are hard errors above
    return res;
}

namespace {

std::mutex delta_mutex;
std::shared_ptr<const std::vector<i128>> delta_cache;

i128 checked_add_i128(i128 a, i128 b) {
    i128 r;
    if (__builtin_add_overflow(a, b, &r)) throw error("delta expansion overflows 128 bits");
    return r;
}

} // namespace

std::shared_ptr<const std::vector<i128>> delta_q_expansion(std::size_t n) {
    {
        std::lock_guard<std::mutex> lock(delta_mutex);
        if (delta_cache && delta_cache->size() >= n) return delta_cache;
    }
    // eta = prod (1-q^m) truncated at degree n-1, sparse by the pentagonal
    // number theorem; multiply the accumulator by it 24 times.
    const std::size_t deg = n; // coefficients of q^0 .. q^(n-1) of eta^24
    std::vector<std::pair<std::size_t, int>> sparse;
    for (i64 k = 1;; ++k) {
        i64 g1 = k * (3 * k - 1) / 2;
        i64 g2 = k * (3 * k + 1) / 2;
        if (g1 >= i64(deg) && g2 >= i64(deg)) break;
        int sign = k % 2 == 1 ? -1 : 1;
        if (g1 < i64(deg)) sparse.push_back({std::size_t(g1), sign});
        if (g2 < i64(deg)) sparse.push_back({std::size_t(g2), sign});
    }
    std::vector<i128> acc(deg, 0);
    acc[0] = 1;
    std::vector<i128> next(deg);
    for (int pass = 0; pass < 24; ++pass) {
        std::fill(next.begin(), next.end(), i128(0));
        for (std::size_t i = 0; i < deg; ++i) {
            if (acc[i] == 0) continue;
            next[i] = checked_add_i128(next[i], acc[i]);
            for (const auto& [g, sign] : sparse) {
                if (i + g >= deg) break; // sparse is ascending in g
                next[i + g] = checked_add_i128(next[i + g], sign > 0 ? acc[i] : -acc[i]);
            }
        }
        std::swap(acc, next);
    }
    // tau(m) is the coefficient of q^m in q * eta^24
    auto tau = std::make_shared<std::vector<i128>>(n + 1, i128(0));
    for (std::size_t m = 1; m <= n; ++m) (*tau)[m] = acc[m - 1];
    std::lock_guard<std::mutex> lock(delta_mutex);
    if (!delta_cache || delta_cache->size() < tau->size()) delta_cache = tau;
    return delta_cache;
}

SeqElement tau_window(std::shared_ptr<const PrimeWindow> window, unsigned rel_prec) {
    if (window->hi > 100'000)
        throw usage_error("tau_window: window cap is 10^5 (q-expansion length)");
    auto tau = delta_q_expansion(window->hi);
    return SeqElement::build(window, "tau", "tau(p) from the weight-12 discriminant form", {},
                             [tau, rel_prec](u64 p) {
                                 return PadicValue::from_integer((*tau)[p], p, rel_prec);
                             });
}

SeqElement projective_counts(unsigned n, std::shared_ptr<const PrimeWindow> window,
                             unsigned rel_prec) {
    if (n > 10) throw usage_error("projective_counts: dimension cap is 10");
    return SeqElement::build(window, "pcount(" + std::to_string(n) + ")",
                             "1 + p + ... + p^" + std::to_string(n), {},
                             [n, rel_prec](u64 p) {
                                 u128 pn = pow_checked(p, rel_prec);
                                 u128 acc = 0, pw = 1;
                                 for (unsigned i = 0; i <= n; ++i) {
                                     acc = (acc + pw) % pn;
                                     pw = mulmod(pw, p, pn);
                                 }
                                 return PadicValue::from_parts(p, 0, acc, rel_prec);
                             });
}

} // namespace seqper
