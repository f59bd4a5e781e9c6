#include "seqper/seq.hpp"

#include <algorithm>

namespace seqper {

SeqElement::SeqElement(std::shared_ptr<const PrimeWindow> window, std::vector<Entry> entries,
                       std::string label, std::string provenance)
    : window_(std::move(window)), entries_(std::move(entries)), label_(std::move(label)),
      provenance_(std::move(provenance)) {
    if (!window_) throw usage_error("SeqElement without a window");
    if (entries_.size() != window_->size())
        throw usage_error("SeqElement entry count does not match window");
}

SeqElement SeqElement::constant(const Rational& value, std::shared_ptr<const PrimeWindow> window,
                                unsigned rel_prec) {
    std::string text = value.to_string();
    return build(std::move(window), "const(" + text + ")", "constant " + text, {},
                 [&value, rel_prec](u64 p) { return reduce_rational(value, p, rel_prec); });
}

SeqElement SeqElement::relabeled(std::string label, std::string provenance) const {
    SeqElement c = *this;
    c.label_ = std::move(label);
    c.provenance_ = std::move(provenance);
    return c;
}

std::size_t SeqElement::exceptional_count() const {
    return std::size_t(std::count_if(entries_.begin(), entries_.end(),
                                     [](const Entry& e) { return e.exceptional; }));
}

namespace {

void require_same_window(const SeqElement& a, const SeqElement& b) {
    if (!a.window().same_range(b.window()))
        throw usage_error("sequence windows differ: [" + std::to_string(a.window().lo) + "," +
                          std::to_string(a.window().hi) + "] vs [" + std::to_string(b.window().lo) +
                          "," + std::to_string(b.window().hi) + "]");
}

template <typename Fn>
SeqElement pointwise(const SeqElement& a, const SeqElement& b, const std::string& label,
                     const std::string& provenance, Fn&& combine) {
    require_same_window(a, b);
    std::vector<SeqElement::Entry> out(a.entries().size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const auto& ea = a.at_index(i);
        const auto& eb = b.at_index(i);
        if (ea.exceptional)
            out[i] = ea;
        else if (eb.exceptional)
            out[i] = eb;
        else
            out[i] = SeqElement::Entry::of(combine(ea.value, eb.value));
    }
    return SeqElement(a.window_ptr(), std::move(out), label, provenance);
}

} // namespace

SeqElement seq_add(const SeqElement& a, const SeqElement& b) {
    return pointwise(a, b, "(" + a.label() + " + " + b.label() + ")",
                     "add(" + a.provenance() + ", " + b.provenance() + ")", padic_add);
}

SeqElement seq_mul(const SeqElement& a, const SeqElement& b) {
    return pointwise(a, b, "(" + a.label() + " * " + b.label() + ")",
                     "mul(" + a.provenance() + ", " + b.provenance() + ")", padic_mul);
}

SeqElement seq_scale(const SeqElement& a, const Rational& scalar) {
    std::vector<SeqElement::Entry> out(a.entries().size());
    const auto& primes = a.window().primes;
    for (std::size_t i = 0; i < out.size(); ++i) {
        const auto& e = a.at_index(i);
        if (e.exceptional) {
            out[i] = e;
            continue;
        }
        if (scalar.is_zero()) {
            out[i] = SeqElement::Entry::of(PadicValue::zero(primes[i], e.value.abs_prec()));
            continue;
        }
        // p | denominator shifts the valuation; it does not mark the prime.
        PadicValue s = reduce_rational(scalar, primes[i], std::max(1u, e.value.rel_prec()));
        out[i] = SeqElement::Entry::of(padic_mul(e.value, s));
    }
    return SeqElement(a.window_ptr(), std::move(out),
                      "(" + scalar.to_string() + " * " + a.label() + ")",
                      "scale(" + scalar.to_string() + ", " + a.provenance() + ")");
}

SeqElement seq_shift_p_power(const SeqElement& a, int k) {
    std::vector<SeqElement::Entry> out(a.entries().size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const auto& e = a.at_index(i);
        out[i] = e.exceptional ? e : SeqElement::Entry::of(e.value.with_shift_added(k));
    }
    return SeqElement(a.window_ptr(), std::move(out),
                      "(p^" + std::to_string(k) + " * " + a.label() + ")",
                      "shift_by_p_power(" + std::to_string(k) + ", " + a.provenance() + ")");
}

ValuationProfile valuation_profile(const SeqElement& a) {
    ValuationProfile prof;
    prof.entries.resize(a.entries().size());
    const auto& primes = a.window().primes;
    for (std::size_t i = 0; i < prof.entries.size(); ++i) {
        const auto& e = a.at_index(i);
        auto& v = prof.entries[i];
        v.p = primes[i];
        if (e.exceptional) {
            v.exceptional = true;
            v.reason = e.reason;
            continue;
        }
        v.value = e.value.valuation_lower_bound();
        v.exact = e.value.valuation_is_exact();
    }
    return prof;
}

FilLevel empirical_fil_level(const SeqElement& a, u64 cutoff) {
    bool found = false;
    FilLevel fl;
    const auto& primes = a.window().primes;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        if (primes[i] < cutoff) continue;
        const auto& e = a.at_index(i);
        if (e.exceptional) continue;
        int v = e.value.valuation_lower_bound();
        if (!found || v < fl.level ||
            (v == fl.level && !fl.witness_exact && e.value.valuation_is_exact())) {
            fl.level = v;
            fl.witness_prime = primes[i];
            fl.witness_exact = e.value.valuation_is_exact();
            found = true;
        }
    }
    if (!found)
        throw usage_error("empirical_fil_level: no usable primes at or above cutoff " +
                          std::to_string(cutoff));
    return fl;
}

namespace {

CongruenceReport compare_windows(const SeqElement& a, const SeqElement& b, int n, u64 cutoff) {
    require_same_window(a, b);
    CongruenceReport rep;
    rep.modulus_exponent = n;
    rep.cutoff = cutoff;
    rep.subject = a.label() + " vs " + b.label();
    const auto& primes = a.window().primes;

    if (n >= 0) {
        // Hard precondition: every usable entry resolves mod p^n. A verdict
        // is never synthesized from insufficient data.
        for (std::size_t i = 0; i < primes.size(); ++i) {
            if (primes[i] < cutoff) continue;
            const auto& ea = a.at_index(i);
            const auto& eb = b.at_index(i);
            if (ea.exceptional || eb.exceptional) continue;
            int shared = std::min(ea.value.abs_prec(), eb.value.abs_prec());
            if (shared < n)
                throw precision_error("congruence mod p^" + std::to_string(n) + " at p=" +
                                      std::to_string(primes[i]) + " with absolute precision " +
                                      std::to_string(shared));
        }
    }

    for (std::size_t i = 0; i < primes.size(); ++i) {
        if (primes[i] < cutoff) continue;
        const auto& ea = a.at_index(i);
        const auto& eb = b.at_index(i);
        if (ea.exceptional || eb.exceptional) {
            ++rep.skipped_exceptional;
            continue;
        }
        ++rep.checked;
        PadicValue diff = padic_sub(ea.value, eb.value);
        if (diff.is_zero()) continue;
        if (n >= 0 && diff.shift() >= n) continue;
        rep.violations.push_back(
            {primes[i], "difference " + diff.to_string() + " (valuation " +
                            std::to_string(diff.shift()) + ")"});
    }
    rep.holds = rep.violations.empty();
    return rep;
}

} // namespace

CongruenceReport eq_in_R(const SeqElement& a, const SeqElement& b, u64 cutoff) {
    return compare_windows(a, b, -1, cutoff);
}

CongruenceReport congruent_mod_pn(const SeqElement& a, const SeqElement& b, unsigned n, u64 cutoff) {
    if (n == 0) throw usage_error("congruent_mod_pn: modulus exponent must be positive");
    return compare_windows(a, b, int(n), cutoff);
}

SeqElement project_to_A(const SeqElement& a) {
    const auto& primes = a.window().primes;
    std::vector<SeqElement::Entry> out(a.entries().size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const auto& e = a.at_index(i);
        if (e.exceptional) {
            out[i] = e;
            continue;
        }
        if (e.value.valuation_lower_bound() < 0)
            throw not_in_fil0("project_to_A: valuation " +
                              std::to_string(e.value.valuation_lower_bound()) + " at p=" +
                              std::to_string(primes[i]));
        if (e.value.abs_prec() < 1)
            throw precision_error("project_to_A: entry at p=" + std::to_string(primes[i]) +
                                  " does not resolve mod p");
        out[i] = SeqElement::Entry::of(
            PadicValue::from_parts(primes[i], 0, e.value.residue_mod(1), 1));
    }
    return SeqElement(a.window_ptr(), std::move(out), a.label() + " mod p",
                      "project_to_A(" + a.provenance() + ")");
}

} // namespace seqper
