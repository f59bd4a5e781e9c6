#include "seqper/bernoulli.hpp"

#include <list>
#include <mutex>
#include <optional>
#include <unordered_map>

#include "seqper/parallel.hpp"

namespace seqper {

namespace {

std::mutex residue_mutex;
std::unordered_map<u64, std::map<u64, u64>> residue_cache; // p -> (m -> B_m mod p)
std::list<u64> residue_order;
constexpr std::size_t residue_cache_cap = 4096;

std::optional<u64> cached_residue(u64 p, u64 m) {
    std::lock_guard<std::mutex> lock(residue_mutex);
    auto it = residue_cache.find(p);
    if (it == residue_cache.end()) return std::nullopt;
    auto jt = it->second.find(m);
    if (jt == it->second.end()) return std::nullopt;
    return jt->second;
}

void remember_residue(u64 p, u64 m, u64 value) {
    std::lock_guard<std::mutex> lock(residue_mutex);
    auto [it, inserted] = residue_cache.try_emplace(p);
    it->second[m] = value;
    if (inserted) {
        residue_order.push_back(p);
        if (residue_order.size() > residue_cache_cap) {
            residue_cache.erase(residue_order.front());
            residue_order.pop_front();
        }
    }
}

} // namespace

u64 bernoulli_mod_p(u64 m, u64 p) {
    if (p < 5) throw usage_error("bernoulli_mod_p: prime must be >= 5");
    if (m % 2 == 1) throw usage_error("bernoulli_mod_p: index must be even");
    if (m % (p - 1) == 0 && m > 0)
        throw bernoulli_pole("(p-1) | m: p divides the denominator of B_m (p=" + std::to_string(p) +
                             ", m=" + std::to_string(m) + ")");
    if (m == 0) return 1;
    if (m > p - 3)
        throw usage_error("bernoulli_mod_p: index " + std::to_string(m) + " above p-3; reduce first");
    if (auto hit = cached_residue(p, m)) return *hit;
    const u128 p2 = u128(p) * p;
    u128 sum = 0;
    for (u64 a = 1; a < p; ++a) {
        sum += powmod(a, m, p2);
        if (sum >= p2) sum -= p2;
    }
    // All lower Faulhaber terms carry at least p^2 for m <= p-3.
    if (sum % p != 0) throw error("bernoulli_mod_p: power sum not divisible by p; p not prime?");
    u64 value = u64((sum / p) % p);
    remember_residue(p, m, value);
    return value;
}

u64 bernoulli_mod_p_any(u64 m, u64 p) {
    if (m % 2 == 1) throw usage_error("bernoulli_mod_p_any: index must be even");
    if (m == 0) return 1;
    u64 r = m % (p - 1);
    if (r == 0)
        throw bernoulli_pole("(p-1) | m: p divides the denominator of B_m");
    if (r == m) return bernoulli_mod_p(m, p);
    if (r % 2 == 1) throw error("bernoulli_mod_p_any: reduced index parity broke; p even?");
    // Kummer: B_m / m = B_r / r mod p for m = r mod (p-1), (p-1) not | m.
    u128 br = bernoulli_mod_p(r, p);
    u128 scaled = mulmod(br, m % p, p);
    return u64(mulmod(scaled, invmod(r % p, p), p));
}

BernoulliTable bernoulli_table(u64 p) {
    BernoulliTable t;
    t.p = p;
    for (u64 m = 0; m + 3 <= p; m += 2) t.residues[m] = bernoulli_mod_p(m, p);
    return t;
}

std::pair<SeqElement, CensusRecord> bseq_census(u64 k, std::shared_ptr<const PrimeWindow> window,
                                                const ExecPolicy& policy) {
    if (k < 3 || k % 2 == 0) throw usage_error("bseq_census: k must be odd and >= 3");
    SeqElement seq = SeqElement::build(
        window, "Bseq(" + std::to_string(k) + ")",
        "bseq_census(k=" + std::to_string(k) + "): (B_{p-" + std::to_string(k) + "} mod p)_p",
        policy, [k](u64 p) {
            if (p <= k + 2) throw exceptional_prime("p <= k + 2");
            return PadicValue::from_parts(p, 0, bernoulli_mod_p(p - k, p), 1);
        });
    CensusRecord rec;
    rec.subject = "B[p-" + std::to_string(k) + "]";
    rec.window_lo = window->lo;
    rec.window_hi = window->hi;
    for (std::size_t i = 0; i < window->size(); ++i) {
        const auto& e = seq.at_index(i);
        if (e.exceptional) {
            ++rec.exceptional;
            continue;
        }
        ++rec.checked;
        if (e.value.is_zero()) rec.zero_primes.push_back(window->primes[i]);
    }
    return {std::move(seq), std::move(rec)};
}

CensusRecord poly_census(const MultiPoly& f, const PrimeWindow& window, const ExecPolicy& policy) {
    if (f.is_zero()) throw usage_error("poly_census: zero polynomial");
    const unsigned n = f.num_variables();
    CensusRecord rec;
    rec.subject = f.to_string();
    rec.window_lo = window.lo;
    rec.window_hi = window.hi;

    struct Slot {
        int state = -1; // -1 exceptional, 0 nonzero, 1 zero
    };
    std::vector<Slot> slots(window.size());
    parallel_for(window.size(), policy, [&](std::size_t i) {
        const u64 p = window.primes[i];
        if (p <= 2 * u64(n) + 3) return; // exceptional: index p-2n-1 below 2
        std::vector<u64> values(n);
        try {
            for (unsigned j = 0; j < n; ++j) values[j] = bernoulli_mod_p(p - (2 * u64(j) + 3), p);
            slots[i].state = f.eval_mod_p(values, p) == 0 ? 1 : 0;
        } catch (const exceptional_prime&) {
            slots[i].state = -1;
        }
    });
    for (std::size_t i = 0; i < slots.size(); ++i) {
        if (slots[i].state < 0) {
            ++rec.exceptional;
            continue;
        }
        ++rec.checked;
        if (slots[i].state == 1) rec.zero_primes.push_back(window.primes[i]);
    }
    return rec;
}

} // namespace seqper
