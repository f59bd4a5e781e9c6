#include "seqper/relations.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "seqper/mhs.hpp"

namespace seqper {

namespace {

// Residue of one sequence entry mod its prime; nullopt when unusable.
std::optional<u64> residue_at(const SeqElement& s, std::size_t idx) {
    const auto& e = s.at_index(idx);
    if (e.exceptional) return std::nullopt;
    if (e.value.abs_prec() < 1 || e.value.valuation_lower_bound() < 0) return std::nullopt;
    return u64(e.value.residue_mod(1));
}

std::optional<std::vector<u64>> row_at(std::span<const SeqElement> seqs, std::size_t idx) {
    std::vector<u64> row(seqs.size());
    for (std::size_t j = 0; j < seqs.size(); ++j) {
        auto r = residue_at(seqs[j], idx);
        if (!r) return std::nullopt;
        row[j] = *r;
    }
    return row;
}

// Relations are rays: reduce to a coprime integer vector with positive
// leading entry and fold the denominator away.
void canonicalize(std::vector<i64>& nums, i64& den) {
    i64 g = 0;
    for (i64 v : nums) g = i64(gcd_i128(g, v));
    if (g > 1)
        for (i64& v : nums) v /= g;
    const auto first_nonzero = std::find_if(nums.begin(), nums.end(), [](i64 v) { return v != 0; });
    if (first_nonzero != nums.end() && *first_nonzero < 0)
        for (i64& v : nums) v = -v;
    den = 1;
}

} // namespace

std::vector<ReconstructedRational> reconstruct_rational(u64 x, u64 P, u64 height) {
    std::vector<ReconstructedRational> out;
    std::set<std::pair<i64, i64>> seen;
    x %= P;
    for (u64 d = 1; d <= height; ++d) {
        u64 lift = u64(mulmod(x, d, P));
        i64 num;
        if (lift <= height)
            num = i64(lift);
        else if (P - lift <= height)
            num = -i64(P - lift);
        else
            continue;
        i64 g = i64(gcd_i128(num, i64(d)));
        if (g == 0) g = 1;
        i64 n = num / g, dd = i64(d) / g;
        if (!seen.insert({n, dd}).second) continue;
        ReconstructedRational r;
        r.num = n;
        r.den = dd;
        u64 mag = u64(n < 0 ? -n : n);
        r.unique = 2 * u128(mag) * u128(dd) < P;
        out.push_back(r);
    }
    return out;
}

CongruenceReport verify_relation(std::span<const SeqElement> seqs, std::span<const i64> nums,
                                 i64 den, unsigned n, u64 cutoff) {
    if (seqs.empty() || nums.size() != seqs.size())
        throw usage_error("verify_relation: coefficient count does not match sequences");
    if (den == 0) throw usage_error("verify_relation: zero denominator");
    if (std::all_of(nums.begin(), nums.end(), [](i64 v) { return v == 0; }))
        throw usage_error("verify_relation: zero coefficient vector");
    for (std::size_t j = 1; j < seqs.size(); ++j)
        if (!seqs[j].window().same_range(seqs[0].window()))
            throw usage_error("verify_relation: sequences on different windows");

    const auto& primes = seqs[0].window().primes;
    CongruenceReport rep;
    rep.modulus_exponent = int(n);
    rep.cutoff = cutoff;
    {
        std::string lhs;
        for (std::size_t j = 0; j < seqs.size(); ++j) {
            lhs += (j ? " + " : "") + std::to_string(nums[j]) + "/" + std::to_string(den) + "*" +
                   seqs[j].label();
        }
        rep.subject = lhs + " = 0";
    }

    for (std::size_t i = 0; i < primes.size(); ++i) {
        if (primes[i] < cutoff) continue;
        bool exceptional = false;
        for (const auto& s : seqs)
            if (s.at_index(i).exceptional) {
                exceptional = true;
                break;
            }
        if (exceptional) {
            ++rep.skipped_exceptional;
            continue;
        }
        const u64 p = primes[i];
        PadicValue acc = PadicValue::zero(p, int(n));
        bool short_prec = false;
        for (std::size_t j = 0; j < seqs.size(); ++j) {
            const PadicValue& v = seqs[j].at_index(i).value;
            if (v.abs_prec() < int(n)) {
                short_prec = true;
                break;
            }
            if (nums[j] == 0) continue;
            PadicValue c = reduce_rational(nums[j], den, p, n);
            acc = padic_add(acc, padic_mul(c, v.truncate_abs(int(n))));
        }
        if (short_prec)
            throw precision_error("verify_relation: entries at p=" + std::to_string(p) +
                                  " do not carry absolute precision " + std::to_string(n));
        ++rep.checked;
        if (!acc.is_zero() && acc.shift() < int(n))
            rep.violations.push_back({p, "combination = " + acc.to_string()});
    }
    rep.holds = rep.violations.empty();
    return rep;
}

CongruenceReport verify_relation(const RelationCandidate& cand, std::span<const SeqElement> seqs,
                                 unsigned n, u64 cutoff) {
    return verify_relation(seqs, cand.coeff_num, cand.coeff_den, n, cutoff);
}

namespace {

struct CandidateVector {
    std::vector<i64> nums;
    i64 den = 1;
    bool unique = true;
};

// Nullspace candidates of the residue row at one prime, echelon-normalized:
// for each free column f, the vector e_f - (row_f / row_pivot) e_pivot.
std::vector<CandidateVector> candidates_at_prime(const std::vector<u64>& row, u64 P, u64 height,
                                                 std::vector<std::string>* dropped) {
    std::vector<CandidateVector> out;
    const std::size_t k = row.size();
    std::size_t pivot = k;
    for (std::size_t j = 0; j < k; ++j)
        if (row[j] % P != 0) {
            pivot = j;
            break;
        }
    if (pivot == k) {
        // zero row: every unit vector is a candidate
        for (std::size_t j = 0; j < k; ++j) {
            CandidateVector c;
            c.nums.assign(k, 0);
            c.nums[j] = 1;
            out.push_back(std::move(c));
        }
        return out;
    }
    const u64 inv_piv = u64(invmod(row[pivot], P));
    for (std::size_t f = 0; f < k; ++f) {
        if (f == pivot) continue;
        u64 coord = u64(mulmod(mulmod(row[f], inv_piv, P), P - 1, P)); // -row_f / row_piv
        auto recs = reconstruct_rational(coord, P, height);
        if (recs.empty() && dropped)
            dropped->push_back("column " + std::to_string(f) +
                               ": no rational of height <= " + std::to_string(height) +
                               " matches the nullspace coordinate mod " + std::to_string(P));
        for (const auto& r : recs) {
            CandidateVector c;
            c.nums.assign(k, 0);
            c.nums[f] = r.den;
            c.nums[pivot] = r.num;
            c.den = 1;
            c.unique = r.unique;
            canonicalize(c.nums, c.den);
            out.push_back(std::move(c));
        }
    }
    return out;
}

} // namespace

FindRelationsResult find_relations(std::span<const SeqElement> seqs, u64 height_bound, u64 cutoff) {
    if (seqs.empty()) throw usage_error("find_relations: no sequences");
    if (height_bound == 0) throw usage_error("find_relations: height bound must be positive");
    for (std::size_t j = 1; j < seqs.size(); ++j)
        if (!seqs[j].window().same_range(seqs[0].window()))
            throw usage_error("find_relations: sequences on different windows");

    const auto& primes = seqs[0].window().primes;
    FindRelationsResult res;

    // usable rows: all sequences resolve mod p
    std::vector<std::size_t> usable;
    for (std::size_t i = 0; i < primes.size(); ++i)
        if (row_at(seqs, i)) usable.push_back(i);
    res.usable_rows = usable.size();
    res.well_posed = usable.size() >= seqs.size() + 10;
    if (usable.empty()) throw usage_error("find_relations: no prime has all sequences usable");

    // reconstruction prime: largest usable with a nonzero row, else largest
    std::size_t chosen = usable.back();
    for (auto it = usable.rbegin(); it != usable.rend(); ++it) {
        auto row = row_at(seqs, *it);
        bool nonzero = std::any_of(row->begin(), row->end(),
                                   [&](u64 v) { return v % primes[*it] != 0; });
        if (nonzero) {
            chosen = *it;
            break;
        }
    }
    const u64 P = primes[chosen];
    res.reconstruction_prime = P;

    auto row = row_at(seqs, chosen);
    std::set<std::vector<i64>> emitted;
    for (auto& cand : candidates_at_prime(*row, P, height_bound, &res.dropped)) {
        if (emitted.count(cand.nums)) continue;
        CongruenceReport rep = verify_relation(seqs, cand.nums, cand.den, 1, cutoff);
        if (!rep.holds) continue;
        emitted.insert(cand.nums);
        RelationCandidate rc;
        for (const auto& s : seqs) rc.labels.push_back(s.label());
        rc.coeff_num = std::move(cand.nums);
        rc.coeff_den = cand.den;
        rc.reconstruction_prime = P;
        rc.unique_reconstruction = cand.unique;
        rc.verification = std::move(rep);
        res.relations.push_back(std::move(rc));
    }
    return res;
}

namespace {

// Rank over F_q of an integer matrix, q a large prime far from any entry.
unsigned rank_mod_large_prime(const std::vector<std::vector<i64>>& rows) {
    constexpr u64 q = (u64(1) << 61) - 1;
    std::vector<std::vector<u64>> m;
    m.reserve(rows.size());
    for (const auto& r : rows) {
        std::vector<u64> mr(r.size());
        for (std::size_t j = 0; j < r.size(); ++j) {
            i64 v = r[j] % i64(q);
            mr[j] = u64(v < 0 ? v + i64(q) : v);
        }
        m.push_back(std::move(mr));
    }
    unsigned rank = 0;
    std::size_t cols = m.empty() ? 0 : m[0].size();
    for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
        std::size_t piv = rank;
        while (piv < m.size() && m[piv][c] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[rank], m[piv]);
        u64 inv = u64(invmod(m[rank][c], q));
        for (std::size_t r2 = 0; r2 < m.size(); ++r2) {
            if (r2 == rank || m[r2][c] == 0) continue;
            u64 factor = u64(mulmod(m[r2][c], inv, q));
            for (std::size_t j = c; j < cols; ++j) {
                u64 sub = u64(mulmod(factor, m[rank][j], q));
                m[r2][j] = m[r2][j] >= sub ? m[r2][j] - sub : m[r2][j] + q - sub;
            }
        }
        ++rank;
    }
    return rank;
}

} // namespace

unsigned empirical_rank(std::span<const SeqElement> seqs, std::span<const u64> sample_primes,
                        u64 height_bound, u64 cutoff,
                        std::vector<std::pair<u64, unsigned>>* per_prime,
                        std::vector<RelationCandidate>* relations) {
    if (seqs.empty()) throw usage_error("empirical_rank: no sequences");
    const auto& window = seqs[0].window();
    unsigned best = 0;
    std::set<std::vector<i64>> all_verified;
    for (u64 P : sample_primes) {
        auto idx = window.index_of(P);
        if (!idx) continue;
        auto row = row_at(seqs, *idx);
        if (!row) continue;
        std::vector<std::vector<i64>> verified;
        std::set<std::vector<i64>> seen;
        for (auto& cand : candidates_at_prime(*row, P, height_bound, nullptr)) {
            if (!seen.insert(cand.nums).second) continue;
            CongruenceReport rep = verify_relation(seqs, cand.nums, cand.den, 1, cutoff);
            if (!rep.holds) continue;
            verified.push_back(cand.nums);
            if (relations && all_verified.insert(cand.nums).second) {
                RelationCandidate rc;
                for (const auto& s : seqs) rc.labels.push_back(s.label());
                rc.coeff_num = cand.nums;
                rc.coeff_den = cand.den;
                rc.reconstruction_prime = P;
                rc.unique_reconstruction = cand.unique;
                rc.verification = std::move(rep);
                relations->push_back(std::move(rc));
            }
        }
        unsigned r = unsigned(seqs.size()) - rank_mod_large_prime(verified);
        if (per_prime) per_prime->push_back({P, r});
        best = std::max(best, r);
    }
    if (per_prime && per_prime->empty())
        throw usage_error("empirical_rank: no usable sample primes");
    return best;
}

RankTable rank_by_weight(unsigned w, std::shared_ptr<const PrimeWindow> window, u64 cutoff,
                         const ExecPolicy& policy) {
    if (w == 0 || w > 7) throw usage_error("rank_by_weight: need 1 <= w <= 7");
    RankTable table;
    table.weight = w;
    table.compositions = compositions_of_weight(w);

    std::vector<SeqElement> seqs;
    seqs.reserve(table.compositions.size());
    for (const auto& s : table.compositions) seqs.push_back(finite_mzv(s, window, policy));

    const std::size_t need = table.compositions.size() + 10;
    std::vector<u64> sample;
    for (auto it = window->primes.rbegin(); it != window->primes.rend() && sample.size() < need; ++it)
        sample.push_back(*it);
    if (sample.size() < need)
        throw usage_error("rank_by_weight: window too small (need " + std::to_string(need) +
                          " sample primes, have " + std::to_string(window->size()) + ")");

    std::vector<RelationCandidate> rels;
    table.rank = empirical_rank(seqs, sample, 50, cutoff, &table.per_prime_rank, &rels);
    for (const auto& r : rels) {
        std::string lhs;
        for (std::size_t j = 0; j < r.coeff_num.size(); ++j) {
            if (r.coeff_num[j] == 0) continue;
            if (!lhs.empty()) lhs += " + ";
            lhs += std::to_string(r.coeff_num[j]) + "*" + r.labels[j];
        }
        table.relation_labels.push_back(lhs + " = 0");
    }

    // Stability probe: identical rank over two disjoint half sub-windows.
    const auto& primes = window->primes;
    const std::size_t half = primes.size() / 2;
    if (half >= std::max<std::size_t>(50, need)) {
        auto sub_rank = [&](std::size_t from, std::size_t to) {
            auto sub = std::make_shared<PrimeWindow>();
            sub->primes.assign(primes.begin() + std::ptrdiff_t(from),
                               primes.begin() + std::ptrdiff_t(to));
            sub->lo = sub->primes.front();
            sub->hi = sub->primes.back();
            std::vector<SeqElement> sub_seqs;
            for (const auto& s : table.compositions) sub_seqs.push_back(finite_mzv(s, sub, policy));
            std::vector<u64> sub_sample;
            for (auto it = sub->primes.rbegin();
                 it != sub->primes.rend() && sub_sample.size() < need; ++it)
                sub_sample.push_back(*it);
            return empirical_rank(sub_seqs, sub_sample, 50, cutoff, nullptr, nullptr);
        };
        table.stable = sub_rank(0, half) == sub_rank(half, primes.size());
    }

    table.note = "empirical rank over the window; agreement with the conjectural finite-MZV "
                 "dimension is an external expectation, not asserted";
    return table;
}

} // namespace seqper
