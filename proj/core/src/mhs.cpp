#include "seqper/mhs.hpp"

#include <list>
#include <mutex>
#include <unordered_map>

namespace seqper {

namespace detail {

namespace {

struct TableKey {
    u64 p;
    unsigned prec;
    bool operator==(const TableKey&) const = default;
};

struct TableKeyHash {
    std::size_t operator()(const TableKey& k) const {
        return std::hash<u64>()(k.p * 131 + k.prec);
    }
};

std::mutex table_mutex;
std::unordered_map<TableKey, std::shared_ptr<const std::vector<u128>>, TableKeyHash> table_cache;
std::list<TableKey> table_order;
constexpr std::size_t table_cache_cap = 1024;

} // namespace

std::shared_ptr<const std::vector<u128>> inverse_table(u64 p, unsigned prec) {
    const TableKey key{p, prec};
    {
        std::lock_guard<std::mutex> lock(table_mutex);
        auto it = table_cache.find(key);
        if (it != table_cache.end()) return it->second;
    }
    const u128 pn = pow_checked(p, prec);
    auto table = std::make_shared<std::vector<u128>>(p, u128(0));
    // prefix[i] = i! as a unit product; one inversion, then walk back.
    std::vector<u128> prefix(p);
    prefix[0] = 1;
    for (u64 i = 1; i < p; ++i) prefix[i] = mulmod(prefix[i - 1], i, pn);
    u128 inv_all = invmod(prefix[p - 1], pn);
    for (u64 i = p - 1; i >= 1; --i) {
        (*table)[i] = mulmod(inv_all, prefix[i - 1], pn);
        inv_all = mulmod(inv_all, i, pn);
    }
    std::lock_guard<std::mutex> lock(table_mutex);
    auto [it, inserted] = table_cache.emplace(key, table);
    if (inserted) {
        table_order.push_back(key);
        if (table_order.size() > table_cache_cap) {
            table_cache.erase(table_order.front());
            table_order.pop_front();
        }
    }
    return it->second;
}

u128 mhs_core(const Composition& s, u64 p, unsigned prec) {
    if (prec == 0) throw usage_error("mhs_core: precision must be positive");
    if (s.empty()) return 1;
    if (p < 3) throw usage_error("mhs_core: prime must exceed 2");
    const u128 pn = pow_checked(p, prec);
    auto inv = inverse_table(p, prec);
    const unsigned k = s.depth();
    // prev[n] = the (j+1)-suffix sum over tuples bounded by n; one pass per part.
    std::vector<u128> prev(p, u128(1));
    std::vector<u128> cur(p, u128(0));
    for (unsigned j = k; j >= 1; --j) {
        const unsigned e = s.parts[j - 1];
        cur[0] = 0;
        for (u64 n = 1; n < p; ++n) {
            u128 w = (*inv)[n];
            u128 we = w;
            for (unsigned t = 1; t < e; ++t) we = mulmod(we, w, pn);
            u128 add = mulmod(we, prev[n - 1], pn);
            cur[n] = cur[n - 1] + add >= pn ? cur[n - 1] + add - pn : cur[n - 1] + add;
        }
        std::swap(prev, cur);
    }
    return prev[p - 1];
}

} // namespace detail

PadicValue mhs_direct(const Composition& s, u64 N, u64 p, unsigned prec) {
    if (prec == 0) throw usage_error("mhs_direct: precision must be positive");
    if (s.empty()) return PadicValue::one(p, prec);
    if (N >= p)
        throw exceptional_prime("mhs_direct needs every index to be a p-unit (N >= p)");
    if (N < s.depth()) return PadicValue::zero(p, int(prec));
    const u128 pn = pow_checked(p, prec);
    std::vector<u128> inv(N + 1);
    for (u64 n = 1; n <= N; ++n) inv[n] = invmod(n, pn);
    u128 total = 0;
    const unsigned k = s.depth();
    // DFS over decreasing tuples n_1 > ... > n_k with a running product;
    // n at position `level` must leave room for k - level smaller indices.
    auto rec = [&](auto&& self, unsigned level, u64 max_n, u128 acc) -> void {
        const u64 floor_n = k - level + 1;
        for (u64 n = max_n; n >= floor_n; --n) {
            u128 w = inv[n];
            u128 we = w;
            for (unsigned t = 1; t < s.parts[level - 1]; ++t) we = mulmod(we, w, pn);
            u128 prod = mulmod(acc, we, pn);
            if (level == k) {
                total += prod;
                if (total >= pn) total -= pn;
            } else {
                self(self, level + 1, n - 1, prod);
            }
        }
    };
    rec(rec, 1, N, 1);
    return PadicValue::from_parts(p, 0, total, prec);
}

namespace {

void require_headroom(const Composition& s, u64 p, unsigned prec) {
    if (p <= u64(s.weight()) + prec)
        throw exceptional_prime("p <= |s| + prec (headroom policy: p=" + std::to_string(p) +
                                ", |s|=" + std::to_string(s.weight()) + ", prec=" +
                                std::to_string(prec) + ")");
}

} // namespace

PadicValue mhs_fast(const Composition& s, u64 p, unsigned prec) {
    require_headroom(s, p, prec);
    return PadicValue::from_parts(p, 0, detail::mhs_core(s, p, prec), prec);
}

SeqElement mhs_window(const Composition& s, std::shared_ptr<const PrimeWindow> window,
                      unsigned prec, const ExecPolicy& policy) {
    std::string label = "H(" + s.to_string() + ")";
    return SeqElement::build(std::move(window), label,
                             "mhs_window(s=(" + s.to_string() + "), prec=" + std::to_string(prec) + ")",
                             policy, [s, prec](u64 p) { return mhs_fast(s, p, prec); });
}

SeqElement finite_mzv(const Composition& s, std::shared_ptr<const PrimeWindow> window,
                      const ExecPolicy& policy) {
    std::string label = "zetaA(" + s.to_string() + ")";
    return SeqElement::build(std::move(window), label,
                             "finite_mzv(s=(" + s.to_string() + "))", policy,
                             [s](u64 p) { return mhs_fast(s, p, 1); });
}

CongruenceReport reversal_check(const Composition& s, std::shared_ptr<const PrimeWindow> window,
                                u64 cutoff, const ExecPolicy& policy) {
    SeqElement lhs = finite_mzv(s, window, policy);
    SeqElement rhs = finite_mzv(s.reversed(), window, policy);
    int sign = s.weight() % 2 == 0 ? 1 : -1;
    CongruenceReport rep = congruent_mod_pn(lhs, seq_scale(rhs, Rational(sign)), 1, cutoff);
    rep.subject = "zetaA(" + s.to_string() + ") = (-1)^" + std::to_string(s.weight()) +
                  " zetaA(" + s.reversed().to_string() + ")";
    return rep;
}

} // namespace seqper
