#include "seqper/arith.hpp"

#include <algorithm>

namespace seqper {

std::string to_string_u128(u128 v) {
    if (v == 0) return "0";
    char buf[48];
    int pos = 48;
    while (v) {
        buf[--pos] = char('0' + unsigned(v % 10));
        v /= 10;
    }
    return std::string(buf + pos, buf + 48);
}

std::string to_string_i128(i128 v) {
    if (v < 0) return "-" + to_string_u128(u128(-(v + 1)) + 1);
    return to_string_u128(u128(v));
}

u128 parse_u128(const std::string& s) {
    if (s.empty()) throw usage_error("empty integer literal");
    u128 v = 0;
    for (char c : s) {
        if (c < '0' || c > '9') throw usage_error("bad integer literal: " + s);
        unsigned d = unsigned(c - '0');
        if (v > (~u128(0) - d) / 10) throw usage_error("integer literal overflows 128 bits: " + s);
        v = v * 10 + d;
    }
    return v;
}

u128 pow_checked(u64 p, unsigned n) {
    if (p < 2) throw usage_error("pow_checked: base must be >= 2");
    u128 r = 1;
    const u128 limit = modulus_cap - 1;
    for (unsigned i = 0; i < n; ++i) {
        if (r > limit / p)
            throw precision_error("modulus p^N exceeds the supported 127-bit cap (p=" +
                                  std::to_string(p) + ", N=" + std::to_string(n) + ")");
        r *= p;
    }
    return r;
}

u128 mulmod(u128 a, u128 b, u128 m) {
    a %= m;
    b %= m;
    if (m <= u128(~u64(0)))
        return (u128(u64(a)) * u64(b)) % m;
    // m < 2^127, so sums and doublings below never wrap 128 bits.
    if (a < b) std::swap(a, b);
    u128 res = 0;
    while (b) {
        if (b & 1) {
            res += a;
            if (res >= m) res -= m;
        }
        b >>= 1;
        if (b) {
            a <<= 1;
            if (a >= m) a -= m;
        }
    }
    return res;
}

u128 powmod(u128 base, u128 exp, u128 m) {
    if (m == 1) return 0;
    u128 r = 1;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

u128 invmod(u128 a, u128 m) {
    a %= m;
    i128 t = 0, nt = 1;
    i128 r = i128(m), nr = i128(a);
    while (nr != 0) {
        i128 q = r / nr;
        i128 tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (r != 1) throw usage_error("invmod: element not invertible");
    if (t < 0) t += i128(m);
    return u128(t);
}

u128 gcd_u128(u128 a, u128 b) {
    while (b) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

i128 gcd_i128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    return i128(gcd_u128(u128(a), u128(b)));
}

unsigned vp_u128(u128 v, u64 p) {
    if (v == 0) throw usage_error("vp of zero is unbounded");
    unsigned n = 0;
    while (v % p == 0) {
        v /= p;
        ++n;
    }
    return n;
}

unsigned vp_i128(i128 v, u64 p) {
    if (v < 0) v = -v;
    return vp_u128(u128(v), p);
}

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    u64 d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // Deterministic base set for 64-bit inputs.
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u128 x = powmod(a % n, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (unsigned i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

} // namespace seqper
