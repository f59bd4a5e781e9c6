#pragma once

#include <cstdint>
#include <string>

#include "seqper/errors.hpp"

namespace seqper {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

// All fixed-precision residue arithmetic works modulo p^N < 2^127. Larger
// moduli are rejected with precision_error (see README, precision model).
inline constexpr u128 modulus_cap = u128(1) << 127;

std::string to_string_u128(u128 v);
std::string to_string_i128(i128 v);
u128 parse_u128(const std::string& s);

// p^n, throwing precision_error once the power would reach 2^127.
u128 pow_checked(u64 p, unsigned n);

u128 mulmod(u128 a, u128 b, u128 m);
u128 powmod(u128 base, u128 exp, u128 m);

// Inverse mod m; usage_error if gcd(a, m) != 1.
u128 invmod(u128 a, u128 m);

u128 gcd_u128(u128 a, u128 b);
i128 gcd_i128(i128 a, i128 b);

// Exact p-adic valuation of a nonzero argument.
unsigned vp_u128(u128 v, u64 p);
unsigned vp_i128(i128 v, u64 p);

// Miller-Rabin, deterministic for 64-bit inputs.
bool is_prime_u64(u64 n);

} // namespace seqper
