#pragma once

// Exact residue arithmetic. Products go through 128-bit intermediates, so any
// modulus below 2^62 is safe.

#include <cstdint>
#include <memory>
#include <mutex>
#include <vector>

namespace deltasums {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;

inline constexpr i64 kMaxModulus = i64{1} << 62;

// Representative of a in [0, m).
constexpr i64 mod_floor(i64 a, i64 m) {
    const i64 r = a % m;
    return r < 0 ? r + m : r;
}

constexpr i64 mul_mod(i64 a, i64 b, i64 m) {
    return mod_floor(static_cast<i64>((static_cast<i128>(a) * b) % m), m);
}

i64 pow_mod(i64 base, u64 exp, i64 m);

// Inverse in [1, m-1]. Throws NotCoprime when gcd(a, m) > 1 and
// InvalidArgument when m < 2.
i64 mod_inverse(i64 a, i64 m);

// Same as mod_inverse but accepts m == 1 (everything is 0 mod 1). Used where
// the bar notation is applied to a trivial modulus.
i64 inverse_or_zero(i64 a, i64 m);

// Deterministic Miller-Rabin; exact for every 64-bit input.
bool is_prime(i64 n);

std::vector<i64> distinct_prime_factors(i64 n);
std::vector<i64> divisors(i64 n);  // ascending
i64 euler_phi(i64 n);
int moebius(i64 n);
bool is_squarefree(i64 n);

// Order of a in (Z/m)^x; requires gcd(a, m) = 1.
i64 multiplicative_order(i64 a, i64 m);

// Smallest generator of (Z/M)^x. primitive_root(2) == 1. Throws NotPrime.
i64 primitive_root(i64 M);

// Primes p with lo <= p <= hi, ascending.
std::vector<i64> primes_in(i64 lo, i64 hi);

struct GcdSplit {
    i64 a = 0;
    i64 b = 0;
    i64 gcd = 0;
    i64 lcm = 0;
    i64 a_b = 0;  // a / (a, b)
    i64 b_a = 0;  // b / (a, b)
};

GcdSplit gcd_split(i64 a, i64 b);

// Checks  inv(a mod c)/c + inv(c mod a)/a == 1/(ac)  (mod 1) with exact
// integer arithmetic. Throws NotCoprime.
bool reciprocity_check(i64 a, i64 c);

// A prime modulus M > 3 with its smallest primitive root and a discrete-log
// table that is built on first use. Copies share the table; construction of
// the table is synchronized so a PrimeModulus can be shared across threads.
class PrimeModulus {
public:
    explicit PrimeModulus(i64 M);

    // Process-wide cached instance for M, so repeated lookups share one table.
    static PrimeModulus get(i64 M);

    i64 value() const { return impl_->M; }
    i64 generator() const { return impl_->g; }
    i64 group_order() const { return impl_->M - 1; }

    // j in [0, M-2] with g^j == n (mod M). Requires M not dividing n.
    i64 dlog(i64 n) const;

    // table[n] = dlog(n) for 1 <= n < M; table[0] is unused.
    const std::vector<std::uint32_t>& dlog_table() const;

    bool operator==(const PrimeModulus& other) const { return value() == other.value(); }

private:
    struct Impl {
        i64 M = 0;
        i64 g = 0;
        mutable std::once_flag built;
        mutable std::vector<std::uint32_t> table;
    };
    std::shared_ptr<const Impl> impl_;
};

}  // namespace deltasums
