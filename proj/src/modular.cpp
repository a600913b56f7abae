#include "deltasums/modular.hpp"

#include <fmt/format.h>

#include <array>
#include <map>
#include <numeric>
#include <utility>

#include "deltasums/error.hpp"

namespace deltasums {

i64 pow_mod(i64 base, u64 exp, i64 m) {
    if (m == 1) return 0;
    i64 result = 1;
    base = mod_floor(base, m);
    while (exp > 0) {
        if (exp & 1U) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1U;
    }
    return result;
}

namespace {

// Extended Euclid on (a mod m, m); returns (g, x) with a*x == g (mod m).
std::pair<i64, i64> ext_gcd(i64 a, i64 m) {
    i64 old_r = mod_floor(a, m), r = m;
    i64 old_s = 1, s = 0;
    while (r != 0) {
        const i64 q = old_r / r;
        old_r = std::exchange(r, old_r - q * r);
        old_s = std::exchange(s, old_s - q * s);
    }
    return {old_r, old_s};
}

}  // namespace

i64 mod_inverse(i64 a, i64 m) {
    if (m < 2) throw InvalidArgument(fmt::format("mod_inverse: modulus {} < 2", m));
    const auto [g, x] = ext_gcd(a, m);
    if (g != 1) throw NotCoprime(fmt::format("mod_inverse: gcd({}, {}) = {}", a, m, g));
    return mod_floor(x, m);
}

i64 inverse_or_zero(i64 a, i64 m) {
    if (m == 1) return 0;
    return mod_inverse(a, m);
}

bool is_prime(i64 n) {
    if (n < 2) return false;
    static constexpr std::array<i64, 12> witnesses{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (i64 p : witnesses) {
        if (n % p == 0) return n == p;
    }
    u64 d = static_cast<u64>(n - 1);
    int s = 0;
    while ((d & 1U) == 0) {
        d >>= 1U;
        ++s;
    }
    for (i64 a : witnesses) {
        i64 x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<i64> distinct_prime_factors(i64 n) {
    if (n < 1) throw InvalidArgument(fmt::format("distinct_prime_factors: {} < 1", n));
    std::vector<i64> out;
    for (i64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

std::vector<i64> divisors(i64 n) {
    if (n < 1) throw InvalidArgument(fmt::format("divisors: {} < 1", n));
    std::vector<i64> small, large;
    for (i64 d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            small.push_back(d);
            if (d != n / d) large.push_back(n / d);
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

i64 euler_phi(i64 n) {
    i64 result = n;
    for (i64 p : distinct_prime_factors(n)) result = result / p * (p - 1);
    return result;
}

int moebius(i64 n) {
    if (n < 1) throw InvalidArgument(fmt::format("moebius: {} < 1", n));
    int sign = 1;
    for (i64 p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            sign = -sign;
        }
    }
    if (n > 1) sign = -sign;
    return sign;
}

bool is_squarefree(i64 n) { return moebius(n) != 0; }

i64 multiplicative_order(i64 a, i64 m) {
    if (std::gcd(a, m) != 1) throw NotCoprime(fmt::format("multiplicative_order: gcd({}, {}) > 1", a, m));
    if (m == 1) return 1;
    const i64 phi = euler_phi(m);
    i64 order = phi;
    for (i64 q : distinct_prime_factors(phi)) {
        while (order % q == 0 && pow_mod(a, static_cast<u64>(order / q), m) == 1) order /= q;
    }
    return order;
}

i64 primitive_root(i64 M) {
    if (!is_prime(M)) throw NotPrime(fmt::format("primitive_root: {} is not prime", M));
    if (M == 2) return 1;
    const auto factors = distinct_prime_factors(M - 1);
    for (i64 g = 2; g < M; ++g) {
        bool generates = true;
        for (i64 q : factors) {
            if (pow_mod(g, static_cast<u64>((M - 1) / q), M) == 1) {
                generates = false;
                break;
            }
        }
        if (generates) return g;
    }
    throw NotPrime(fmt::format("primitive_root: no generator mod {}", M));
}

std::vector<i64> primes_in(i64 lo, i64 hi) {
    std::vector<i64> out;
    if (hi < 2 || hi < lo) return out;
    lo = std::max<i64>(lo, 2);
    std::vector<bool> composite(static_cast<std::size_t>(hi + 1), false);
    for (i64 p = 2; p * p <= hi; ++p) {
        if (composite[static_cast<std::size_t>(p)]) continue;
        for (i64 q = p * p; q <= hi; q += p) composite[static_cast<std::size_t>(q)] = true;
    }
    for (i64 n = lo; n <= hi; ++n) {
        if (!composite[static_cast<std::size_t>(n)]) out.push_back(n);
    }
    return out;
}

GcdSplit gcd_split(i64 a, i64 b) {
    if (a < 1 || b < 1) throw InvalidArgument(fmt::format("gcd_split: ({}, {}) must be positive", a, b));
    GcdSplit s;
    s.a = a;
    s.b = b;
    s.gcd = std::gcd(a, b);
    s.lcm = a / s.gcd * b;
    s.a_b = a / s.gcd;
    s.b_a = b / s.gcd;
    return s;
}

bool reciprocity_check(i64 a, i64 c) {
    if (a < 1 || c < 1) throw InvalidArgument(fmt::format("reciprocity_check: ({}, {}) must be positive", a, c));
    if (std::gcd(a, c) != 1) throw NotCoprime(fmt::format("reciprocity_check: gcd({}, {}) > 1", a, c));
    const i128 a_bar = inverse_or_zero(a, c);  // a * a_bar == 1 (mod c)
    const i128 c_bar = inverse_or_zero(c, a);  // c * c_bar == 1 (mod a)
    // a_bar/c + c_bar/a - 1/(ac) = (a*a_bar + c*c_bar - 1) / (ac)
    const i128 numerator = a_bar * a + c_bar * c - 1;
    return numerator % (static_cast<i128>(a) * c) == 0;
}

PrimeModulus::PrimeModulus(i64 M) {
    if (M <= 3 || M >= kMaxModulus) {
        throw InvalidArgument(fmt::format("PrimeModulus: {} outside (3, 2^62)", M));
    }
    if (!is_prime(M)) throw NotPrime(fmt::format("PrimeModulus: {} is not prime", M));
    auto impl = std::make_shared<Impl>();
    impl->M = M;
    impl->g = primitive_root(M);
    impl_ = std::move(impl);
}

PrimeModulus PrimeModulus::get(i64 M) {
    static std::mutex mutex;
    static std::map<i64, PrimeModulus> cache;
    std::lock_guard lock(mutex);
    if (auto it = cache.find(M); it != cache.end()) return it->second;
    PrimeModulus created(M);
    cache.emplace(M, created);
    return created;
}

const std::vector<std::uint32_t>& PrimeModulus::dlog_table() const {
    std::call_once(impl_->built, [impl = impl_.get()] {
        if (impl->M > (i64{1} << 32)) {
            throw InvalidArgument(fmt::format("PrimeModulus: dlog table for {} exceeds 32-bit range", impl->M));
        }
        impl->table.assign(static_cast<std::size_t>(impl->M), 0);
        i64 x = 1;
        for (i64 j = 0; j < impl->M - 1; ++j) {
            impl->table[static_cast<std::size_t>(x)] = static_cast<std::uint32_t>(j);
            x = mul_mod(x, impl->g, impl->M);
        }
    });
    return impl_->table;
}

i64 PrimeModulus::dlog(i64 n) const {
    const i64 r = mod_floor(n, value());
    if (r == 0) throw InvalidArgument(fmt::format("dlog: {} is divisible by {}", n, value()));
    return dlog_table()[static_cast<std::size_t>(r)];
}

}  // namespace deltasums
