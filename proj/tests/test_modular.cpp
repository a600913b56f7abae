#include "doctest.h"

#include <numeric>
#include <random>

#include "deltasums/error.hpp"
#include "deltasums/modular.hpp"
#include "deltasums/numeric.hpp"

using namespace deltasums;

namespace {

bool trial_division_prime(i64 n) {
    if (n < 2) return false;
    for (i64 d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("mod_inverse agrees with exhaustive search") {
    for (i64 m = 2; m <= 60; ++m) {
        for (i64 a = -70; a <= 70; ++a) {
            if (std::gcd(a, m) != 1) {
                CHECK_THROWS_AS(mod_inverse(a, m), NotCoprime);
                continue;
            }
            i64 found = -1;
            for (i64 x = 1; x < m; ++x) {
                if (mod_floor(a * x, m) == 1) found = x;
            }
            CHECK(mod_inverse(a, m) == found);
        }
    }
    CHECK(mod_inverse(3, 7) == 5);
    CHECK_THROWS_AS(mod_inverse(2, 1), InvalidArgument);
    CHECK(inverse_or_zero(5, 1) == 0);
}

TEST_CASE("mod_inverse near the 62-bit limit") {
    const i64 p = 4611686018427387847;  // largest prime below 2^62
    REQUIRE(is_prime(p));
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        const i64 a = static_cast<i64>(rng() % static_cast<u64>(p - 1)) + 1;
        CHECK(mul_mod(a, mod_inverse(a, p), p) == 1);
    }
}

TEST_CASE("is_prime matches trial division") {
    for (i64 n = -5; n <= 20000; ++n) CHECK(is_prime(n) == trial_division_prime(n));
    CHECK(is_prime(1000000007));
    CHECK_FALSE(is_prime(3215031751));  // strong pseudoprime to bases 2, 3, 5, 7
    CHECK_FALSE(is_prime(i64{1000000007} * 998244353));
}

TEST_CASE("primitive roots generate the full group") {
    CHECK(primitive_root(2) == 1);
    CHECK(primitive_root(7) == 3);
    CHECK_THROWS_AS(primitive_root(12), NotPrime);
    for (i64 p : primes_in(3, 400)) {
        const i64 g = primitive_root(p);
        // exhaustive order
        i64 x = 1, order = 0;
        do {
            x = mul_mod(x, g, p);
            ++order;
        } while (x != 1);
        CHECK(order == p - 1);
        CHECK(multiplicative_order(g, p) == p - 1);
    }
}

TEST_CASE("discrete log table inverts powers of the generator") {
    const PrimeModulus mod(101);
    CHECK(mod.generator() == 2);
    for (i64 n = 1; n < 101; ++n) CHECK(pow_mod(mod.generator(), static_cast<u64>(mod.dlog(n)), 101) == n);
    CHECK_THROWS_AS(mod.dlog(202), InvalidArgument);
    CHECK_THROWS_AS(PrimeModulus(3), InvalidArgument);
    CHECK_THROWS_AS(PrimeModulus(91), NotPrime);
    CHECK(PrimeModulus::get(101).dlog_table().data() == PrimeModulus::get(101).dlog_table().data());
}

TEST_CASE("Legendre symbol from the discrete log matches Euler's criterion") {
    for (i64 p : primes_in(5, 300)) {
        const PrimeModulus mod(p);
        for (i64 a = 1; a < p; ++a) {
            const bool residue_by_log = mod.dlog(a) % 2 == 0;
            const bool residue_by_euler = pow_mod(a, static_cast<u64>((p - 1) / 2), p) == 1;
            CHECK(residue_by_log == residue_by_euler);
        }
    }
}

TEST_CASE("divisors, phi and Moebius") {
    for (i64 n = 1; n <= 500; ++n) {
        std::vector<i64> brute;
        i64 phi = 0;
        for (i64 d = 1; d <= n; ++d) {
            if (n % d == 0) brute.push_back(d);
            if (std::gcd(d, n) == 1) ++phi;
        }
        CHECK(divisors(n) == brute);
        CHECK(euler_phi(n) == phi);
        int mu_sum = 0;
        for (i64 d : brute) mu_sum += moebius(d);
        CHECK(mu_sum == (n == 1 ? 1 : 0));
    }
    CHECK(moebius(30) == -1);
    CHECK(moebius(12) == 0);
    CHECK(is_squarefree(105));
}

TEST_CASE("gcd_split and reciprocity") {
    const GcdSplit s = gcd_split(12, 18);
    CHECK(s.gcd == 6);
    CHECK(s.lcm == 36);
    CHECK(s.a_b == 2);
    CHECK(s.b_a == 3);
    CHECK(reciprocity_check(3, 7));
    CHECK(reciprocity_check(1, 1));
    for (i64 a = 1; a <= 80; ++a) {
        for (i64 c = 1; c <= 80; ++c) {
            if (std::gcd(a, c) == 1) CHECK(reciprocity_check(a, c));
        }
    }
    CHECK_THROWS_AS(reciprocity_check(4, 6), NotCoprime);
}

TEST_CASE("unit_root is exact on quarter turns and periodic") {
    CHECK(unit_root(0, 5) == cplx(1.0, 0.0));
    CHECK(unit_root(1, 2) == cplx(-1.0, 0.0));
    CHECK(unit_root(1, 4) == cplx(0.0, 1.0));
    CHECK(unit_root(-1, 4) == cplx(0.0, -1.0));
    CHECK(std::abs(unit_root(7, 12) - unit_root(-5, 12)) == 0.0);
    CHECK(std::abs(unit_root(1, 3) - std::polar(1.0, kTwoPi / 3)) < 1e-15);
}

TEST_CASE("compensated summation recovers small terms") {
    CompensatedSum<double> s;
    s += 1e16;
    for (int i = 0; i < 1000; ++i) s += 1.0;
    s += -1e16;
    CHECK(s.value() == 1000.0);
}
