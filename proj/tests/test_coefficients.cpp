#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <vector>

#include "deltasums/coefficients.hpp"
#include "deltasums/error.hpp"
#include "deltasums/modular.hpp"

using namespace deltasums;

namespace {

// tau(n) from q prod_m (1 - q^m)^24 by repeated truncated series products.
std::vector<i128> tau_by_product(int bound) {
    std::vector<i128> series(static_cast<std::size_t>(bound), 0);  // coefficient of q^j in prod (1-q^m)^24
    series[0] = 1;
    for (int m = 1; m < bound; ++m) {
        for (int rep = 0; rep < 24; ++rep) {
            for (int j = bound - 1; j >= m; --j) series[static_cast<std::size_t>(j)] -= series[static_cast<std::size_t>(j - m)];
        }
    }
    std::vector<i128> tau(static_cast<std::size_t>(bound + 1), 0);
    for (int n = 1; n <= bound; ++n) tau[static_cast<std::size_t>(n)] = series[static_cast<std::size_t>(n - 1)];
    return tau;
}

i64 divisor_count(i64 n) {
    i64 count = 0;
    for (i64 d = 1; d <= n; ++d) count += n % d == 0;
    return count;
}

}  // namespace

TEST_CASE("kind names") {
    CHECK(to_string(CoefficientKind::divisor) == "divisor");
    CHECK(to_string(CoefficientKind::delta_form) == "delta");
    CHECK(parse_coefficient_kind("delta") == CoefficientKind::delta_form);
    CHECK(parse_coefficient_kind("delta_form") == CoefficientKind::delta_form);
    CHECK(parse_coefficient_kind("divisor") == CoefficientKind::divisor);
    CHECK(!parse_coefficient_kind("theta").has_value());
}

TEST_CASE("Ramanujan tau against the product expansion") {
    const auto tau = ramanujan_tau(300);
    const auto oracle = tau_by_product(300);
    REQUIRE(tau.size() == 301);
    CHECK(tau[0] == 0);
    for (int n = 1; n <= 300; ++n) CHECK(int128_to_string(tau[static_cast<std::size_t>(n)]) == int128_to_string(oracle[static_cast<std::size_t>(n)]));
    const std::vector<std::string> known{"1", "-24", "252", "-1472", "4830", "-6048", "-16744", "84480", "-113643", "-115920"};
    for (std::size_t n = 1; n <= known.size(); ++n) CHECK(int128_to_string(tau[n]) == known[n - 1]);
}

TEST_CASE("tau congruences and multiplicativity") {
    const auto tau = ramanujan_tau(2000);
    // tau(n) == sigma_11(n) mod 691
    for (i64 n = 1; n <= 300; ++n) {
        i64 sigma = 0;
        for (i64 d : divisors(n)) sigma = (sigma + pow_mod(d, 11, 691)) % 691;
        const i64 t = static_cast<i64>(((tau[static_cast<std::size_t>(n)] % 691) + 691) % 691);
        CHECK(t == sigma);
    }
    for (i64 m = 1; m <= 44; ++m) {
        for (i64 n = 1; n <= 44; ++n) {
            if (std::gcd(m, n) != 1) continue;
            CHECK(tau[static_cast<std::size_t>(m * n)] == tau[static_cast<std::size_t>(m)] * tau[static_cast<std::size_t>(n)]);
        }
    }
}

TEST_CASE("int128 text round trip") {
    for (i128 v : {i128{0}, i128{-1}, i128{123456789}, -(i128{1} << 100), (i128{1} << 120) + 7}) CHECK(parse_int128(int128_to_string(v)) == v);
    CHECK_THROWS_AS(parse_int128("12x"), InvalidArgument);
    CHECK_THROWS_AS(parse_int128(""), InvalidArgument);
}

TEST_CASE("divisor sequence") {
    const auto d = CoefficientSequence::divisor(1000);
    CHECK(d.kind() == CoefficientKind::divisor);
    CHECK(d.weight() == 0);
    CHECK(d.bound() == 1000);
    for (i64 n = 1; n <= 1000; ++n) CHECK(d(n) == static_cast<double>(divisor_count(n)));
    CHECK(d.values()[0] == 0.0);
    CHECK_THROWS_AS(d(0), OutOfCacheRange);
    CHECK_THROWS_AS(d(1001), OutOfCacheRange);
    CHECK(coeff_eval(d, 12) == 6.0);
}

TEST_CASE("delta sequence normalization and Deligne bound") {
    const auto g = CoefficientSequence::delta_form(10000);
    CHECK(g.weight() == 12);
    CHECK(g(1) == 1.0);
    CHECK(std::abs(g(2) + 24.0 / std::pow(2.0, 5.5)) < 1e-15);
    for (i64 p : primes_in(2, 10000)) CHECK(std::abs(g(p)) <= 2.0);
    CHECK_THROWS_AS(g(10001), OutOfCacheRange);
}

TEST_CASE("Hecke relations at primes") {
    const auto d = CoefficientSequence::divisor(5000);
    const auto g = CoefficientSequence::delta_form(5000);
    for (i64 ell : {2, 3, 5, 7, 11, 13}) {
        for (i64 r = 1; r * ell <= 5000; r += 7) {
            CHECK(hecke_relation_check(d, r, ell));
            CHECK(hecke_relation_check(g, r, ell));
        }
    }
    CHECK_THROWS_AS(hecke_relation_check(g, 5000, 2), OutOfCacheRange);
}

TEST_CASE("multiplicativity on random coprime pairs") {
    const auto d = CoefficientSequence::divisor(250000);
    const auto g = CoefficientSequence::delta_form(250000);
    std::mt19937_64 rng(20261014);
    std::uniform_int_distribution<i64> pick(1, 500);
    int tested = 0;
    while (tested < 500) {
        const i64 m = pick(rng), n = pick(rng);
        if (std::gcd(m, n) != 1) continue;
        ++tested;
        CHECK(d(m * n) == d(m) * d(n));
        CHECK(std::abs(g(m * n) - g(m) * g(n)) < 1e-10);
    }
}

TEST_CASE("tau cache file round trip and environment path") {
    const auto dir = std::filesystem::temp_directory_path() / "deltasums_test_cache";
    std::filesystem::create_directories(dir);
    const auto path = dir / "tau.txt";
    const auto tau = ramanujan_tau(500);
    write_tau_cache(path, tau);
    const auto back = read_tau_cache(path, 400);
    REQUIRE(back.has_value());
    REQUIRE(back->size() >= 401);
    for (std::size_t n = 0; n <= 400; ++n) CHECK((*back)[n] == tau[n]);
    CHECK(!read_tau_cache(path, 501).has_value());
    CHECK(!read_tau_cache(dir / "missing.txt", 10).has_value());
    {
        std::ofstream bad(dir / "bad.txt");
        bad << "3\n0\n1\n-23\n252\n";
    }
    CHECK(!read_tau_cache(dir / "bad.txt", 3).has_value());

    ::setenv("DELTA_SUMS_CACHE", path.c_str(), 1);
    REQUIRE(tau_cache_path().has_value());
    CHECK(*tau_cache_path() == path);
    ::setenv("DELTA_SUMS_CACHE", "", 1);
    CHECK(!tau_cache_path().has_value());
    ::unsetenv("DELTA_SUMS_CACHE");
    std::filesystem::remove_all(dir);
}
