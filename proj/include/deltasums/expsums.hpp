#pragma once

// Finite exponential and character sums: the divisor-sum delta symbol, Gauss,
// Ramanujan and Kloosterman sums, and the shifted character sums K and C with
// their closed-form special cases.

#include <optional>
#include <string_view>
#include <vector>

#include "deltasums/characters.hpp"

namespace deltasums {

enum class SumMethod { brute_force, closed_form };

std::string_view to_string(SumMethod method);

struct ExpSumResult {
    cplx value;
    i64 modulus = 0;
    SumMethod method = SumMethod::brute_force;
    double normalized_size = 0.0;  // |value| / sqrt(modulus)
};

ExpSumResult make_result(cplx value, i64 modulus, SumMethod method);

// (1/q) sum_{c | q} sum*_{a mod c} e(a d / c), precomputed for one q so that
// many differences d can be evaluated cheaply.
class TrivialDeltaKernel {
public:
    explicit TrivialDeltaKernel(i64 q);

    i64 q() const { return q_; }
    cplx operator()(i64 difference) const;

private:
    struct Divisor {
        i64 c;
        std::vector<i64> units;  // a in [0, c) with (a, c) = 1
        std::vector<cplx> roots; // e(j / c), 0 <= j < c
    };
    i64 q_;
    std::vector<Divisor> divisors_;
};

// Equals 1 when n == m (mod q) and 0 otherwise.
cplx trivial_delta(i64 n, i64 m, i64 q);

// R_M(a) = sum over units z mod M of e(a z / M), by direct summation.
double ramanujan_sum(i64 M, i64 a);
// Same value from sum_{d | (M, a)} mu(M/d) d.
i64 ramanujan_sum_closed(i64 M, i64 a);

// g_chi = sum_{y mod M} chi(y) e(y / M); chi must be primitive.
cplx gauss_sum(const DirichletCharacter& chi);

// chi(a) == g_{conj chi}^{-1} sum_y conj chi(y) e(a y / M) within 1e-10.
bool fourier_expansion_check(const DirichletCharacter& chi, i64 a);

// S(a, b; c) = sum*_{x mod c} e((a x + b inv(x)) / c), returned as a complex
// value; the imaginary part vanishes up to roundoff.
cplx kloosterman_sum_complex(i64 a, i64 b, i64 c);
double kloosterman_sum(i64 a, i64 b, i64 c);

// S_chi(r, n; M) = sum*_{x mod M} chi(x) e((r x + n inv(x)) / M).
cplx generalized_kloosterman(const DirichletCharacter& chi, i64 r, i64 n);

// K = sum_{z in F_M^x} conj chi(r + l z) e(n inv(z) / M). Throws EllNotCoprime.
ExpSumResult frak_k(const DirichletCharacter& chi, i64 r, i64 ell, i64 n);
// -conj chi(r) when (r, M) = 1 and M | n; nullopt otherwise (only the
// square-root bound is known there).
std::optional<ExpSumResult> frak_k_closed_form(const DirichletCharacter& chi, i64 r, i64 ell, i64 n);

// Case split for C, tested in this order.
enum class FrakCCase {
    m_divides_n,        // M | n
    reciprocal_shift,   // n == beta inv(r1) - alpha inv(r2)
    doubly_degenerate,  // r1 == inv(n) beta and r2 == -inv(n) alpha
    generic,
};

std::string_view to_string(FrakCCase c);

FrakCCase classify_frak_c(i64 M, i64 r1, i64 r2, i64 alpha, i64 beta, i64 n);

// C = sum_{z in F_M^x, (n + beta inv(z), M) = 1} conj chi(r1 + z) chi(r2 + alpha inv(n + beta inv(z))).
// Throws AlphaBetaNotCoprime when M | alpha beta.
ExpSumResult frak_c(const DirichletCharacter& chi, i64 r1, i64 r2, i64 alpha, i64 beta, i64 n);

// Exact value in the three special cases (requires (r1 r2, M) = 1 and chi
// primitive); nullopt in the generic case or when (r1 r2, M) > 1.
// In the doubly degenerate case with chi quadratic the value is
// chi(inv(n) r2 beta) (M - 2).
std::optional<ExpSumResult> frak_c_closed_form(const DirichletCharacter& chi, i64 r1, i64 r2, i64 alpha,
                                               i64 beta, i64 n);

struct AlphaFactorization {
    // index 0: minus sign, index 1: plus sign
    cplx lhs[2];
    cplx rhs[2];
    double residual = 0.0;
    bool holds = false;
};

// Both sides of
//   sum*_{x mod pM, r == x l (p)} conj chi(r - x l) e(-+ inv(x) n/(pM))
//     = e(-+ inv(r M) n l / p) sum*_{x mod M} conj chi(r - x l) e(-+ inv(x p) n / M)
// for both signs. Throws ParameterConflict when p is not a prime different
// from M or when no x satisfies the side condition.
AlphaFactorization alpha_factorization(const DirichletCharacter& chi, i64 p, i64 r, i64 ell, i64 n);
bool alpha_factorization_check(const DirichletCharacter& chi, i64 p, i64 r, i64 ell, i64 n);

enum class SumFamily { frak_k, frak_c, kloosterman };

std::string_view to_string(SumFamily family);
std::optional<SumFamily> parse_sum_family(std::string_view name);

struct CancellationProfile {
    SumFamily family = SumFamily::kloosterman;
    i64 M = 0;
    i64 samples = 0;
    double max_ratio = 0.0;   // max |sum| / sqrt(M): the empirical implied constant
    double mean_ratio = 0.0;
};

// Samples admissible random parameters (generic case only for frak_c) and
// reports |sum|/sqrt(M) statistics. Deterministic for a given seed.
CancellationProfile sqrt_cancellation_profile(SumFamily family, i64 M, i64 samples, u64 seed = 1);

}  // namespace deltasums
