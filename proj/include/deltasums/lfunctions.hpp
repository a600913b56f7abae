#pragma once

// Smoothed sums S(N), central L-values L(1/2, chi) and L(1/2, g x chi), the
// amplifier quantities and Burgess-normalized sweeps.

#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "deltasums/characters.hpp"
#include "deltasums/coefficients.hpp"
#include "deltasums/windows.hpp"

namespace deltasums {

// S(N) = sum_n lambda(n) chi(n) W(n/N). Throws OutOfCacheRange when the
// support of W(./N) runs past the coefficient bound.
cplx smoothed_sum(const CoefficientSequence& seq, const DirichletCharacter& chi, double N, const SmoothWindow& W);

// Integers n with W(n/N) possibly nonzero; empty (first > second) when none.
std::pair<i64, i64> window_range(const SmoothWindow& W, double N);

// sup |S(N)| / sqrt(N) over dyadic N = n_lo, 2 n_lo, ... <= n_hi.
double dyadic_sum_profile(const CoefficientSequence& seq, const DirichletCharacter& chi, const SmoothWindow& W,
                          double n_lo, double n_hi);

enum class LMethod { hurwitz_oracle, smoothed };

std::string_view to_string(LMethod method);

// Smoothed Dirichlet series sum_n a(n) chi(n) n^(-1/2) phi(n/X) with
// phi(t) = erfc(kappa log t) / 2, whose Mellin transform has residue 1 at 0.
struct SmoothingPolicy {
    double X = 0.0;
    double kappa = 4.0;
};

// Last n with phi(n/X) above double-precision relevance.
i64 smoothing_terms(const SmoothingPolicy& policy);

SmoothingPolicy dirichlet_policy(i64 M);
// Length of the plain smoothed series for a twist. The divisor twist has
// conductor M^2, so X grows like M^2; for Delta the series is only used as a
// cross-check at small moduli (see l_value_twist_series).
SmoothingPolicy twist_policy(CoefficientKind kind, i64 M);

// Coefficient bound needed by l_value_twist(kind, chi mod M, smoothed).
i64 twist_coefficient_bound(CoefficientKind kind, i64 M);

struct SmoothedLValue {
    cplx value;
    cplx half_length_value;  // same series with X / 2
    double tail_change = 0.0;  // |value - half_length_value|
    i64 terms = 0;
};

// Residue-class weights w[a] = sum_{n == a mod M} a(n) n^(-1/2) phi(n/X), for
// X and X/2 at once; every character mod M is then a length-M dot product.
struct ResidueWeights {
    i64 M = 0;
    SmoothingPolicy policy;
    i64 terms = 0;
    std::vector<double> full;
    std::vector<double> half;

    SmoothedLValue evaluate(const DirichletCharacter& chi) const;
};

// Coefficients all 1 when seq is nullopt.
ResidueWeights residue_weights(const std::optional<CoefficientSequence>& seq, i64 M, const SmoothingPolicy& policy);

// zeta(1/2, a/M) for 1 <= a < M, cached per M.
const std::vector<double>& hurwitz_table(i64 M);

// L(1/2, chi) for primitive chi. Throws PrincipalCharacterNotAllowed.
cplx l_value_dirichlet(const DirichletCharacter& chi, LMethod method);
SmoothedLValue l_value_dirichlet_smoothed(const DirichletCharacter& chi);

// Delta twists go through the approximate functional equation
//   L(1/2, Delta x chi) = S(chi) + eps(chi) conj(S(chi)),
//   S(chi) = sum_n lambda(n) chi(n) n^(-1/2) V(n/M),  V(y) = Gamma(6, 2 pi y) / Gamma(6),
// with root number eps(chi) = i^12 g_chi^2 / M. afe_terms is where V drops below 1e-19.
i64 afe_terms(i64 M);
double afe_weight(double y);
cplx delta_root_number(const DirichletCharacter& chi);

// Residue-class weights of the sum S; evaluate() adds the dual term. The
// half_length_value of the result is the same formula truncated at 2/3 of the length.
struct AfeWeights {
    i64 M = 0;
    i64 terms = 0;
    std::vector<double> full;
    std::vector<double> shorter;
    SmoothedLValue evaluate(const DirichletCharacter& chi) const;
};

AfeWeights afe_weights(const CoefficientSequence& seq, i64 M);

// L(1/2, g x chi). For the divisor function the Hurwitz method returns
// L(1/2, chi)^2 and the smoothed method sums the series with twist_policy; for
// Delta only the smoothed method (the functional-equation form above) exists.
cplx l_value_twist(const CoefficientSequence& seq, const DirichletCharacter& chi, LMethod method);
SmoothedLValue l_value_twist_smoothed(const CoefficientSequence& seq, const DirichletCharacter& chi);

// The plain smoothed series sum_n lambda(n) chi(n) n^(-1/2) phi(n/X), for any kind.
SmoothedLValue l_value_twist_series(const CoefficientSequence& seq, const DirichletCharacter& chi,
                                    const SmoothingPolicy& policy);

struct AmplifierSet {
    double scale = 0.0;
    std::vector<i64> primes;  // primes in [scale, 2 scale]
    double weight = 0.0;      // L* = sum |lambda(l)|^2, or P* = |set|
    double ratio = 0.0;       // L* / (L / log L); unused for P
};

// L* and its ratio to L / log L. Throws OutOfCacheRange when 2L exceeds the bound.
AmplifierSet amplifier_lstar(const CoefficientSequence& seq, double L);

struct AmplifierSpec {
    AmplifierSet ell;  // the set of l with weight L*
    AmplifierSet p;    // the set of p with weight P*
};

// Throws DegenerateAmplifier for an empty set or L* = 0, and ParameterConflict
// when the sets meet or contain M (pass M = 0 to skip the latter).
AmplifierSpec make_amplifier(const CoefficientSequence& seq, double L, double P, i64 M = 0);

struct RankinSelberg {
    double value = 0.0;  // sum |lambda(n)|^2 W(n/X)
    double ratio = 0.0;  // value / X
};

RankinSelberg rankin_selberg_average(const CoefficientSequence& seq, double X);

enum class SweepKind { dirichlet, twist };

std::string_view to_string(SweepKind kind);

struct SweepRecord {
    i64 M = 0;
    i64 char_index = 0;
    std::string kind;  // "dirichlet", "divisor" or "delta"
    cplx l_value;
    double exponent = 0.0;
    double ratio = 0.0;  // |L| / M^exponent
};

struct SweepOptions {
    SweepKind kind = SweepKind::dirichlet;
    CoefficientKind coeff = CoefficientKind::divisor;
    i64 pmin = 5;
    i64 pmax = 97;
    i64 chars_per_modulus = 0;  // 0: every primitive character
    bool quadratic_only = false;
    int jobs = 1;
};

// Largest admissible modulus: 10^4 for Dirichlet and divisor twists (the latter
// evaluated as L(1/2, chi)^2 through the Hurwitz oracle), 500 for Delta twists.
i64 sweep_modulus_limit(const SweepOptions& options);

// Records sorted by (M, char_index). Throws InvalidArgument when pmax exceeds
// the feasibility limit.
std::vector<SweepRecord> burgess_sweep(const SweepOptions& options);

// max_{M' <= M} ratio, aligned with the (sorted) records.
std::vector<double> running_envelope(const std::vector<SweepRecord>& records);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRecord>& records);

}  // namespace deltasums
