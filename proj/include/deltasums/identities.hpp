#pragma once

// Step-by-step checks of the amplified delta-method expansion of
//   S(N) = sum_n lambda(n) chi(n) W(n/N):
// the Hecke-relation rewrite, exact delta detection with q = pM, the Voronoi
// step, the beta-sum evaluation and Poisson summation in r.

#include <optional>
#include <string>
#include <vector>

#include "deltasums/characters.hpp"
#include "deltasums/coefficients.hpp"
#include "deltasums/report.hpp"
#include "deltasums/windows.hpp"

namespace deltasums {

struct PipelineConfig {
    double N = 0.0;
    DirichletCharacter chi;
    double L = 0.0;
    double P = 0.0;
    CoefficientSequence seq;
    SmoothWindow W = SmoothWindow::standard_bump();
    SmoothWindow V = SmoothWindow::standard_plateau();
    // Explicit amplifier sets; default to the primes in [L, 2L] and [P, 2P].
    std::optional<std::vector<i64>> ell_set;
    std::optional<std::vector<i64>> p_set;

    i64 M() const { return chi.M(); }
    std::string describe() const;
};

// Standard windows and a coefficient bound of 6NL + slack, which covers both
// the Hecke rewrite and the delta-detected double sum.
PipelineConfig make_pipeline_config(CoefficientKind kind, i64 M, double N, double L, double P, i64 char_index = 1);

// The resolved amplifier: primes and weights L* = sum lambda(l)^2, P* = |P|.
struct ResolvedAmplifier {
    std::vector<i64> ells;
    std::vector<i64> ps;
    double lstar = 0.0;
    double pstar = 0.0;
};

// Throws DegenerateAmplifier for an empty set or L* = 0, ParameterConflict
// when the sets meet or contain M.
ResolvedAmplifier resolve_amplifier(const PipelineConfig& cfg);

// Size restrictions on P, L, N relative to M. Recorded, not enforced.
struct SideConditions {
    bool disjoint = false;          // P and L sets do not meet
    bool avoids_modulus = false;    // M in neither set
    bool exact_detection = false;   // p M > 8 N L for all p
    bool p_exceeds_l = false;       // P > L^(1+eps)
    bool c_equals_p = false;        // P^2 < M^(1-delta) L
    bool p_below_root_m = false;    // P < M^(1/2-eps)
    bool p2l_below_n = false;       // P^2 L < N^(1-eps)
};

SideConditions side_conditions(const PipelineConfig& cfg, double delta = 0.1, double eps = 0.05);

// S(N) against (1/L*) sum_l lambda(l) [sum_r lambda(r l) chi(r) W(r/N)]
// plus the correction (1/L*) sum_l lambda(l) sum_{l | r} chi(r) lambda(r/l) W(r/N),
// which is exact by the Hecke relation. Only the l set is used. Tolerance 1e-9.
CheckReport hecke_amplifier_identity(const PipelineConfig& cfg);

// The double sum (1/L*) sum_l lambda(l) sum_{n, r} lambda(n) W(n/(N l)) chi(r) V(r/N) [n = r l]
// against the same sum with [n = r l] replaced by
//   (1/P*) sum_p (pM)^(-1) sum_{c | pM} sum*_{alpha mod c} e(alpha (n - r l)/c).
// Throws ExactnessViolated unless p M > 8 N L for every p. Tolerance 1e-8.
// Details carry |contribution| per divisor class c = 1, p, M, pM.
CheckReport delta_detection_expansion(const PipelineConfig& cfg);

struct VoronoiOptions {
    bool fixed_rule = false;  // false: adaptive quadrature for the transforms
    int panels_per_cycle = 4;
    int order = 8;
    // Dual sum length; 0 means truncate once 64 consecutive transforms are below 1e-12.
    i64 dual_terms = 0;
};

struct VoronoiReport {
    cplx lhs;
    cplx main_term;
    cplx dual;
    double residual = 0.0;
    double relative_residual = 0.0;  // residual / (1 + |lhs|)
    i64 dual_terms = 0;
    bool pass = false;  // relative_residual < 1e-6
};

// sum lambda(n) e(a n/c) W(n/N) against
//   I + (N/c) [sum lambda(n) e(-inv(a) n/c) W+(n N/c^2) + sum lambda(n) e(inv(a) n/c) W-(n N/c^2)]
// where I = (N/c) int (log(xN) + 2 gamma - 2 log c) W(x) dx for the divisor
// function and 0 for cusp forms. Throws NotCoprime when (a, c) > 1 and
// OutOfCacheRange when the dual sum outruns the coefficients.
VoronoiReport voronoi_step(const CoefficientSequence& seq, i64 a, i64 c, double N, const SmoothWindow& W,
                           const VoronoiOptions& options = {});
CheckReport voronoi_step_check(const CoefficientSequence& seq, i64 a, i64 c, double N, const SmoothWindow& W);

// Coefficient bound that covers the dual sum of voronoi_step.
i64 voronoi_coefficient_bound(double N, i64 c);

// Residuals of the fixed-rule Voronoi step as the panel width is halved
// (panels_per_cycle = base, 2 base, 4 base, ...), with the dual length fixed
// by the adaptive run.
std::vector<double> voronoi_refinement_profile(const CoefficientSequence& seq, i64 a, i64 c, double N,
                                               const SmoothWindow& W, int levels, int base_panels, int order);

// Each halving reduces the residual by at least `factor` until the next
// residual is below `floor`.
bool refinement_order_holds(const std::vector<double>& residuals, double factor = 4.0, double floor = 1e-8);

struct BetaSumReport {
    cplx lhs;
    cplx rhs;
    double residual = 0.0;
    bool delta_holds = false;  // c_M | r - alpha l M_c
    bool pass = false;
};

// sum_{beta mod [c,M]} chi(beta) e(-alpha beta l/c) e(r beta/[c,M]) against
//   conj chi((r - alpha l M_c) inv(c_M)) g_chi c_M [c_M | r - alpha l M_c],
// c_M = c/(c,M), M_c = M/(c,M). Throws InvalidArgument unless p is a prime
// other than M, InvalidDivisor when c does not divide pM, NotCoprime when (alpha, c) > 1.
BetaSumReport beta_sum_evaluation(const DirichletCharacter& chi, i64 c, i64 p, i64 alpha, i64 ell, i64 r);
bool beta_sum_evaluation_check(const DirichletCharacter& chi, i64 c, i64 p, i64 alpha, i64 ell, i64 r);

struct PoissonReport {
    cplx lhs;
    cplx rhs;          // beta sums by direct summation
    cplx rhs_closed;   // beta sums from the closed form
    double residual = 0.0;
    double residual_closed = 0.0;
    i64 truncation = 0;    // |r| <= truncation in the dual sum
    bool flagged = false;  // doubling the initial window changed the value by > 1e-9
    bool pass = false;     // both residuals < 1e-6 (1 + |lhs|)
};

// sum_{r >= 1} chi(r) e(-alpha r l/c) V(r/N) against
// (N/[c,M]) sum_r (beta sum at r) V^(r N/[c,M]), truncated at |r| <= 20 [c,M]/N
// and doubled until stable.
PoissonReport poisson_r_sum(const DirichletCharacter& chi, i64 c, i64 p, i64 alpha, i64 ell, double N,
                            const SmoothWindow& V);
CheckReport poisson_r_sum_check(const DirichletCharacter& chi, i64 c, i64 p, i64 alpha, i64 ell, double N,
                                const SmoothWindow& V);

// Composition of delta detection (single l and p), Poisson in r and the
// beta-sum closed form: the n-sum is kept direct while each r-sum is replaced by
// its evaluated dual sum. Compared against sum_r lambda(r l) chi(r) V(r/N) W(r/N).
// Requires p M > 2 N l, which makes detection exact on the window supports.
CheckReport composite_dual_check(const CoefficientSequence& seq, const DirichletCharacter& chi, i64 p, i64 ell,
                                 double N);

}  // namespace deltasums
