#pragma once

// Verification suites: named groups of checks that produce report lines.

#include <optional>
#include <string_view>
#include <vector>

#include "deltasums/coefficients.hpp"
#include "deltasums/modular.hpp"
#include "deltasums/report.hpp"

namespace deltasums {

struct SuiteOptions {
    i64 mmax = 100;              // largest modulus for the character and appendix suites
    i64 qmax = 500;              // trivial delta: moduli q <= qmax
    i64 dmax = 1000;             // trivial delta: differences |d| <= dmax
    std::optional<i64> M;        // pipeline: restrict the grid to this modulus
    i64 samples = 500;           // sampled sqrt-cancellation profiles
    u64 seed = 1;
    int jobs = 1;
};

// delta, characters, appendix, pipeline, voronoi
const std::vector<std::string_view>& suite_names();
bool is_suite(std::string_view name);

// "all" runs every suite in the order of suite_names(). Throws InvalidArgument
// for an unknown name.
std::vector<CheckReport> run_suite(std::string_view name, const SuiteOptions& options);

// The individual check groups, also used by the acceptance binary.
std::vector<CheckReport> trivial_delta_checks(i64 qmax, i64 dmax, int jobs = 1);
CheckReport frak_k_exact_check(i64 M);
// Brute force against frak_c_closed_form for every case, exhaustive over
// r1, r2, alpha, beta (and n for the doubly degenerate case).
std::vector<CheckReport> frak_c_case_checks(i64 M);
// max over (a, b) != (0, 0) of |S(a, b; p)| against 2 sqrt p.
CheckReport weil_bound_check(i64 p);
CheckReport gauss_magnitude_check(i64 M);
std::vector<CheckReport> beta_sum_exhaustive_checks(i64 M, i64 p);

// The pipeline grid: kinds x M in {11, 101} x N in {10, 40} x L in {2, 3} x P in {5, 7}.
struct GridPoint {
    CoefficientKind kind;
    i64 M;
    double N, L, P;
};
std::vector<GridPoint> pipeline_grid(std::optional<i64> only_M = std::nullopt);

}  // namespace deltasums
