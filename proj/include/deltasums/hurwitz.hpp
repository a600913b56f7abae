#pragma once

// Hurwitz zeta zeta(s, a) = sum_{n >= 0} (n + a)^(-s) for real s != 1, a > 0,
// by Euler-Maclaurin summation.

namespace deltasums {

struct HurwitzValue {
    double value = 0.0;
    double error_bound = 0.0;  // magnitude of the first omitted Bernoulli term
    int shift = 0;             // number of terms summed directly
};

HurwitzValue hurwitz_zeta_detail(double s, double a);
double hurwitz_zeta(double s, double a);

}  // namespace deltasums
