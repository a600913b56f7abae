#pragma once

// Bessel functions of real argument. Evaluation is delegated to Boost.Math.

#include <string_view>

namespace deltasums {

enum class BesselKind { J, Y, K };

std::string_view to_string(BesselKind kind);

struct BesselKernel {
    BesselKind kind = BesselKind::J;
    int order = 0;  // integer >= 0 for J; 0 for Y and K
};

// J_n(x) for x >= 0 (J_n(-x) = (-1)^n J_n(x) is also accepted);
// Y_0 and K_0 throw DomainError for x <= 0.
double bessel_eval(const BesselKernel& kernel, double x);

double bessel_j(int order, double x);
double bessel_y0(double x);
double bessel_k0(double x);

}  // namespace deltasums
