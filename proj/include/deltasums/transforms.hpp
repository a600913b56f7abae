#pragma once

// Fourier dual of a window and the Voronoi transforms
//   holomorphic weight k:  W+(y) = int W(x) 2 pi i^k J_{k-1}(4 pi sqrt(x y)) dx,  W- = 0
//   divisor function:      W+(y) = int -2 pi Y_0(4 pi sqrt(x y)) W(x) dx
//                          W-(y) = int  4 K_0(4 pi sqrt(x y)) W(x) dx

#include <functional>
#include <span>
#include <vector>

#include "deltasums/coefficients.hpp"
#include "deltasums/numeric.hpp"
#include "deltasums/windows.hpp"

namespace deltasums {

enum class DualSign { plus, minus };

// V(x) = int V(u) e(-x u) du, adaptive quadrature to ~1e-13 absolute.
cplx fourier_dual(const SmoothWindow& V, double x);

// Adaptive quadrature with initial panel count proportional to the number of
// kernel oscillations over the support; segments with 16 or more kernel cycles
// use one 20-point Gauss panel per cycle instead. Throws UnsupportedCoefficientKind for
// Maass forms and InvalidArgument for y <= 0.
double voronoi_transform(CoefficientKind kind, int weight, DualSign sign, const SmoothWindow& W, double y);
double voronoi_transform(const CoefficientSequence& g, DualSign sign, const SmoothWindow& W, double y);

// Same integral with a fixed composite Gauss rule: `panels_per_cycle` panels of
// `order` points per kernel oscillation (at least `panels_per_cycle` panels per
// window segment). A second, non-adaptive scheme used for cross-checks and
// refinement studies.
double voronoi_transform_fixed(CoefficientKind kind, int weight, DualSign sign, const SmoothWindow& W, double y,
                               int panels_per_cycle, int order);

// Kernel x -> 2 pi i^k J_{k-1}(4 pi sqrt(x y)) etc.; 0 for the vanishing branch.
double voronoi_kernel(CoefficientKind kind, int weight, DualSign sign, double y, double x);

struct DecayReport {
    double A = 0.0;
    double constant = 0.0;   // sup |T(x)| (1 + |x|)^A over the grid
    double argmax = 0.0;
    bool finite = false;
};

// Requires 0 <= A <= 6. The transform is any real-argument function, e.g. a
// lambda around fourier_dual or voronoi_transform.
DecayReport decay_check(const std::function<cplx(double)>& transform, double A, std::span<const double> grid);

DecayReport fourier_decay_check(const SmoothWindow& V, double A, std::span<const double> grid);
DecayReport voronoi_decay_check(CoefficientKind kind, int weight, DualSign sign, const SmoothWindow& W, double A,
                                std::span<const double> grid);

// Evenly spaced grid lo, ..., hi with `count` points.
std::vector<double> linear_grid(double lo, double hi, int count);

}  // namespace deltasums
