#include "deltasums/transforms.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "deltasums/bessel.hpp"
#include "deltasums/error.hpp"
#include "deltasums/quadrature.hpp"

namespace deltasums {

namespace {

constexpr double kPi = std::numbers::pi;

void require_supported(CoefficientKind kind) {
    if (kind == CoefficientKind::maass) {
        throw UnsupportedCoefficientKind("Voronoi transforms for Maass forms are not supported");
    }
}

// Oscillations of the kernel over [a, b]: the phase 4 pi sqrt(x y) advances by
// 4 pi sqrt(y) (sqrt b - sqrt a), i.e. 2 sqrt(y) (sqrt b - sqrt a) cycles.
double cycles(double y, double a, double b) { return 2.0 * std::sqrt(y) * (std::sqrt(b) - std::sqrt(a)); }

// Below this many cycles per segment the window's flat ends dominate and the
// transform is integrated adaptively.
constexpr double kOscillatoryCycles = 16.0;

// e(-x u) with the product reduced mod 1 before rounding error can build up:
// the low part of x u is recovered exactly with an fma.
cplx phase(double x, double u) {
    const double p = x * u;
    const double low = std::fma(x, u, -p);
    const double r = (p - std::round(p)) + low;
    return {std::cos(kTwoPi * r), -std::sin(kTwoPi * r)};
}

}  // namespace

double voronoi_kernel(CoefficientKind kind, int weight, DualSign sign, double y, double x) {
    require_supported(kind);
    const double z = 4.0 * kPi * std::sqrt(x * y);
    if (kind == CoefficientKind::delta_form) {
        if (sign == DualSign::minus) return 0.0;
        if (weight < 2 || weight % 2 != 0) throw InvalidArgument(fmt::format("voronoi_kernel: weight {} must be even >= 2", weight));
        const double ik = (weight / 2) % 2 == 0 ? 1.0 : -1.0;  // i^k for even k
        return 2.0 * kPi * ik * bessel_j(weight - 1, z);
    }
    if (sign == DualSign::plus) return -2.0 * kPi * bessel_y0(z);
    return 4.0 * bessel_k0(z);
}

cplx fourier_dual(const SmoothWindow& V, double x) {
    const auto pts = V.breakpoints();
    cplx total{};
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double a = pts[i], b = pts[i + 1];
        const int panels = 2 + static_cast<int>(std::ceil(2.0 * std::abs(x) * (b - a)));
        // a node perturbed by one ulp moves the phase by about eps |x u|
        const double floor = std::max(1e-14, 16.0 * kTwoPi * std::numeric_limits<double>::epsilon() * std::abs(x) * b);
        total += integrate_adaptive([&](double u) { return V(u) * phase(x, u); }, a, b, 1e-14, panels, 18, floor);
    }
    return total;
}

double voronoi_transform(CoefficientKind kind, int weight, DualSign sign, const SmoothWindow& W, double y) {
    require_supported(kind);
    if (!(y > 0.0)) throw InvalidArgument(fmt::format("voronoi_transform: y = {} must be positive", y));
    if (kind == CoefficientKind::delta_form && sign == DualSign::minus) return 0.0;
    const auto pts = W.breakpoints();
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double a = std::max(pts[i], 0.0), b = pts[i + 1];
        if (b <= a) continue;
        const auto f = [&](double x) { return W(x) * voronoi_kernel(kind, weight, sign, y, x); };
        const double n_cycles = cycles(y, a, b);
        if (n_cycles >= kOscillatoryCycles) {
            // many oscillations: one 20-point panel per kernel cycle is at roundoff level
            total += integrate_panels(f, a, b, static_cast<int>(std::ceil(n_cycles)), 20);
        } else {
            total += integrate_adaptive(f, a, b, 1e-14, 2 + static_cast<int>(std::ceil(2.0 * n_cycles)));
        }
    }
    return total;
}

double voronoi_transform(const CoefficientSequence& g, DualSign sign, const SmoothWindow& W, double y) {
    return voronoi_transform(g.kind(), g.weight(), sign, W, y);
}

double voronoi_transform_fixed(CoefficientKind kind, int weight, DualSign sign, const SmoothWindow& W, double y,
                               int panels_per_cycle, int order) {
    require_supported(kind);
    if (!(y > 0.0)) throw InvalidArgument(fmt::format("voronoi_transform_fixed: y = {} must be positive", y));
    if (panels_per_cycle < 1) throw InvalidArgument("voronoi_transform_fixed: panels_per_cycle < 1");
    if (kind == CoefficientKind::delta_form && sign == DualSign::minus) return 0.0;
    const auto pts = W.breakpoints();
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double a = std::max(pts[i], 0.0), b = pts[i + 1];
        if (b <= a) continue;
        const int panels = panels_per_cycle * (1 + static_cast<int>(std::ceil(cycles(y, a, b))));
        total += integrate_panels([&](double x) { return W(x) * voronoi_kernel(kind, weight, sign, y, x); }, a, b,
                                  panels, order);
    }
    return total;
}

DecayReport decay_check(const std::function<cplx(double)>& transform, double A, std::span<const double> grid) {
    if (!(A >= 0.0 && A <= 6.0)) throw InvalidArgument(fmt::format("decay_check: A = {} outside [0, 6]", A));
    DecayReport report;
    report.A = A;
    report.finite = true;
    for (double x : grid) {
        const double v = std::abs(transform(x)) * std::pow(1.0 + std::abs(x), A);
        if (!std::isfinite(v)) {
            report.finite = false;
            report.argmax = x;
            report.constant = v;
            return report;
        }
        if (v > report.constant) {
            report.constant = v;
            report.argmax = x;
        }
    }
    return report;
}

DecayReport fourier_decay_check(const SmoothWindow& V, double A, std::span<const double> grid) {
    return decay_check([&](double x) { return fourier_dual(V, x); }, A, grid);
}

DecayReport voronoi_decay_check(CoefficientKind kind, int weight, DualSign sign, const SmoothWindow& W, double A,
                                std::span<const double> grid) {
    return decay_check([&](double y) { return cplx(voronoi_transform(kind, weight, sign, W, y)); }, A, grid);
}

std::vector<double> linear_grid(double lo, double hi, int count) {
    if (count < 1) throw InvalidArgument("linear_grid: count < 1");
    std::vector<double> grid(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) grid[static_cast<std::size_t>(i)] = count == 1 ? lo : lo + (hi - lo) * i / (count - 1);
    return grid;
}

}  // namespace deltasums
