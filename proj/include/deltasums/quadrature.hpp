#pragma once

// Gauss-Legendre quadrature: fixed composite rules and adaptive bisection.
// Integrands may return double or cplx.

#include <cmath>
#include <complex>
#include <utility>
#include <vector>

namespace deltasums {

struct GaussRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

// n-point rule, computed once per n by Newton iteration on P_n.
const GaussRule& gauss_legendre(int n);

// Composite n-point rule over `panels` equal panels of [a, b].
template <typename F>
auto integrate_panels(F&& f, double a, double b, int panels, int order = 20) -> decltype(f(a)) {
    using T = decltype(f(a));
    const GaussRule& rule = gauss_legendre(order);
    const double h = (b - a) / panels;
    T total{};
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * h;
        T panel{};
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) panel += rule.weights[i] * f(mid + 0.5 * h * rule.nodes[i]);
        total += 0.5 * h * panel;
    }
    return total;
}

namespace detail {

// 16-point rule on [a, b]; also returns the integral of |f| as a roundoff scale.
template <typename F>
auto panel_with_scale(F& f, double a, double b) {
    using T = decltype(f(a));
    const GaussRule& rule = gauss_legendre(16);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    T sum{};
    double scale = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const T v = f(mid + half * rule.nodes[i]);
        sum += rule.weights[i] * v;
        scale += rule.weights[i] * std::abs(v);
    }
    return std::pair<T, double>{half * sum, half * scale};
}

template <typename F, typename T>
T adaptive_panel(F& f, double a, double b, T whole, double tol, int depth, double rel_floor) {
    const double m = 0.5 * (a + b);
    const auto [left, left_scale] = panel_with_scale(f, a, m);
    const auto [right, right_scale] = panel_with_scale(f, m, b);
    const T refined = left + right;
    const double change = std::abs(refined - whole);
    // stop at the tolerance or at the roundoff floor of the panel
    if (depth <= 0 || change <= tol || change <= rel_floor * (left_scale + right_scale)) return refined;
    return adaptive_panel(f, a, m, left, 0.5 * tol, depth - 1, rel_floor) +
           adaptive_panel(f, m, b, right, 0.5 * tol, depth - 1, rel_floor);
}

}  // namespace detail

// Adaptive bisection with a 16-point rule per panel, starting from
// `initial_panels` equal panels; tol is the absolute tolerance for [a, b].
// A panel is also accepted once the change is below rel_floor times the
// integral of |f| over it, the level at which rounding in f itself dominates.
template <typename F>
auto integrate_adaptive(F&& f, double a, double b, double tol, int initial_panels = 1, int max_depth = 18,
                        double rel_floor = 1e-14)
    -> decltype(f(a)) {
    using T = decltype(f(a));
    if (initial_panels < 1) initial_panels = 1;
    const double h = (b - a) / initial_panels;
    T total{};
    for (int p = 0; p < initial_panels; ++p) {
        const double lo = a + p * h;
        const double hi = p + 1 == initial_panels ? b : lo + h;
        const T whole = integrate_panels(f, lo, hi, 1, 16);
        total += detail::adaptive_panel(f, lo, hi, whole, tol / initial_panels, max_depth, rel_floor);
    }
    return total;
}

}  // namespace deltasums
