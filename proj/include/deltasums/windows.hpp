#pragma once

// Compactly supported smooth windows built from exp(-1/u) profiles.
//
//   bump(lo, hi):              exp(-1/(1 - t^2)),  t = (2x - lo - hi)/(hi - lo)
//   plateau(lo, a, b, hi):     smooth step up on [lo, a], exactly 1 on [a, b],
//                              smooth step down on [b, hi]
//
// Linear combinations are supported so linearity of transforms can be tested.

#include <array>
#include <optional>
#include <utility>
#include <vector>

namespace deltasums {

enum class WindowKind { bump, plateau, combination };

class SmoothWindow {
public:
    static SmoothWindow bump(double lo, double hi);
    static SmoothWindow plateau(double lo, double flat_lo, double flat_hi, double hi);

    // W: bump supported on [1, 2].
    static SmoothWindow standard_bump() { return bump(1.0, 2.0); }
    // V: supported on [1/2, 3], identically 1 on [1, 2].
    static SmoothWindow standard_plateau() { return plateau(0.5, 1.0, 2.0, 3.0); }

    WindowKind kind() const;
    double lo() const { return lo_; }
    double hi() const { return hi_; }
    // Interval where the window is identically 1 (plateau kind only).
    std::optional<std::pair<double, double>> flat() const;

    double operator()(double x) const;

    // Value and derivatives of order 1..4 at x.
    std::array<double, 5> derivatives(double x) const;

    // sup |W^(j)| for j = 0..4, estimated on a uniform grid of the support.
    std::array<double, 5> derivative_bounds(int samples = 4001) const;

    // Support endpoints and plateau corners, sorted; the window is analytic
    // strictly between consecutive breakpoints.
    std::vector<double> breakpoints() const;

    double mass() const;
    SmoothWindow scaled(double factor) const;
    // Rescaled to unit mass.
    SmoothWindow normalized() const;

    friend SmoothWindow operator+(const SmoothWindow& a, const SmoothWindow& b);
    friend SmoothWindow operator*(double factor, const SmoothWindow& w);

private:
    struct Term {
        double weight;
        WindowKind kind;
        double lo, flat_lo, flat_hi, hi;
    };

    SmoothWindow() = default;
    explicit SmoothWindow(std::vector<Term> terms);

    std::vector<Term> terms_;
    double lo_ = 0.0;
    double hi_ = 0.0;
};

}  // namespace deltasums
