#include "deltasums/windows.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

#include "deltasums/error.hpp"
#include "deltasums/quadrature.hpp"

namespace deltasums {

namespace {

// Truncated Taylor series c[k] = f^(k)(x0) / k!, k <= 4. Enough arithmetic to
// push the window profiles through and read off derivatives.
struct Jet {
    std::array<double, 5> c{};

    static Jet constant(double v) {
        Jet j;
        j.c[0] = v;
        return j;
    }
    static Jet variable(double x0) {
        Jet j;
        j.c[0] = x0;
        j.c[1] = 1.0;
        return j;
    }
};

Jet operator+(const Jet& a, const Jet& b) {
    Jet r;
    for (int k = 0; k < 5; ++k) r.c[k] = a.c[k] + b.c[k];
    return r;
}

Jet operator-(const Jet& a, const Jet& b) {
    Jet r;
    for (int k = 0; k < 5; ++k) r.c[k] = a.c[k] - b.c[k];
    return r;
}

Jet operator*(double s, const Jet& a) {
    Jet r;
    for (int k = 0; k < 5; ++k) r.c[k] = s * a.c[k];
    return r;
}

Jet operator*(const Jet& a, const Jet& b) {
    Jet r;
    for (int k = 0; k < 5; ++k) {
        for (int i = 0; i <= k; ++i) r.c[k] += a.c[i] * b.c[k - i];
    }
    return r;
}

Jet reciprocal(const Jet& a) {
    Jet r;
    r.c[0] = 1.0 / a.c[0];
    for (int k = 1; k < 5; ++k) {
        double s = 0.0;
        for (int i = 1; i <= k; ++i) s += a.c[i] * r.c[k - i];
        r.c[k] = -s / a.c[0];
    }
    return r;
}

Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }

// exp via k r_k = sum_{i=1..k} i a_i r_{k-i}
Jet exp(const Jet& a) {
    Jet r;
    r.c[0] = std::exp(a.c[0]);
    for (int k = 1; k < 5; ++k) {
        double s = 0.0;
        for (int i = 1; i <= k; ++i) s += i * a.c[i] * r.c[k - i];
        r.c[k] = s / k;
    }
    return r;
}

// exp(-1/u) for u > 0, as a jet.
Jet flat_exp(const Jet& u) { return exp(-1.0 * reciprocal(u)); }

// Smooth step: 0 for u <= 0, 1 for u >= 1.
Jet smooth_step(const Jet& u) {
    if (u.c[0] <= 0.0) return Jet::constant(0.0);
    if (u.c[0] >= 1.0) return Jet::constant(1.0);
    const Jet f = flat_exp(u);
    const Jet g = flat_exp(Jet::constant(1.0) - u);
    return f / (f + g);
}

}  // namespace

SmoothWindow::SmoothWindow(std::vector<Term> terms) : terms_(std::move(terms)) {
    lo_ = terms_.front().lo;
    hi_ = terms_.front().hi;
    for (const auto& t : terms_) {
        lo_ = std::min(lo_, t.lo);
        hi_ = std::max(hi_, t.hi);
    }
}

SmoothWindow SmoothWindow::bump(double lo, double hi) {
    if (!(lo < hi)) throw InvalidArgument(fmt::format("bump: empty support [{}, {}]", lo, hi));
    return SmoothWindow({Term{1.0, WindowKind::bump, lo, lo, hi, hi}});
}

SmoothWindow SmoothWindow::plateau(double lo, double flat_lo, double flat_hi, double hi) {
    if (!(lo < flat_lo && flat_lo <= flat_hi && flat_hi < hi)) {
        throw InvalidArgument(fmt::format("plateau: need lo < a <= b < hi, got {}, {}, {}, {}", lo, flat_lo, flat_hi, hi));
    }
    return SmoothWindow({Term{1.0, WindowKind::plateau, lo, flat_lo, flat_hi, hi}});
}

WindowKind SmoothWindow::kind() const {
    return terms_.size() == 1 ? terms_.front().kind : WindowKind::combination;
}

std::optional<std::pair<double, double>> SmoothWindow::flat() const {
    if (terms_.size() != 1 || terms_.front().kind != WindowKind::plateau || terms_.front().weight != 1.0) {
        return std::nullopt;
    }
    return std::pair{terms_.front().flat_lo, terms_.front().flat_hi};
}

namespace {

template <typename Term>
Jet term_jet(const Term& t, double x) {
    if (x <= t.lo || x >= t.hi) return Jet::constant(0.0);
    const Jet xj = Jet::variable(x);
    if (t.kind == WindowKind::bump) {
        const double mid = 0.5 * (t.lo + t.hi);
        const double half = 0.5 * (t.hi - t.lo);
        const Jet s = (1.0 / half) * (xj - Jet::constant(mid));
        return flat_exp(Jet::constant(1.0) - s * s);
    }
    if (x >= t.flat_lo && x <= t.flat_hi) return Jet::constant(1.0);
    if (x < t.flat_lo) return smooth_step((1.0 / (t.flat_lo - t.lo)) * (xj - Jet::constant(t.lo)));
    return smooth_step((1.0 / (t.hi - t.flat_hi)) * (Jet::constant(t.hi) - xj));
}

}  // namespace

std::array<double, 5> SmoothWindow::derivatives(double x) const {
    Jet total;
    for (const auto& t : terms_) total = total + t.weight * term_jet(t, x);
    std::array<double, 5> out{};
    double factorial = 1.0;
    for (int k = 0; k < 5; ++k) {
        if (k > 0) factorial *= k;
        out[k] = total.c[k] * factorial;
    }
    return out;
}

double SmoothWindow::operator()(double x) const {
    double v = 0.0;
    for (const auto& t : terms_) {
        if (x <= t.lo || x >= t.hi) continue;
        if (t.kind == WindowKind::bump) {
            const double s = (2.0 * x - t.lo - t.hi) / (t.hi - t.lo);
            v += t.weight * std::exp(-1.0 / (1.0 - s * s));
        } else if (x >= t.flat_lo && x <= t.flat_hi) {
            v += t.weight;
        } else {
            const double u = x < t.flat_lo ? (x - t.lo) / (t.flat_lo - t.lo) : (t.hi - x) / (t.hi - t.flat_hi);
            const double f = std::exp(-1.0 / u);
            const double g = u < 1.0 ? std::exp(-1.0 / (1.0 - u)) : 0.0;
            v += t.weight * f / (f + g);
        }
    }
    return v;
}

std::array<double, 5> SmoothWindow::derivative_bounds(int samples) const {
    if (samples < 2) throw InvalidArgument("derivative_bounds: need at least 2 samples");
    std::array<double, 5> bounds{};
    for (int i = 0; i < samples; ++i) {
        const double x = lo_ + (hi_ - lo_) * i / (samples - 1);
        const auto d = derivatives(x);
        for (int k = 0; k < 5; ++k) bounds[k] = std::max(bounds[k], std::abs(d[k]));
    }
    return bounds;
}

std::vector<double> SmoothWindow::breakpoints() const {
    std::vector<double> pts;
    for (const auto& t : terms_) {
        pts.push_back(t.lo);
        pts.push_back(t.hi);
        if (t.kind == WindowKind::plateau) {
            pts.push_back(t.flat_lo);
            pts.push_back(t.flat_hi);
        }
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

double SmoothWindow::mass() const {
    const auto pts = breakpoints();
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        total += integrate_adaptive([this](double x) { return (*this)(x); }, pts[i], pts[i + 1], 1e-15, 4);
    }
    return total;
}

SmoothWindow SmoothWindow::scaled(double factor) const { return factor * *this; }

SmoothWindow SmoothWindow::normalized() const {
    const double m = mass();
    if (!(m != 0.0)) throw InvalidArgument("normalized: window has zero mass");
    return scaled(1.0 / m);
}

SmoothWindow operator+(const SmoothWindow& a, const SmoothWindow& b) {
    auto terms = a.terms_;
    terms.insert(terms.end(), b.terms_.begin(), b.terms_.end());
    return SmoothWindow(std::move(terms));
}

SmoothWindow operator*(double factor, const SmoothWindow& w) {
    auto terms = w.terms_;
    for (auto& t : terms) t.weight *= factor;
    return SmoothWindow(std::move(terms));
}

}  // namespace deltasums
