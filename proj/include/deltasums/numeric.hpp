#pragma once

// Small numeric helpers shared by the sum and transform code.

#include <cmath>
#include <complex>
#include <numbers>

#include "deltasums/modular.hpp"

namespace deltasums {

using cplx = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// e(num/den) = exp(2 pi i num/den). The fraction is reduced into (-1/2, 1/2]
// in exact arithmetic first, and the quarter turns come out exact.
inline cplx unit_root(i64 num, i64 den) {
    i64 r = mod_floor(num, den);
    if (r == 0) return {1.0, 0.0};
    if (2 * static_cast<i128>(r) == den) return {-1.0, 0.0};
    if (4 * static_cast<i128>(r) == den) return {0.0, 1.0};
    if (4 * static_cast<i128>(r) == 3 * static_cast<i128>(den)) return {0.0, -1.0};
    if (2 * static_cast<i128>(r) > den) r -= den;
    const double angle = kTwoPi * (static_cast<double>(r) / static_cast<double>(den));
    return {std::cos(angle), std::sin(angle)};
}

// e(x) for real x; x is reduced mod 1 before exponentiation.
inline cplx unit_phase(double x) {
    x -= std::round(x);
    return {std::cos(kTwoPi * x), std::sin(kTwoPi * x)};
}

// Neumaier-compensated accumulator.
template <typename T>
class CompensatedSum;

template <>
class CompensatedSum<double> {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    CompensatedSum& operator+=(double x) {
        add(x);
        return *this;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

template <>
class CompensatedSum<cplx> {
public:
    void add(cplx x) {
        re_.add(x.real());
        im_.add(x.imag());
    }
    CompensatedSum& operator+=(cplx x) {
        add(x);
        return *this;
    }
    cplx value() const { return {re_.value(), im_.value()}; }

private:
    CompensatedSum<double> re_;
    CompensatedSum<double> im_;
};

}  // namespace deltasums
