#include "deltasums/hurwitz.hpp"

#include <fmt/format.h>

#include <array>
#include <cmath>

#include "deltasums/error.hpp"

namespace deltasums {

namespace {

// B_{2j} / (2j)! for j = 1..9; the ninth is only used for the error bound.
constexpr std::array<double, 9> kBernoulliOverFactorial{
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
    1.0 / 74724249600.0,
    -3617.0 / 10670622842880000.0,
    43867.0 / 5109094217170944000.0,
};

constexpr int kTerms = 8;

// Bernoulli terms of the tail starting at x = N + a; returns sum and first omitted term.
std::pair<double, double> tail_terms(double s, double x) {
    double sum = 0.0;
    // rising factorial s (s+1) ... (s+2j-2) times x^(-s-2j+1)
    double factor = s * std::pow(x, -s - 1.0);
    for (int j = 1; j <= kTerms; ++j) {
        sum += kBernoulliOverFactorial[j - 1] * factor;
        factor *= (s + 2 * j - 1) * (s + 2 * j) / (x * x);
    }
    return {sum, std::abs(kBernoulliOverFactorial[kTerms] * factor)};
}

}  // namespace

HurwitzValue hurwitz_zeta_detail(double s, double a) {
    if (!(a > 0.0)) throw DomainError(fmt::format("hurwitz_zeta: a = {} must be positive", a));
    if (s == 1.0) throw DomainError("hurwitz_zeta: pole at s = 1");
    if (s <= 0.0) throw DomainError(fmt::format("hurwitz_zeta: s = {} must be positive", s));
    int shift = 0;
    for (;; ++shift) {
        const auto [sum, omitted] = tail_terms(s, shift + a);
        (void)sum;
        if (omitted < 1e-15 || shift > 100000) break;
    }
    double direct = 0.0;
    for (int n = shift - 1; n >= 0; --n) direct += std::pow(n + a, -s);
    const double x = shift + a;
    const auto [corr, omitted] = tail_terms(s, x);
    HurwitzValue out;
    out.value = direct + std::pow(x, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(x, -s) + corr;
    out.error_bound = omitted;
    out.shift = shift;
    return out;
}

double hurwitz_zeta(double s, double a) { return hurwitz_zeta_detail(s, a).value; }

}  // namespace deltasums
