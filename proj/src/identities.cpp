#include "deltasums/identities.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>

#include "deltasums/error.hpp"
#include "deltasums/expsums.hpp"
#include "deltasums/lfunctions.hpp"
#include "deltasums/quadrature.hpp"
#include "deltasums/transforms.hpp"

namespace deltasums {

namespace {

std::string join(const std::vector<i64>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
    return s;
}

}  // namespace

std::string PipelineConfig::describe() const {
    std::string s = fmt::format("kind={};M={};char={};N={};L={};P={}", to_string(seq.kind()), M(), chi.index(),
                                format_double(N), format_double(L), format_double(P));
    if (ell_set) s += ";ells=" + join(*ell_set);
    if (p_set) s += ";ps=" + join(*p_set);
    return s;
}

PipelineConfig make_pipeline_config(CoefficientKind kind, i64 M, double N, double L, double P, i64 char_index) {
    const i64 bound = static_cast<i64>(std::ceil(6.0 * N * L)) + 64;
    return PipelineConfig{N, DirichletCharacter(M, char_index), L, P, CoefficientSequence::of_kind(kind, bound),
                          SmoothWindow::standard_bump(), SmoothWindow::standard_plateau(), std::nullopt, std::nullopt};
}

namespace {

// The l set and L*; enough for the Hecke rewrite, which never sees P.
ResolvedAmplifier resolve_ells(const PipelineConfig& cfg) {
    ResolvedAmplifier amp;
    amp.ells = cfg.ell_set ? *cfg.ell_set : amplifier_lstar(cfg.seq, cfg.L).primes;
    if (amp.ells.empty()) throw DegenerateAmplifier(fmt::format("no primes in [{}, {}]", cfg.L, 2.0 * cfg.L));
    for (i64 ell : amp.ells) {
        if (!is_prime(ell)) throw InvalidArgument(fmt::format("amplifier: {} is not prime", ell));
        if (ell == cfg.M()) throw ParameterConflict(fmt::format("amplifier prime {} equals the modulus", ell));
        amp.lstar += cfg.seq(ell) * cfg.seq(ell);
    }
    if (!(amp.lstar > 0.0)) throw DegenerateAmplifier("L* = 0");
    return amp;
}

}  // namespace

ResolvedAmplifier resolve_amplifier(const PipelineConfig& cfg) {
    ResolvedAmplifier amp = resolve_ells(cfg);
    amp.ps = cfg.p_set ? *cfg.p_set
                       : primes_in(static_cast<i64>(std::ceil(cfg.P)), static_cast<i64>(std::floor(2.0 * cfg.P)));
    if (amp.ps.empty()) throw DegenerateAmplifier(fmt::format("no primes in [{}, {}]", cfg.P, 2.0 * cfg.P));
    for (i64 p : amp.ps) {
        if (!is_prime(p)) throw InvalidArgument(fmt::format("amplifier: {} is not prime", p));
        if (p == cfg.M()) throw ParameterConflict(fmt::format("amplifier prime {} equals the modulus", p));
        if (std::find(amp.ells.begin(), amp.ells.end(), p) != amp.ells.end()) {
            throw ParameterConflict(fmt::format("prime {} lies in both amplifier sets", p));
        }
    }
    amp.pstar = static_cast<double>(amp.ps.size());
    return amp;
}

SideConditions side_conditions(const PipelineConfig& cfg, double delta, double eps) {
    SideConditions sc;
    const double M = static_cast<double>(cfg.M());
    const auto ells = primes_in(static_cast<i64>(std::ceil(cfg.L)), static_cast<i64>(std::floor(2 * cfg.L)));
    const auto ps = primes_in(static_cast<i64>(std::ceil(cfg.P)), static_cast<i64>(std::floor(2 * cfg.P)));
    const auto& L_set = cfg.ell_set ? *cfg.ell_set : ells;
    const auto& P_set = cfg.p_set ? *cfg.p_set : ps;
    sc.disjoint = std::none_of(L_set.begin(), L_set.end(), [&](i64 l) {
        return std::find(P_set.begin(), P_set.end(), l) != P_set.end();
    });
    const auto has_m = [&](const std::vector<i64>& v) { return std::find(v.begin(), v.end(), cfg.M()) != v.end(); };
    sc.avoids_modulus = !has_m(L_set) && !has_m(P_set);
    sc.exact_detection = !P_set.empty() && std::all_of(P_set.begin(), P_set.end(), [&](i64 p) {
        return static_cast<double>(p) * M > 8.0 * cfg.N * cfg.L;
    });
    sc.p_exceeds_l = cfg.P > std::pow(cfg.L, 1.0 + eps);
    sc.c_equals_p = cfg.P * cfg.P < std::pow(M, 1.0 - delta) * cfg.L;
    sc.p_below_root_m = cfg.P < std::pow(M, 0.5 - eps);
    sc.p2l_below_n = cfg.P * cfg.P * cfg.L < std::pow(cfg.N, 1.0 - eps);
    return sc;
}

CheckReport hecke_amplifier_identity(const PipelineConfig& cfg) {
    const ResolvedAmplifier amp = resolve_ells(cfg);
    const auto& lambda = cfg.seq;
    const cplx lhs = smoothed_sum(lambda, cfg.chi, cfg.N, cfg.W);

    const auto [first, last] = window_range(cfg.W, cfg.N);
    CompensatedSum<cplx> main, correction;
    for (i64 ell : amp.ells) {
        const double l_ell = lambda(ell);
        for (i64 r = first; r <= last; ++r) {
            const double w = cfg.W(static_cast<double>(r) / cfg.N);
            if (w == 0.0) continue;
            const cplx chi_r = cfg.chi(r);
            main += l_ell * lambda(r * ell) * w * chi_r;
            if (r % ell == 0) correction += l_ell * lambda(r / ell) * w * chi_r;
        }
    }
    const cplx rhs = main.value() / amp.lstar;
    const cplx corr = correction.value() / amp.lstar;
    CheckReport report = make_check("hecke_amplifier_identity", cfg.describe(), std::abs(lhs),
                                    std::abs(lhs - (rhs + corr)), 1e-9);
    report.details = {{"rhs_abs", std::abs(rhs)}, {"correction_abs", std::abs(corr)}, {"lstar", amp.lstar}};
    return report;
}

CheckReport delta_detection_expansion(const PipelineConfig& cfg) {
    const ResolvedAmplifier amp = resolve_amplifier(cfg);
    const i64 M = cfg.M();
    for (i64 p : amp.ps) {
        if (!(static_cast<double>(p) * static_cast<double>(M) > 8.0 * cfg.N * cfg.L)) {
            throw ExactnessViolated(fmt::format("p M = {} does not exceed 8 N L = {}", p * M, 8.0 * cfg.N * cfg.L));
        }
    }
    const auto& lambda = cfg.seq;
    const auto [r_first, r_last] = window_range(cfg.V, cfg.N);

    // Before detection: only n = r l survives.
    CompensatedSum<cplx> pre, hecke_main;
    for (i64 ell : amp.ells) {
        const double l_ell = lambda(ell);
        for (i64 r = r_first; r <= r_last; ++r) {
            const double v = cfg.V(static_cast<double>(r) / cfg.N);
            const double w = cfg.W(static_cast<double>(r * ell) / (cfg.N * static_cast<double>(ell)));
            if (v == 0.0 || w == 0.0) continue;
            pre += l_ell * lambda(r * ell) * w * v * cfg.chi(r);
            hecke_main += l_ell * lambda(r * ell) * cfg.W(static_cast<double>(r) / cfg.N) * cfg.chi(r);
        }
    }
    const cplx pre_value = pre.value() / amp.lstar;

    // After detection: every divisor class c of pM and every unit alpha mod c.
    std::array<CompensatedSum<cplx>, 4> by_class;  // c = 1, p, M, pM
    for (i64 ell : amp.ells) {
        const double l_ell = lambda(ell);
        const double Nl = cfg.N * static_cast<double>(ell);
        const auto [n_first, n_last] = window_range(cfg.W, Nl);
        std::vector<std::pair<i64, double>> n_terms, r_terms;
        for (i64 n = n_first; n <= n_last; ++n) {
            const double w = cfg.W(static_cast<double>(n) / Nl);
            if (w != 0.0) n_terms.emplace_back(n, lambda(n) * w);
        }
        std::vector<cplx> chi_v;
        for (i64 r = r_first; r <= r_last; ++r) {
            const double v = cfg.V(static_cast<double>(r) / cfg.N);
            if (v != 0.0) {
                r_terms.emplace_back(r, v);
                chi_v.push_back(cfg.chi(r) * v);
            }
        }
        for (i64 p : amp.ps) {
            const i64 q = p * M;
            const std::array<i64, 4> classes{1, p, M, q};
            for (std::size_t k = 0; k < classes.size(); ++k) {
                const i64 c = classes[k];
                CompensatedSum<cplx> inner;
                for (i64 alpha = 0; alpha < c; ++alpha) {
                    if (std::gcd(alpha, c) != 1) continue;
                    CompensatedSum<cplx> n_sum, r_sum;
                    for (const auto& [n, coeff] : n_terms) n_sum += coeff * unit_root(mul_mod(alpha, n, c), c);
                    for (std::size_t j = 0; j < r_terms.size(); ++j) {
                        const i64 r = r_terms[j].first;
                        r_sum += chi_v[j] * unit_root(-mul_mod(alpha, mul_mod(r, ell, c), c), c);
                    }
                    inner += n_sum.value() * r_sum.value();
                }
                by_class[k] += l_ell * inner.value() / static_cast<double>(q);
            }
        }
    }
    cplx post{};
    const double norm = amp.lstar * amp.pstar;
    for (auto& s : by_class) post += s.value();
    post /= norm;

    CheckReport report = make_check("delta_detection_expansion", cfg.describe(), std::abs(pre_value),
                                    std::abs(post - pre_value), 1e-8);
    report.details = {
        {"post_abs", std::abs(post)},
        {"c=1", std::abs(by_class[0].value()) / norm},
        {"c=p", std::abs(by_class[1].value()) / norm},
        {"c=M", std::abs(by_class[2].value()) / norm},
        {"c=pM", std::abs(by_class[3].value()) / norm},
        // V is 1 on the support of W, so the detected sum is the Hecke main term.
        {"v_dropped_residual", std::abs(pre_value - hecke_main.value() / amp.lstar)},
    };
    return report;
}

i64 voronoi_coefficient_bound(double N, i64 c) {
    const double cc = static_cast<double>(c);
    return static_cast<i64>(std::ceil(std::max(2.5 * N, 6.0e4 * cc * cc / N))) + 256;
}

namespace {

constexpr double kDualTolerance = 1e-12;
constexpr int kDualRun = 64;

struct DualPart {
    cplx sum;
    i64 terms = 0;
};

// (N/c) sum_n lambda(n) [e(-abar n/c) W+(y_n) + e(abar n/c) W-(y_n)], y_n = n N / c^2
DualPart dual_sum(const CoefficientSequence& seq, i64 abar, i64 c, double N, const SmoothWindow& W,
                  const VoronoiOptions& options) {
    const CoefficientKind kind = seq.kind();
    const int weight = seq.weight();
    const bool has_minus = kind == CoefficientKind::divisor;
    const auto transform = [&](DualSign sign, double y) {
        if (options.fixed_rule) {
            return voronoi_transform_fixed(kind, weight, sign, W, y, options.panels_per_cycle, options.order);
        }
        return voronoi_transform(kind, weight, sign, W, y);
    };
    const double scale = N / static_cast<double>(c * c);
    CompensatedSum<cplx> sum;
    int quiet = 0;
    i64 n = 1;
    for (;; ++n) {
        if (options.dual_terms > 0 && n > options.dual_terms) break;
        const double y = static_cast<double>(n) * scale;
        const double plus = transform(DualSign::plus, y);
        const double minus = has_minus ? transform(DualSign::minus, y) : 0.0;
        const double coeff = seq(n);
        const i64 phase = mul_mod(abar, n, c);
        sum += coeff * (plus * unit_root(-phase, c) + minus * unit_root(phase, c));
        if (options.dual_terms == 0) {
            quiet = std::max(std::abs(plus), std::abs(minus)) < kDualTolerance && y > 10.0 ? quiet + 1 : 0;
            if (quiet >= kDualRun) break;
        }
    }
    return {sum.value() * (N / static_cast<double>(c)), options.dual_terms > 0 ? options.dual_terms : n};
}

cplx voronoi_main_term(const CoefficientSequence& seq, i64 c, double N, const SmoothWindow& W) {
    if (seq.kind() != CoefficientKind::divisor) return 0.0;
    const double shift = 2.0 * std::numbers::egamma - 2.0 * std::log(static_cast<double>(c));
    const auto pts = W.breakpoints();
    double integral = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        integral += integrate_adaptive([&](double x) { return (std::log(x * N) + shift) * W(x); }, pts[i], pts[i + 1],
                                       1e-15, 4);
    }
    return N / static_cast<double>(c) * integral;
}

}  // namespace

VoronoiReport voronoi_step(const CoefficientSequence& seq, i64 a, i64 c, double N, const SmoothWindow& W,
                           const VoronoiOptions& options) {
    if (seq.kind() == CoefficientKind::maass) throw UnsupportedCoefficientKind("voronoi_step: Maass forms");
    if (c < 1) throw InvalidArgument(fmt::format("voronoi_step: c = {} < 1", c));
    if (std::gcd(a, c) != 1) throw NotCoprime(fmt::format("voronoi_step: gcd({}, {}) > 1", a, c));
    const i64 abar = inverse_or_zero(a, c);

    VoronoiReport report;
    const auto [first, last] = window_range(W, N);
    CompensatedSum<cplx> lhs;
    for (i64 n = first; n <= last; ++n) {
        const double w = W(static_cast<double>(n) / N);
        if (w != 0.0) lhs += seq(n) * w * unit_root(mul_mod(mod_floor(a, c), n, c), c);
    }
    report.lhs = lhs.value();
    report.main_term = voronoi_main_term(seq, c, N, W);
    const DualPart dual = dual_sum(seq, abar, c, N, W, options);
    report.dual = dual.sum;
    report.dual_terms = dual.terms;
    report.residual = std::abs(report.lhs - report.main_term - report.dual);
    report.relative_residual = report.residual / (1.0 + std::abs(report.lhs));
    report.pass = report.relative_residual < 1e-6;
    return report;
}

CheckReport voronoi_step_check(const CoefficientSequence& seq, i64 a, i64 c, double N, const SmoothWindow& W) {
    const VoronoiReport r = voronoi_step(seq, a, c, N, W);
    CheckReport report = make_check("voronoi_step_check",
                                    fmt::format("kind={};a={};c={};N={}", to_string(seq.kind()), a, c, format_double(N)),
                                    std::abs(r.lhs), r.relative_residual, 1e-6);
    report.details = {{"main_term_abs", std::abs(r.main_term)},
                      {"dual_abs", std::abs(r.dual)},
                      {"dual_terms", static_cast<double>(r.dual_terms)}};
    return report;
}

std::vector<double> voronoi_refinement_profile(const CoefficientSequence& seq, i64 a, i64 c, double N,
                                               const SmoothWindow& W, int levels, int base_panels, int order) {
    const VoronoiReport adaptive = voronoi_step(seq, a, c, N, W);
    std::vector<double> residuals;
    VoronoiOptions options;
    options.fixed_rule = true;
    options.order = order;
    options.dual_terms = adaptive.dual_terms;
    for (int level = 0; level < levels; ++level) {
        options.panels_per_cycle = base_panels << level;
        residuals.push_back(voronoi_step(seq, a, c, N, W, options).residual);
    }
    return residuals;
}

bool refinement_order_holds(const std::vector<double>& residuals, double factor, double floor) {
    if (residuals.size() < 2) return false;
    for (std::size_t i = 0; i + 1 < residuals.size(); ++i) {
        if (residuals[i + 1] < floor) break;
        if (!(residuals[i] >= factor * residuals[i + 1])) return false;
    }
    return true;
}

namespace {

struct BetaSetup {
    i64 Q;    // [c, M]
    i64 cM;   // c / (c, M)
    i64 Mc;   // M / (c, M)
};

BetaSetup beta_setup(const DirichletCharacter& chi, i64 c, i64 p, i64 alpha) {
    const i64 M = chi.M();
    if (!is_prime(p) || p == M) throw InvalidArgument(fmt::format("beta sum: p = {} must be a prime other than {}", p, M));
    if (c < 1 || (p * M) % c != 0) throw InvalidDivisor(fmt::format("beta sum: {} does not divide {}", c, p * M));
    if (std::gcd(alpha, c) != 1) throw NotCoprime(fmt::format("beta sum: gcd({}, {}) > 1", alpha, c));
    const GcdSplit s = gcd_split(c, M);
    return {s.lcm, s.a_b, s.b_a};
}

cplx beta_sum_direct(const DirichletCharacter& chi, i64 c, i64 alpha, i64 ell, i64 r, i64 Q) {
    // e(-alpha beta l / c) e(r beta / Q) = e(beta (r - alpha l Q/c) / Q)
    const i64 t = mod_floor(r - mul_mod(mul_mod(alpha, ell, Q), Q / c, Q), Q);
    CompensatedSum<cplx> sum;
    for (i64 beta = 1; beta < Q; ++beta) {
        if (beta % chi.M() == 0) continue;
        sum += chi(beta) * unit_root(mul_mod(beta, t, Q), Q);
    }
    return sum.value();
}

cplx beta_sum_closed(const DirichletCharacter& chi, const BetaSetup& s, i64 alpha, i64 ell, i64 r, const cplx& gauss) {
    const i64 t = r - mul_mod(mul_mod(alpha, ell, s.cM * chi.M()), s.Mc, s.cM * chi.M());
    if (mod_floor(t, s.cM) != 0) return 0.0;
    const i64 arg = mul_mod(mod_floor(t, chi.M()), inverse_or_zero(s.cM, chi.M()), chi.M());
    return std::conj(chi(arg)) * gauss * static_cast<double>(s.cM);
}

}  // namespace

BetaSumReport beta_sum_evaluation(const DirichletCharacter& chi, i64 c, i64 p, i64 alpha, i64 ell, i64 r) {
    chi.require_primitive("beta_sum_evaluation");
    const BetaSetup s = beta_setup(chi, c, p, alpha);
    BetaSumReport report;
    report.lhs = beta_sum_direct(chi, c, alpha, ell, r, s.Q);
    report.rhs = beta_sum_closed(chi, s, alpha, ell, r, gauss_sum(chi));
    report.delta_holds = mod_floor(r - alpha * ell % s.cM * s.Mc, s.cM) == 0;
    report.residual = std::abs(report.lhs - report.rhs);
    report.pass = report.residual < 1e-9;
    return report;
}

bool beta_sum_evaluation_check(const DirichletCharacter& chi, i64 c, i64 p, i64 alpha, i64 ell, i64 r) {
    return beta_sum_evaluation(chi, c, p, alpha, ell, r).pass;
}

namespace {

// Values of the Fourier dual at r N / [c, M], shared by every r-sum with the same c.
using DualCache = std::map<i64, cplx>;

PoissonReport poisson_impl(const DirichletCharacter& chi, i64 c, i64 p, i64 alpha, i64 ell, double N,
                           const SmoothWindow& V, DualCache& vhat) {
    chi.require_primitive("poisson_r_sum");
    const BetaSetup s = beta_setup(chi, c, p, alpha);
    const cplx gauss = gauss_sum(chi);
    PoissonReport report;

    const auto [first, last] = window_range(V, N);
    CompensatedSum<cplx> lhs;
    for (i64 r = first; r <= last; ++r) {
        const double v = V(static_cast<double>(r) / N);
        if (v != 0.0) lhs += chi(r) * v * unit_root(-mul_mod(mod_floor(alpha, c), mul_mod(r, mod_floor(ell, c), c), c), c);
    }
    report.lhs = lhs.value();

    const double Q = static_cast<double>(s.Q);
    const auto dual = [&](i64 R, bool closed) {
        CompensatedSum<cplx> sum;
        for (i64 r = -R; r <= R; ++r) {
            const cplx beta = closed ? beta_sum_closed(chi, s, alpha, ell, r, gauss) : beta_sum_direct(chi, c, alpha, ell, r, s.Q);
            if (beta == cplx{}) continue;
            auto it = vhat.find(r);
            if (it == vhat.end()) it = vhat.emplace(r, fourier_dual(V, static_cast<double>(r) * N / Q)).first;
            sum += beta * it->second;
        }
        return sum.value() * (N / Q);
    };
    i64 R = static_cast<i64>(std::ceil(20.0 * Q / N));
    cplx current = dual(R, false);
    for (int doubling = 0; doubling < 6; ++doubling) {
        const cplx wider = dual(2 * R, false);
        const bool stable = std::abs(wider - current) <= 1e-9;
        if (!stable) report.flagged = true;
        R *= 2;
        current = wider;
        if (stable) break;
    }
    report.truncation = R;
    report.rhs = current;
    report.rhs_closed = dual(R, true);
    const double scale = 1.0 + std::abs(report.lhs);
    report.residual = std::abs(report.lhs - report.rhs);
    report.residual_closed = std::abs(report.lhs - report.rhs_closed);
    report.pass = report.residual < 1e-6 * scale && report.residual_closed < 1e-6 * scale;
    return report;
}

}  // namespace

PoissonReport poisson_r_sum(const DirichletCharacter& chi, i64 c, i64 p, i64 alpha, i64 ell, double N,
                            const SmoothWindow& V) {
    DualCache vhat;
    return poisson_impl(chi, c, p, alpha, ell, N, V, vhat);
}

CheckReport poisson_r_sum_check(const DirichletCharacter& chi, i64 c, i64 p, i64 alpha, i64 ell, double N,
                                const SmoothWindow& V) {
    const PoissonReport r = poisson_r_sum(chi, c, p, alpha, ell, N, V);
    const double scale = 1.0 + std::abs(r.lhs);
    CheckReport report = make_check(
        "poisson_r_sum_check",
        fmt::format("M={};char={};c={};p={};alpha={};ell={};N={}", chi.M(), chi.index(), c, p, alpha, ell, format_double(N)),
        std::abs(r.lhs), std::max(r.residual, r.residual_closed) / scale, 1e-6);
    report.details = {{"truncation", static_cast<double>(r.truncation)}, {"flagged", r.flagged ? 1.0 : 0.0}};
    return report;
}

CheckReport composite_dual_check(const CoefficientSequence& seq, const DirichletCharacter& chi, i64 p, i64 ell,
                                 double N) {
    chi.require_primitive("composite_dual_check");
    const i64 M = chi.M();
    const i64 q = p * M;
    if (!(static_cast<double>(q) > 2.0 * N * static_cast<double>(ell))) {
        throw ExactnessViolated(fmt::format("composite_dual_check: pM = {} <= 2 N l", q));
    }
    const SmoothWindow W = SmoothWindow::standard_bump();
    const SmoothWindow V = SmoothWindow::standard_plateau();

    const auto [r_first, r_last] = window_range(V, N);
    CompensatedSum<cplx> pre;
    for (i64 r = r_first; r <= r_last; ++r) {
        const double v = V(static_cast<double>(r) / N), w = W(static_cast<double>(r) / N);
        if (v != 0.0 && w != 0.0) pre += seq(r * ell) * chi(r) * v * w;
    }

    const double Nl = N * static_cast<double>(ell);
    const auto [n_first, n_last] = window_range(W, Nl);
    CompensatedSum<cplx> post;
    for (i64 c : divisors(q)) {
        DualCache vhat;
        for (i64 alpha = 0; alpha < c; ++alpha) {
            if (std::gcd(alpha, c) != 1) continue;
            CompensatedSum<cplx> n_sum;
            for (i64 n = n_first; n <= n_last; ++n) {
                const double w = W(static_cast<double>(n) / Nl);
                if (w != 0.0) n_sum += seq(n) * w * unit_root(mul_mod(alpha, n, c), c);
            }
            const PoissonReport r_sum = poisson_impl(chi, c, p, alpha, ell, N, V, vhat);
            post += n_sum.value() * r_sum.rhs_closed;
        }
    }
    const cplx post_value = post.value() / static_cast<double>(q);
    return make_check("composite_dual_check",
                      fmt::format("kind={};M={};char={};p={};ell={};N={}", to_string(seq.kind()), M, chi.index(), p,
                                  ell, format_double(N)),
                      std::abs(pre.value()), std::abs(post_value - pre.value()), 1e-6);
}

}  // namespace deltasums
