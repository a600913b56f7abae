#include "deltasums/suites.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "deltasums/error.hpp"
#include "deltasums/expsums.hpp"
#include "deltasums/identities.hpp"
#include "deltasums/parallel.hpp"
#include "deltasums/transforms.hpp"

namespace deltasums {

namespace {

using Task = std::function<std::vector<CheckReport>()>;

std::vector<CheckReport> run_tasks(const std::vector<Task>& tasks, int jobs) {
    std::vector<std::vector<CheckReport>> slots(tasks.size());
    parallel_for(tasks.size(), jobs, [&](std::size_t i) { slots[i] = tasks[i](); });
    std::vector<CheckReport> out;
    for (auto& s : slots) {
        for (auto& r : s) out.push_back(std::move(r));
    }
    return out;
}

std::vector<i64> suite_primes(i64 lo, i64 hi) { return primes_in(std::max<i64>(lo, 5), hi); }

}  // namespace

const std::vector<std::string_view>& suite_names() {
    static const std::vector<std::string_view> names{"delta", "characters", "appendix", "pipeline", "voronoi"};
    return names;
}

bool is_suite(std::string_view name) {
    const auto& names = suite_names();
    return name == "all" || std::find(names.begin(), names.end(), name) != names.end();
}

std::vector<CheckReport> trivial_delta_checks(i64 qmax, i64 dmax, int jobs) {
    constexpr i64 block = 50;
    std::vector<Task> tasks;
    for (i64 q0 = 1; q0 <= qmax; q0 += block) {
        const i64 q1 = std::min(qmax, q0 + block - 1);
        tasks.emplace_back([q0, q1, dmax] {
            double worst = 0.0, biggest = 0.0;
            for (i64 q = q0; q <= q1; ++q) {
                const TrivialDeltaKernel kernel(q);
                for (i64 d = -dmax; d <= dmax; ++d) {
                    const cplx v = kernel(d);
                    const double indicator = d % q == 0 ? 1.0 : 0.0;
                    worst = std::max(worst, std::abs(v - indicator));
                    biggest = std::max(biggest, std::abs(v));
                }
            }
            return std::vector{make_check("trivial_delta", fmt::format("q={}..{};dmax={}", q0, q1, dmax), biggest, worst, 1e-10)};
        });
    }
    return run_tasks(tasks, jobs);
}

CheckReport frak_k_exact_check(i64 M) {
    double worst = 0.0, biggest = 0.0;
    for (const auto& chi : enumerate_characters(M, CharacterFilter::primitive)) {
        for (i64 r = 1; r < M; ++r) {
            for (i64 ell : {i64{1}, M - 1, i64{2}}) {
                const cplx brute = frak_k(chi, r, ell, M).value;
                const cplx expected = -std::conj(chi(r));
                worst = std::max(worst, std::abs(brute - expected));
                biggest = std::max(biggest, std::abs(brute));
            }
        }
    }
    return make_check("frak_k_exact_case", fmt::format("M={};n=M", M), biggest, worst, 1e-9);
}

std::vector<CheckReport> frak_c_case_checks(i64 M) {
    const std::array<FrakCCase, 3> cases{FrakCCase::m_divides_n, FrakCCase::reciprocal_shift, FrakCCase::doubly_degenerate};
    std::array<double, 3> worst{}, biggest{};
    std::array<i64, 3> count{};
    const auto record = [&](const DirichletCharacter& chi, i64 r1, i64 r2, i64 a, i64 b, i64 n) {
        const FrakCCase k = classify_frak_c(M, r1, r2, a, b, n);
        const auto idx = static_cast<std::size_t>(std::find(cases.begin(), cases.end(), k) - cases.begin());
        if (idx >= cases.size()) return;
        const auto closed = frak_c_closed_form(chi, r1, r2, a, b, n);
        if (!closed) return;
        const cplx brute = frak_c(chi, r1, r2, a, b, n).value;
        worst[idx] = std::max(worst[idx], std::abs(brute - closed->value));
        biggest[idx] = std::max(biggest[idx], std::abs(brute));
        ++count[idx];
    };
    for (const auto& chi : enumerate_characters(M, CharacterFilter::primitive)) {
        for (i64 a = 1; a < M; ++a) {
            for (i64 b = 1; b < M; ++b) {
                for (i64 r1 = 1; r1 < M; ++r1) {
                    const i64 r1_bar = mod_inverse(r1, M);
                    for (i64 r2 = 1; r2 < M; ++r2) {
                        record(chi, r1, r2, a, b, M);  // case (i)
                        const i64 shift = mod_floor(mul_mod(b, r1_bar, M) - mul_mod(a, mod_inverse(r2, M), M), M);
                        if (shift != 0) record(chi, r1, r2, a, b, shift);  // case (ii)
                    }
                }
                for (i64 n = 1; n < M; ++n) {  // case (iii): r1 = inv(n) b, r2 = -inv(n) a
                    const i64 n_bar = mod_inverse(n, M);
                    record(chi, mul_mod(n_bar, b, M), mod_floor(-mul_mod(n_bar, a, M), M), a, b, n);
                }
            }
        }
    }
    std::vector<CheckReport> out;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        CheckReport r = make_check(fmt::format("frak_c_{}", to_string(cases[i])), fmt::format("M={}", M), biggest[i],
                                   worst[i], 1e-9);
        if (count[i] == 0) r.pass = false;
        r.details = {{"instances", static_cast<double>(count[i])}};
        out.push_back(std::move(r));
    }
    return out;
}

CheckReport weil_bound_check(i64 p) {
    double worst = 0.0;
    for (i64 a = 0; a < p; ++a) {
        // S(0, 0; p) = p - 1 is the one pair outside the bound
        for (i64 b = (a == 0 ? 1 : 0); b < p; ++b) worst = std::max(worst, std::abs(kloosterman_sum(a, b, p)));
    }
    // residual: |S| / (2 sqrt p); the bound holds when it is at most 1
    const double ratio = worst / (2.0 * std::sqrt(static_cast<double>(p)));
    return make_check("kloosterman_weil_bound", fmt::format("p={}", p), worst, ratio, 1.0 + 1e-12);
}

CheckReport gauss_magnitude_check(i64 M) {
    double worst = 0.0;
    const double root = std::sqrt(static_cast<double>(M));
    for (const auto& chi : enumerate_characters(M, CharacterFilter::primitive)) {
        worst = std::max(worst, std::abs(std::abs(gauss_sum(chi)) - root));
    }
    return make_check("gauss_sum_magnitude", fmt::format("M={}", M), root, worst, 1e-9);
}

std::vector<CheckReport> beta_sum_exhaustive_checks(i64 M, i64 p) {
    std::vector<CheckReport> out;
    for (i64 c : divisors(p * M)) {
        const i64 Q = std::lcm(c, M);
        double worst = 0.0, biggest = 0.0;
        i64 zero_branch = 0, nonzero_branch = 0;
        for (const auto& chi : enumerate_characters(M, CharacterFilter::primitive)) {
            for (i64 alpha = 0; alpha < c; ++alpha) {
                if (std::gcd(alpha, c) != 1) continue;
                for (i64 ell = 0; ell < c; ++ell) {
                    for (i64 r = 0; r < Q; ++r) {
                        const BetaSumReport b = beta_sum_evaluation(chi, c, p, alpha, ell, r);
                        worst = std::max(worst, b.residual);
                        biggest = std::max(biggest, std::abs(b.lhs));
                        ++(b.delta_holds ? nonzero_branch : zero_branch);
                    }
                }
            }
        }
        CheckReport r = make_check("beta_sum_evaluation", fmt::format("M={};p={};c={}", M, p, c), biggest, worst, 1e-9);
        r.details = {{"delta_true", static_cast<double>(nonzero_branch)}, {"delta_false", static_cast<double>(zero_branch)}};
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<GridPoint> pipeline_grid(std::optional<i64> only_M) {
    std::vector<GridPoint> grid;
    for (CoefficientKind kind : {CoefficientKind::divisor, CoefficientKind::delta_form}) {
        for (i64 M : {i64{11}, i64{101}}) {
            if (only_M && *only_M != M) continue;
            for (double N : {10.0, 40.0}) {
                for (double L : {2.0, 3.0}) {
                    for (double P : {5.0, 7.0}) grid.push_back({kind, M, N, L, P});
                }
            }
        }
    }
    return grid;
}

namespace {

std::vector<Task> delta_tasks(const SuiteOptions& o) {
    // trivial_delta_checks already splits into blocks; wrap as one task list
    return {[o] { return trivial_delta_checks(o.qmax, o.dmax, 1); }};
}

std::vector<Task> character_tasks(const SuiteOptions& o) {
    std::vector<Task> tasks;
    for (i64 M : suite_primes(5, o.mmax)) {
        tasks.emplace_back([M] {
            std::vector<CheckReport> out;
            out.push_back(make_check("character_orthogonality", fmt::format("M={}", M), 0.0, orthogonality_residual(M), 1e-12));
            out.push_back(gauss_magnitude_check(M));
            double worst = 0.0;
            for (const auto& chi : enumerate_characters(M, CharacterFilter::primitive)) {
                const cplx g_bar = gauss_sum(chi.conj());
                for (i64 a = 0; a < M; ++a) {
                    CompensatedSum<cplx> s;
                    for (i64 y = 1; y < M; ++y) s += std::conj(chi(y)) * unit_root(mul_mod(a, y, M), M);
                    worst = std::max(worst, std::abs(chi(a) - s.value() / g_bar));
                }
            }
            out.push_back(make_check("gauss_fourier_expansion", fmt::format("M={}", M), 1.0, worst, 1e-10));
            double ram = 0.0;
            for (i64 a = 0; a < M; ++a) ram = std::max(ram, std::abs(ramanujan_sum(M, a) - static_cast<double>(ramanujan_sum_closed(M, a))));
            out.push_back(make_check("ramanujan_sum_closed_form", fmt::format("M={}", M), static_cast<double>(M - 1), ram, 1e-9));
            return out;
        });
    }
    tasks.emplace_back([o] {
        const i64 top = std::max<i64>(o.mmax, 5);
        i64 failures = 0, checked = 0;
        for (i64 a = 1; a <= top; ++a) {
            for (i64 c = 1; c <= top; ++c) {
                if (std::gcd(a, c) != 1) continue;
                ++checked;
                if (!reciprocity_check(a, c)) ++failures;
            }
        }
        CheckReport r = make_check("reciprocity", fmt::format("a,c<={}", top), static_cast<double>(checked),
                                   static_cast<double>(failures), 0.5);
        return std::vector{r};
    });
    return tasks;
}

std::vector<Task> appendix_tasks(const SuiteOptions& o) {
    std::vector<Task> tasks;
    for (i64 M : suite_primes(5, o.mmax)) tasks.emplace_back([M] { return std::vector{frak_k_exact_check(M)}; });
    for (i64 M : {i64{5}, i64{7}, i64{11}, i64{13}}) {
        if (M <= o.mmax) tasks.emplace_back([M] { return frak_c_case_checks(M); });
    }
    for (i64 p : primes_in(2, std::min<i64>(o.mmax, 200))) tasks.emplace_back([p] { return std::vector{weil_bound_check(p)}; });
    const auto profile_primes = suite_primes(5, std::min<i64>(o.mmax, 101));
    if (!profile_primes.empty()) {
        const i64 M = profile_primes.back();
        for (SumFamily family : {SumFamily::frak_k, SumFamily::frak_c}) {
            tasks.emplace_back([M, family, o] {
                const auto prof = sqrt_cancellation_profile(family, M, o.samples, o.seed);
                CheckReport r = make_check(fmt::format("sqrt_cancellation_{}", to_string(family)),
                                           fmt::format("M={};samples={};seed={}", M, o.samples, o.seed),
                                           prof.max_ratio * std::sqrt(static_cast<double>(M)), prof.max_ratio, 10.0);
                r.details = {{"mean_ratio", prof.mean_ratio}};
                return std::vector{r};
            });
        }
    }
    for (i64 M : {i64{5}, i64{7}, i64{11}}) {
        if (M > o.mmax) continue;
        for (i64 p : {i64{2}, i64{3}}) {
            tasks.emplace_back([M, p] {
                double worst = 0.0, biggest = 0.0;
                const i64 q = p * M;
                for (const auto& chi : enumerate_characters(M, CharacterFilter::primitive)) {
                    for (i64 r = 1; r < q; ++r) {
                        if (r % p == 0) continue;
                        for (i64 ell = 1; ell < q; ++ell) {
                            if (ell % p == 0) continue;
                            for (i64 n : {i64{1}, i64{2}, p, M, q - 1}) {
                                const auto f = alpha_factorization(chi, p, r, ell, n);
                                worst = std::max(worst, f.residual);
                                biggest = std::max({biggest, std::abs(f.lhs[0]), std::abs(f.lhs[1])});
                            }
                        }
                    }
                }
                return std::vector{make_check("alpha_factorization", fmt::format("M={};p={}", M, p), biggest, worst, 1e-10)};
            });
        }
    }
    return tasks;
}

std::vector<Task> pipeline_tasks(const SuiteOptions& o) {
    std::vector<Task> tasks;
    for (const GridPoint& g : pipeline_grid(o.M)) {
        tasks.emplace_back([g] {
            const auto cfg = make_pipeline_config(g.kind, g.M, g.N, g.L, g.P);
            std::vector<CheckReport> out{hecke_amplifier_identity(cfg)};
            // Delta detection only where the amplifier is admissible and exact.
            const SideConditions sc = side_conditions(cfg);
            if (sc.disjoint && sc.avoids_modulus && sc.exact_detection) out.push_back(delta_detection_expansion(cfg));
            return out;
        });
    }
    // Fixed examples
    tasks.emplace_back([] {
        std::vector<CheckReport> out;
        out.push_back(hecke_amplifier_identity(make_pipeline_config(CoefficientKind::divisor, 11, 20, 3, 7)));
        out.push_back(hecke_amplifier_identity(make_pipeline_config(CoefficientKind::delta_form, 13, 30, 3, 7)));
        auto single = make_pipeline_config(CoefficientKind::divisor, 101, 10, 2, 5);
        single.p_set = std::vector<i64>{7};
        out.push_back(delta_detection_expansion(single));
        return out;
    });
    for (i64 M : {i64{5}, i64{7}}) {
        for (i64 p : {i64{2}, i64{3}}) tasks.emplace_back([M, p] { return beta_sum_exhaustive_checks(M, p); });
    }
    tasks.emplace_back([] {
        std::vector<CheckReport> out;
        const DirichletCharacter chi(11, 1);
        const SmoothWindow V = SmoothWindow::standard_plateau();
        out.push_back(poisson_r_sum_check(chi, 11, 3, 1, 2, 30.0, V));
        out.push_back(poisson_r_sum_check(chi, 33, 3, 2, 5, 30.0, V));
        out.push_back(poisson_r_sum_check(chi, 3, 3, 1, 3, 30.0, V));     // c | l: additive character collapses
        out.push_back(poisson_r_sum_check(chi, 11, 3, 1, 2, 400.0, V));  // long sum: dual mass at r = 0
        return out;
    });
    tasks.emplace_back([] {
        const auto seq = CoefficientSequence::divisor(256);
        return std::vector{composite_dual_check(seq, DirichletCharacter(11, 1), 3, 2, 8.0)};
    });
    return tasks;
}

std::vector<Task> voronoi_tasks(const SuiteOptions&) {
    std::vector<Task> tasks;
    const SmoothWindow W = SmoothWindow::standard_bump();
    struct Case {
        CoefficientKind kind;
        i64 a, c;
        double N;
    };
    const std::vector<Case> cases{{CoefficientKind::delta_form, 1, 3, 40}, {CoefficientKind::delta_form, 1, 4, 50},
                                  {CoefficientKind::delta_form, 2, 5, 60}, {CoefficientKind::divisor, 1, 3, 40},
                                  {CoefficientKind::divisor, 1, 1, 40}};
    for (const Case& k : cases) {
        tasks.emplace_back([k, W] {
            const auto seq = CoefficientSequence::of_kind(k.kind, voronoi_coefficient_bound(k.N, k.c));
            return std::vector{voronoi_step_check(seq, k.a, k.c, k.N, W)};
        });
    }
    tasks.emplace_back([W] {
        std::vector<CheckReport> out;
        const SmoothWindow V = SmoothWindow::standard_plateau();
        const auto fgrid = linear_grid(1.0, 100.0, 199);
        const DecayReport f = fourier_decay_check(V, 4.0, fgrid);
        out.push_back(make_check("decay_fourier_dual", "A=4;x=1..100", f.constant, f.finite ? 0.0 : 1.0, 0.5));
        const auto ygrid = linear_grid(1.0, 50.0, 99);
        const DecayReport k = voronoi_decay_check(CoefficientKind::divisor, 0, DualSign::minus, W, 4.0, ygrid);
        out.push_back(make_check("decay_voronoi_divisor_minus", "A=4;y=1..50", k.constant, k.finite ? 0.0 : 1.0, 0.5));
        return out;
    });
    return tasks;
}

}  // namespace

std::vector<CheckReport> run_suite(std::string_view name, const SuiteOptions& options) {
    if (!is_suite(name)) throw InvalidArgument(fmt::format("unknown suite '{}'", name));
    std::vector<Task> tasks;
    const auto add = [&](std::string_view suite) {
        std::vector<Task> more;
        if (suite == "delta") more = delta_tasks(options);
        if (suite == "characters") more = character_tasks(options);
        if (suite == "appendix") more = appendix_tasks(options);
        if (suite == "pipeline") more = pipeline_tasks(options);
        if (suite == "voronoi") more = voronoi_tasks(options);
        tasks.insert(tasks.end(), more.begin(), more.end());
    };
    if (name == "all") {
        for (auto s : suite_names()) add(s);
    } else {
        add(name);
    }
    return run_tasks(tasks, options.jobs);
}

}  // namespace deltasums
