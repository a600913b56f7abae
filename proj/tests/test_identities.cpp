#include "doctest.h"

#include <cmath>
#include <numeric>
#include <tuple>

#include "deltasums/error.hpp"
#include "deltasums/expsums.hpp"
#include "deltasums/identities.hpp"
#include "deltasums/lfunctions.hpp"

using namespace deltasums;

namespace {

cplx smoothed_oracle(const CoefficientSequence& seq, const DirichletCharacter& chi, double N, const SmoothWindow& W) {
    cplx s{};
    for (i64 n = 1; n <= static_cast<i64>(2 * N) + 1; ++n) s += seq(n) * chi(n) * W(n / N);
    return s;
}

}  // namespace

TEST_CASE("pipeline configuration") {
    const auto cfg = make_pipeline_config(CoefficientKind::divisor, 101, 10, 2, 5);
    CHECK(cfg.M() == 101);
    CHECK(cfg.seq.bound() >= 6 * 10 * 2);
    CHECK(!cfg.describe().empty());
    const auto amp = resolve_amplifier(cfg);
    CHECK(amp.ells == std::vector<i64>{2, 3});
    CHECK(amp.ps == std::vector<i64>{5, 7});
    CHECK(amp.lstar == 8.0);
    CHECK(amp.pstar == 2.0);
    const auto side = side_conditions(cfg);
    CHECK(side.disjoint);
    CHECK(side.avoids_modulus);
    CHECK(side.exact_detection);  // 5 * 101 > 8 * 10 * 2
}

TEST_CASE("amplifier resolution errors") {
    auto cfg = make_pipeline_config(CoefficientKind::divisor, 11, 20, 3, 5);
    CHECK_THROWS_AS(resolve_amplifier(cfg), ParameterConflict);  // 5 in both sets
    cfg.p_set = std::vector<i64>{11};
    CHECK_THROWS_AS(resolve_amplifier(cfg), ParameterConflict);  // the modulus
    cfg.p_set = std::vector<i64>{9};
    CHECK_THROWS_AS(resolve_amplifier(cfg), InvalidArgument);
    cfg.p_set = std::vector<i64>{};
    CHECK_THROWS_AS(resolve_amplifier(cfg), DegenerateAmplifier);
    auto empty = make_pipeline_config(CoefficientKind::divisor, 11, 20, 3, 5);
    empty.ell_set = std::vector<i64>{};
    CHECK_THROWS_AS(hecke_amplifier_identity(empty), DegenerateAmplifier);
}

TEST_CASE("Hecke amplifier identity") {
    for (auto [kind, M, N, L] : {std::tuple{CoefficientKind::divisor, i64{11}, 20.0, 3.0},
                                 std::tuple{CoefficientKind::delta_form, i64{13}, 30.0, 3.0},
                                 std::tuple{CoefficientKind::divisor, i64{101}, 40.0, 2.0}}) {
        const auto cfg = make_pipeline_config(kind, M, N, L, 5);
        const auto report = hecke_amplifier_identity(cfg);
        CHECK(report.pass);
        CHECK(report.residual < 1e-9);
        CHECK(std::abs(report.lhs_abs - std::abs(smoothed_oracle(cfg.seq, cfg.chi, N, cfg.W))) < 1e-12);
    }
}

TEST_CASE("exact delta detection") {
    auto cfg = make_pipeline_config(CoefficientKind::divisor, 101, 10, 2, 5);
    cfg.p_set = std::vector<i64>{7};
    const auto report = delta_detection_expansion(cfg);
    CHECK(report.pass);
    CHECK(report.residual < 1e-8);
    const auto find = [&](const std::string& key) {
        for (const auto& [k, v] : report.details) {
            if (k == key) return v;
        }
        FAIL("missing detail " << key);
        return 0.0;
    };
    CHECK(find("v_dropped_residual") < 1e-10);
    CHECK(find("c=pM") > 0.0);

    const auto delta_cfg = make_pipeline_config(CoefficientKind::delta_form, 101, 10, 2, 5);
    CHECK(delta_detection_expansion(delta_cfg).pass);

    auto small = make_pipeline_config(CoefficientKind::divisor, 11, 20, 3, 7);
    small.p_set = std::vector<i64>{2};
    CHECK_THROWS_AS(delta_detection_expansion(small), ExactnessViolated);  // 22 <= 480
}

TEST_CASE("Voronoi summation step") {
    const auto W = SmoothWindow::standard_bump();
    {
        const auto d = CoefficientSequence::divisor(voronoi_coefficient_bound(40, 1));
        const auto r = voronoi_step(d, 1, 1, 40, W);
        CHECK(r.pass);
        CHECK(std::abs(r.main_term) > 0.0);
        // c = 1: the left side is an unweighted smoothed divisor sum
        cplx oracle{};
        for (i64 n = 40; n <= 80; ++n) oracle += d(n) * W(n / 40.0);
        CHECK(std::abs(r.lhs - oracle) < 1e-12);
    }
    {
        const auto g = CoefficientSequence::delta_form(voronoi_coefficient_bound(30, 2));
        const auto r = voronoi_step(g, 1, 2, 30, W);
        CHECK(r.pass);
        CHECK(r.main_term == cplx{});
        CHECK(r.relative_residual < 1e-6);
        const auto check = voronoi_step_check(g, 1, 2, 30, W);
        CHECK(check.pass);
        CHECK(check.tolerance == 1e-6);
    }
    const auto d = CoefficientSequence::divisor(100);
    CHECK_THROWS_AS(voronoi_step(d, 2, 4, 10, W), NotCoprime);
    CHECK_THROWS_AS(voronoi_step(d, 1, 1, 40, W), OutOfCacheRange);
}

TEST_CASE("Voronoi fixed-rule refinement") {
    const auto W = SmoothWindow::standard_bump();
    const auto g = CoefficientSequence::delta_form(voronoi_coefficient_bound(40, 1));
    const auto residuals = voronoi_refinement_profile(g, 1, 1, 40, W, 3, 1, 4);
    REQUIRE(residuals.size() == 3);
    CHECK(refinement_order_holds(residuals));
    CHECK(residuals[0] > residuals[1]);
    CHECK(refinement_order_holds({1.0, 0.2, 0.01}));
    CHECK(!refinement_order_holds({1.0, 0.5}));
    CHECK(refinement_order_holds({1.0, 1e-9, 2e-9}));  // stops at the floor
}

TEST_CASE("beta sum closed form against brute force") {
    for (i64 M : {5, 7}) {
        for (i64 p : {2, 3}) {
            for (const auto& chi : enumerate_characters(M, CharacterFilter::primitive)) {
                for (i64 c : divisors(p * M)) {
                    const i64 Q = std::lcm(c, M);
                    for (i64 alpha = 1; alpha <= c; ++alpha) {
                        if (std::gcd(alpha, c) != 1) continue;
                        for (i64 ell : {1, 2, 4}) {
                            for (i64 r = -Q; r <= Q; r += 3) {
                                // test-side sum over beta mod [c, M]
                                cplx brute{};
                                for (i64 beta = 0; beta < Q; ++beta) {
                                    brute += chi(beta) * unit_root(-alpha * beta * ell * (Q / c) + r * beta, Q);
                                }
                                const auto rep = beta_sum_evaluation(chi, c, p, alpha, ell, r);
                                CHECK(std::abs(rep.lhs - brute) < 1e-9);
                                CHECK(rep.residual < 1e-9);
                                CHECK(rep.pass);
                            }
                        }
                    }
                }
            }
        }
    }
    const DirichletCharacter chi(5, 1);
    CHECK_THROWS_AS(beta_sum_evaluation(chi, 3, 4, 1, 1, 1), InvalidArgument);
    CHECK_THROWS_AS(beta_sum_evaluation(chi, 3, 5, 1, 1, 1), InvalidArgument);
    CHECK_THROWS_AS(beta_sum_evaluation(chi, 4, 3, 1, 1, 1), InvalidDivisor);
    CHECK_THROWS_AS(beta_sum_evaluation(chi, 15, 3, 3, 1, 1), NotCoprime);
}

TEST_CASE("Poisson summation in r") {
    const auto V = SmoothWindow::standard_plateau();
    const DirichletCharacter chi(11, 1);
    const auto r = poisson_r_sum(chi, 11, 3, 1, 2, 30, V);
    CHECK(r.pass);
    CHECK(r.residual < 1e-6);
    CHECK(r.residual_closed < 1e-6);
    CHECK(r.truncation >= static_cast<i64>(std::ceil(20.0 * 11 / 30)));
    // direct left side
    cplx lhs{};
    for (i64 n = 1; n <= 90; ++n) lhs += chi(n) * unit_root(-2 * n, 11) * V(n / 30.0);
    CHECK(std::abs(r.lhs - lhs) < 1e-12);
    for (i64 c : {1, 3, 33}) CHECK(poisson_r_sum_check(chi, c, 3, 1, 2, 30, V).pass);
}

TEST_CASE("composite dual check") {
    const auto d = CoefficientSequence::divisor(2000);
    const auto report = composite_dual_check(d, DirichletCharacter(11, 1), 3, 2, 8);
    CHECK(report.pass);
    CHECK_THROWS_AS(composite_dual_check(d, DirichletCharacter(11, 1), 3, 2, 9), ExactnessViolated);
}
