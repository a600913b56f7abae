#include "deltasums/lfunctions.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <ostream>
#include <thread>

#include "deltasums/error.hpp"
#include "deltasums/expsums.hpp"
#include "deltasums/hurwitz.hpp"
#include "deltasums/parallel.hpp"
#include "deltasums/report.hpp"

namespace deltasums {

std::pair<i64, i64> window_range(const SmoothWindow& W, double N) {
    if (!(N > 0.0)) return {1, 0};
    const i64 first = std::max<i64>(1, static_cast<i64>(std::floor(N * W.lo())));
    const i64 last = static_cast<i64>(std::ceil(N * W.hi()));
    return {first, last};
}

cplx smoothed_sum(const CoefficientSequence& seq, const DirichletCharacter& chi, double N, const SmoothWindow& W) {
    const auto [first, last] = window_range(W, N);
    CompensatedSum<cplx> sum;
    for (i64 n = first; n <= last; ++n) {
        const double w = W(static_cast<double>(n) / N);
        if (w == 0.0) continue;
        sum += seq(n) * w * chi(n);
    }
    return sum.value();
}

double dyadic_sum_profile(const CoefficientSequence& seq, const DirichletCharacter& chi, const SmoothWindow& W,
                          double n_lo, double n_hi) {
    if (!(n_lo > 0.0)) throw InvalidArgument("dyadic_sum_profile: n_lo must be positive");
    double best = 0.0;
    for (double N = n_lo; N <= n_hi; N *= 2.0) best = std::max(best, std::abs(smoothed_sum(seq, chi, N, W)) / std::sqrt(N));
    return best;
}

std::string_view to_string(LMethod method) {
    return method == LMethod::hurwitz_oracle ? "hurwitz_oracle" : "smoothed";
}

namespace {

// erfc(z) < 1e-17 for z > 6.2
constexpr double kErfcCutoff = 6.2;

}  // namespace

i64 smoothing_terms(const SmoothingPolicy& policy) {
    return static_cast<i64>(std::ceil(policy.X * std::exp(kErfcCutoff / policy.kappa)));
}

SmoothingPolicy dirichlet_policy(i64 M) {
    const double m = static_cast<double>(M);
    return {std::max(50.0 * std::sqrt(m) * std::log(m), 16.0 * m), 4.0};
}

SmoothingPolicy twist_policy(CoefficientKind kind, i64 M) {
    const double m = static_cast<double>(M);
    switch (kind) {
        case CoefficientKind::divisor: return {std::max(50.0 * m * std::log(m), 16.0 * m * m), 2.0};
        case CoefficientKind::delta_form: return {std::max(50.0 * m * std::log(m), 64.0 * m * m), 3.0};
        case CoefficientKind::maass: break;
    }
    throw UnsupportedCoefficientKind("twist_policy: Maass forms are not supported");
}

i64 twist_coefficient_bound(CoefficientKind kind, i64 M) {
    if (kind == CoefficientKind::delta_form) return afe_terms(M);
    return smoothing_terms(twist_policy(kind, M));
}

namespace {

// V(y) < 1e-19 once 2 pi y > 62
constexpr double kAfeCutoff = 62.0;

}  // namespace

i64 afe_terms(i64 M) { return static_cast<i64>(std::ceil(kAfeCutoff * static_cast<double>(M) / kTwoPi)); }

double afe_weight(double y) {
    // Gamma(6, x) / Gamma(6) = e^-x sum_{j<6} x^j / j!
    const double x = kTwoPi * y;
    double term = 1.0, sum = 1.0;
    for (int j = 1; j < 6; ++j) {
        term *= x / j;
        sum += term;
    }
    return std::exp(-x) * sum;
}

cplx delta_root_number(const DirichletCharacter& chi) {
    chi.require_primitive("delta_root_number");
    const cplx g = gauss_sum(chi);
    return g * g / static_cast<double>(chi.M());
}

SmoothedLValue AfeWeights::evaluate(const DirichletCharacter& chi) const {
    if (chi.M() != M) throw InvalidArgument(fmt::format("AfeWeights: character mod {} for weights mod {}", chi.M(), M));
    const auto values = chi.values();
    CompensatedSum<cplx> full_sum, short_sum;
    for (i64 a = 1; a < M; ++a) {
        full_sum += values[static_cast<std::size_t>(a)] * full[static_cast<std::size_t>(a)];
        short_sum += values[static_cast<std::size_t>(a)] * shorter[static_cast<std::size_t>(a)];
    }
    const cplx eps = delta_root_number(chi);
    SmoothedLValue out;
    out.value = full_sum.value() + eps * std::conj(full_sum.value());
    out.half_length_value = short_sum.value() + eps * std::conj(short_sum.value());
    out.tail_change = std::abs(out.value - out.half_length_value);
    out.terms = terms;
    return out;
}

AfeWeights afe_weights(const CoefficientSequence& seq, i64 M) {
    if (seq.kind() != CoefficientKind::delta_form) {
        throw UnsupportedCoefficientKind(fmt::format("afe_weights: only Delta twists, got {}", to_string(seq.kind())));
    }
    AfeWeights w;
    w.M = M;
    w.terms = afe_terms(M);
    if (seq.bound() < w.terms) {
        throw OutOfCacheRange(fmt::format("afe_weights: need {} coefficients, have {}", w.terms, seq.bound()));
    }
    const i64 short_terms = 2 * w.terms / 3;
    std::vector<CompensatedSum<double>> full(static_cast<std::size_t>(M)), shorter(static_cast<std::size_t>(M));
    for (i64 n = 1; n <= w.terms; ++n) {
        const i64 a = n % M;
        if (a == 0) continue;
        const double v = seq(n) / std::sqrt(static_cast<double>(n)) * afe_weight(static_cast<double>(n) / M);
        full[static_cast<std::size_t>(a)] += v;
        if (n <= short_terms) shorter[static_cast<std::size_t>(a)] += v;
    }
    w.full.resize(static_cast<std::size_t>(M));
    w.shorter.resize(static_cast<std::size_t>(M));
    for (i64 a = 0; a < M; ++a) {
        w.full[static_cast<std::size_t>(a)] = full[static_cast<std::size_t>(a)].value();
        w.shorter[static_cast<std::size_t>(a)] = shorter[static_cast<std::size_t>(a)].value();
    }
    return w;
}

SmoothedLValue ResidueWeights::evaluate(const DirichletCharacter& chi) const {
    if (chi.M() != M) throw InvalidArgument(fmt::format("ResidueWeights: character mod {} for weights mod {}", chi.M(), M));
    const auto values = chi.values();
    CompensatedSum<cplx> full_sum, half_sum;
    for (i64 a = 1; a < M; ++a) {
        full_sum += values[static_cast<std::size_t>(a)] * full[static_cast<std::size_t>(a)];
        half_sum += values[static_cast<std::size_t>(a)] * half[static_cast<std::size_t>(a)];
    }
    SmoothedLValue out;
    out.value = full_sum.value();
    out.half_length_value = half_sum.value();
    out.tail_change = std::abs(out.value - out.half_length_value);
    out.terms = terms;
    return out;
}

ResidueWeights residue_weights(const std::optional<CoefficientSequence>& seq, i64 M, const SmoothingPolicy& policy) {
    ResidueWeights w;
    w.M = M;
    w.policy = policy;
    w.terms = smoothing_terms(policy);
    if (seq && seq->bound() < w.terms) {
        throw OutOfCacheRange(fmt::format("residue_weights: need {} coefficients, have {}", w.terms, seq->bound()));
    }
    std::vector<CompensatedSum<double>> full(static_cast<std::size_t>(M)), half(static_cast<std::size_t>(M));
    const double X = policy.X;
    for (i64 n = 1; n <= w.terms; ++n) {
        const i64 a = n % M;
        if (a == 0) continue;
        const double coeff = seq ? (*seq)(n) : 1.0;
        if (coeff == 0.0) continue;
        const double log_n = std::log(static_cast<double>(n));
        const double base = coeff / std::sqrt(static_cast<double>(n));
        full[static_cast<std::size_t>(a)] += base * 0.5 * std::erfc(policy.kappa * (log_n - std::log(X)));
        const double h = 0.5 * std::erfc(policy.kappa * (log_n - std::log(0.5 * X)));
        if (h != 0.0) half[static_cast<std::size_t>(a)] += base * h;
    }
    w.full.resize(static_cast<std::size_t>(M));
    w.half.resize(static_cast<std::size_t>(M));
    for (i64 a = 0; a < M; ++a) {
        w.full[static_cast<std::size_t>(a)] = full[static_cast<std::size_t>(a)].value();
        w.half[static_cast<std::size_t>(a)] = half[static_cast<std::size_t>(a)].value();
    }
    return w;
}

const std::vector<double>& hurwitz_table(i64 M) {
    static std::mutex mutex;
    static std::map<i64, std::shared_ptr<const std::vector<double>>> cache;
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(M); it != cache.end()) return *it->second;
    }
    auto table = std::make_shared<std::vector<double>>(static_cast<std::size_t>(M), 0.0);
    for (i64 a = 1; a < M; ++a) {
        (*table)[static_cast<std::size_t>(a)] = hurwitz_zeta(0.5, static_cast<double>(a) / static_cast<double>(M));
    }
    std::lock_guard lock(mutex);
    return *cache.emplace(M, std::move(table)).first->second;
}

namespace {

cplx hurwitz_l_value(const DirichletCharacter& chi) {
    const auto& zeta = hurwitz_table(chi.M());
    const auto values = chi.values();
    CompensatedSum<cplx> sum;
    for (i64 a = 1; a < chi.M(); ++a) sum += values[static_cast<std::size_t>(a)] * zeta[static_cast<std::size_t>(a)];
    return sum.value() / std::sqrt(static_cast<double>(chi.M()));
}

}  // namespace

SmoothedLValue l_value_dirichlet_smoothed(const DirichletCharacter& chi) {
    chi.require_primitive("l_value_dirichlet");
    return residue_weights(std::nullopt, chi.M(), dirichlet_policy(chi.M())).evaluate(chi);
}

cplx l_value_dirichlet(const DirichletCharacter& chi, LMethod method) {
    chi.require_primitive("l_value_dirichlet");
    if (method == LMethod::hurwitz_oracle) return hurwitz_l_value(chi);
    return l_value_dirichlet_smoothed(chi).value;
}

SmoothedLValue l_value_twist_series(const CoefficientSequence& seq, const DirichletCharacter& chi,
                                    const SmoothingPolicy& policy) {
    chi.require_primitive("l_value_twist");
    return residue_weights(seq, chi.M(), policy).evaluate(chi);
}

SmoothedLValue l_value_twist_smoothed(const CoefficientSequence& seq, const DirichletCharacter& chi) {
    chi.require_primitive("l_value_twist");
    if (seq.kind() == CoefficientKind::delta_form) return afe_weights(seq, chi.M()).evaluate(chi);
    return l_value_twist_series(seq, chi, twist_policy(seq.kind(), chi.M()));
}

cplx l_value_twist(const CoefficientSequence& seq, const DirichletCharacter& chi, LMethod method) {
    chi.require_primitive("l_value_twist");
    if (method == LMethod::smoothed) return l_value_twist_smoothed(seq, chi).value;
    if (seq.kind() != CoefficientKind::divisor) {
        throw UnsupportedCoefficientKind(fmt::format("l_value_twist: no Hurwitz oracle for {}", to_string(seq.kind())));
    }
    const cplx l = hurwitz_l_value(chi);
    return l * l;
}

namespace {

AmplifierSet prime_set(double scale) {
    AmplifierSet set;
    set.scale = scale;
    set.primes = primes_in(static_cast<i64>(std::ceil(scale)), static_cast<i64>(std::floor(2.0 * scale)));
    return set;
}

}  // namespace

AmplifierSet amplifier_lstar(const CoefficientSequence& seq, double L) {
    if (!(L >= 1.0)) throw InvalidArgument(fmt::format("amplifier_lstar: L = {} < 1", L));
    AmplifierSet set = prime_set(L);
    if (static_cast<double>(seq.bound()) < 2.0 * L) {
        throw OutOfCacheRange(fmt::format("amplifier_lstar: 2L = {} beyond coefficient bound {}", 2.0 * L, seq.bound()));
    }
    for (i64 ell : set.primes) set.weight += seq(ell) * seq(ell);
    set.ratio = L > 1.0 ? set.weight / (L / std::log(L)) : 0.0;
    return set;
}

AmplifierSpec make_amplifier(const CoefficientSequence& seq, double L, double P, i64 M) {
    AmplifierSpec spec;
    spec.ell = amplifier_lstar(seq, L);
    spec.p = prime_set(P);
    spec.p.weight = static_cast<double>(spec.p.primes.size());
    if (spec.ell.primes.empty()) throw DegenerateAmplifier(fmt::format("no primes in [{}, {}]", L, 2.0 * L));
    if (!(spec.ell.weight > 0.0)) throw DegenerateAmplifier("L* = 0");
    if (spec.p.primes.empty()) throw DegenerateAmplifier(fmt::format("no primes in [{}, {}]", P, 2.0 * P));
    for (i64 ell : spec.ell.primes) {
        if (std::find(spec.p.primes.begin(), spec.p.primes.end(), ell) != spec.p.primes.end()) {
            throw ParameterConflict(fmt::format("prime {} lies in both amplifier sets", ell));
        }
    }
    if (M != 0) {
        const auto contains = [M](const std::vector<i64>& v) { return std::find(v.begin(), v.end(), M) != v.end(); };
        if (contains(spec.ell.primes) || contains(spec.p.primes)) {
            throw ParameterConflict(fmt::format("amplifier sets contain the modulus {}", M));
        }
    }
    return spec;
}

RankinSelberg rankin_selberg_average(const CoefficientSequence& seq, double X) {
    const SmoothWindow W = SmoothWindow::standard_bump();
    RankinSelberg out;
    if (!(X > 0.0) || X * W.hi() < 1.0) return out;
    const auto [first, last] = window_range(W, X);
    CompensatedSum<double> sum;
    for (i64 n = first; n <= last; ++n) {
        const double w = W(static_cast<double>(n) / X);
        if (w == 0.0) continue;
        const double l = seq(n);
        sum += l * l * w;
    }
    out.value = sum.value();
    out.ratio = out.value / X;
    return out;
}

std::string_view to_string(SweepKind kind) { return kind == SweepKind::dirichlet ? "dirichlet" : "twist"; }

i64 sweep_modulus_limit(const SweepOptions& options) {
    if (options.kind == SweepKind::twist && options.coeff == CoefficientKind::delta_form) return 500;
    return 10000;
}

std::vector<SweepRecord> burgess_sweep(const SweepOptions& options) {
    if (options.kind == SweepKind::twist && options.coeff == CoefficientKind::maass) {
        throw UnsupportedCoefficientKind("burgess_sweep: Maass forms are not supported");
    }
    if (options.pmax > sweep_modulus_limit(options)) {
        throw InvalidArgument(fmt::format("burgess_sweep: pmax {} beyond feasible limit {}", options.pmax,
                                          sweep_modulus_limit(options)));
    }
    std::vector<i64> moduli;
    for (i64 p : primes_in(std::max<i64>(options.pmin, 5), options.pmax)) moduli.push_back(p);
    if (moduli.empty()) return {};

    const bool delta = options.kind == SweepKind::twist && options.coeff == CoefficientKind::delta_form;
    std::optional<CoefficientSequence> seq;
    if (delta) seq = CoefficientSequence::delta_form(twist_coefficient_bound(CoefficientKind::delta_form, moduli.back()));

    const std::string kind_name = options.kind == SweepKind::dirichlet ? "dirichlet" : std::string(to_string(options.coeff));
    const double exponent = options.kind == SweepKind::dirichlet ? 3.0 / 16.0 : 3.0 / 8.0;

    std::vector<std::vector<SweepRecord>> per_modulus(moduli.size());
    const auto work = [&](std::size_t i) {
        const i64 M = moduli[i];
        auto chars = enumerate_characters(M, options.quadratic_only ? CharacterFilter::quadratic : CharacterFilter::primitive);
        if (options.chars_per_modulus > 0 && static_cast<i64>(chars.size()) > options.chars_per_modulus) {
            chars.erase(chars.begin() + options.chars_per_modulus, chars.end());
        }
        std::optional<AfeWeights> weights;
        if (delta) weights = afe_weights(*seq, M);
        for (const auto& chi : chars) {
            SweepRecord rec;
            rec.M = M;
            rec.char_index = chi.index();
            rec.kind = kind_name;
            rec.exponent = exponent;
            if (options.kind == SweepKind::dirichlet) {
                rec.l_value = l_value_dirichlet(chi, LMethod::hurwitz_oracle);
            } else if (delta) {
                rec.l_value = weights->evaluate(chi).value;
            } else {
                const cplx l = l_value_dirichlet(chi, LMethod::hurwitz_oracle);
                rec.l_value = l * l;
            }
            rec.ratio = std::abs(rec.l_value) / std::pow(static_cast<double>(M), exponent);
            per_modulus[i].push_back(std::move(rec));
        }
    };
    parallel_for(moduli.size(), options.jobs, work);

    std::vector<SweepRecord> records;
    for (auto& block : per_modulus) {
        for (auto& r : block) records.push_back(std::move(r));
    }
    return records;
}

std::vector<double> running_envelope(const std::vector<SweepRecord>& records) {
    std::vector<double> env;
    env.reserve(records.size());
    double best = 0.0;
    for (const auto& r : records) {
        best = std::max(best, r.ratio);
        env.push_back(best);
    }
    return env;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRecord>& records) {
    out << "M,char_index,kind,re_L,im_L,abs_L,exponent,ratio\n";
    for (const auto& r : records) {
        out << r.M << ',' << r.char_index << ',' << r.kind << ',' << format_double(r.l_value.real()) << ','
            << format_double(r.l_value.imag()) << ',' << format_double(std::abs(r.l_value)) << ','
            << format_double(r.exponent) << ',' << format_double(r.ratio) << '\n';
    }
}

}  // namespace deltasums
