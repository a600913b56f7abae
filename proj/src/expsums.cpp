#include "deltasums/expsums.hpp"

#include <fmt/format.h>

#include <cmath>
#include <numeric>
#include <random>

#include "deltasums/error.hpp"

namespace deltasums {

std::string_view to_string(SumMethod method) {
    return method == SumMethod::brute_force ? "brute_force" : "closed_form";
}

ExpSumResult make_result(cplx value, i64 modulus, SumMethod method) {
    return {value, modulus, method, std::abs(value) / std::sqrt(static_cast<double>(modulus))};
}

namespace {

std::vector<cplx> root_table(i64 c) {
    std::vector<cplx> roots(static_cast<std::size_t>(c));
    for (i64 j = 0; j < c; ++j) roots[static_cast<std::size_t>(j)] = unit_root(j, c);
    return roots;
}

}  // namespace

TrivialDeltaKernel::TrivialDeltaKernel(i64 q) : q_(q) {
    if (q < 1) throw InvalidArgument(fmt::format("trivial_delta: q = {} < 1", q));
    for (i64 c : divisors(q)) {
        Divisor d{c, {}, root_table(c)};
        for (i64 a = 0; a < c; ++a) {
            if (std::gcd(a, c) == 1) d.units.push_back(a);
        }
        divisors_.push_back(std::move(d));
    }
}

cplx TrivialDeltaKernel::operator()(i64 difference) const {
    CompensatedSum<cplx> total;
    for (const auto& d : divisors_) {
        const i64 base = mod_floor(difference, d.c);
        for (i64 a : d.units) total += d.roots[static_cast<std::size_t>(mul_mod(a, base, d.c))];
    }
    return total.value() / static_cast<double>(q_);
}

cplx trivial_delta(i64 n, i64 m, i64 q) { return TrivialDeltaKernel(q)(n - m); }

double ramanujan_sum(i64 M, i64 a) {
    if (M < 1) throw InvalidArgument(fmt::format("ramanujan_sum: modulus {} < 1", M));
    CompensatedSum<double> s;
    for (i64 z = 0; z < M; ++z) {
        if (std::gcd(z, M) == 1) s += unit_root(mul_mod(a, z, M), M).real();
    }
    return s.value();
}

i64 ramanujan_sum_closed(i64 M, i64 a) {
    if (M < 1) throw InvalidArgument(fmt::format("ramanujan_sum_closed: modulus {} < 1", M));
    const i64 g = std::gcd(mod_floor(a, M), M);  // gcd(0, M) = M
    i64 total = 0;
    for (i64 d : divisors(g)) total += moebius(M / d) * d;
    return total;
}

cplx gauss_sum(const DirichletCharacter& chi) {
    chi.require_primitive("gauss_sum");
    const i64 M = chi.M();
    const auto values = chi.values();
    CompensatedSum<cplx> s;
    for (i64 y = 1; y < M; ++y) s += values[static_cast<std::size_t>(y)] * unit_root(y, M);
    return s.value();
}

bool fourier_expansion_check(const DirichletCharacter& chi, i64 a) {
    chi.require_primitive("fourier_expansion_check");
    const i64 M = chi.M();
    const auto bar = chi.conj();
    const auto bar_values = bar.values();
    CompensatedSum<cplx> s;
    for (i64 y = 1; y < M; ++y) s += bar_values[static_cast<std::size_t>(y)] * unit_root(mul_mod(a, y, M), M);
    const cplx expansion = s.value() / gauss_sum(bar);
    return std::abs(expansion - chi(a)) < 1e-10;
}

cplx kloosterman_sum_complex(i64 a, i64 b, i64 c) {
    if (c < 1) throw InvalidArgument(fmt::format("kloosterman_sum: c = {} < 1", c));
    if (c == 1) return {1.0, 0.0};
    const auto roots = root_table(c);
    const i64 ar = mod_floor(a, c), br = mod_floor(b, c);
    CompensatedSum<cplx> s;
    for (i64 x = 1; x < c; ++x) {
        if (std::gcd(x, c) != 1) continue;
        const i64 phase = mod_floor(mul_mod(ar, x, c) + mul_mod(br, mod_inverse(x, c), c), c);
        s += roots[static_cast<std::size_t>(phase)];
    }
    return s.value();
}

double kloosterman_sum(i64 a, i64 b, i64 c) { return kloosterman_sum_complex(a, b, c).real(); }

cplx generalized_kloosterman(const DirichletCharacter& chi, i64 r, i64 n) {
    const i64 M = chi.M();
    const auto values = chi.values();
    CompensatedSum<cplx> s;
    for (i64 x = 1; x < M; ++x) {
        const i64 phase = mod_floor(mul_mod(r, x, M) + mul_mod(n, mod_inverse(x, M), M), M);
        s += values[static_cast<std::size_t>(x)] * unit_root(phase, M);
    }
    return s.value();
}

ExpSumResult frak_k(const DirichletCharacter& chi, i64 r, i64 ell, i64 n) {
    const i64 M = chi.M();
    if (mod_floor(ell, M) == 0) throw EllNotCoprime(fmt::format("frak_k: {} divides ell = {}", M, ell));
    const auto bar = chi.conj().values();
    const i64 rr = mod_floor(r, M), lr = mod_floor(ell, M), nr = mod_floor(n, M);
    CompensatedSum<cplx> s;
    for (i64 z = 1; z < M; ++z) {
        const cplx c = bar[static_cast<std::size_t>(mod_floor(rr + mul_mod(lr, z, M), M))];
        if (c == cplx{}) continue;
        s += c * unit_root(mul_mod(nr, mod_inverse(z, M), M), M);
    }
    return make_result(s.value(), M, SumMethod::brute_force);
}

std::optional<ExpSumResult> frak_k_closed_form(const DirichletCharacter& chi, i64 r, i64 ell, i64 n) {
    const i64 M = chi.M();
    if (mod_floor(ell, M) == 0) throw EllNotCoprime(fmt::format("frak_k: {} divides ell = {}", M, ell));
    if (mod_floor(r, M) == 0 || mod_floor(n, M) != 0) return std::nullopt;
    return make_result(-chi.conj()(r), M, SumMethod::closed_form);
}

std::string_view to_string(FrakCCase c) {
    switch (c) {
        case FrakCCase::m_divides_n: return "m_divides_n";
        case FrakCCase::reciprocal_shift: return "reciprocal_shift";
        case FrakCCase::doubly_degenerate: return "doubly_degenerate";
        case FrakCCase::generic: return "generic";
    }
    return "unknown";
}

FrakCCase classify_frak_c(i64 M, i64 r1, i64 r2, i64 alpha, i64 beta, i64 n) {
    if (mod_floor(n, M) == 0) return FrakCCase::m_divides_n;
    if (mod_floor(r1, M) != 0 && mod_floor(r2, M) != 0) {
        const i64 shift = mod_floor(mul_mod(beta, mod_inverse(r1, M), M) - mul_mod(alpha, mod_inverse(r2, M), M), M);
        if (mod_floor(n, M) == shift) return FrakCCase::reciprocal_shift;
    }
    const i64 n_bar = mod_inverse(n, M);
    if (mod_floor(r1 - mul_mod(n_bar, beta, M), M) == 0 && mod_floor(r2 + mul_mod(n_bar, alpha, M), M) == 0) {
        return FrakCCase::doubly_degenerate;
    }
    return FrakCCase::generic;
}

ExpSumResult frak_c(const DirichletCharacter& chi, i64 r1, i64 r2, i64 alpha, i64 beta, i64 n) {
    const i64 M = chi.M();
    if (mod_floor(alpha, M) == 0 || mod_floor(beta, M) == 0) {
        throw AlphaBetaNotCoprime(fmt::format("frak_c: {} divides alpha*beta = {}*{}", M, alpha, beta));
    }
    const auto values = chi.values();
    const auto bar = chi.conj().values();
    const i64 ar = mod_floor(alpha, M), br = mod_floor(beta, M), nr = mod_floor(n, M);
    const i64 r1r = mod_floor(r1, M), r2r = mod_floor(r2, M);
    CompensatedSum<cplx> s;
    for (i64 z = 1; z < M; ++z) {
        const i64 t = mod_floor(nr + mul_mod(br, mod_inverse(z, M), M), M);
        if (t == 0) continue;  // side condition (n + beta inv(z), M) = 1
        const cplx first = bar[static_cast<std::size_t>(mod_floor(r1r + z, M))];
        if (first == cplx{}) continue;
        const i64 inner = mod_floor(r2r + mul_mod(ar, mod_inverse(t, M), M), M);
        s += first * values[static_cast<std::size_t>(inner)];
    }
    return make_result(s.value(), M, SumMethod::brute_force);
}

std::optional<ExpSumResult> frak_c_closed_form(const DirichletCharacter& chi, i64 r1, i64 r2, i64 alpha,
                                               i64 beta, i64 n) {
    const i64 M = chi.M();
    if (mod_floor(alpha, M) == 0 || mod_floor(beta, M) == 0) {
        throw AlphaBetaNotCoprime(fmt::format("frak_c: {} divides alpha*beta = {}*{}", M, alpha, beta));
    }
    chi.require_primitive("frak_c_closed_form");
    if (mod_floor(r1, M) == 0 || mod_floor(r2, M) == 0) return std::nullopt;

    const i64 r1_bar = mod_inverse(r1, M);
    const i64 ratio = mul_mod(r2, r1_bar, M);  // r2 inv(r1)
    cplx value;
    switch (classify_frak_c(M, r1, r2, alpha, beta, n)) {
        case FrakCCase::m_divides_n: {
            const i64 ab = mul_mod(alpha, mod_inverse(beta, M), M);
            const auto ram = static_cast<double>(ramanujan_sum_closed(M, r2 - mul_mod(r1, ab, M)));
            value = chi(ab) * ram - chi(ratio);
            break;
        }
        case FrakCCase::reciprocal_shift: {
            const cplx c = chi(ratio);
            value = -c * c * chi(mul_mod(beta, mod_inverse(alpha, M), M)) - c;
            break;
        }
        case FrakCCase::doubly_degenerate: {
            const i64 n_bar = mod_inverse(n, M);
            if (chi.is_quadratic()) {
                value = chi(mul_mod(mul_mod(n_bar, r2, M), beta, M)) * static_cast<double>(M - 2);
            } else {
                value = -chi(mul_mod(mul_mod(n, r2, M), mod_inverse(beta, M), M));
            }
            break;
        }
        case FrakCCase::generic:
            return std::nullopt;
    }
    return make_result(value, M, SumMethod::closed_form);
}

AlphaFactorization alpha_factorization(const DirichletCharacter& chi, i64 p, i64 r, i64 ell, i64 n) {
    const i64 M = chi.M();
    if (!is_prime(p) || p == M) {
        throw ParameterConflict(fmt::format("alpha_factorization: p = {} must be a prime different from M = {}", p, M));
    }
    if (mod_floor(r, p) == 0 || mod_floor(ell, p) == 0) {
        throw ParameterConflict(
            fmt::format("alpha_factorization: no unit x mod {} with r = {} == x * {} (mod {})", p * M, r, ell, p));
    }
    const auto bar = chi.conj().values();
    const i64 q = p * M;
    AlphaFactorization out;
    for (int sign_index = 0; sign_index < 2; ++sign_index) {
        const i64 sign = sign_index == 0 ? -1 : 1;
        CompensatedSum<cplx> lhs;
        for (i64 x = 1; x < q; ++x) {
            if (std::gcd(x, q) != 1 || mod_floor(r - mul_mod(x, ell, p), p) != 0) continue;
            const cplx c = bar[static_cast<std::size_t>(mod_floor(r - mul_mod(x, ell, M), M))];
            lhs += c * unit_root(sign * mul_mod(mod_inverse(x, q), n, q), q);
        }
        CompensatedSum<cplx> inner;
        const i64 p_bar = mod_inverse(p, M);
        for (i64 x = 1; x < M; ++x) {
            const cplx c = bar[static_cast<std::size_t>(mod_floor(r - mul_mod(x, ell, M), M))];
            inner += c * unit_root(sign * mul_mod(mul_mod(mod_inverse(x, M), p_bar, M), n, M), M);
        }
        const i64 rm_bar = mod_inverse(mul_mod(r, M, p), p);
        const cplx outer = unit_root(sign * mul_mod(mul_mod(rm_bar, n, p), ell, p), p);
        out.lhs[sign_index] = lhs.value();
        out.rhs[sign_index] = outer * inner.value();
        out.residual = std::max(out.residual, std::abs(out.lhs[sign_index] - out.rhs[sign_index]));
    }
    out.holds = out.residual < 1e-10;
    return out;
}

bool alpha_factorization_check(const DirichletCharacter& chi, i64 p, i64 r, i64 ell, i64 n) {
    return alpha_factorization(chi, p, r, ell, n).holds;
}

std::string_view to_string(SumFamily family) {
    switch (family) {
        case SumFamily::frak_k: return "frak_k";
        case SumFamily::frak_c: return "frak_c";
        case SumFamily::kloosterman: return "kloosterman";
    }
    return "unknown";
}

std::optional<SumFamily> parse_sum_family(std::string_view name) {
    if (name == "frak_k") return SumFamily::frak_k;
    if (name == "frak_c") return SumFamily::frak_c;
    if (name == "kloosterman") return SumFamily::kloosterman;
    return std::nullopt;
}

CancellationProfile sqrt_cancellation_profile(SumFamily family, i64 M, i64 samples, u64 seed) {
    if (!is_prime(M)) throw NotPrime(fmt::format("sqrt_cancellation_profile: {} is not prime", M));
    if (samples < 1) throw InvalidArgument("sqrt_cancellation_profile: samples must be >= 1");
    std::mt19937_64 rng(seed);
    // Uniform on [1, M-1]; the modulo bias is irrelevant at these sizes.
    auto unit = [&] { return static_cast<i64>(rng() % static_cast<u64>(M - 1)) + 1; };
    auto character = [&] { return DirichletCharacter(M, static_cast<i64>(rng() % static_cast<u64>(M - 2)) + 1); };

    const double root = std::sqrt(static_cast<double>(M));
    CancellationProfile out{family, M, samples, 0.0, 0.0};
    CompensatedSum<double> total;
    for (i64 i = 0; i < samples; ++i) {
        double size = 0.0;
        switch (family) {
            case SumFamily::kloosterman:
                size = std::abs(kloosterman_sum(unit(), unit(), M));
                break;
            case SumFamily::frak_k: {
                const auto chi = character();
                size = std::abs(frak_k(chi, unit(), unit(), unit()).value);
                break;
            }
            case SumFamily::frak_c: {
                const auto chi = character();
                i64 r1, r2, a, b, n;
                do {
                    r1 = unit(), r2 = unit(), a = unit(), b = unit(), n = unit();
                } while (classify_frak_c(M, r1, r2, a, b, n) != FrakCCase::generic);
                size = std::abs(frak_c(chi, r1, r2, a, b, n).value);
                break;
            }
        }
        const double ratio = size / root;
        out.max_ratio = std::max(out.max_ratio, ratio);
        total += ratio;
    }
    out.mean_ratio = total.value() / static_cast<double>(samples);
    return out;
}

}  // namespace deltasums
