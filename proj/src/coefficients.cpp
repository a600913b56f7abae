#include "deltasums/coefficients.hpp"

#include <fmt/format.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>

#include "deltasums/error.hpp"

namespace deltasums {

std::string_view to_string(CoefficientKind kind) {
    switch (kind) {
        case CoefficientKind::divisor: return "divisor";
        case CoefficientKind::delta_form: return "delta";
        case CoefficientKind::maass: return "maass";
    }
    return "?";
}

std::optional<CoefficientKind> parse_coefficient_kind(std::string_view name) {
    if (name == "divisor" || name == "tau") return CoefficientKind::divisor;
    if (name == "delta" || name == "delta_form") return CoefficientKind::delta_form;
    if (name == "maass") return CoefficientKind::maass;
    return std::nullopt;
}

std::string int128_to_string(i128 v) {
    if (v == 0) return "0";
    const bool negative = v < 0;
    std::string digits;
    while (v != 0) {
        const int d = static_cast<int>(v % 10);
        digits.push_back(static_cast<char>('0' + (negative ? -d : d)));
        v /= 10;
    }
    if (negative) digits.push_back('-');
    return {digits.rbegin(), digits.rend()};
}

i128 parse_int128(std::string_view s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.remove_suffix(1);
    bool negative = false;
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) negative = s[i++] == '-';
    if (i == s.size()) throw InvalidArgument(fmt::format("parse_int128: '{}' is not an integer", s));
    i128 v = 0;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') throw InvalidArgument(fmt::format("parse_int128: '{}' is not an integer", s));
        v = v * 10 + (s[i] - '0');
    }
    return negative ? -v : v;
}

std::vector<i128> ramanujan_tau(i64 bound) {
    if (bound < 1) throw InvalidArgument(fmt::format("ramanujan_tau: bound {} < 1", bound));
    const auto len = static_cast<std::size_t>(bound);  // degrees 0 .. bound-1
    // Jacobi: prod (1 - q^m)^3 = sum_k (-1)^k (2k+1) q^(k(k+1)/2)
    std::vector<std::pair<std::size_t, i64>> jacobi;
    for (i64 k = 0; k * (k + 1) / 2 < bound; ++k) {
        jacobi.emplace_back(static_cast<std::size_t>(k * (k + 1) / 2), (k % 2 == 0 ? 1 : -1) * (2 * k + 1));
    }
    std::vector<i128> power(len, 0);  // J^2
    for (const auto& [d1, c1] : jacobi) {
        for (const auto& [d2, c2] : jacobi) {
            if (d1 + d2 >= len) break;
            power[d1 + d2] += static_cast<i128>(c1) * c2;
        }
    }
    std::vector<i128> next(len);
    for (int step = 0; step < 6; ++step) {  // J^2 -> J^8
        std::fill(next.begin(), next.end(), 0);
        for (const auto& [d, c] : jacobi) {
            for (std::size_t i = 0; i + d < len; ++i) next[i + d] += power[i] * c;
        }
        power.swap(next);
    }
    std::vector<i128> tau(len + 1, 0);
    for (std::size_t n = 1; n <= len; ++n) tau[n] = power[n - 1];
    return tau;
}

void write_tau_cache(const std::filesystem::path& path, std::span<const i128> tau) {
    const auto tmp = std::filesystem::path(path.string() + ".tmp");
    {
        std::ofstream out(tmp);
        if (!out) throw InvalidArgument(fmt::format("write_tau_cache: cannot open {}", tmp.string()));
        out << (tau.size() - 1) << '\n';
        for (std::size_t n = 1; n < tau.size(); ++n) out << int128_to_string(tau[n]) << '\n';
        if (!out) throw InvalidArgument(fmt::format("write_tau_cache: write to {} failed", tmp.string()));
    }
    std::filesystem::rename(tmp, path);
}

std::optional<std::vector<i128>> read_tau_cache(const std::filesystem::path& path, i64 bound) {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    std::string line;
    if (!std::getline(in, line)) return std::nullopt;
    i64 stored = 0;
    try {
        stored = static_cast<i64>(parse_int128(line));
    } catch (const InvalidArgument&) {
        return std::nullopt;
    }
    if (stored < bound) return std::nullopt;
    std::vector<i128> tau(static_cast<std::size_t>(stored + 1), 0);
    for (i64 n = 1; n <= stored; ++n) {
        if (!std::getline(in, line)) return std::nullopt;
        try {
            tau[static_cast<std::size_t>(n)] = parse_int128(line);
        } catch (const InvalidArgument&) {
            return std::nullopt;
        }
    }
    // cheap integrity check on the first values
    if (tau[1] != 1 || (stored >= 2 && tau[2] != -24)) return std::nullopt;
    return tau;
}

std::optional<std::filesystem::path> tau_cache_path() {
    const char* env = std::getenv("DELTA_SUMS_CACHE");
    if (env == nullptr || *env == '\0') return std::nullopt;
    return std::filesystem::path(env);
}

namespace {

std::shared_ptr<const std::vector<double>> divisor_table(i64 bound) {
    static std::mutex mutex;
    static std::shared_ptr<const std::vector<double>> cached;
    std::lock_guard lock(mutex);
    if (cached && static_cast<i64>(cached->size()) > bound) return cached;
    auto table = std::make_shared<std::vector<double>>(static_cast<std::size_t>(bound + 1), 0.0);
    for (i64 d = 1; d <= bound; ++d) {
        for (i64 m = d; m <= bound; m += d) (*table)[static_cast<std::size_t>(m)] += 1.0;
    }
    cached = table;
    return cached;
}

std::shared_ptr<const std::vector<double>> delta_table(i64 bound) {
    static std::mutex mutex;
    static std::shared_ptr<const std::vector<double>> cached;
    std::lock_guard lock(mutex);
    if (cached && static_cast<i64>(cached->size()) > bound) return cached;

    std::optional<std::vector<i128>> tau;
    const auto path = tau_cache_path();
    if (path) tau = read_tau_cache(*path, bound);
    if (!tau) {
        tau = ramanujan_tau(bound);
        if (path) write_tau_cache(*path, *tau);
    }
    auto table = std::make_shared<std::vector<double>>(tau->size(), 0.0);
    for (std::size_t n = 1; n < tau->size(); ++n) {
        const long double scale = std::pow(static_cast<long double>(n), 5.5L);
        (*table)[n] = static_cast<double>(static_cast<long double>((*tau)[n]) / scale);
    }
    cached = table;
    return cached;
}

}  // namespace

CoefficientSequence CoefficientSequence::divisor(i64 bound) {
    if (bound < 1) throw InvalidArgument(fmt::format("divisor: bound {} < 1", bound));
    return {CoefficientKind::divisor, bound, divisor_table(bound)};
}

CoefficientSequence CoefficientSequence::delta_form(i64 bound) {
    if (bound < 1) throw InvalidArgument(fmt::format("delta_form: bound {} < 1", bound));
    return {CoefficientKind::delta_form, bound, delta_table(bound)};
}

CoefficientSequence CoefficientSequence::of_kind(CoefficientKind kind, i64 bound) {
    switch (kind) {
        case CoefficientKind::divisor: return divisor(bound);
        case CoefficientKind::delta_form: return delta_form(bound);
        case CoefficientKind::maass: break;
    }
    throw UnsupportedCoefficientKind("Maass form coefficients are not supported");
}

double CoefficientSequence::operator()(i64 n) const {
    if (n < 1 || n > bound_) {
        throw OutOfCacheRange(fmt::format("{} coefficient {} outside [1, {}]", to_string(kind_), n, bound_));
    }
    return (*values_)[static_cast<std::size_t>(n)];
}

double coeff_eval(const CoefficientSequence& seq, i64 n) { return seq(n); }

bool hecke_relation_check(const CoefficientSequence& seq, i64 r, i64 ell) {
    if (r < 1 || !is_prime(ell)) throw InvalidArgument(fmt::format("hecke_relation_check: need r >= 1 and prime l, got {}, {}", r, ell));
    const double lhs = seq(r * ell);
    double rhs = seq(r) * seq(ell);
    if (r % ell == 0) rhs -= seq(r / ell);
    return std::abs(lhs - rhs) < 1e-10;
}

}  // namespace deltasums
