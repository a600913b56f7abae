#pragma once

// Hecke-normalized coefficient sequences: the divisor function and the
// weight-12 cusp form Delta, lambda(n) = tau(n) / n^(11/2).

#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "deltasums/modular.hpp"

namespace deltasums {

enum class CoefficientKind { divisor, delta_form, maass };

std::string_view to_string(CoefficientKind kind);
std::optional<CoefficientKind> parse_coefficient_kind(std::string_view name);

class CoefficientSequence {
public:
    // lambda(n) = number of divisors of n, for n <= bound.
    static CoefficientSequence divisor(i64 bound);
    // lambda(n) = tau(n) / n^(11/2), for n <= bound. Uses the tau cache file
    // when DELTA_SUMS_CACHE is set; results are shared within the process.
    static CoefficientSequence delta_form(i64 bound);
    static CoefficientSequence of_kind(CoefficientKind kind, i64 bound);

    CoefficientKind kind() const { return kind_; }
    i64 bound() const { return bound_; }
    // Weight of the underlying modular form (12 for Delta, 0 for the divisor function).
    int weight() const { return kind_ == CoefficientKind::delta_form ? 12 : 0; }

    // Throws OutOfCacheRange outside [1, bound].
    double operator()(i64 n) const;

    // Raw table; index 0 holds 0.
    std::span<const double> values() const { return {values_->data(), static_cast<std::size_t>(bound_ + 1)}; }

private:
    CoefficientSequence(CoefficientKind kind, i64 bound, std::shared_ptr<const std::vector<double>> values)
        : kind_(kind), bound_(bound), values_(std::move(values)) {}

    CoefficientKind kind_;
    i64 bound_;
    std::shared_ptr<const std::vector<double>> values_;
};

double coeff_eval(const CoefficientSequence& seq, i64 n);

// lambda(r l) == lambda(r) lambda(l) - [l | r] lambda(r / l) within 1e-10.
// l must be prime; throws OutOfCacheRange when r l exceeds the bound.
bool hecke_relation_check(const CoefficientSequence& seq, i64 r, i64 ell);

// Exact Ramanujan tau(n) for 0 <= n <= bound (tau(0) = 0), from
// q prod (1 - q^m)^24 = q (sum_k (-1)^k (2k+1) q^(k(k+1)/2))^8.
std::vector<i128> ramanujan_tau(i64 bound);

std::string int128_to_string(i128 v);
i128 parse_int128(std::string_view s);

// Cache file: first line is the bound, line n + 1 holds tau(n).
void write_tau_cache(const std::filesystem::path& path, std::span<const i128> tau);
// Returns tau(0..bound) when the file exists and covers the bound.
std::optional<std::vector<i128>> read_tau_cache(const std::filesystem::path& path, i64 bound);
// Path from DELTA_SUMS_CACHE, if set and non-empty.
std::optional<std::filesystem::path> tau_cache_path();

}  // namespace deltasums
