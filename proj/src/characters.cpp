#include "deltasums/characters.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <numeric>

#include "deltasums/error.hpp"

namespace deltasums {

DirichletCharacter::DirichletCharacter(PrimeModulus modulus, i64 index)
    : modulus_(std::move(modulus)), index_(index) {
    if (index < 0 || index >= modulus_.group_order()) {
        throw InvalidArgument(
            fmt::format("character index {} outside [0, {}]", index, modulus_.group_order() - 1));
    }
}

i64 DirichletCharacter::phase(i64 n) const {
    return mul_mod(index_, modulus_.dlog(n), modulus_.group_order());
}

cplx DirichletCharacter::operator()(i64 n) const {
    if (mod_floor(n, M()) == 0) return {0.0, 0.0};
    return unit_root(phase(n), modulus_.group_order());
}

DirichletCharacter DirichletCharacter::conj() const {
    const i64 order = modulus_.group_order();
    return {modulus_, mod_floor(order - index_, order)};
}

i64 DirichletCharacter::order() const {
    const i64 group = modulus_.group_order();
    return group / std::gcd(index_, group);
}

std::vector<cplx> DirichletCharacter::values() const {
    const i64 order = modulus_.group_order();
    const auto& dlog = modulus_.dlog_table();
    // Only `order` distinct values exist; tabulate roots once.
    const i64 distinct = this->order();
    const i64 step = order / distinct;
    std::vector<cplx> roots(static_cast<std::size_t>(distinct));
    for (i64 j = 0; j < distinct; ++j) roots[static_cast<std::size_t>(j)] = unit_root(j, distinct);
    std::vector<cplx> out(static_cast<std::size_t>(M()));
    for (i64 n = 1; n < M(); ++n) {
        const i64 ph = mul_mod(index_, dlog[static_cast<std::size_t>(n)], order);
        out[static_cast<std::size_t>(n)] = roots[static_cast<std::size_t>(ph / step)];
    }
    return out;
}

void DirichletCharacter::require_primitive(std::string_view operation) const {
    if (is_principal()) {
        throw PrincipalCharacterNotAllowed(
            fmt::format("{}: principal character mod {} is not allowed", operation, M()));
    }
}

cplx char_eval(const DirichletCharacter& chi, i64 n) { return chi(n); }

std::vector<DirichletCharacter> enumerate_characters(i64 M, CharacterFilter filter) {
    if (!is_prime(M)) throw NotPrime(fmt::format("enumerate_characters: {} is not prime", M));
    const auto modulus = PrimeModulus::get(M);
    std::vector<DirichletCharacter> out;
    switch (filter) {
        case CharacterFilter::quadratic:
            out.emplace_back(modulus, (M - 1) / 2);
            break;
        case CharacterFilter::primitive:
        case CharacterFilter::all:
            for (i64 k = (filter == CharacterFilter::all ? 0 : 1); k < M - 1; ++k) out.emplace_back(modulus, k);
            break;
    }
    return out;
}

double orthogonality_residual(i64 M) {
    const auto chars = enumerate_characters(M, CharacterFilter::all);
    std::vector<std::vector<cplx>> tables;
    tables.reserve(chars.size());
    for (const auto& chi : chars) tables.push_back(chi.values());

    double worst = 0.0;
    for (std::size_t k = 1; k < chars.size(); ++k) {
        CompensatedSum<cplx> s;
        for (i64 n = 0; n < M; ++n) s += tables[k][static_cast<std::size_t>(n)];
        worst = std::max(worst, std::abs(s.value()));
    }
    for (i64 n = 2; n < M; ++n) {
        CompensatedSum<cplx> s;
        for (const auto& t : tables) s += t[static_cast<std::size_t>(n)];
        worst = std::max(worst, std::abs(s.value()));
    }
    return worst;
}

bool orthogonality_check(i64 M) { return orthogonality_residual(M) <= 1e-12; }

}  // namespace deltasums
