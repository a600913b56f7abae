#pragma once

// Dirichlet characters modulo a prime M, indexed against the smallest
// primitive root g:  chi_k(g^j) = e(k j / (M-1)),  chi_k(n) = 0 when M | n.

#include <string_view>
#include <vector>

#include "deltasums/modular.hpp"
#include "deltasums/numeric.hpp"

namespace deltasums {

enum class CharacterFilter { all, primitive, quadratic };

class DirichletCharacter {
public:
    DirichletCharacter(PrimeModulus modulus, i64 index);
    DirichletCharacter(i64 M, i64 index) : DirichletCharacter(PrimeModulus::get(M), index) {}

    const PrimeModulus& modulus() const { return modulus_; }
    i64 M() const { return modulus_.value(); }
    i64 index() const { return index_; }

    // chi(n) for any integer n.
    cplx operator()(i64 n) const;

    // Phase numerator of chi(n): chi(n) = e(phase/(M-1)). Requires M not dividing n.
    i64 phase(i64 n) const;

    DirichletCharacter conj() const;

    bool is_principal() const { return index_ == 0; }
    // Every non-principal character of prime modulus is primitive.
    bool is_primitive() const { return index_ != 0; }
    bool is_quadratic() const { return 2 * index_ == M() - 1; }
    bool is_real() const { return is_principal() || is_quadratic(); }
    // Order of chi in the character group.
    i64 order() const;

    // values[n] = chi(n) for 0 <= n < M.
    std::vector<cplx> values() const;

    // Throws PrincipalCharacterNotAllowed for the principal character.
    void require_primitive(std::string_view operation) const;

    bool operator==(const DirichletCharacter& other) const {
        return M() == other.M() && index_ == other.index_;
    }

private:
    PrimeModulus modulus_;
    i64 index_;
};

cplx char_eval(const DirichletCharacter& chi, i64 n);

// Characters mod M in index order, restricted by the filter. Requires M > 3 prime.
std::vector<DirichletCharacter> enumerate_characters(i64 M, CharacterFilter filter = CharacterFilter::all);

// Both orthogonality relations hold to 1e-12 absolute:
//   sum_n chi(n) = 0 for chi non-principal,  sum_chi chi(n) = 0 for n != 1 (mod M).
bool orthogonality_check(i64 M);
// Largest deviation from zero over both relations.
double orthogonality_residual(i64 M);

}  // namespace deltasums
