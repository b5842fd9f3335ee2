#pragma once

#include <array>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "zlab/gaussian.hpp"

namespace zlab {

// The four unit twists psi_j = (j/.), a Klein four-group under pointwise
// multiplication on primary arguments.
enum class UnitTwist : uint8_t { one = 0, i = 1, one_plus_i = 2, i_one_plus_i = 3 };

inline constexpr std::array<UnitTwist, 4> kAllTwists = {
    UnitTwist::one, UnitTwist::i, UnitTwist::one_plus_i, UnitTwist::i_one_plus_i};

UnitTwist cg_mul(UnitTwist x, UnitTwist y);
GaussianInt twist_element(UnitTwist t);            // 1, i, 1+i, i(1+i)
std::string twist_name(UnitTwist t);               // "1", "i", "1+i", "i(1+i)"
std::optional<UnitTwist> parse_twist(const std::string& s);

// Euler criterion a^((N(p)-1)/2) mod p. p must be an odd Gaussian prime.
int symbol_euler(GaussianInt a, GaussianInt p);

// Reference symbol: Euler product over the factorization of n. Any a, odd n != 0.
int symbol_oracle(GaussianInt a, GaussianInt n);

// Fast gcd-like symbol using the reciprocity flip for primary arguments and
// the unit / 1+i supplements. Must agree with symbol_oracle everywhere; that
// equivalence is a test gate, not an assumption here.
int symbol(GaussianInt a, GaussianInt n);

// psi_j(n) for odd n, via the supplement formulas on the primary associate.
int psi_eval(UnitTwist t, GaussianInt n);
// Same value through symbol_oracle; test gate for psi_eval.
int psi_eval_oracle(UnitTwist t, GaussianInt n);

// chi = chi_m * psi_j with primary modulus m. Evaluation vanishes on even n
// and on n sharing a factor with m; otherwise symbol(m,n) * psi_j(n).
class QuadraticCharacter {
public:
    QuadraticCharacter(GaussianInt modulus, UnitTwist twist);

    GaussianInt modulus() const { return modulus_; }
    UnitTwist twist() const { return twist_; }
    bool is_principal() const;

    int eval(GaussianInt n) const;

    // Norm of the smallest periodicity modulus (1+i)^k * c1, k = 0..5,
    // where modulus = c1*c2^2; determined by randomized residue testing.
    long long conductor_norm() const;
    GaussianInt conductor() const;

    // Value of the inducing primitive Hecke character at the ideal (1+i):
    // 0 when the conductor is even, otherwise +-1 read off from the residue
    // class of 1+i modulo the odd conductor.
    int eps2() const;

    const PrimaryFactorization& modulus_factorization() const;

private:
    struct State;
    void ensure_factorization() const;
    void ensure_conductor() const;

    GaussianInt modulus_;
    UnitTwist twist_;
    std::shared_ptr<State> state_;  // lazy caches, shared across copies
};

long long conductor_norm(const QuadraticCharacter& chi);

// Dense table of (n/m) over the canonical residues n mod m, for odd primary
// m. For primary n this equals chi_m(n) by reciprocity, so the big character
// sums become one divrem plus a lookup per term instead of a symbol
// computation. Build cost ~2 N(m) symbol evaluations.
class SymbolTable {
public:
    explicit SymbolTable(GaussianInt m);

    // (n/m) for odd n (any n when m = 1).
    int operator()(GaussianInt n) const;

    GaussianInt modulus() const { return m_; }

private:
    GaussianInt m_;
    long long box_ = 0;  // residues live in [-box_, box_]^2
    std::vector<signed char> vals_;
};

}  // namespace zlab
