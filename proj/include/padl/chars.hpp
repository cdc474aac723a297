#pragma once

#include <vector>

#include "padl/common.hpp"
#include "padl/cyclo.hpp"
#include "padl/symlat.hpp"

namespace padl::chars {

using cyclo::CycloNumber;

struct ConductorNotDividing : error {
    ConductorNotDividing() : error("conductor does not divide target modulus") {}
};

// Dirichlet character mod M, stored by exponents on fixed generators of
// (Z/MZ)^x, so induction and restriction are exact.
class DirichletChar {
  public:
    DirichletChar() : DirichletChar(1) {}
    explicit DirichletChar(const Int& modulus);  // principal character
    DirichletChar(const Int& modulus, std::vector<unsigned long> gen_exponents);

    static DirichletChar trivial(const Int& modulus) { return DirichletChar(modulus); }
    // Kronecker-symbol character (D / .) for a fundamental discriminant D.
    static DirichletChar kronecker(const Int& D);

    const Int& modulus() const { return modulus_; }
    const Int& conductor() const { return conductor_; }
    bool is_primitive() const { return conductor_ == modulus_; }
    bool is_trivial() const;                       // conductor 1
    unsigned long order() const;                   // order in the character group
    const std::vector<unsigned long>& exponents() const { return exps_; }
    const std::vector<Int>& generators() const;          // residues mod M
    const std::vector<unsigned long>& generator_orders() const;

    CycloNumber operator()(const Int& a) const;    // 0 if gcd(a, M) > 1
    int sign_value(const Int& a) const;            // value for real characters, in {-1,0,1}
    bool is_real() const;
    int parity() const;                            // chi(-1) as +-1

    DirichletChar induce(const Int& new_modulus) const;
    DirichletChar primitive_part() const;          // character mod conductor
    DirichletChar conjugate() const;
    DirichletChar operator*(const DirichletChar& o) const;  // mod lcm of moduli

    bool operator==(const DirichletChar& o) const;

  private:
    Int modulus_;
    std::vector<unsigned long> exps_;  // chi(g_i) = zeta_{d_i}^{exps_[i]}
    Int conductor_;
    void compute_conductor();
    std::vector<unsigned long> dlog(const Int& a) const;
};

// The quadratic character of Q(i^{[n/2]} sqrt(|2 tau|)).
DirichletChar rho_tau(const symlat::HalfIntSymMatrix& tau);

// Degree-n Gauss sum over GL_n(Z/FZ), F the conductor of phi.
// Guarded by F^{n^2} <= budget; budget 0 means the default (env
// PADL_GAUSS_BUDGET or 1000).
CycloNumber gauss_sum_n(const std::vector<Int>& X, const DirichletChar& phi, int n,
                        unsigned long budget = 0);
CycloNumber gauss_sum_n(const DirichletChar& phi, int n, unsigned long budget = 0);

// All characters of conductor dividing p^l_max, deterministic order.
std::vector<DirichletChar> character_family(const Int& p, int l_max);

// All characters mod M (test support).
std::vector<DirichletChar> all_characters(const Int& M);

}  // namespace padl::chars
