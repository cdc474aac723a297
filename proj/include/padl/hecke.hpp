#pragma once

#include <map>
#include <vector>

#include "padl/chars.hpp"
#include "padl/common.hpp"
#include "padl/qexp.hpp"

namespace padl::hecke {

using qexp::ExtCoeff;
using qexp::FourierExpansion;

struct FactorisationFailed : error {
    FactorisationFailed() : error("Hecke polynomial factorisation identity failed") {}
};
struct NotPLocal : domain_error {
    NotPLocal() : domain_error("matrix has no p-local upper-triangular representative") {}
};
struct PDividesLevel : domain_error {
    PDividesLevel() : domain_error("p divides the level c") {}
};
struct ZeroSatakeParam : domain_error {
    ZeroSatakeParam() : domain_error("Satake parameters must be nonzero") {}
};

// Laurent polynomial in a symbolic positive prime p, over Q.
class PLaurent {
  public:
    PLaurent() = default;
    explicit PLaurent(const Rat& r) {
        if (r != 0) terms_[0] = r;
    }
    static PLaurent p_power(long e, const Rat& c = Rat(1));

    const std::map<long, Rat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rat constant_value() const;  // throws if not constant

    PLaurent operator-() const;
    PLaurent operator+(const PLaurent& o) const;
    PLaurent operator-(const PLaurent& o) const { return *this + (-o); }
    PLaurent operator*(const PLaurent& o) const;
    bool operator==(const PLaurent& o) const { return terms_ == o.terms_; }
    bool operator!=(const PLaurent& o) const { return !(*this == o); }

    Rat eval(const Rat& p) const;  // substitute a numeric prime

  private:
    std::map<long, Rat> terms_;  // exponent -> coefficient, zeros dropped
};

// Laurent polynomial in x_1 ... x_n with PLaurent coefficients.  Numeric-p
// mode is the special case where every coefficient is constant.
class WeylLaurentPoly {
  public:
    explicit WeylLaurentPoly(int n = 1) : n_(n) {}

    static WeylLaurentPoly constant(int n, const PLaurent& c);
    static WeylLaurentPoly monomial(int n, const std::vector<long>& exps, const PLaurent& c);

    int vars() const { return n_; }
    const std::map<std::vector<long>, PLaurent>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    PLaurent coeff(const std::vector<long>& e) const;

    WeylLaurentPoly operator-() const;
    WeylLaurentPoly operator+(const WeylLaurentPoly& o) const;
    WeylLaurentPoly operator-(const WeylLaurentPoly& o) const { return *this + (-o); }
    WeylLaurentPoly operator*(const WeylLaurentPoly& o) const;
    WeylLaurentPoly operator*(const PLaurent& c) const;
    bool operator==(const WeylLaurentPoly& o) const;
    bool operator!=(const WeylLaurentPoly& o) const { return !(*this == o); }

    // invariant under all 2^n sign flips x_i -> x_i^{+-1}
    bool is_weyl_invariant() const;

    // substitute x_i = lambda_i and the symbolic p = numeric p
    ExtCoeff eval(const std::vector<ExtCoeff>& lambdas, const Int& p) const;

    void set(const std::vector<long>& e, const PLaurent& c);  // drops zeros

  private:
    int n_;
    std::map<std::vector<long>, PLaurent> terms_;
};

struct SatakeParams {
    Int p;
    std::vector<ExtCoeff> lambdas;  // nonzero; sqrt-p parts tagged with p

    int degree() const { return static_cast<int>(lambdas.size()); }
    ExtCoeff lambda0() const;  // p^{n(n+1)/2} * prod lambdas
    bool is_ordinary() const;  // p-adic valuation of lambda0 is zero
};

// T~_0 ... T~_{2^n}; symbolic p when p = 0, numeric constants otherwise.
std::vector<WeylLaurentPoly> hecke_polynomial(int n, const Int& p = Int(0));

// T~_m == p^{n(n+1)(m - 2^{n-1})} T~_{2^n - m} for all m, as exact identities.
bool check_symmetry(const std::vector<WeylLaurentPoly>& T, int n, const Int& p = Int(0));

// V~_0 ... V~_{2^n - 1} with u = p^{n(n+1)/2} x_1...x_n; checks the vanishing
// sum and the factorisation R~(z) = (sum V~_m z^m)(1 - u z) before returning.
std::vector<WeylLaurentPoly> v_polys(const std::vector<WeylLaurentPoly>& T, int n,
                                     const Int& p = Int(0));

// Monomial image prod_i (p^{-i} x_i)^{a_i} of the upper-triangular coset
// representative of d under row reduction over the p-local integers.
WeylLaurentPoly satake_omega0(const std::vector<std::vector<Rat>>& d, const Int& p);

// c_{f0}(tau) = sum_v [sum_{u>=v} (-1)^{u-v} Lambda(T_{u-v}) lambda0^{-u}]
//               * p^{(n(n+1)/2)(2-k)v} * c_f(p^{2v} tau)
FourierExpansion p_stabilise(const FourierExpansion& f,
                             const std::map<int, ExtCoeff>& Lambda, const SatakeParams& sp,
                             const Int& trace_bound, bool* nonordinary_warning = nullptr);

// n = 1 closed form: f - (-1/p)^{[k]} p^{-1/2} lambda^{-1} (f tensor (./p))
//                      - p^{k-1} lambda^{-1} f(p^2 z)
FourierExpansion pstab_n1_explicit(const FourierExpansion& f, const ExtCoeff& lambda,
                                   const Int& p, const Int& trace_bound);

// n = 1 eigen-data generator: fills c(p^{2j} m) from seed values at p^2-free
// indices m (map m -> c(m)) by the U_p eigen-relation for eigenvalue p*lambda.
FourierExpansion eigenform_n1(const ExtCoeff& lambda, const Int& p, long weight2,
                              const std::map<Int, Rat>& seeds, const Int& trace_bound);

// T_p eigenvalue p(lambda + lambda^{-1}) of the n = 1 recursion.
ExtCoeff eigenvalue_n1(const ExtCoeff& lambda, const Int& p);

// coefficients of L_p(t), ascending; degree n if p | c, 2n otherwise
std::vector<ExtCoeff> euler_factor(const SatakeParams& sp, bool divides_level);

// partial product over primes q <= prime_bound of L_q(chi(q) q^{-s})^{-1}
ExtCoeff standard_L_truncated(const std::map<Int, SatakeParams>& sps,
                              const chars::DirichletChar& chi, long s, const Int& level_c,
                              const Int& prime_bound);

}  // namespace padl::hecke
