#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "padl/chars.hpp"
#include "padl/common.hpp"
#include "padl/cyclo.hpp"
#include "padl/symlat.hpp"

namespace padl::eisen {

using cyclo::CycloNumber;
using symlat::HalfIntSymMatrix;

struct NotSpecialValue : domain_error {
    NotSpecialValue() : domain_error("m is not in the admissible special-value set") {}
};
struct ExcludedSpecialValue : domain_error {
    ExcludedSpecialValue() : domain_error("m is an excluded special value") {}
};
struct MissingPlugin : error {
    MissingPlugin() : error("no projection polynomial registered for this degree") {}
};

// Sparse multivariate polynomial over Q, dense-exponent keys.
class MPoly {
  public:
    explicit MPoly(int nvars = 1) : nv_(nvars) {}
    static MPoly constant(int nvars, const Rat& c);
    static MPoly var(int nvars, int i);

    int nvars() const { return nv_; }
    const std::map<std::vector<long>, Rat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    long degree_in(int var) const;

    MPoly operator-() const;
    MPoly operator+(const MPoly& o) const;
    MPoly operator-(const MPoly& o) const { return *this + (-o); }
    MPoly operator*(const MPoly& o) const;
    MPoly operator*(const Rat& c) const;
    bool operator==(const MPoly& o) const { return nv_ == o.nv_ && terms_ == o.terms_; }
    bool operator!=(const MPoly& o) const { return !(*this == o); }

    MPoly derivative(int var) const;
    MPoly divide_exact(const MPoly& d) const;  // throws domain_error on failure
    MPoly substitute(int var, const Rat& value) const;
    Rat eval(const std::vector<Rat>& xs) const;

    void add_term(const std::vector<long>& e, const Rat& c);

  private:
    int nv_;
    std::map<std::vector<long>, Rat> terms_;
};

// Polynomial in the g_ij (i <= j, row-major upper triangle) and a trailing
// variable s'.
struct SymPolyG {
    int n = 1;
    MPoly poly;  // nvars = n(n+1)/2 + 1, last variable is s'
};

// R(g; beta, s') via symbolic differentiation; n in {1, 2}, beta <= 4.
SymPolyG r_poly(int n, int beta);

// Exact bookkeeping of the transcendental constant:
//   rational * i^{i} * 2^{two} * pi^{pi} * prod Gamma_n(arg)^{e} * p^{pexp} * algebraic
struct SymbolicConstant {
    Rat rational = 1;
    int i_exponent = 0;  // mod 4
    Rat two_exponent = 0;
    Rat pi_exponent = 0;
    std::map<Rat, long> gamma_exps;  // Gamma_n(arg)^e tokens
    Int p = 0;
    Rat p_exponent = 0;
    CycloNumber algebraic = CycloNumber(Rat(1));

    bool is_zero() const { return rational == 0 || algebraic.is_zero(); }
    SymbolicConstant operator*(const SymbolicConstant& o) const;  // adds exponents
    // requires identical transcendental tokens; folds values together
    SymbolicConstant operator+(const SymbolicConstant& o) const;
    // drops pi and Gamma tokens; requires integral 2- and p-exponents
    CycloNumber algebraic_part() const;
};

// special-value sets; m in (1/2)Z, sign = +1 / -1 selects the branch
bool omega_contains(int n, long weight2, int mu, const Rat& m, int sign);

// holomorphic-projection coefficient polynomial P(sigma, sigma'; beta).
// weight_total is the weight at which the projection is taken; s_prime the
// parameter of R.  Built in for n = 1; n = 2 requires a registered plug-in
// whose postcondition P(sigma, 0; beta) = |sigma|^beta is enforced per call.
Rat projection_P(const HalfIntSymMatrix& sigma, const HalfIntSymMatrix& sigma_prime,
                 long beta, const Rat& weight_total, const Rat& s_prime);

using ProjectionPlugin =
    std::function<Rat(const HalfIntSymMatrix&, const HalfIntSymMatrix&, long, const Rat&,
                      const Rat&)>;
void register_projection_plugin(int n, ProjectionPlugin plugin);
void clear_projection_plugin(int n);

// numeric quadrature of the projection integral (n = 1 oracle):
// (4 pi sigma')^{w-1}/Gamma(w-1) * int_0^inf (4 pi s2 y)^{-beta}
//   R(4 pi s2 y; beta, s') e^{-4 pi sigma' y} y^{w-2} dy
double projection_oracle_n1(const Rat& sigma2, const Rat& sigma_prime, long beta,
                            const Rat& weight_total, const Rat& s_prime, long steps);

struct EisenParams {
    int n = 1;
    long weight2 = 0;  // 2k
    int mu = 0;
    Rat b = 1;   // generator of the fractional ideal
    Int t = 1;   // theta-ideal generator
    Int c = 1;   // level
    Int p = 0;   // working prime
    long r = 0;  // p-power level exponent
};

// local polynomial data q -> integer coefficients of f_{sigma, q}, ascending
using LocalPolys = std::map<Int, std::vector<Int>>;

SymbolicConstant c_star(const HalfIntSymMatrix& sigma2, const Rat& m, int sign,
                        const EisenParams& params, const LocalPolys& local_polys,
                        const chars::DirichletChar& eta);

// sum over (sigma1, sigma2) in V_{p^r sigma} of
// chi_l(|sigma1|) |sigma1|^mu C*_(sign)(sigma2, m) P(sigma2, p^r sigma; beta_sign)
SymbolicConstant eisen_proj_coeff(const HalfIntSymMatrix& sigma, const Rat& m, int sign,
                                  const chars::DirichletChar& chi_l,
                                  const HalfIntSymMatrix& tau, const EisenParams& params,
                                  const LocalPolys& local_polys,
                                  const chars::DirichletChar& eta);

struct CongruenceReport {
    bool ok = true;
    long pairs_checked = 0;
    std::vector<std::string> violations;
};

// verifies, for every supplied pair, the exact congruences
//   |sigma2| = |-(scale) tau_hat| |sigma1|^2  (mod p^r)
//   P(sigma2, p^r sigma; beta) = |sigma2|^beta (mod p^r)
CongruenceReport congruence_check(const std::vector<symlat::VPair>& pairs,
                                  const std::vector<Int>& tau_hat, const Rat& scale,
                                  const Int& p, long r, const HalfIntSymMatrix& varsigma,
                                  long beta, const Rat& weight_total, const Rat& s_prime);

}  // namespace padl::eisen
