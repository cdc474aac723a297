#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "padl/chars.hpp"
#include "padl/common.hpp"
#include "padl/cyclo.hpp"
#include "padl/eisen.hpp"
#include "padl/hecke.hpp"
#include "padl/padic.hpp"
#include "padl/symlat.hpp"

namespace padl::measures {

using chars::DirichletChar;
using cyclo::CycloNumber;
using padic::PadicNumber;
using symlat::HalfIntSymMatrix;

struct IncompatibleSystem : error {
    long level_i, level_j;
    Int residue;
    IncompatibleSystem(long i, long j, Int y)
        : error("incompatible distribution system at levels (" + std::to_string(i) + ", " +
                std::to_string(j) + "), residue " + y.get_str()),
          level_i(i),
          level_j(j),
          residue(std::move(y)) {}
};
struct ConstantTermPresent : error {
    ConstantTermPresent() : error("local polynomial has a constant term") {}
};
struct BadPrime : error {
    BadPrime() : error("local polynomial indexed by the working prime") {}
};
struct ConductorNotCoprime : error {
    ConductorNotCoprime() : error("twisting conductor shares a factor with p") {}
};
struct NotBounded : error {
    NotBounded() : error("distribution carries no boundedness certificate") {}
};
struct TruncationGap : error {
    TruncationGap() : error("functional support point beyond the truncation bound") {}
};
struct NotOrdinary : error {
    NotOrdinary() : error("eigenform is not ordinary at p") {}
};

// residue (unit mod p^i, reduced to [1, p^i)) -> value
using Level = std::map<Int, PadicNumber>;

// Compatible system of level functions nu_i on (Z/p^i Z)^x, i = 1..depth.
class DistributionSystem {
  public:
    static DistributionSystem from_system(const Int& p, std::vector<Level> levels);
    static DistributionSystem dirac(const Int& a, const Int& p, long depth, long N);
    // normalised counting: nu_i = 1/phi(p^i)
    static DistributionSystem counting(const Int& p, long depth, long N);

    const Int& prime() const { return p_; }
    long depth() const { return static_cast<long>(levels_.size()); }
    const Level& level(long i) const { return levels_.at(i - 1); }  // 1-based

    // integrate a function factoring through level j; re-evaluates at every
    // i >= j and throws IncompatibleSystem if the sums disagree
    PadicNumber integrate(const std::function<PadicNumber(const Int&)>& phi, long j) const;
    // integrate chi * x^{[m]} for chi of conductor dividing p^depth (tame order)
    PadicNumber integrate_character(const DirichletChar& chi, long m_br) const;

    // minimal valuation over all nonzero values (the boundedness certificate)
    std::optional<Rat> boundedness() const { return bound_; }

  private:
    DistributionSystem() = default;
    Int p_;
    std::vector<Level> levels_;
    std::optional<Rat> bound_;
};

// Abstract Kummer-congruence boundedness test: for every kernel vector {b_i}
// of the evaluation matrix of {chi_i x^{[m_i]}} mod p^N, verify that
// sum b_i a_i = 0 mod p^N.
struct KummerVerdict {
    bool pass = true;
    bool vacuous = false;  // no constraints at this precision
    long kernel_rank = 0;
    long combinations_checked = 0;
    std::string witness;  // first failing combination, if any
};
KummerVerdict kummer_check(const Int& p,
                           const std::vector<std::pair<DirichletChar, long>>& basis,
                           const std::vector<PadicNumber>& values, long budget, long N);

// The local-polynomial product distribution: on a character chi it takes the
// value prod_q f_q(chi-bar(q) q^{(n + delta - 1)/2 - m}).
class SigmaMeasure {
  public:
    SigmaMeasure(int n, const eisen::LocalPolys& polys, const Int& p, long N);

    CycloNumber value_exact(const DirichletChar& chi, const Rat& m) const;
    PadicNumber value(const DirichletChar& chi, const Rat& m) const;  // embedded

    // twist by a character of conductor coprime to p
    SigmaMeasure twisted(const DirichletChar& omega) const;

    // level-1 system recovered by character inversion (conductor-p family)
    DistributionSystem system() const;

    const Int& prime() const { return p_; }

  private:
    int n_;
    eisen::LocalPolys polys_;
    Int p_;
    long N_;
    DirichletChar twist_;  // accumulated twist, conductor coprime to p
};

// Generic evaluator twist: [nu (x) omega](chi x^{[m]}) = nu((chi omega) x^{[m]}).
using Evaluator = std::function<CycloNumber(const DirichletChar&, const Rat&)>;
Evaluator twist(Evaluator base, const DirichletChar& omega, const Int& p);
Evaluator dirac_evaluator(const Int& a);

// p-adic Mellin transform; s-spec is an integer [m] or a p-adic s with
// v_p(s) > 0 (then <y>^s = exp(s log<y>) on the principal part).
using MellinSpec = std::variant<long, PadicNumber>;
PadicNumber mellin(const DistributionSystem& nu, const DirichletChar& chi,
                   const MellinSpec& spec, long N);

// truncated-power helpers used by mellin (exposed for direct testing)
Int padic_log_unit(const Int& x, const Int& p, long N);     // x = 1 mod p
Int padic_exp_small(const Int& y, const Int& p, long N);    // v_p(y) >= 2 (>= 3 for p = 2)

// the linear functional: sum_i beta_i c_g(sigma_i, 1); sigma_i absent from the
// support but within the trace bound count as exact zeros
CycloNumber ell_f(const std::map<HalfIntSymMatrix, CycloNumber>& g_coeffs,
                  const std::vector<std::pair<HalfIntSymMatrix, CycloNumber>>& data,
                  long trace_bound);

// Algebraic Fourier coefficient of the normalised projected theta-Eisenstein
// product: sum over (sigma1, sigma2) in V_{p^r sigma} of
//   chi_l(|sigma1|) |sigma1|^mu Cstar_sign(sigma2, m) P(sigma2, p^r sigma; beta)
// where Cstar_+ = M^{-(k+m-mu-1-2n)/2} |sigma2|^{m-n-1/2} prod_q f_q(...),
// Cstar_- = M^{-(m-n-1/2)} Cstar_+, and M = norm_matrix_det.
CycloNumber proj_coeff_algebraic(const HalfIntSymMatrix& sigma, const Rat& m, int sign,
                                 const DirichletChar& chi_l, const HalfIntSymMatrix& tau,
                                 const eisen::EisenParams& params,
                                 const eisen::LocalPolys& local_polys,
                                 const DirichletChar& eta, const Rat& norm_matrix_det);

// Interpolation-value assembly.
struct InterpolationInput {
    Int p;
    int n = 1;
    long weight2 = 0;  // 2k
    int mu = 0;
    int sign = +1;
    long ell_chi = 1;
    Rat m;
    long N = 2;                    // target embedding precision
    CycloNumber det2tau_pow;       // |2 tau|^{n/2 + mu}, supplied exactly
    Rat norm_tbc = 1;              // N(t b c)
    Rat norm_matrix_det = 1;       // |-(N(sqrt(t) b c)^2 / 2) tau_hat|
    CycloNumber gauss;             // G_n(chi-bar)
    CycloNumber lambda_tau;        // Euler-factor ratio value at m
    CycloNumber g_tau;             // local-polynomial product value at m
    hecke::SatakeParams satake;    // supplies lambda0 and the ordinarity check
    CycloNumber l_ratio;           // certified-algebraic normalised L-value
    bool psi_chi_sq_trivial = false;  // (psi* chi-bar)^2 = 1 flag
};

struct InterpolationResult {
    PadicNumber value;
    bool parity_excluded = false;
};

InterpolationResult interpolation_value(const InterpolationInput& input);

}  // namespace padl::measures
