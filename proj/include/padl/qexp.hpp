#pragma once

#include <complex>
#include <map>
#include <vector>

#include "padl/chars.hpp"
#include "padl/common.hpp"
#include "padl/cyclo.hpp"
#include "padl/symlat.hpp"

namespace padl::qexp {

using chars::DirichletChar;
using cyclo::CycloNumber;
using symlat::HalfIntSymMatrix;

struct ParityMismatch : error {
    ParityMismatch() : error("character parity incompatible with mu") {}
};
struct InsufficientTruncation : error {
    using error::error;
};
struct DegreeMismatch : error {
    DegreeMismatch() : error("expansion degrees differ") {}
};
struct IrrationalExponent : error {
    IrrationalExponent() : error("determinant power is not rational here") {}
};
struct NotPrimitive : error {
    NotPrimitive() : error("character must be primitive") {}
};
struct NumericOnlyForDegreeOne : error {
    NumericOnlyForDegreeOne() : error("numeric evaluation supports n = 1 only") {}
};

// Element of Q(zeta)(sqrt p): cyclo * sqrt(p)^e.  The prime p is fixed per
// computation; p = 0 marks "no surd in play" (e must then be 0).
class ExtCoeff {
  public:
    ExtCoeff() : e_(0), p_(0) {}
    explicit ExtCoeff(const Rat& r) : c_(r), e_(0), p_(0) {}
    explicit ExtCoeff(CycloNumber c) : c_(std::move(c)), e_(0), p_(0) {}
    ExtCoeff(CycloNumber c, long sqrtp_exp, const Int& p);

    const CycloNumber& cyclo_part() const { return c_; }
    long sqrtp_exp() const { return e_; }
    const Int& prime() const { return p_; }
    bool is_zero() const { return c_.is_zero(); }

    ExtCoeff operator-() const;
    ExtCoeff operator+(const ExtCoeff& o) const;
    ExtCoeff operator-(const ExtCoeff& o) const { return *this + (-o); }
    ExtCoeff operator*(const ExtCoeff& o) const;
    ExtCoeff conjugate() const;  // zeta -> zeta^{-1}; sqrt p fixed
    ExtCoeff inverse() const;    // throws on zero
    ExtCoeff pow(long e) const;
    bool operator==(const ExtCoeff& o) const;
    bool operator!=(const ExtCoeff& o) const { return !(*this == o); }

    // fold even sqrt-p powers into the cyclotomic part; leaves e in {0, 1}
    ExtCoeff normalized() const;

    std::complex<double> embed_complex() const;

  private:
    CycloNumber c_;
    long e_;
    Int p_;
};

inline ExtCoeff operator*(const Rat& r, const ExtCoeff& x) { return ExtCoeff(r) * x; }

// Truncated Fourier expansion; half-integral weights stored doubled.
struct FourierExpansion {
    int degree = 1;
    long weight2 = 0;              // 2k
    Rat level_b = 1;               // positive generator of the ideal b
    Int level_c = 1;               // positive generator of the ideal c
    Int prime = 0;                 // working prime for sqrt-p coefficients
    Int trace_bound = 0;           // completeness: all tr(tau) <= bound present
    std::map<HalfIntSymMatrix, ExtCoeff> coeffs;

    ExtCoeff coeff(const HalfIntSymMatrix& tau) const;
    void set(const HalfIntSymMatrix& tau, const ExtCoeff& v);  // drops zeros
    bool operator==(const FourierExpansion& o) const;
};

// theta_{chi}^{(mu)}(scale * z; tau), coefficients 2*varsigma = scale * x^T (2tau) x.
FourierExpansion theta_series(const HalfIntSymMatrix& tau, const DirichletChar& chi,
                              int mu, const Rat& scale, const Int& trace_bound);

// c(tau; f|U_p) = p^{n(n+1-k)} c_f(p^2 tau)
FourierExpansion u_p(const FourierExpansion& f, const Int& p);

// g|V(M) = M^{n l} g(M^2 z)
FourierExpansion v_shift(const FourierExpansion& g, const Int& M);

FourierExpansion multiply(const FourierExpansion& f, const FourierExpansion& g);

// linear combination helper
FourierExpansion add(const FourierExpansion& f, const FourierExpansion& g);
FourierExpansion scale_expansion(const FourierExpansion& f, const ExtCoeff& c);

// D(s, f, g) partial sum over reduced classes of trace <= trace_bound
ExtCoeff rankin_dirichlet(const FourierExpansion& f, const FourierExpansion& g,
                          const Rat& s, const Int& trace_bound);

// n = 1 twist: c(m) -> phi(m) c(m)
FourierExpansion twist_n1(const FourierExpansion& f, const DirichletChar& phi);

// Right-hand side of the theta transformation formula, prefactor kept as
// exact tokens (rational * sqrt(sqrt_arg)^{-1} * i^{i_power} * G_n(chi bar)
// * sqrtp^{sqrtp_exp}) and the series theta_{chi bar}^{(mu)} separately.
struct ThetaTransformRHS {
    Rat rational = 1;
    Int sqrt_arg = 1;   // prefactor divides by sqrt(sqrt_arg)
    int i_power = 0;
    CycloNumber gauss;
    long sqrtp_exp = 0;
    Int p = 0;
    FourierExpansion series;

    std::complex<double> prefactor_complex() const;
};

ThetaTransformRHS theta_transform_rhs(const HalfIntSymMatrix& tau, const DirichletChar& chi,
                                      int mu, const Rat& b, const Int& c,
                                      const Int& trace_bound);

// |(Y_chi i z)^{-(1/2+mu)} theta_chi(-1/(Y_chi^2 z)) - RHS(z)| at a point of H.
double numeric_theta_check(const HalfIntSymMatrix& tau, const DirichletChar& chi, int mu,
                           const Rat& b, const Int& c, std::complex<double> z, long terms);

}  // namespace padl::qexp
