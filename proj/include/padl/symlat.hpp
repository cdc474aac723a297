#pragma once

#include <optional>
#include <vector>

#include "padl/common.hpp"

namespace padl::symlat {

// Symmetric half-integral matrix tau, stored as the integer matrix 2*tau.
// Integer diagonal of tau means even diagonal of `twice`.
class HalfIntSymMatrix {
  public:
    HalfIntSymMatrix() : n_(0) {}
    HalfIntSymMatrix(int n, std::vector<Int> twice_rowmajor);

    static HalfIntSymMatrix zero(int n);
    static HalfIntSymMatrix scalar(const Int& twice_value);  // n = 1

    int degree() const { return n_; }
    const Int& twice(int i, int j) const { return t_[i * n_ + j]; }
    const std::vector<Int>& twice_data() const { return t_; }

    Int trace_twice() const;             // trace of 2*tau
    Int det_twice() const;               // det of 2*tau, n <= 3
    bool is_positive_semidefinite() const;  // exact, n <= 2
    bool is_positive_definite() const;

    bool operator==(const HalfIntSymMatrix& o) const { return n_ == o.n_ && t_ == o.t_; }
    bool operator<(const HalfIntSymMatrix& o) const;  // (trace, lex) order

  private:
    int n_;
    std::vector<Int> t_;
};

using UnimodularMatrix = std::vector<Int>;  // row-major n x n, det = +-1

struct ReducedClass {
    HalfIntSymMatrix representative;
    unsigned long aut_count = 0;  // #{a in GL_n(Z) : a^T sigma a = sigma}
    UnimodularMatrix transform;   // transform^T * sigma * transform = representative
};

// Canonical class representative under GL_n(Z)-congruence; n in {1,2}.
ReducedClass reduce_class(const HalfIntSymMatrix& sigma);

struct ThetaIdeal {
    Int t;                    // positive generator of the maximal ideal
    std::vector<Int> tau_hat; // t * (2 tau)^{-1}, integer entries, row-major
};

// Maximal integral ideal t with h^T (2 tau)^{-1} h in 4 t^{-1} Z for all h.
ThetaIdeal theta_ideal(const HalfIntSymMatrix& tau);

struct VPair {
    std::vector<Int> sigma1;  // in M_n(Z), row-major
    HalfIntSymMatrix sigma2;
};

// All pairs with scale * sigma1^T tau_hat sigma1 + sigma2 = varsigma,
// sigma2 positive semidefinite. entry_bound must dominate the computed
// completeness bound.
std::vector<VPair> enumerate_V(const HalfIntSymMatrix& varsigma,
                               const std::vector<Int>& tau_hat, const Rat& scale,
                               long entry_bound);

// The completeness bound enumerate_V enforces.
long v_completeness_bound(const HalfIntSymMatrix& varsigma, const std::vector<Int>& tau_hat,
                          const Rat& scale);

// All tau in S_+^v with tr(tau) <= trace_bound, deterministic order.
std::vector<HalfIntSymMatrix> enumerate_Splus(int n, long trace_bound);

// sigma1^T m sigma1 for an integer symmetric m (as twice-matrix arithmetic helper).
std::vector<Int> congruence_transform(const std::vector<Int>& m, const std::vector<Int>& a, int n);

}  // namespace padl::symlat
