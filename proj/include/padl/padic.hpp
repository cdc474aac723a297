#pragma once

#include <string>

#include "padl/common.hpp"
#include "padl/cyclo.hpp"

namespace padl::padic {

struct ZeroDenominator : error {
    ZeroDenominator() : error("zero denominator") {}
};
struct NotAUnit : error {
    NotAUnit() : error("argument is not a p-adic unit") {}
};
struct WildPartUnsupported : error {
    WildPartUnsupported()
        : error("p-power-order roots of unity support valuation queries only") {}
};
struct ZeroElement : error {
    ZeroElement() : error("valuation of zero") {}
};

// Element of Q_p known to N significant digits: p^val * (unit + O(p^N)).
// val may be a non-integral rational only for tagging ramified valuations;
// arithmetic requires integral valuation differences.
class PadicNumber {
  public:
    PadicNumber() : p_(2), zero_(true), N_(0) {}
    PadicNumber(const Int& p, const Rat& val, const Int& unit, long N);

    static PadicNumber zero(const Int& p, long N);
    static PadicNumber one(const Int& p, long N);

    const Int& prime() const { return p_; }
    bool is_zero() const { return zero_; }
    const Rat& valuation() const;  // throws ZeroElement on zero
    const Int& unit() const { return unit_; }
    long precision() const { return N_; }

    PadicNumber operator-() const;
    PadicNumber operator+(const PadicNumber& o) const;
    PadicNumber operator-(const PadicNumber& o) const;
    PadicNumber operator*(const PadicNumber& o) const;
    PadicNumber inverse() const;
    PadicNumber operator/(const PadicNumber& o) const { return *this * o.inverse(); }
    PadicNumber pow(long e) const;

    // equality to the shared precision
    bool operator==(const PadicNumber& o) const;
    bool operator!=(const PadicNumber& o) const { return !(*this == o); }

    // v_p(*this - o) >= k, to the available precision
    bool congruent_mod(const PadicNumber& o, long k) const;

    std::string str() const;  // "p^v * (u + O(p^N))"

  private:
    Int p_;
    bool zero_ = false;
    Rat val_;
    Int unit_;
    long N_ = 0;
};

PadicNumber from_rational(const Rat& x, const Int& p, long N);

// Teichmuller lift: the (p-1)-st root of unity congruent to a mod p.
PadicNumber teichmuller(const Int& a, const Int& p, long N);

// Smallest primitive root mod p (the fixed convention for iota_p).
Int embedding_root(const Int& p);

// iota_p on Q(zeta_m) for m | p-1 (tame): zeta_m -> omega(g^{(p-1)/m}).
// Wild part (p | m) raises WildPartUnsupported.
PadicNumber embed_cyclo(const cyclo::CycloNumber& x, const Int& p, long N);

// v_p on Z[zeta_{p^e}] via v_pi, pi = 1 - zeta_{p^e}; returns v_pi / phi(p^e).
Rat valuation_cyclo(const cyclo::CycloNumber& x, const Int& p);

}  // namespace padl::padic
