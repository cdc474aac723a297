#pragma once

#include <complex>
#include <map>
#include <vector>

#include "padl/common.hpp"

namespace padl::cyclo {

// Exact element of Q(zeta_m), stored on the power basis
// zeta^0 ... zeta^{phi(m)-1} reduced modulo the m-th cyclotomic polynomial.
class CycloNumber {
  public:
    CycloNumber() : m_(1), c_(1, Rat(0)) {}
    explicit CycloNumber(const Rat& r) : m_(1), c_(1, r) {}
    CycloNumber(unsigned long order, std::vector<Rat> coeffs);

    static CycloNumber root_of_unity(unsigned long m, long k);  // zeta_m^k
    static CycloNumber from_rational(const Rat& r) { return CycloNumber(r); }

    unsigned long order() const { return m_; }
    const std::vector<Rat>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_rational() const;
    Rat rational_value() const;  // throws if not rational
    bool has_integer_coeffs() const;

    CycloNumber operator-() const;
    CycloNumber operator+(const CycloNumber& o) const;
    CycloNumber operator-(const CycloNumber& o) const;
    CycloNumber operator*(const CycloNumber& o) const;
    CycloNumber inverse() const;  // throws on zero
    CycloNumber operator/(const CycloNumber& o) const { return *this * o.inverse(); }
    bool operator==(const CycloNumber& o) const;
    bool operator!=(const CycloNumber& o) const { return !(*this == o); }

    CycloNumber galois(long a) const;      // zeta -> zeta^a, gcd(a, m) = 1
    CycloNumber conjugate() const;         // zeta -> zeta^{-1}
    CycloNumber lifted(unsigned long M) const;  // into Q(zeta_M), m | M
    CycloNumber pow(long e) const;

    std::complex<double> embed_complex() const;  // zeta_m = exp(2 pi i / m)

    CycloNumber& operator+=(const CycloNumber& o) { return *this = *this + o; }
    CycloNumber& operator*=(const CycloNumber& o) { return *this = *this * o; }

  private:
    unsigned long m_;
    std::vector<Rat> c_;
};

inline CycloNumber operator*(const Rat& r, const CycloNumber& x) {
    return CycloNumber(r) * x;
}

// m-th cyclotomic polynomial, integer coefficients, ascending degree.
const std::vector<Rat>& cyclotomic_polynomial(unsigned long m);

}  // namespace padl::cyclo
