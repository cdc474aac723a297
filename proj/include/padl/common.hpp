#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace padl {

using Int = mpz_class;
using Rat = mpq_class;

// Error hierarchy; the CLI maps these onto stable exit codes.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct domain_error : error {
    using error::error;
};
struct NonPositiveDefinite : domain_error {
    NonPositiveDefinite() : domain_error("matrix is not positive definite") {}
};
struct UnsupportedDegree : domain_error {
    explicit UnsupportedDegree(int n)
        : domain_error("degree n = " + std::to_string(n) + " not supported") {}
};
struct BudgetExceeded : error {
    using error::error;
};
struct BoundTooSmall : error {
    using error::error;
};
struct PrecisionTooLow : error {
    using error::error;
};

inline Int pow_int(const Int& b, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

// b^e for e in Z; requires b != 0 when e < 0 and exact result in Q.
inline Rat pow_rat(const Rat& b, long e) {
    if (e == 0) return Rat(1);
    Rat base = b;
    if (e < 0) {
        if (base == 0) throw domain_error("pow_rat: zero to negative power");
        base = 1 / base;
        e = -e;
    }
    Rat r(1);
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

inline long valuation(Int x, const Int& p) {
    if (x == 0) throw domain_error("valuation of zero");
    long v = 0;
    while (mpz_divisible_p(x.get_mpz_t(), p.get_mpz_t())) {
        x /= p;
        ++v;
    }
    return v;
}

inline Rat rat_valuation_part(const Rat& x, const Int& p, long& v) {
    // x = p^v * u with u a p-unit; returns u.
    if (x == 0) throw domain_error("valuation of zero");
    Rat u = x;
    v = 0;
    Int num = u.get_num(), den = u.get_den();
    while (mpz_divisible_p(num.get_mpz_t(), p.get_mpz_t())) {
        num /= p;
        ++v;
    }
    while (mpz_divisible_p(den.get_mpz_t(), p.get_mpz_t())) {
        den /= p;
        --v;
    }
    return Rat(num) / Rat(den);
}

inline Int mod_pos(const Int& a, const Int& m) {
    Int r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline Int mod_inverse(const Int& a, const Int& m) {
    Int r;
    if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()))
        throw domain_error("not invertible mod m");
    return r;
}

inline Int pow_mod(const Int& b, const Int& e, const Int& m) {
    Int r;
    mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline bool is_prime(const Int& n) { return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0; }

inline Int isqrt(const Int& n) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline std::vector<Int> prime_factors(Int n) {
    std::vector<Int> ps;
    if (n < 0) n = -n;
    for (Int q = 2; q * q <= n; ++q) {
        if (n % q == 0) {
            ps.push_back(q);
            while (n % q == 0) n /= q;
        }
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

inline std::vector<std::pair<Int, unsigned long>> factorization(Int n) {
    std::vector<std::pair<Int, unsigned long>> fac;
    if (n < 0) n = -n;
    for (Int q = 2; q * q <= n; ++q) {
        if (n % q == 0) {
            unsigned long e = 0;
            while (n % q == 0) {
                n /= q;
                ++e;
            }
            fac.emplace_back(q, e);
        }
    }
    if (n > 1) fac.emplace_back(n, 1);
    return fac;
}

inline unsigned long euler_phi(Int n) {
    Int r = n;
    for (const Int& q : prime_factors(n)) r = r / q * (q - 1);
    return r.get_ui();
}

}  // namespace padl
