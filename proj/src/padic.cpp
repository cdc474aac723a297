#include "padl/padic.hpp"

#include <sstream>

namespace padl::padic {

namespace {
Int pmod(const Int& p, long N) { return pow_int(p, static_cast<unsigned long>(N)); }
}  // namespace

PadicNumber::PadicNumber(const Int& p, const Rat& val, const Int& unit, long N)
    : p_(p), zero_(false), val_(val), unit_(mod_pos(unit, pmod(p, N))), N_(N) {
    if (N < 1) throw PrecisionTooLow("p-adic precision must be >= 1");
    if (unit_ == 0) {
        zero_ = true;
        val_ = 0;
    } else if (mpz_divisible_p(unit_.get_mpz_t(), p_.get_mpz_t())) {
        throw NotAUnit();
    }
    val_.canonicalize();
}

PadicNumber PadicNumber::zero(const Int& p, long N) {
    PadicNumber z;
    z.p_ = p;
    z.zero_ = true;
    z.N_ = N;
    z.unit_ = 0;
    return z;
}

PadicNumber PadicNumber::one(const Int& p, long N) { return PadicNumber(p, Rat(0), 1, N); }

const Rat& PadicNumber::valuation() const {
    if (zero_) throw ZeroElement();
    return val_;
}

PadicNumber PadicNumber::operator-() const {
    if (zero_) return *this;
    return PadicNumber(p_, val_, pmod(p_, N_) - unit_, N_);
}

PadicNumber PadicNumber::operator*(const PadicNumber& o) const {
    if (p_ != o.p_) throw domain_error("p-adic primes differ");
    long N = std::min(N_, o.N_);
    if (zero_ || o.zero_) return zero(p_, N);
    return PadicNumber(p_, val_ + o.val_, unit_ * o.unit_, N);
}

PadicNumber PadicNumber::operator+(const PadicNumber& o) const {
    if (p_ != o.p_) throw domain_error("p-adic primes differ");
    if (zero_) return o;
    if (o.zero_) return *this;
    Rat dv = val_ - o.val_;
    dv.canonicalize();
    if (dv.get_den() != 1) throw domain_error("p-adic addition across ramified valuations");
    // known modulo p^(val + N) each; align at the smaller valuation
    const PadicNumber& lo = (val_ <= o.val_) ? *this : o;
    const PadicNumber& hi = (val_ <= o.val_) ? o : *this;
    long shift = Rat(hi.val_ - lo.val_).get_num().get_si();
    // absolute precision of the sum
    long abs_prec = std::min(lo.N_, shift + hi.N_);
    if (abs_prec < 1) return zero(p_, 1);
    Int m = pmod(p_, abs_prec);
    Int s = mod_pos(lo.unit_ + (shift >= abs_prec ? Int(0) : hi.unit_ * pmod(p_, shift)), m);
    if (s == 0) return zero(p_, abs_prec);
    long v = ::padl::valuation(s, p_);
    if (v >= abs_prec) return zero(p_, abs_prec);
    return PadicNumber(p_, lo.val_ + v, s / pmod(p_, v), abs_prec - v);
}

PadicNumber PadicNumber::operator-(const PadicNumber& o) const { return *this + (-o); }

PadicNumber PadicNumber::inverse() const {
    if (zero_) throw ZeroDenominator();
    return PadicNumber(p_, -val_, mod_inverse(unit_, pmod(p_, N_)), N_);
}

PadicNumber PadicNumber::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    if (zero_) return e == 0 ? one(p_, N_) : *this;
    PadicNumber r = one(p_, N_), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

bool PadicNumber::operator==(const PadicNumber& o) const {
    if (p_ != o.p_) return false;
    PadicNumber d = *this - o;
    return d.zero_;
}

bool PadicNumber::congruent_mod(const PadicNumber& o, long k) const {
    PadicNumber d = *this - o;
    if (d.zero_) return true;
    Rat v = d.val_;
    return v >= k;
}

std::string PadicNumber::str() const {
    std::ostringstream os;
    if (zero_) {
        os << "O(" << p_ << "^" << N_ << ")";
        return os.str();
    }
    if (val_ != 0) os << p_ << "^" << val_ << " * ";
    os << "(" << unit_ << " + O(" << p_ << "^" << N_ << "))";
    return os.str();
}

PadicNumber from_rational(const Rat& x, const Int& p, long N) {
    Rat xx = x;
    xx.canonicalize();
    if (xx == 0) return PadicNumber::zero(p, N);
    long v;
    Rat u = rat_valuation_part(xx, p, v);
    Int m = pmod(p, N);
    Int num = mod_pos(u.get_num(), m);
    Int den = mod_inverse(mod_pos(u.get_den(), m), m);
    return PadicNumber(p, Rat(v), num * den, N);
}

PadicNumber teichmuller(const Int& a, const Int& p, long N) {
    Int m = pmod(p, N);
    Int x = mod_pos(a, m);
    if (mpz_divisible_p(x.get_mpz_t(), p.get_mpz_t())) throw NotAUnit();
    // x -> x^p converges to the (p-1)-st root of unity congruent to a mod p;
    // N iterations suffice (each one gains a digit)
    for (long i = 0; i < N; ++i) {
        Int nx = pow_mod(x, p, m);
        if (nx == x) break;
        x = nx;
    }
    return PadicNumber(p, Rat(0), x, N);
}

Int embedding_root(const Int& p) {
    if (p == 2) return Int(1);
    auto fac = prime_factors(p - 1);
    for (Int g = 2; g < p; ++g) {
        bool ok = true;
        for (const Int& q : fac)
            if (pow_mod(g, (p - 1) / q, p) == 1) {
                ok = false;
                break;
            }
        if (ok) return g;
    }
    throw domain_error("no primitive root");
}

PadicNumber embed_cyclo(const cyclo::CycloNumber& x, const Int& p, long N) {
    unsigned long m = x.order();
    if (m % p.get_ui() == 0) throw WildPartUnsupported();
    Int pm1 = p - 1;
    if (pm1 % Int(m) != 0)
        throw domain_error("embed_cyclo: order does not divide p-1 (not tame for p)");
    // zeta_m -> omega(g^{(p-1)/m})
    Int g = embedding_root(p);
    Int root_residue = pow_mod(g, pm1 / Int(m), p);
    PadicNumber zeta = teichmuller(root_residue, p, N);
    PadicNumber acc = PadicNumber::zero(p, N);
    PadicNumber zpow = PadicNumber::one(p, N);
    for (size_t i = 0; i < x.coeffs().size(); ++i) {
        const Rat& c = x.coeffs()[i];
        if (c != 0) acc = acc + from_rational(c, p, N) * zpow;
        zpow = zpow * zeta;
    }
    return acc;
}

Rat valuation_cyclo(const cyclo::CycloNumber& x, const Int& p) {
    if (x.is_zero()) throw ZeroElement();
    unsigned long m = x.order();
    if (m == 1) {
        Rat r = x.rational_value();
        long v;
        rat_valuation_part(r, p, v);
        return Rat(v);
    }
    // m must be a power of p
    unsigned long mm = m;
    unsigned long pu = p.get_ui();
    while (mm % pu == 0) mm /= pu;
    if (mm != 1) throw domain_error("valuation_cyclo: order is not a power of p");
    unsigned long phi = euler_phi(Int(m));
    cyclo::CycloNumber pi =
        cyclo::CycloNumber(Rat(1)) - cyclo::CycloNumber::root_of_unity(m, 1);
    cyclo::CycloNumber y = x;
    unsigned long vpi = 0;
    for (;;) {
        cyclo::CycloNumber q = y / pi;
        if (!q.has_integer_coeffs()) break;
        y = q;
        ++vpi;
    }
    return Rat(vpi) / Rat(phi);
}

}  // namespace padl::padic
