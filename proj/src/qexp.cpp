#include "padl/qexp.hpp"

#include <algorithm>
#include <cmath>

namespace padl::qexp {

ExtCoeff::ExtCoeff(CycloNumber c, long sqrtp_exp, const Int& p)
    : c_(std::move(c)), e_(sqrtp_exp), p_(p) {
    if (c_.is_zero()) e_ = 0;
    if (e_ != 0 && p_ <= 1) throw domain_error("ExtCoeff: sqrt-p exponent without a prime");
}

namespace {
Int merge_prime(const Int& a, const Int& b) {
    if (a == 0) return b;
    if (b == 0) return a;
    if (a != b) throw domain_error("ExtCoeff: mixing two different surd primes");
    return a;
}
}  // namespace

ExtCoeff ExtCoeff::operator-() const {
    ExtCoeff r = *this;
    r.c_ = -r.c_;
    return r;
}

ExtCoeff ExtCoeff::operator+(const ExtCoeff& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    Int p = merge_prime(p_, o.p_);
    if (((e_ - o.e_) % 2 + 2) % 2 != 0)
        throw domain_error("ExtCoeff: adding incompatible sqrt-p parities");
    long emin = std::min(e_, o.e_);
    Rat pr(p == 0 ? Int(1) : p);
    CycloNumber a = c_ * CycloNumber(pow_rat(pr, (e_ - emin) / 2));
    CycloNumber b = o.c_ * CycloNumber(pow_rat(pr, (o.e_ - emin) / 2));
    CycloNumber s = a + b;
    if (s.is_zero()) return ExtCoeff();
    return ExtCoeff(std::move(s), emin, p);
}

ExtCoeff ExtCoeff::operator*(const ExtCoeff& o) const {
    if (is_zero() || o.is_zero()) return ExtCoeff();
    Int p = merge_prime(p_, o.p_);
    return ExtCoeff(c_ * o.c_, e_ + o.e_, p == 0 ? Int(0) : p);
}

ExtCoeff ExtCoeff::conjugate() const {
    ExtCoeff r = *this;
    r.c_ = r.c_.conjugate();
    return r;
}

ExtCoeff ExtCoeff::inverse() const {
    if (is_zero()) throw domain_error("ExtCoeff: inverse of zero");
    return ExtCoeff(c_.inverse(), -e_, p_ == 0 ? Int(0) : p_);
}

ExtCoeff ExtCoeff::pow(long e) const {
    ExtCoeff base = e < 0 ? inverse() : *this;
    if (e < 0) e = -e;
    ExtCoeff r(Rat(1));
    while (e) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

ExtCoeff ExtCoeff::normalized() const {
    if (is_zero()) return ExtCoeff();
    long fold = (e_ >= 0) ? e_ / 2 : (e_ - 1) / 2;
    long rem = e_ - 2 * fold;  // 0 or 1
    CycloNumber c = c_ * CycloNumber(pow_rat(Rat(p_ == 0 ? Int(1) : p_), fold));
    if (rem == 0) return ExtCoeff(std::move(c));
    return ExtCoeff(std::move(c), rem, p_);
}

bool ExtCoeff::operator==(const ExtCoeff& o) const {
    ExtCoeff a = normalized(), b = o.normalized();
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    if (a.e_ != b.e_) return false;
    return a.c_ == b.c_;
}

std::complex<double> ExtCoeff::embed_complex() const {
    std::complex<double> v = c_.embed_complex();
    if (e_ != 0) v *= std::pow(std::sqrt(p_.get_d()), static_cast<double>(e_));
    return v;
}

ExtCoeff FourierExpansion::coeff(const HalfIntSymMatrix& tau) const {
    auto it = coeffs.find(tau);
    return it == coeffs.end() ? ExtCoeff() : it->second;
}

void FourierExpansion::set(const HalfIntSymMatrix& tau, const ExtCoeff& v) {
    if (v.is_zero())
        coeffs.erase(tau);
    else
        coeffs[tau] = v;
}

bool FourierExpansion::operator==(const FourierExpansion& o) const {
    if (degree != o.degree || weight2 != o.weight2) return false;
    Int tb = std::min(trace_bound, o.trace_bound);
    for (const auto& [tau, c] : coeffs)
        if (tau.trace_twice() <= 2 * tb && c != o.coeff(tau)) return false;
    for (const auto& [tau, c] : o.coeffs)
        if (tau.trace_twice() <= 2 * tb && c != coeff(tau)) return false;
    return true;
}

FourierExpansion theta_series(const HalfIntSymMatrix& tau, const DirichletChar& chi,
                              int mu, const Rat& scale, const Int& trace_bound) {
    if (!tau.is_positive_definite()) throw NonPositiveDefinite();
    if (mu != 0 && mu != 1) throw domain_error("mu must be 0 or 1");
    if (scale <= 0) throw domain_error("theta_series: scale must be positive");
    const int n = tau.degree();
    DirichletChar chiP = chi.primitive_part();
    if (chiP.conductor() > 1) {
        int want = (n * mu) % 2 == 0 ? 1 : -1;
        int have = chiP.parity() == 1 ? 1 : -1;
        if (n % 2 == 1 && have != want) throw ParityMismatch();
        if (n % 2 == 0 && 1 != want) throw ParityMismatch();  // n even: (-1)^{n mu} = 1
    }
    FourierExpansion out;
    out.degree = n;
    out.weight2 = n + 2 * mu;
    out.trace_bound = trace_bound;

    // sum bound: tr(2*varsigma) = scale * tr(x^T (2tau) x) >= scale*lambda*|x|^2
    Rat lam = (n == 1) ? Rat(tau.twice(0, 0))
                       : Rat(tau.det_twice()) / tau.trace_twice();
    Rat q = Rat(2 * trace_bound) / (scale * lam);
    Int qb = q.get_num() / q.get_den();
    long B = isqrt(qb).get_si() + 1;

    const size_t cells = static_cast<size_t>(n) * n;
    std::vector<long> e(cells, -B);
    std::vector<Int> x(cells);
    for (;;) {
        for (size_t i = 0; i < cells; ++i) x[i] = e[i];
        std::vector<Int> q2 = symlat::congruence_transform(tau.twice_data(), x, n);
        Int tr2q = 0;
        for (int i = 0; i < n; ++i) tr2q += q2[i * n + i];
        Rat tr2 = scale * Rat(tr2q);
        tr2.canonicalize();
        if (tr2.get_den() == 1 && tr2.get_num() <= 2 * trace_bound) {
            std::vector<Int> tw(cells);
            bool ok = true;
            for (size_t i = 0; i < cells; ++i) {
                Rat v = scale * Rat(q2[i]);
                v.canonicalize();
                if (v.get_den() != 1) {
                    ok = false;
                    break;
                }
                tw[i] = v.get_num();
            }
            for (int i = 0; ok && i < n; ++i)
                if (tw[i * n + i] % 2 != 0) ok = false;
            if (!ok) throw domain_error("theta_series: scale does not keep support integral");
            // det x
            Int det = (n == 1) ? x[0] : x[0] * x[3] - x[1] * x[2];
            CycloNumber val = chiP(det).conjugate();
            if (mu == 1) val = val * CycloNumber(Rat(det));
            if (!val.is_zero()) {
                HalfIntSymMatrix vs(n, tw);
                ExtCoeff cur = ExtCoeff(val);
                auto it = out.coeffs.find(vs);
                if (it != out.coeffs.end()) cur = cur + it->second;
                out.set(vs, cur);
            }
        }
        size_t k = 0;
        while (k < cells && e[k] == B) e[k++] = -B;
        if (k == cells) break;
        ++e[k];
    }
    return out;
}

FourierExpansion u_p(const FourierExpansion& f, const Int& p) {
    if (p < 2 || !is_prime(p)) throw domain_error("u_p: p must be prime");
    const int n = f.degree;
    FourierExpansion out;
    out.degree = n;
    out.weight2 = f.weight2;
    out.level_b = f.level_b;
    out.level_c = f.level_c;
    out.prime = merge_prime(f.prime, p);
    out.trace_bound = f.trace_bound / (p * p);
    long exp = 2 * n * (n + 1) - n * f.weight2;  // sqrt-p exponent of p^{n(n+1-k)}
    Int p2 = p * p;
    for (const auto& [tau, c] : f.coeffs) {
        bool divisible = true;
        std::vector<Int> tw = tau.twice_data();
        for (Int& v : tw) {
            if (v % p2 != 0) {
                divisible = false;
                break;
            }
            v /= p2;
        }
        if (!divisible) continue;
        HalfIntSymMatrix t2(n, tw);
        if (t2.trace_twice() > 2 * out.trace_bound) continue;
        out.set(t2, c * ExtCoeff(CycloNumber(Rat(1)), exp, p));
    }
    return out;
}

FourierExpansion v_shift(const FourierExpansion& g, const Int& M) {
    if (M < 1) throw domain_error("v_shift: M must be positive");
    if (M == 1) return g;
    const int n = g.degree;
    FourierExpansion out;
    out.degree = n;
    out.weight2 = g.weight2;
    out.level_b = g.level_b;
    out.level_c = g.level_c;
    out.prime = g.prime;
    ExtCoeff factor;
    if (g.weight2 % 2 == 0) {
        factor = ExtCoeff(pow_rat(Rat(M), n * (g.weight2 / 2)));
    } else {
        // M^{n l} with half-integral l: only p-powers stay inside Q(zeta)(sqrt p)
        Int p = g.prime;
        if (p == 0 && is_prime(M)) p = M;
        if (p == 0) throw domain_error("v_shift: no working prime for odd weight");
        Int mm = M;
        long j = 0;
        while (mm % p == 0) {
            mm /= p;
            ++j;
        }
        if (mm != 1)
            throw domain_error("v_shift: M must be a power of the working prime for odd weight");
        out.prime = p;
        factor = ExtCoeff(CycloNumber(Rat(1)), n * g.weight2 * j, p);
    }
    Int M2 = M * M;
    out.trace_bound = M2 * (g.trace_bound + 1) - 1;
    for (const auto& [tau, c] : g.coeffs) {
        std::vector<Int> tw = tau.twice_data();
        for (Int& v : tw) v *= M2;
        out.set(HalfIntSymMatrix(n, tw), factor * c);
    }
    return out;
}

FourierExpansion multiply(const FourierExpansion& f, const FourierExpansion& g) {
    if (f.degree != g.degree) throw DegreeMismatch();
    const int n = f.degree;
    FourierExpansion out;
    out.degree = n;
    out.weight2 = f.weight2 + g.weight2;
    out.level_b = f.level_b;
    out.level_c = f.level_c * g.level_c / gcd(f.level_c, g.level_c);
    out.prime = merge_prime(f.prime, g.prime);
    out.trace_bound = std::min(f.trace_bound, g.trace_bound);
    for (const auto& [t1, c1] : f.coeffs)
        for (const auto& [t2, c2] : g.coeffs) {
            std::vector<Int> tw(t1.twice_data());
            for (size_t i = 0; i < tw.size(); ++i) tw[i] += t2.twice_data()[i];
            HalfIntSymMatrix t(n, tw);
            if (t.trace_twice() > 2 * out.trace_bound) continue;
            ExtCoeff cur = c1 * c2;
            auto it = out.coeffs.find(t);
            if (it != out.coeffs.end()) cur = cur + it->second;
            out.set(t, cur);
        }
    return out;
}

FourierExpansion add(const FourierExpansion& f, const FourierExpansion& g) {
    if (f.degree != g.degree) throw DegreeMismatch();
    if (f.weight2 != g.weight2) throw domain_error("add: weights differ");
    FourierExpansion out = f;
    out.prime = merge_prime(f.prime, g.prime);
    out.trace_bound = std::min(f.trace_bound, g.trace_bound);
    for (const auto& [t, c] : g.coeffs) out.set(t, out.coeff(t) + c);
    return out;
}

FourierExpansion scale_expansion(const FourierExpansion& f, const ExtCoeff& c) {
    FourierExpansion out = f;
    out.coeffs.clear();
    out.prime = merge_prime(f.prime, c.prime());
    for (const auto& [t, v] : f.coeffs) out.set(t, v * c);
    return out;
}

ExtCoeff rankin_dirichlet(const FourierExpansion& f, const FourierExpansion& g,
                          const Rat& s, const Int& trace_bound) {
    if (f.degree != g.degree) throw DegreeMismatch();
    const int n = f.degree;
    if (n > 2) throw UnsupportedDegree(n);
    Rat ex = -s - Rat(f.weight2 - g.weight2) / 4;
    ex.canonicalize();
    if (ex.get_den() != 1) throw IrrationalExponent();
    long exl = ex.get_num().get_si();

    // coefficients by reduced class
    auto classify = [n](const FourierExpansion& h) {
        std::map<HalfIntSymMatrix, std::pair<symlat::ReducedClass, ExtCoeff>> m;
        for (const auto& [t, c] : h.coeffs) {
            if (!t.is_positive_definite()) continue;
            auto rc = symlat::reduce_class(t);
            auto it = m.find(rc.representative);
            if (it == m.end()) {
                m.emplace(rc.representative, std::make_pair(rc, c));
            } else if (it->second.second != c) {
                throw domain_error("rankin_dirichlet: coefficients not class-constant");
            }
        }
        return m;
    };
    auto mf = classify(f), mg = classify(g);
    ExtCoeff total;
    for (const auto& [rep, pc] : mf) {
        if (rep.trace_twice() > 2 * trace_bound) continue;
        auto it = mg.find(rep);
        if (it == mg.end()) continue;
        Rat dets = Rat(rep.det_twice()) / pow_rat(Rat(2), n);  // |sigma|
        Rat w = pow_rat(dets, exl) / Rat(pc.first.aut_count);
        total = total + w * (pc.second * it->second.second.conjugate());
    }
    return total;
}

FourierExpansion twist_n1(const FourierExpansion& f, const DirichletChar& phi) {
    if (f.degree != 1) throw UnsupportedDegree(f.degree);
    FourierExpansion out = f;
    out.coeffs.clear();
    for (const auto& [t, c] : f.coeffs) {
        Int m = t.twice(0, 0) / 2;
        CycloNumber v = phi(m);
        if (!v.is_zero()) out.set(t, ExtCoeff(v) * c);
    }
    return out;
}

ThetaTransformRHS theta_transform_rhs(const HalfIntSymMatrix& tau, const DirichletChar& chi,
                                      int mu, const Rat& b, const Int& c,
                                      const Int& trace_bound) {
    if (!chi.is_primitive() || chi.conductor() <= 1) throw NotPrimitive();
    auto fac = factorization(chi.conductor());
    if (fac.size() != 1) throw domain_error("conductor must be a prime power p^l");
    Int p = fac[0].first;
    long lchi = static_cast<long>(fac[0].second);
    const int n = tau.degree();

    auto ti = symlat::theta_ideal(tau);
    ThetaTransformRHS out;
    out.p = p;
    // theta_{chi bar}^{(mu)}(N(sqrt(t) b c)^2 z / 2; tau_hat)
    Rat scale = Rat(ti.t) * b * b * Rat(c) * Rat(c) / 2;
    std::vector<Int> tauhat_twice(ti.tau_hat);
    for (Int& v : tauhat_twice) v *= 2;
    HalfIntSymMatrix tau_hat(n, tauhat_twice);
    out.series = theta_series(tau_hat, chi.conjugate(), mu, scale, trace_bound);

    out.rational = chi.parity() == 1 ? 1 : ((n % 2 == 1) ? -1 : 1);  // chi(-1)^n
    out.i_power = (n % 2 == 0) ? static_cast<int>((n * n / 2) % 4) : 0;
    out.rational *= pow_rat(Rat(ti.t) * b * Rat(c), n * mu);  // N(tbc)^{n mu}
    Int D2 = tau.det_twice();
    long e2 = n + 2 * mu;  // |2 tau|^{-e2/2}
    if (e2 % 2 == 0) {
        out.rational *= pow_rat(Rat(D2), -e2 / 2);
        out.sqrt_arg = 1;
    } else {
        out.rational *= pow_rat(Rat(D2), -(e2 + 1) / 2);
        out.sqrt_arg = D2;
    }
    if (n % 2 == 0) {
        out.rational *= pow_rat(Rat(p), -(lchi * n * n) / 2);
        out.sqrtp_exp = 0;
    } else {
        out.sqrtp_exp = -lchi * n * n;
    }
    out.gauss = chars::gauss_sum_n(chi.conjugate(), n);
    return out;
}

std::complex<double> ThetaTransformRHS::prefactor_complex() const {
    std::complex<double> v(rational.get_d(), 0.0);
    v *= std::sqrt(sqrt_arg.get_d());
    static const std::complex<double> I(0.0, 1.0);
    for (int k = 0; k < ((i_power % 4) + 4) % 4; ++k) v *= I;
    v *= gauss.embed_complex();
    if (sqrtp_exp != 0) v *= std::pow(std::sqrt(p.get_d()), static_cast<double>(sqrtp_exp));
    return v;
}

double numeric_theta_check(const HalfIntSymMatrix& tau, const DirichletChar& chi, int mu,
                           const Rat& b, const Int& c, std::complex<double> z, long terms) {
    if (tau.degree() != 1) throw NumericOnlyForDegreeOne();
    if (!chi.is_primitive() || chi.conductor() <= 1) throw NotPrimitive();
    auto fac = factorization(chi.conductor());
    if (fac.size() != 1) throw domain_error("conductor must be a prime power p^l");
    Int p = fac[0].first;
    long lchi = static_cast<long>(fac[0].second);
    auto ti = symlat::theta_ideal(tau);

    const double two_pi = 2.0 * 3.14159265358979323846264338327950288;
    static const std::complex<double> I(0.0, 1.0);
    long F = chi.conductor().get_si();
    std::vector<std::complex<double>> chiv(F);
    for (long a = 0; a < F; ++a) chiv[a] = chi(Int(a)).embed_complex();

    double tauval = tau.twice(0, 0).get_d() / 2.0;
    auto theta = [&](const std::vector<std::complex<double>>& vals, double tval,
                     std::complex<double> w) {
        std::complex<double> s(0.0, 0.0);
        for (long x = -terms; x <= terms; ++x) {
            std::complex<double> v = vals[((x % F) + F) % F];
            if (v == std::complex<double>(0.0, 0.0)) continue;
            if (mu == 1) v *= static_cast<double>(x);
            s += v * std::exp(two_pi * I * (static_cast<double>(x) * x * tval) * w);
        }
        return s;
    };

    // LHS: (Y i z)^{-(1/2+mu)} theta_chi(-1/(Y^2 z); tau), Y = N(tbc) p^{l_chi}
    double Y = Rat(Rat(ti.t) * b * Rat(c)).get_d() * std::pow(p.get_d(), lchi);
    std::vector<std::complex<double>> chibarv(F);
    for (long a = 0; a < F; ++a) chibarv[a] = std::conj(chiv[a]);
    std::complex<double> w = -1.0 / (Y * Y * z);
    std::complex<double> lhs =
        std::pow(Y * I * z, -(0.5 + mu)) * theta(chibarv, tauval, w);

    // RHS series: theta_{chi bar}(scale z; tau_hat)
    ThetaTransformRHS rhs = theta_transform_rhs(tau, chi, mu, b, c, Int(1));
    double scale = Rat(Rat(ti.t) * b * b * Rat(c) * Rat(c) / 2).get_d();
    double tauhat = ti.tau_hat[0].get_d();
    std::complex<double> rhsv =
        rhs.prefactor_complex() * theta(chiv, tauhat, scale * z);
    return std::abs(lhs - rhsv);
}

}  // namespace padl::qexp
