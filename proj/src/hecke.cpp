#include "padl/hecke.hpp"

#include <algorithm>

#include "padl/cyclo.hpp"
#include "padl/padic.hpp"
#include "padl/symlat.hpp"

namespace padl::hecke {

using cyclo::CycloNumber;
using symlat::HalfIntSymMatrix;

PLaurent PLaurent::p_power(long e, const Rat& c) {
    PLaurent r;
    if (c != 0) r.terms_[e] = c;
    return r;
}

bool PLaurent::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0);
}

Rat PLaurent::constant_value() const {
    if (is_zero()) return Rat(0);
    if (!is_constant()) throw domain_error("PLaurent: not a constant");
    return terms_.begin()->second;
}

PLaurent PLaurent::operator-() const {
    PLaurent r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

PLaurent PLaurent::operator+(const PLaurent& o) const {
    PLaurent r = *this;
    for (const auto& [e, c] : o.terms_) {
        Rat s = r.terms_.count(e) ? r.terms_[e] + c : c;
        if (s == 0)
            r.terms_.erase(e);
        else
            r.terms_[e] = s;
    }
    return r;
}

PLaurent PLaurent::operator*(const PLaurent& o) const {
    PLaurent r;
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_) {
            Rat s = (r.terms_.count(e1 + e2) ? r.terms_[e1 + e2] : Rat(0)) + c1 * c2;
            if (s == 0)
                r.terms_.erase(e1 + e2);
            else
                r.terms_[e1 + e2] = s;
        }
    return r;
}

Rat PLaurent::eval(const Rat& p) const {
    Rat r(0);
    for (const auto& [e, c] : terms_) r += c * pow_rat(p, e);
    return r;
}

WeylLaurentPoly WeylLaurentPoly::constant(int n, const PLaurent& c) {
    return monomial(n, std::vector<long>(n, 0), c);
}

WeylLaurentPoly WeylLaurentPoly::monomial(int n, const std::vector<long>& exps,
                                          const PLaurent& c) {
    WeylLaurentPoly r(n);
    if (static_cast<int>(exps.size()) != n)
        throw domain_error("WeylLaurentPoly: exponent vector length mismatch");
    r.set(exps, c);
    return r;
}

PLaurent WeylLaurentPoly::coeff(const std::vector<long>& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? PLaurent() : it->second;
}

void WeylLaurentPoly::set(const std::vector<long>& e, const PLaurent& c) {
    if (c.is_zero())
        terms_.erase(e);
    else
        terms_[e] = c;
}

WeylLaurentPoly WeylLaurentPoly::operator-() const {
    WeylLaurentPoly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

WeylLaurentPoly WeylLaurentPoly::operator+(const WeylLaurentPoly& o) const {
    if (n_ != o.n_) throw domain_error("WeylLaurentPoly: variable count mismatch");
    WeylLaurentPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.set(e, r.coeff(e) + c);
    return r;
}

WeylLaurentPoly WeylLaurentPoly::operator*(const WeylLaurentPoly& o) const {
    if (n_ != o.n_) throw domain_error("WeylLaurentPoly: variable count mismatch");
    WeylLaurentPoly r(n_);
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_) {
            std::vector<long> e(n_);
            for (int i = 0; i < n_; ++i) e[i] = e1[i] + e2[i];
            r.set(e, r.coeff(e) + c1 * c2);
        }
    return r;
}

WeylLaurentPoly WeylLaurentPoly::operator*(const PLaurent& c) const {
    WeylLaurentPoly r(n_);
    for (const auto& [e, v] : terms_) r.set(e, v * c);
    return r;
}

bool WeylLaurentPoly::operator==(const WeylLaurentPoly& o) const {
    return n_ == o.n_ && terms_ == o.terms_;
}

bool WeylLaurentPoly::is_weyl_invariant() const {
    for (unsigned mask = 1; mask < (1u << n_); ++mask) {
        WeylLaurentPoly flipped(n_);
        for (const auto& [e, c] : terms_) {
            std::vector<long> f = e;
            for (int i = 0; i < n_; ++i)
                if (mask & (1u << i)) f[i] = -f[i];
            flipped.set(f, c);
        }
        if (!(flipped == *this)) return false;
    }
    return true;
}

ExtCoeff WeylLaurentPoly::eval(const std::vector<ExtCoeff>& lambdas, const Int& p) const {
    if (static_cast<int>(lambdas.size()) != n_)
        throw domain_error("WeylLaurentPoly: wrong number of values");
    ExtCoeff total;
    for (const auto& [e, c] : terms_) {
        ExtCoeff term(c.eval(Rat(p)));
        for (int i = 0; i < n_; ++i) term = term * lambdas[i].pow(e[i]);
        total = total + term;
    }
    return total;
}

ExtCoeff SatakeParams::lambda0() const {
    const int n = degree();
    ExtCoeff r(Rat(pow_int(p, static_cast<unsigned long>(n) * (n + 1) / 2)));
    for (const auto& l : lambdas) {
        if (l.is_zero()) throw ZeroSatakeParam();
        r = r * l;
    }
    return r;
}

namespace {

// p-adic valuation of a nonzero ExtCoeff, as an exact rational
Rat ext_valuation(const ExtCoeff& x, const Int& p) {
    if (x.is_zero()) throw padic::ZeroElement();
    Rat cv;
    const CycloNumber& c = x.cyclo_part();
    if (c.is_rational()) {
        long v;
        rat_valuation_part(c.rational_value(), p, v);
        cv = v;
    } else {
        try {
            cv = padic::valuation_cyclo(c, p);
        } catch (const padic::WildPartUnsupported&) {
            throw;
        } catch (const domain_error&) {
            cv = padic::embed_cyclo(c, p, 4).valuation();
        }
    }
    return cv + Rat(x.sqrtp_exp(), 2);
}

}  // namespace

bool SatakeParams::is_ordinary() const { return ext_valuation(lambda0(), p) == 0; }

std::vector<WeylLaurentPoly> hecke_polynomial(int n, const Int& p) {
    if (n < 1 || n > 3) throw UnsupportedDegree(n);
    const unsigned long half = static_cast<unsigned long>(n) * (n + 1) / 2;
    PLaurent pcoef = (p == 0) ? PLaurent::p_power(static_cast<long>(half))
                              : PLaurent(Rat(pow_int(p, half)));
    const int nfac = 1 << n;
    // elementary symmetric polynomials in the 2^n monomials u_delta
    std::vector<WeylLaurentPoly> e(nfac + 1, WeylLaurentPoly(n));
    e[0] = WeylLaurentPoly::constant(n, PLaurent(Rat(1)));
    for (int d = 0; d < nfac; ++d) {
        std::vector<long> exps(n);
        for (int i = 0; i < n; ++i) exps[i] = (d & (1 << i)) ? -1 : 1;
        WeylLaurentPoly u = WeylLaurentPoly::monomial(n, exps, pcoef);
        for (int m = d + 1; m >= 1; --m) e[m] = e[m] + u * e[m - 1];
    }
    return e;  // T~_m = e_m
}

bool check_symmetry(const std::vector<WeylLaurentPoly>& T, int n, const Int& p) {
    const int nfac = 1 << n;
    if (static_cast<int>(T.size()) != nfac + 1) return false;
    for (int m = 0; m <= nfac; ++m) {
        long ex = static_cast<long>(n) * (n + 1) * (m - nfac / 2);
        PLaurent factor = (p == 0) ? PLaurent::p_power(ex) : PLaurent(pow_rat(Rat(p), ex));
        if (!(T[m] == T[nfac - m] * factor)) return false;
    }
    return true;
}

std::vector<WeylLaurentPoly> v_polys(const std::vector<WeylLaurentPoly>& T, int n,
                                     const Int& p) {
    const int nfac = 1 << n;
    if (static_cast<int>(T.size()) != nfac + 1)
        throw domain_error("v_polys: need T~_0 ... T~_{2^n}");
    const unsigned long half = static_cast<unsigned long>(n) * (n + 1) / 2;
    PLaurent pcoef = (p == 0) ? PLaurent::p_power(static_cast<long>(half))
                              : PLaurent(Rat(pow_int(p, half)));
    WeylLaurentPoly u = WeylLaurentPoly::monomial(n, std::vector<long>(n, 1), pcoef);

    std::vector<WeylLaurentPoly> upow(nfac + 1, WeylLaurentPoly(n));
    upow[0] = WeylLaurentPoly::constant(n, PLaurent(Rat(1)));
    for (int j = 1; j <= nfac; ++j) upow[j] = upow[j - 1] * u;

    std::vector<WeylLaurentPoly> V;
    for (int m = 0; m < nfac; ++m) {
        WeylLaurentPoly vm(n);
        for (int l = 0; l <= m; ++l) {
            WeylLaurentPoly term = T[l] * upow[m - l];
            vm = (l % 2 == 0) ? vm + term : vm - term;
        }
        V.push_back(vm);
    }

    // vanishing sum: sum_m (-1)^m T~_m u^{2^n - m} = 0
    WeylLaurentPoly sum(n);
    for (int m = 0; m <= nfac; ++m) {
        WeylLaurentPoly term = T[m] * upow[nfac - m];
        sum = (m % 2 == 0) ? sum + term : sum - term;
    }
    if (!sum.is_zero()) throw FactorisationFailed();

    // (sum V~_m z^m)(1 - u z) = sum (-1)^m T~_m z^m, coefficient by coefficient
    for (int m = 0; m <= nfac; ++m) {
        WeylLaurentPoly lhs(n);
        if (m < nfac) lhs = lhs + V[m];
        if (m >= 1) lhs = lhs - u * V[m - 1];
        WeylLaurentPoly rhs = (m % 2 == 0) ? T[m] : -T[m];
        if (!(lhs == rhs)) throw FactorisationFailed();
    }
    return V;
}

namespace {

long rat_valuation(const Rat& x, const Int& p) {
    long v;
    rat_valuation_part(x, p, v);
    return v;
}

}  // namespace

WeylLaurentPoly satake_omega0(const std::vector<std::vector<Rat>>& d, const Int& p) {
    const int n = static_cast<int>(d.size());
    std::vector<std::vector<Rat>> a = d;
    for (const auto& row : a)
        if (static_cast<int>(row.size()) != n) throw domain_error("satake_omega0: not square");

    std::vector<long> diag_val(n);
    for (int j = 0; j < n; ++j) {
        int pivot = -1;
        long best = 0;
        for (int i = j; i < n; ++i) {
            if (a[i][j] == 0) continue;
            long v = rat_valuation(a[i][j], p);
            if (pivot < 0 || v < best) {
                pivot = i;
                best = v;
            }
        }
        if (pivot < 0) throw NotPLocal();
        std::swap(a[j], a[pivot]);
        for (int i = j + 1; i < n; ++i) {
            if (a[i][j] == 0) continue;
            Rat factor = a[i][j] / a[j][j];  // p-integral by pivot minimality
            for (int k = j; k < n; ++k) a[i][k] -= factor * a[j][k];
        }
        diag_val[j] = best;
    }

    std::vector<long> exps(diag_val);
    long pexp = 0;
    for (int i = 0; i < n; ++i) pexp -= static_cast<long>(i + 1) * exps[i];
    return WeylLaurentPoly::monomial(n, exps, PLaurent::p_power(pexp));
}

FourierExpansion p_stabilise(const FourierExpansion& f,
                             const std::map<int, ExtCoeff>& Lambda, const SatakeParams& sp,
                             const Int& trace_bound, bool* nonordinary_warning) {
    const int n = f.degree;
    const Int& p = sp.p;
    if (sp.degree() != n) throw domain_error("p_stabilise: Satake degree mismatch");
    if (f.level_c % p == 0) throw PDividesLevel();
    const int nfac = 1 << n;
    {
        auto it = Lambda.find(0);
        if (it == Lambda.end() || !(it->second == ExtCoeff(Rat(1))))
            throw domain_error("p_stabilise: Lambda(T_0) must be 1");
    }
    Int need = pow_int(p, 2ul * (nfac - 1)) * trace_bound;
    if (f.trace_bound < need)
        throw qexp::InsufficientTruncation("p_stabilise: input expansion too short");

    ExtCoeff lam0 = sp.lambda0();
    if (nonordinary_warning) *nonordinary_warning = !sp.is_ordinary();

    auto lam_at = [&](int m) -> const ExtCoeff& {
        auto it = Lambda.find(m);
        if (it == Lambda.end()) throw domain_error("p_stabilise: missing eigenvalue");
        return it->second;
    };

    std::vector<ExtCoeff> bracket(nfac);
    ExtCoeff lam0inv = lam0.inverse();
    for (int v = 0; v < nfac; ++v) {
        ExtCoeff s;
        for (int u = v; u < nfac; ++u) {
            ExtCoeff term = lam_at(u - v) * lam0inv.pow(u);
            s = ((u - v) % 2 == 0) ? s + term : s - term;
        }
        bracket[v] = s;
    }

    FourierExpansion out;
    out.degree = n;
    out.weight2 = f.weight2;
    out.level_b = f.level_b;
    out.level_c = f.level_c * pow_int(p, 2ul * (nfac - 1));
    out.prime = p;
    out.trace_bound = trace_bound;

    const long half = static_cast<long>(n) * (n + 1) / 2;
    for (const auto& [sigma, c] : f.coeffs) {
        Int p2v(1);
        for (int v = 0; v < nfac; ++v, p2v *= p * p) {
            std::vector<Int> tw = sigma.twice_data();
            bool ok = true;
            for (Int& x : tw) {
                if (x % p2v != 0) {
                    ok = false;
                    break;
                }
                x /= p2v;
            }
            for (int i = 0; ok && i < n; ++i)
                if (tw[i * n + i] % 2 != 0) ok = false;
            if (!ok) continue;
            HalfIntSymMatrix tau(n, tw);
            if (tau.trace_twice() > 2 * trace_bound) continue;
            // p^{(n(n+1)/2)(2 - k) v} as a sqrt-p power
            ExtCoeff pw(CycloNumber(Rat(1)), half * (4 - f.weight2) * v, p);
            ExtCoeff contrib = bracket[v] * pw * c;
            out.set(tau, out.coeff(tau) + contrib);
        }
    }
    return out;
}

FourierExpansion pstab_n1_explicit(const FourierExpansion& f, const ExtCoeff& lambda,
                                   const Int& p, const Int& trace_bound) {
    if (f.degree != 1) throw UnsupportedDegree(f.degree);
    if (f.level_c % p == 0) throw PDividesLevel();
    if (f.trace_bound < trace_bound)
        throw qexp::InsufficientTruncation("pstab_n1_explicit: input expansion too short");
    const long kfl = f.weight2 / 2;  // [k]
    int m1p = mpz_kronecker_si(Int(-1).get_mpz_t(), p.get_si());
    Rat sign = (kfl % 2 != 0 && m1p == -1) ? Rat(-1) : Rat(1);

    ExtCoeff laminv = lambda.inverse();
    // (./p) = kronecker character of the fundamental discriminant (-1/p) p
    Int pstar = (m1p == 1) ? p : -p;
    auto chi_p = chars::DirichletChar::kronecker(pstar);

    ExtCoeff c1 = ExtCoeff(CycloNumber(-sign * Rat(Int(1), p)), 1, p) * laminv;
    FourierExpansion t2 = qexp::scale_expansion(qexp::twist_n1(f, chi_p), c1);
    ExtCoeff c2 = ExtCoeff(-Rat(Int(1), p)) * laminv;
    FourierExpansion t3 = qexp::scale_expansion(qexp::v_shift(f, p), c2);

    FourierExpansion out = qexp::add(qexp::add(f, t2), t3);
    out.level_c = f.level_c * p * p;
    out.prime = p;
    out.trace_bound = std::min(f.trace_bound, trace_bound);
    for (auto it = out.coeffs.begin(); it != out.coeffs.end();)
        it = (it->first.trace_twice() > 2 * out.trace_bound) ? out.coeffs.erase(it) : ++it;
    return out;
}

ExtCoeff eigenvalue_n1(const ExtCoeff& lambda, const Int& p) {
    return ExtCoeff(Rat(p)) * (lambda + lambda.inverse());
}

FourierExpansion eigenform_n1(const ExtCoeff& lambda, const Int& p, long weight2,
                              const std::map<Int, Rat>& seeds, const Int& trace_bound) {
    if (!is_prime(p)) throw domain_error("eigenform_n1: p must be prime");
    FourierExpansion f;
    f.degree = 1;
    f.weight2 = weight2;
    f.level_b = Rat(1, 2);
    f.level_c = 4;
    f.prime = p;
    f.trace_bound = trace_bound;

    const Int p2 = p * p;
    for (const auto& [m, c] : seeds) {
        if (m <= 0 || m > trace_bound) throw domain_error("eigenform_n1: seed out of range");
        if (m % p2 == 0) throw domain_error("eigenform_n1: seeds must be p^2-free");
        f.set(HalfIntSymMatrix::scalar(2 * m), ExtCoeff(c));
    }

    const long kfl = weight2 / 2;  // [k]
    int m1p = mpz_kronecker_si(Int(-1).get_mpz_t(), p.get_si());
    Rat sign = (kfl % 2 != 0 && m1p == -1) ? Rat(-1) : Rat(1);
    ExtCoeff Lam = eigenvalue_n1(lambda, p);
    ExtCoeff pk_m2(CycloNumber(Rat(1)), weight2 - 4, p);
    ExtCoeff pk(CycloNumber(Rat(1)), weight2, p);

    for (Int m = p2; m <= trace_bound; m += p2) {
        Int tau = m / p2;
        ExtCoeff ct = f.coeff(HalfIntSymMatrix::scalar(2 * tau));
        int tp = mpz_kronecker(tau.get_mpz_t(), p.get_mpz_t());
        ExtCoeff val = Lam * ct;
        if (tp != 0 && !ct.is_zero())
            val = val - ExtCoeff(CycloNumber(sign * Rat(tp)), 1, p) * ct;
        if (tau % p2 == 0) val = val - pk * f.coeff(HalfIntSymMatrix::scalar(2 * (tau / p2)));
        f.set(HalfIntSymMatrix::scalar(2 * m), pk_m2 * val);
    }
    return f;
}

std::vector<ExtCoeff> euler_factor(const SatakeParams& sp, bool divides_level) {
    const int n = sp.degree();
    Rat pn(pow_int(sp.p, static_cast<unsigned long>(n)));
    std::vector<ExtCoeff> poly{ExtCoeff(Rat(1))};
    auto mul_linear = [&](const ExtCoeff& root) {
        // poly *= (1 - root * t)
        std::vector<ExtCoeff> out(poly.size() + 1);
        for (size_t i = 0; i < poly.size(); ++i) {
            out[i] = out[i] + poly[i];
            out[i + 1] = out[i + 1] - root * poly[i];
        }
        poly = std::move(out);
    };
    for (const auto& l : sp.lambdas) {
        if (l.is_zero()) throw ZeroSatakeParam();
        mul_linear(ExtCoeff(pn) * l);
        if (!divides_level) mul_linear(ExtCoeff(pn) * l.inverse());
    }
    return poly;
}

ExtCoeff standard_L_truncated(const std::map<Int, SatakeParams>& sps,
                              const chars::DirichletChar& chi, long s, const Int& level_c,
                              const Int& prime_bound) {
    ExtCoeff total(Rat(1));
    for (Int q = 2; q <= prime_bound; q += 1) {
        if (!is_prime(q)) continue;
        auto it = sps.find(q);
        if (it == sps.end())
            throw domain_error("standard_L_truncated: missing Satake data at a prime");
        CycloNumber cq = chi(q);
        if (cq.is_zero()) continue;  // Euler factor is 1
        ExtCoeff t = ExtCoeff(cq) * ExtCoeff(pow_rat(Rat(q), -s));
        auto poly = euler_factor(it->second, level_c % q == 0);
        ExtCoeff val;
        for (auto pi = poly.rbegin(); pi != poly.rend(); ++pi) val = val * t + *pi;
        total = total * val.inverse();
    }
    return total;
}

}  // namespace padl::hecke
