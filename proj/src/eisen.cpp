#include "padl/eisen.hpp"

#include <cmath>
#include <mutex>

namespace padl::eisen {

namespace {
// mpq_class(num, den) does not canonicalise; all half-integer constructions go
// through here.
Rat frac2(const Int& num) {
    Rat r(num, 2);
    r.canonicalize();
    return r;
}
}  // namespace

MPoly MPoly::constant(int nvars, const Rat& c) {
    MPoly r(nvars);
    r.add_term(std::vector<long>(nvars, 0), c);
    return r;
}

MPoly MPoly::var(int nvars, int i) {
    MPoly r(nvars);
    std::vector<long> e(nvars, 0);
    e[i] = 1;
    r.add_term(e, Rat(1));
    return r;
}

void MPoly::add_term(const std::vector<long>& e, const Rat& c) {
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

long MPoly::degree_in(int var) const {
    long d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
    return d;
}

MPoly MPoly::operator-() const {
    MPoly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

MPoly MPoly::operator+(const MPoly& o) const {
    MPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

MPoly MPoly::operator*(const MPoly& o) const {
    MPoly r(nv_);
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_) {
            std::vector<long> e(nv_);
            for (int i = 0; i < nv_; ++i) e[i] = e1[i] + e2[i];
            r.add_term(e, c1 * c2);
        }
    return r;
}

MPoly MPoly::operator*(const Rat& c) const {
    MPoly r(nv_);
    if (c == 0) return r;
    r.terms_ = terms_;
    for (auto& [e, v] : r.terms_) v *= c;
    return r;
}

MPoly MPoly::derivative(int var) const {
    MPoly r(nv_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        std::vector<long> f = e;
        --f[var];
        r.add_term(f, c * e[var]);
    }
    return r;
}

MPoly MPoly::divide_exact(const MPoly& d) const {
    if (d.is_zero()) throw domain_error("MPoly: division by zero polynomial");
    MPoly rem = *this, q(nv_);
    const auto& dl = *d.terms_.rbegin();  // lex-leading term of the divisor
    while (!rem.is_zero()) {
        const auto& rl = *rem.terms_.rbegin();
        std::vector<long> e(nv_);
        for (int i = 0; i < nv_; ++i) {
            e[i] = rl.first[i] - dl.first[i];
            if (e[i] < 0) throw domain_error("MPoly: division is not exact");
        }
        Rat c = rl.second / dl.second;
        MPoly t(nv_);
        t.add_term(e, c);
        q = q + t;
        rem = rem - t * d;
    }
    return q;
}

MPoly MPoly::substitute(int var, const Rat& value) const {
    MPoly r(nv_);
    for (const auto& [e, c] : terms_) {
        std::vector<long> f = e;
        f[var] = 0;
        r.add_term(f, c * pow_rat(value, e[var]));
    }
    return r;
}

Rat MPoly::eval(const std::vector<Rat>& xs) const {
    if (static_cast<int>(xs.size()) != nv_) throw domain_error("MPoly: wrong value count");
    Rat total(0);
    for (const auto& [e, c] : terms_) {
        Rat t = c;
        for (int i = 0; i < nv_; ++i) t *= pow_rat(xs[i], e[i]);
        total += t;
    }
    return total;
}

namespace {

// f = e^{-tr g} |g|^{-s'-offset} Q  ->  d/dg_v f = e^{-tr g} |g|^{-s'-offset-1} Q'
MPoly diff_step(const MPoly& Q, int var, long offset, const MPoly& detg, const MPoly& s,
                bool diagonal) {
    int nv = Q.nvars();
    MPoly Qp = detg * Q.derivative(var) -
               (s + MPoly::constant(nv, Rat(offset))) * (detg.derivative(var) * Q);
    if (diagonal) Qp = Qp - detg * Q;
    return Qp;
}

}  // namespace

SymPolyG r_poly(int n, int beta) {
    if (n < 1 || n > 2) throw UnsupportedDegree(n);
    if (beta < 0 || beta > 4) throw BudgetExceeded("r_poly: beta exceeds the budget of 4");
    const int nv = n * (n + 1) / 2 + 1;
    const int svar = nv - 1;
    MPoly s = MPoly::var(nv, svar);
    MPoly Q = MPoly::constant(nv, Rat(1));
    if (n == 1) {
        MPoly detg = MPoly::var(nv, 0);
        for (int j = 0; j < beta; ++j) Q = diff_step(Q, 0, j, detg, s, true);
        if (beta % 2 != 0) Q = -Q;
    } else {
        // variables g11, g12, g22
        MPoly detg = MPoly::var(nv, 0) * MPoly::var(nv, 2) -
                     MPoly::var(nv, 1) * MPoly::var(nv, 1);
        for (int j = 0; j < beta; ++j) {
            MPoly A = diff_step(diff_step(Q, 2, j, detg, s, true), 0, j + 1, detg, s, true);
            MPoly B = diff_step(diff_step(Q, 1, j, detg, s, false), 1, j + 1, detg, s, false);
            Q = (A - B * Rat(1, 4)).divide_exact(detg);
        }
    }
    return SymPolyG{n, Q};
}

SymbolicConstant SymbolicConstant::operator*(const SymbolicConstant& o) const {
    SymbolicConstant r = *this;
    r.rational *= o.rational;
    r.i_exponent = ((r.i_exponent + o.i_exponent) % 4 + 4) % 4;
    r.two_exponent += o.two_exponent;
    r.pi_exponent += o.pi_exponent;
    for (const auto& [a, e] : o.gamma_exps) {
        r.gamma_exps[a] += e;
        if (r.gamma_exps[a] == 0) r.gamma_exps.erase(a);
    }
    if (r.p == 0)
        r.p = o.p;
    else if (o.p != 0 && o.p != r.p)
        throw domain_error("SymbolicConstant: mixing two working primes");
    r.p_exponent += o.p_exponent;
    r.algebraic = r.algebraic * o.algebraic;
    return r;
}

SymbolicConstant SymbolicConstant::operator+(const SymbolicConstant& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    if (i_exponent != o.i_exponent || two_exponent != o.two_exponent ||
        pi_exponent != o.pi_exponent || gamma_exps != o.gamma_exps ||
        p_exponent != o.p_exponent || (p != 0 && o.p != 0 && p != o.p))
        throw domain_error("SymbolicConstant: adding mismatched transcendental parts");
    SymbolicConstant r = *this;
    if (r.p == 0) r.p = o.p;
    r.algebraic = rational * algebraic + o.rational * o.algebraic;
    r.rational = 1;
    return r;
}

CycloNumber SymbolicConstant::algebraic_part() const {
    if (is_zero()) return CycloNumber(Rat(0));
    Rat t2 = two_exponent, tp = p_exponent;
    t2.canonicalize();
    tp.canonicalize();
    if (t2.get_den() != 1 || tp.get_den() != 1)
        throw domain_error("SymbolicConstant: non-integral 2- or p-exponent");
    Rat v = rational * pow_rat(Rat(2), t2.get_num().get_si());
    if (tp != 0) v *= pow_rat(Rat(p), tp.get_num().get_si());
    CycloNumber out = CycloNumber(v) * algebraic;
    if (i_exponent != 0) out = out * CycloNumber::root_of_unity(4, i_exponent);
    return out;
}

namespace {

bool is_integer(const Rat& x) {
    Rat y = x;
    y.canonicalize();
    return y.get_den() == 1;
}

long to_long(const Rat& x) {
    Rat y = x;
    y.canonicalize();
    if (y.get_den() != 1) throw domain_error("expected an integer value");
    return y.get_num().get_si();
}

}  // namespace

bool omega_contains(int n, long weight2, int mu, const Rat& m, int sign) {
    Rat k = frac2(weight2);
    if (sign > 0) return is_integer((k - m - mu) / 2) && Rat(n) < m && m <= k - mu;
    return is_integer((m + k - mu - 1) / 2) && Rat(2 * n + 1) - k + mu <= m && m <= Rat(n);
}

namespace {
std::map<int, ProjectionPlugin>& plugin_registry() {
    static std::map<int, ProjectionPlugin> reg;
    return reg;
}
std::mutex plugin_mutex;

Rat half_det(const HalfIntSymMatrix& s) {
    return Rat(s.det_twice()) / pow_rat(Rat(2), s.degree());
}
}  // namespace

void register_projection_plugin(int n, ProjectionPlugin plugin) {
    std::lock_guard<std::mutex> lock(plugin_mutex);
    plugin_registry()[n] = std::move(plugin);
}

void clear_projection_plugin(int n) {
    std::lock_guard<std::mutex> lock(plugin_mutex);
    plugin_registry().erase(n);
}

Rat projection_P(const HalfIntSymMatrix& sigma, const HalfIntSymMatrix& sigma_prime,
                 long beta, const Rat& weight_total, const Rat& s_prime) {
    const int n = sigma.degree();
    if (sigma_prime.degree() != n) throw domain_error("projection_P: degree mismatch");
    if (beta < 0) throw domain_error("projection_P: beta must be non-negative");
    if (n == 1) {
        Rat s2 = frac2(sigma.twice(0, 0));
        Rat sp = frac2(sigma_prime.twice(0, 0));
        MPoly rg = r_poly(1, beta).poly.substitute(1, s_prime);
        Rat total(0);
        for (const auto& [e, c] : rg.terms()) {
            long j = e[0];
            Rat denom(1);
            for (long i = 1; i <= beta - j; ++i) denom *= weight_total - 1 - i;
            if (denom == 0) throw domain_error("projection_P: weight too small");
            total += c * pow_rat(s2, j) * pow_rat(sp, beta - j) / denom;
        }
        return total;
    }
    ProjectionPlugin plugin;
    {
        std::lock_guard<std::mutex> lock(plugin_mutex);
        auto it = plugin_registry().find(n);
        if (it == plugin_registry().end()) throw MissingPlugin();
        plugin = it->second;
    }
    // hard postcondition: P(sigma, 0; beta) = |sigma|^beta
    Rat at_zero = plugin(sigma, HalfIntSymMatrix::zero(n), beta, weight_total, s_prime);
    if (at_zero != pow_rat(half_det(sigma), beta))
        throw domain_error("projection_P: plug-in violates the sigma' = 0 normalisation");
    return plugin(sigma, sigma_prime, beta, weight_total, s_prime);
}

double projection_oracle_n1(const Rat& sigma2, const Rat& sigma_prime, long beta,
                            const Rat& weight_total, const Rat& s_prime, long steps) {
    const double pi = 3.14159265358979323846;
    double s2 = sigma2.get_d(), sp = sigma_prime.get_d(), w = weight_total.get_d();
    MPoly rg = r_poly(1, beta).poly.substitute(1, s_prime);
    auto integrand = [&](double y) -> double {
        if (y <= 0) return 0.0;
        double g = 4 * pi * s2 * y;
        double rv = 0;
        for (const auto& [e, c] : rg.terms()) rv += c.get_d() * std::pow(g, e[0]);
        return std::pow(g, -static_cast<double>(beta)) * rv * std::exp(-4 * pi * sp * y) *
               std::pow(y, w - 2);
    };
    double Y = 40.0 / (4 * pi * sp);
    if (steps % 2 != 0) ++steps;
    double h = Y / steps, sum = integrand(0) + integrand(Y);
    for (long i = 1; i < steps; ++i) sum += integrand(i * h) * (i % 2 ? 4.0 : 2.0);
    double integral = sum * h / 3.0;
    return std::pow(4 * pi * sp, w - 1) / std::tgamma(w - 1) * integral;
}

SymbolicConstant c_star(const HalfIntSymMatrix& sigma2, const Rat& m, int sign,
                        const EisenParams& params, const LocalPolys& local_polys,
                        const chars::DirichletChar& eta) {
    const int n = params.n;
    if (sigma2.degree() != n) throw domain_error("c_star: degree mismatch");
    if (!omega_contains(n, params.weight2, params.mu, m, sign)) throw NotSpecialValue();
    Rat k = frac2(params.weight2);
    const int delta = n % 2;

    SymbolicConstant out;
    out.p = params.p;

    // i^{-n [k - n/2 - mu]}
    Rat arg = k - frac2(n) - params.mu;
    Int fl;
    mpz_fdiv_q(fl.get_mpz_t(), arg.get_num().get_mpz_t(), arg.get_den().get_mpz_t());
    out.i_exponent = static_cast<int>((((-n * fl.get_si()) % 4) + 4) % 4);

    // N(b^2 y_r)^{n((3n - 2m)/2 - k + mu)}, base (b t c p^r)^2
    Rat eN = Rat(n) * ((Rat(3 * n) - 2 * m) / 2 - k + params.mu);
    if (!is_integer(2 * eN)) throw domain_error("c_star: non-integral level exponent");
    long e2 = to_long(2 * eN);
    out.rational *= pow_rat(params.b * Rat(params.t) * Rat(params.c), e2);
    out.p_exponent = Rat(e2) * params.r;

    out.two_exponent = Rat(n) * (k - params.mu + Rat(3, 2));
    Rat gamma_arg = (m + k - n - params.mu) / 2;
    out.pi_exponent = Rat(n) * gamma_arg;
    out.gamma_exps[gamma_arg] = -1;

    // |sigma|^{m_pm}
    if (sign > 0) {
        Rat mp = m - n - Rat(1, 2);
        if (!is_integer(mp)) throw domain_error("c_star: non-integral determinant exponent");
        Rat dsig = half_det(sigma2);
        if (dsig == 0) {
            if (to_long(mp) <= 0)
                throw domain_error("c_star: singular sigma with non-positive exponent");
            out.rational = 0;
            return out;
        }
        out.rational *= pow_rat(dsig, to_long(mp));
    }

    // prod_q f_{sigma, q}(eta-bar(q) q^{(n + delta - 1)/2 - m})
    Rat qe = frac2(n + delta - 1) - m;
    if (!is_integer(qe)) throw domain_error("c_star: non-integral local exponent");
    auto etabar = eta.conjugate();
    for (const auto& [q, coeffs] : local_polys) {
        CycloNumber targ = etabar(q) * CycloNumber(pow_rat(Rat(q), to_long(qe)));
        CycloNumber val(Rat(0));
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
            val = val * targ + CycloNumber(Rat(*it));
        out.algebraic = out.algebraic * val;
    }
    return out;
}

namespace {
Int small_det(const std::vector<Int>& a, int n) {
    if (n == 1) return a[0];
    if (n == 2) return a[0] * a[3] - a[1] * a[2];
    throw UnsupportedDegree(n);
}
}  // namespace

SymbolicConstant eisen_proj_coeff(const HalfIntSymMatrix& sigma, const Rat& m, int sign,
                                  const chars::DirichletChar& chi_l,
                                  const HalfIntSymMatrix& tau, const EisenParams& params,
                                  const LocalPolys& local_polys,
                                  const chars::DirichletChar& eta) {
    const int n = sigma.degree();
    if (n != params.n || tau.degree() != n) throw domain_error("eisen_proj_coeff: degrees");
    Rat k = frac2(params.weight2);
    if (m == Rat(n) + Rat(1, 2)) throw ExcludedSpecialValue();
    if (n > 1 && m == Rat(n) + Rat(3, 2) && (eta * eta).conductor() == 1)
        throw ExcludedSpecialValue();
    if (!omega_contains(n, params.weight2, params.mu, m, sign)) throw NotSpecialValue();

    Rat beta_r = sign > 0 ? Rat((k - m - params.mu) / 2)
                          : Rat((k + m - params.mu - 1 - 2 * n) / 2);
    long beta = to_long(beta_r);
    Rat s_prime = Rat(beta) - (k - frac2(n) - params.mu) + 1;

    auto ti = symlat::theta_ideal(tau);
    Rat scale = Rat(ti.t) * params.b * params.b * Rat(params.c) * Rat(params.c) / 2;
    Int pr = params.p == 0 ? Int(1) : pow_int(params.p, params.r);
    std::vector<Int> tw = sigma.twice_data();
    for (Int& v : tw) v *= pr;
    HalfIntSymMatrix varsigma(n, tw);

    auto pairs = symlat::enumerate_V(varsigma, ti.tau_hat, scale,
                                     symlat::v_completeness_bound(varsigma, ti.tau_hat, scale));

    SymbolicConstant total;
    total.rational = 0;
    total.p = params.p;
    for (const auto& pair : pairs) {
        Int d1 = small_det(pair.sigma1, n);
        CycloNumber cv = chi_l(d1);
        if (cv.is_zero()) continue;
        if (params.mu == 1 && d1 == 0) continue;
        SymbolicConstant cs = c_star(pair.sigma2, m, sign, params, local_polys, eta);
        if (cs.is_zero()) continue;
        Rat Pv = projection_P(pair.sigma2, varsigma, beta, k, s_prime);
        Rat wgt = params.mu == 1 ? Rat(d1) : Rat(1);
        cs.algebraic = cs.algebraic * cv * CycloNumber(wgt * Pv);
        total = total + cs;
    }
    return total;
}

CongruenceReport congruence_check(const std::vector<symlat::VPair>& pairs,
                                  const std::vector<Int>& tau_hat, const Rat& scale,
                                  const Int& p, long r, const HalfIntSymMatrix& varsigma,
                                  long beta, const Rat& weight_total, const Rat& s_prime) {
    const int n = varsigma.degree();
    CongruenceReport report;
    Rat dtau(small_det(tau_hat, n));
    Rat rhs_base = pow_rat(-scale, n) * dtau;
    auto val_ok = [&](const Rat& x) {
        if (x == 0) return true;
        long v;
        rat_valuation_part(x, p, v);
        return v >= r;
    };
    for (size_t i = 0; i < pairs.size(); ++i) {
        ++report.pairs_checked;
        Rat d2 = half_det(pairs[i].sigma2);
        Int d1 = small_det(pairs[i].sigma1, n);
        if (!val_ok(d2 - rhs_base * Rat(d1 * d1))) {
            report.ok = false;
            report.violations.push_back("pair " + std::to_string(i) +
                                        ": determinant congruence fails");
        }
        Rat Pv = projection_P(pairs[i].sigma2, varsigma, beta, weight_total, s_prime);
        if (!val_ok(Pv - pow_rat(d2, beta))) {
            report.ok = false;
            report.violations.push_back("pair " + std::to_string(i) +
                                        ": projection congruence fails");
        }
    }
    return report;
}

}  // namespace padl::eisen
