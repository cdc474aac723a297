#include "padl/measures.hpp"

#include <algorithm>

namespace padl::measures {

namespace {

Rat frac2(const Int& num) {
    Rat r(num, 2);
    r.canonicalize();
    return r;
}

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

std::vector<Int> units_mod(const Int& p, long i) {
    Int mod = pow_int(p, i);
    std::vector<Int> out;
    for (Int x = 1; x < mod; ++x)
        if (x % p != 0) out.push_back(x);
    return out;
}

// residue of a p-integral element mod p^N
Int to_residue(const PadicNumber& v, long N) {
    if (v.is_zero()) return 0;
    Rat val = v.valuation();
    if (!is_integer(val) || val < 0)
        throw domain_error("value is not p-integral with integral valuation");
    long e = to_long(val);
    if (e >= N) return 0;
    Int mod = pow_int(v.prime(), N);
    return mod_pos(Int(v.unit() * pow_int(v.prime(), e)), mod);
}

long p_power_exponent(const Int& value, const Int& p) {
    // value must be a power of p; returns the exponent
    Int v = value;
    long e = 0;
    while (v % p == 0) {
        v /= p;
        ++e;
    }
    if (v != 1) throw domain_error("conductor is not a power of p");
    return e;
}

Rat half_det(const HalfIntSymMatrix& s) {
    return Rat(s.det_twice()) / pow_rat(Rat(2), s.degree());
}

Int small_det(const std::vector<Int>& a, int n) {
    if (n == 1) return a[0];
    if (n == 2) return a[0] * a[3] - a[1] * a[2];
    throw UnsupportedDegree(n);
}

}  // namespace

// ---------------------------------------------------------------- systems

DistributionSystem DistributionSystem::from_system(const Int& p, std::vector<Level> levels) {
    if (levels.empty()) throw domain_error("distribution system needs at least one level");
    if (!is_prime(p)) throw domain_error("p must be prime");
    DistributionSystem out;
    out.p_ = p;
    out.levels_ = std::move(levels);
    // key validation
    for (long i = 1; i <= out.depth(); ++i) {
        auto expect = units_mod(p, i);
        const Level& lv = out.level(i);
        if (lv.size() != expect.size())
            throw domain_error("level " + std::to_string(i) + " has wrong support size");
        for (const Int& x : expect)
            if (!lv.count(x))
                throw domain_error("level " + std::to_string(i) + " misses residue " +
                                   x.get_str());
    }
    // compatibility between consecutive levels
    for (long j = 1; j < out.depth(); ++j) {
        Int pj = pow_int(p, j);
        for (const auto& [y, vy] : out.level(j)) {
            PadicNumber sum = PadicNumber::zero(p, vy.precision());
            for (const auto& [x, vx] : out.level(j + 1))
                if (mod_pos(x, pj) == y) sum = sum + vx;
            if (!(sum == vy)) throw IncompatibleSystem(j + 1, j, y);
        }
    }
    // boundedness certificate
    std::optional<Rat> bound;
    for (const auto& lv : out.levels_)
        for (const auto& [x, v] : lv) {
            if (v.is_zero()) continue;
            if (!bound || v.valuation() < *bound) bound = v.valuation();
        }
    out.bound_ = bound ? bound : std::optional<Rat>(Rat(0));
    return out;
}

DistributionSystem DistributionSystem::dirac(const Int& a, const Int& p, long depth, long N) {
    if (mod_pos(a, p) == 0) throw domain_error("Dirac point must be a unit");
    std::vector<Level> levels;
    for (long i = 1; i <= depth; ++i) {
        Int pi = pow_int(p, i);
        Level lv;
        for (const Int& x : units_mod(p, i))
            lv.emplace(x, x == mod_pos(a, pi) ? PadicNumber::one(p, N)
                                              : PadicNumber::zero(p, N));
        levels.push_back(std::move(lv));
    }
    return from_system(p, std::move(levels));
}

DistributionSystem DistributionSystem::counting(const Int& p, long depth, long N) {
    std::vector<Level> levels;
    for (long i = 1; i <= depth; ++i) {
        Rat w(1, euler_phi(pow_int(p, i)));
        w.canonicalize();
        Level lv;
        for (const Int& x : units_mod(p, i)) lv.emplace(x, padic::from_rational(w, p, N));
        levels.push_back(std::move(lv));
    }
    return from_system(p, std::move(levels));
}

PadicNumber DistributionSystem::integrate(const std::function<PadicNumber(const Int&)>& phi,
                                          long j) const {
    if (j < 1 || j > depth()) throw domain_error("level out of range");
    Int pj = pow_int(p_, j);
    std::optional<PadicNumber> result;
    for (long i = j; i <= depth(); ++i) {
        PadicNumber sum = PadicNumber::zero(p_, 1);
        bool first = true;
        for (const auto& [x, v] : level(i)) {
            PadicNumber t = phi(mod_pos(x, pj)) * v;
            sum = first ? t : sum + t;
            first = false;
        }
        if (result && !(*result == sum)) throw IncompatibleSystem(i, j, Int(0));
        result = sum;
    }
    return *result;
}

PadicNumber DistributionSystem::integrate_character(const DirichletChar& chi,
                                                    long m_br) const {
    long l = std::max(1L, p_power_exponent(chi.conductor(), p_));
    if (l > depth()) throw domain_error("character needs a deeper system");
    long i = depth();
    PadicNumber sum = PadicNumber::zero(p_, 1);
    bool first = true;
    for (const auto& [x, v] : level(i)) {
        if (v.is_zero()) continue;
        PadicNumber cv = padic::embed_cyclo(chi(x), p_, v.precision());
        PadicNumber xv = padic::from_rational(pow_rat(Rat(x), m_br), p_, v.precision());
        PadicNumber t = cv * xv * v;
        sum = first ? t : sum + t;
        first = false;
    }
    return first ? PadicNumber::zero(p_, level(i).begin()->second.precision()) : sum;
}

// ---------------------------------------------------------------- kummer

namespace {

// kernel mod `mod` of the R x C matrix A: generators of {x : A x = 0 mod}
std::vector<std::vector<Int>> kernel_mod(const std::vector<std::vector<Int>>& A,
                                         const Int& mod) {
    const long R = static_cast<long>(A.size());
    const long C = R == 0 ? 0 : static_cast<long>(A[0].size());
    const long nc = C + R;
    // columns of the stacked map [A | mod * I]
    std::vector<std::vector<Int>> M(R, std::vector<Int>(nc, 0));
    for (long r = 0; r < R; ++r) {
        for (long c = 0; c < C; ++c) M[r][c] = A[r][c];
        M[r][C + r] = mod;
    }
    std::vector<std::vector<Int>> U(nc, std::vector<Int>(nc, 0));
    for (long c = 0; c < nc; ++c) U[c][c] = 1;  // U[c] is column c

    auto col_sub = [&](long dst, long src, const Int& q) {
        for (long r = 0; r < R; ++r) M[r][dst] -= q * M[r][src];
        for (long r = 0; r < nc; ++r) U[dst][r] -= q * U[src][r];
    };
    auto col_swap = [&](long a, long b) {
        for (long r = 0; r < R; ++r) std::swap(M[r][a], M[r][b]);
        std::swap(U[a], U[b]);
    };

    long c0 = 0;
    for (long r = 0; r < R && c0 < nc; ++r) {
        // Euclidean reduction across columns >= c0 on row r
        while (true) {
            long jmin = -1;
            for (long j = c0; j < nc; ++j) {
                if (M[r][j] == 0) continue;
                if (jmin < 0 || abs(M[r][j]) < abs(M[r][jmin])) jmin = j;
            }
            if (jmin < 0) break;  // row already zero past c0
            bool others = false;
            for (long j = c0; j < nc; ++j) {
                if (j == jmin || M[r][j] == 0) continue;
                Int q = M[r][j] / M[r][jmin];  // truncated division
                col_sub(j, jmin, q);
                if (M[r][j] != 0) others = true;
            }
            if (!others) {
                col_swap(c0, jmin);
                ++c0;
                break;
            }
        }
    }
    // columns past c0 are zero in M: their U-columns generate the kernel
    std::vector<std::vector<Int>> out;
    for (long j = c0; j < nc; ++j) {
        std::vector<Int> v(C);
        bool nonzero = false;
        for (long c = 0; c < C; ++c) {
            v[c] = mod_pos(U[j][c], mod);
            if (v[c] != 0) nonzero = true;
        }
        if (nonzero) out.push_back(std::move(v));
    }
    return out;
}

Int unit_power(const Int& x, long e, const Int& mod) {
    Int b = mod_pos(x, mod);
    if (e < 0) {
        b = mod_inverse(b, mod);
        e = -e;
    }
    return pow_mod(b, Int(e), mod);
}

}  // namespace

KummerVerdict kummer_check(const Int& p,
                           const std::vector<std::pair<DirichletChar, long>>& basis,
                           const std::vector<PadicNumber>& values, long budget, long N) {
    if (basis.size() != values.size()) throw domain_error("basis/value size mismatch");
    if (N < 1) throw PrecisionTooLow("kummer_check needs N >= 1");
    for (const auto& v : values) {
        // absolute precision (valuation + relative digits) must reach N
        if (v.is_zero()) {
            if (v.precision() < N)
                throw PrecisionTooLow("candidate value known to fewer than N digits");
        } else if (v.valuation() + v.precision() < N) {
            throw PrecisionTooLow("candidate value known to fewer than N digits");
        }
    }
    long L = 1;
    for (const auto& [chi, mbr] : basis)
        L = std::max(L, p_power_exponent(chi.conductor(), p));
    // rows must separate residues mod p^N so that x^{[m]} is well defined on them
    L = std::max(L, N);
    Int mod = pow_int(p, N);
    auto ys = units_mod(p, L);

    std::vector<std::vector<Int>> A(ys.size(), std::vector<Int>(basis.size(), 0));
    for (size_t r = 0; r < ys.size(); ++r)
        for (size_t c = 0; c < basis.size(); ++c) {
            PadicNumber cv = padic::embed_cyclo(basis[c].first(ys[r]), p, N);
            A[r][c] = mod_pos(Int(to_residue(cv, N) * unit_power(ys[r], basis[c].second, mod)),
                              mod);
        }

    auto kernel = kernel_mod(A, mod);
    KummerVerdict verdict;
    verdict.kernel_rank = static_cast<long>(kernel.size());
    if (kernel.empty()) {
        verdict.vacuous = true;
        return verdict;
    }
    std::vector<Int> a(values.size());
    for (size_t i = 0; i < values.size(); ++i) a[i] = to_residue(values[i], N);
    for (const auto& b : kernel) {
        if (verdict.combinations_checked >= budget) break;
        ++verdict.combinations_checked;
        Int s = 0;
        for (size_t i = 0; i < b.size(); ++i) s = mod_pos(Int(s + b[i] * a[i]), mod);
        if (s != 0) {
            verdict.pass = false;
            verdict.witness = "kernel vector " +
                              std::to_string(verdict.combinations_checked - 1) +
                              " pairs to residue " + s.get_str();
            return verdict;
        }
    }
    return verdict;
}

// ---------------------------------------------------------------- sigma

SigmaMeasure::SigmaMeasure(int n, const eisen::LocalPolys& polys, const Int& p, long N)
    : n_(n), polys_(polys), p_(p), N_(N), twist_(Int(1)) {
    for (const auto& [q, coeffs] : polys_) {
        if (q == p) throw BadPrime();
        if (!is_prime(q)) throw domain_error("local polynomial index must be prime");
        if (!coeffs.empty() && coeffs[0] != 0) throw ConstantTermPresent();
    }
}

CycloNumber SigmaMeasure::value_exact(const DirichletChar& chi, const Rat& m) const {
    int delta = n_ % 2;
    Rat e = frac2(n_ + delta - 1) - m;
    if (!is_integer(e)) throw domain_error("m must be a half-odd-integer");
    long el = to_long(e);
    DirichletChar full = (chi * twist_).conjugate();
    CycloNumber out(Rat(1));
    for (const auto& [q, coeffs] : polys_) {
        CycloNumber arg = full(q) * CycloNumber(pow_rat(Rat(q), el));
        CycloNumber val(Rat(0));
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
            val = val * arg + CycloNumber(Rat(*it));
        out = out * val;
    }
    return out;
}

PadicNumber SigmaMeasure::value(const DirichletChar& chi, const Rat& m) const {
    return padic::embed_cyclo(value_exact(chi, m), p_, N_);
}

SigmaMeasure SigmaMeasure::twisted(const DirichletChar& omega) const {
    if (gcd(omega.conductor(), p_) != 1) throw ConductorNotCoprime();
    SigmaMeasure out = *this;
    out.twist_ = twist_ * omega;
    return out;
}

DistributionSystem SigmaMeasure::system() const {
    auto family = chars::all_characters(p_);
    Rat w(1, p_ - 1);
    w.canonicalize();
    Level lv;
    for (const Int& x : units_mod(p_, 1)) {
        CycloNumber total(Rat(0));
        for (const auto& chi : family)
            total = total + chi.conjugate()(x) * value_exact(chi, Rat(1, 2));
        lv.emplace(x, padic::embed_cyclo(Rat(w) * total, p_, N_));
    }
    std::vector<Level> levels{std::move(lv)};
    return DistributionSystem::from_system(p_, std::move(levels));
}

Evaluator twist(Evaluator base, const DirichletChar& omega, const Int& p) {
    if (gcd(omega.conductor(), p) != 1) throw ConductorNotCoprime();
    return [base = std::move(base), omega](const DirichletChar& chi, const Rat& m) {
        return base(chi * omega, m);
    };
}

Evaluator dirac_evaluator(const Int& a) {
    return [a](const DirichletChar& chi, const Rat& m) {
        Rat mbr = m - Rat(1, 2);
        return chi(a) * CycloNumber(pow_rat(Rat(a), to_long(mbr)));
    };
}

// ---------------------------------------------------------------- mellin

Int padic_log_unit(const Int& x, const Int& p, long N) {
    Int mod = pow_int(p, N);
    Int t = mod_pos(Int(x - 1), mod);
    if (t % p != 0) throw domain_error("log argument must be 1 mod p");
    // partial sum of log(1 + t); terms j with j - v_p(j) >= N vanish mod p^N
    long jmax = 2 * N + 8;
    Rat sum(0);
    Rat tj(1);
    for (long j = 1; j <= jmax; ++j) {
        tj *= t;
        Rat term = tj / j;
        if (j % 2 == 0) term = -term;
        sum += term;
    }
    PadicNumber v = padic::from_rational(sum, p, N);
    return to_residue(v, N);
}

Int padic_exp_small(const Int& y, const Int& p, long N) {
    Int mod = pow_int(p, N);
    Int t = mod_pos(y, mod);
    long minval = p == 2 ? 3 : 2;
    for (long i = 0; i < minval; ++i) {
        if (t == 0) break;
        if (t % p != 0) throw domain_error("exp argument valuation too small");
        // peel one p for the check only
        if (i + 1 < minval) t /= p;
    }
    t = mod_pos(y, mod);
    long jmax = 2 * N + 8;
    Rat sum(1);
    Rat tj(1), fact(1);
    for (long j = 1; j <= jmax; ++j) {
        tj *= t;
        fact *= j;
        sum += tj / fact;
    }
    return to_residue(padic::from_rational(sum, p, N), N);
}

namespace {

PadicNumber principal_power(const Int& x, const PadicNumber& s, const Int& p, long N) {
    if (p == 2) throw domain_error("principal powers need an odd prime here");
    if (s.is_zero()) return PadicNumber::one(p, N);
    if (!is_integer(s.valuation()) || s.valuation() < 1)
        throw domain_error("p-adic exponent must have positive valuation");
    Int mod = pow_int(p, N);
    PadicNumber om = padic::teichmuller(mod_pos(x, mod), p, N);
    Int u = mod_pos(Int(mod_pos(x, mod) * mod_inverse(to_residue(om, N), mod)), mod);
    Int L = padic_log_unit(u, p, N);
    Int sres = to_residue(s, N);
    Int E = padic_exp_small(mod_pos(Int(sres * L), mod), p, N);
    return PadicNumber(p, 0, E, N);
}

// truncate a value to an absolute precision certificate
PadicNumber truncate_to(const PadicNumber& v, long abs_prec, const Int& p, long N) {
    if (v.is_zero()) return PadicNumber::zero(p, std::min(N, abs_prec));
    if (!is_integer(v.valuation())) return v;
    long val = to_long(v.valuation());
    long rel = std::min(N, abs_prec - val);
    if (rel <= 0) return PadicNumber::zero(p, std::max(1L, abs_prec));
    return PadicNumber(p, val, mod_pos(v.unit(), pow_int(p, rel)), rel);
}

}  // namespace

PadicNumber mellin(const DistributionSystem& nu, const DirichletChar& chi,
                   const MellinSpec& spec, long N) {
    if (!nu.boundedness()) throw NotBounded();
    const Int& p = nu.prime();
    long l = std::max(1L, p_power_exponent(chi.conductor(), p));
    if (l > nu.depth()) throw PrecisionTooLow("system too shallow for this character");

    auto integrand = [&](const Int& x, long prec) -> PadicNumber {
        PadicNumber cv = padic::embed_cyclo(chi(x), p, prec);
        PadicNumber tv;
        if (std::holds_alternative<long>(spec)) {
            tv = padic::from_rational(pow_rat(Rat(x), std::get<long>(spec)), p, prec);
        } else {
            tv = principal_power(x, std::get<PadicNumber>(spec), p, prec);
        }
        return cv * tv;
    };

    std::vector<PadicNumber> sums;
    for (long i = l; i <= nu.depth(); ++i) {
        PadicNumber s = PadicNumber::zero(p, N);
        bool first = true;
        for (const auto& [x, v] : nu.level(i)) {
            if (v.is_zero()) continue;
            PadicNumber t = integrand(x, N) * v;
            s = first ? t : s + t;
            first = false;
        }
        if (first) s = PadicNumber::zero(p, N);
        sums.push_back(s);
    }
    PadicNumber result = sums.back();
    if (sums.size() < 2) return result;
    PadicNumber diff = sums[sums.size() - 1] - sums[sums.size() - 2];
    if (diff.is_zero()) return result;
    long agree = to_long(diff.valuation());
    return truncate_to(result, agree, p, N);
}

// ---------------------------------------------------------------- ell_f

CycloNumber ell_f(const std::map<HalfIntSymMatrix, CycloNumber>& g_coeffs,
                  const std::vector<std::pair<HalfIntSymMatrix, CycloNumber>>& data,
                  long trace_bound) {
    CycloNumber out(Rat(0));
    for (const auto& [sigma, beta] : data) {
        auto it = g_coeffs.find(sigma);
        if (it != g_coeffs.end()) {
            out = out + beta * it->second;
        } else if (sigma.trace_twice() > 2 * trace_bound) {
            throw TruncationGap();
        }
        // absent within the bound: exact zero contribution
    }
    return out;
}

// ------------------------------------------------- algebraic coefficients

CycloNumber proj_coeff_algebraic(const HalfIntSymMatrix& sigma, const Rat& m, int sign,
                                 const DirichletChar& chi_l, const HalfIntSymMatrix& tau,
                                 const eisen::EisenParams& params,
                                 const eisen::LocalPolys& local_polys,
                                 const DirichletChar& eta, const Rat& norm_matrix_det) {
    const int n = sigma.degree();
    if (n != params.n || tau.degree() != n) throw domain_error("degree mismatch");
    Rat k = frac2(params.weight2);
    if (m == Rat(n) + Rat(1, 2)) throw eisen::ExcludedSpecialValue();
    if (!eisen::omega_contains(n, params.weight2, params.mu, m, sign))
        throw eisen::NotSpecialValue();

    Rat beta_r = sign > 0 ? Rat((k - m - params.mu) / 2)
                          : Rat((k + m - params.mu - 1 - 2 * n) / 2);
    long beta = to_long(beta_r);
    Rat s_prime = Rat(beta) - (k - frac2(n) - params.mu) + 1;

    // combined norm-determinant exponent (integral on the valid parity class)
    Rat e_M = sign > 0 ? Rat(-(k + m - params.mu - 1 - 2 * n) / 2)
                       : Rat(-(k + 3 * m - params.mu - 2 - 4 * n) / 2);
    long det2_exp = to_long(m - n - Rat(1, 2));
    Rat norm_pow = pow_rat(norm_matrix_det, to_long(e_M));

    // chi-independent local product
    int delta = n % 2;
    long qe = to_long(frac2(n + delta - 1) - m);
    DirichletChar etabar = eta.conjugate();
    CycloNumber local(Rat(1));
    for (const auto& [q, coeffs] : local_polys) {
        CycloNumber arg = etabar(q) * CycloNumber(pow_rat(Rat(q), qe));
        CycloNumber val(Rat(0));
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
            val = val * arg + CycloNumber(Rat(*it));
        local = local * val;
    }

    auto ti = symlat::theta_ideal(tau);
    Rat scale = Rat(ti.t) * params.b * params.b * Rat(params.c) * Rat(params.c) / 2;
    Int pr = params.p == 0 ? Int(1) : pow_int(params.p, params.r);
    std::vector<Int> tw = sigma.twice_data();
    for (Int& v : tw) v *= pr;
    HalfIntSymMatrix varsigma(n, tw);
    auto pairs = symlat::enumerate_V(varsigma, ti.tau_hat, scale,
                                     symlat::v_completeness_bound(varsigma, ti.tau_hat, scale));

    CycloNumber total(Rat(0));
    for (const auto& pair : pairs) {
        Int d1 = small_det(pair.sigma1, n);
        CycloNumber cv = chi_l(d1);
        if (cv.is_zero()) continue;
        Rat dsig2 = half_det(pair.sigma2);
        if (dsig2 == 0) {
            if (det2_exp > 0) continue;  // zero contribution
            throw domain_error("singular sigma2 with non-positive determinant power");
        }
        Rat Pv = eisen::projection_P(pair.sigma2, varsigma, beta, k, s_prime);
        Rat wgt = pow_rat(Rat(d1), params.mu) * norm_pow * pow_rat(dsig2, det2_exp) * Pv;
        total = total + cv * CycloNumber(wgt) * local;
    }
    return total;
}

// -------------------------------------------------------- interpolation

InterpolationResult interpolation_value(const InterpolationInput& in) {
    const Int& p = in.p;
    const int n = in.n;
    Rat k = frac2(in.weight2);
    long kbr = (in.weight2 - 1) / 2;  // [k]
    if (!is_integer(in.m - Rat(1, 2))) throw domain_error("m must be a half-odd-integer");
    long mbr = to_long(in.m - Rat(1, 2));

    if (!in.satake.is_ordinary()) throw NotOrdinary();
    if (in.m == Rat(n) + Rat(1, 2)) throw eisen::ExcludedSpecialValue();
    if (n > 1 && in.m == Rat(n) + Rat(3, 2) && in.psi_chi_sq_trivial)
        throw eisen::ExcludedSpecialValue();
    if (in.ell_chi < 1) throw domain_error("conductor exponent must be at least 1");
    if (in.sign > 0) {
        if (!(Rat(n) <= in.m && in.m <= k - in.mu)) throw domain_error("m out of range");
    } else {
        if (!(Rat(2 * n + 1) - k + in.mu <= in.m && in.m <= Rat(n)))
            throw domain_error("m out of range");
    }

    bool parity_ok = in.sign > 0 ? ((mbr - (kbr + in.mu)) % 2 == 0)
                                 : ((mbr - (in.mu + 1 - kbr)) % 2 == 0);
    if (!parity_ok) return {PadicNumber::zero(p, in.N), true};

    Rat expo = in.sign > 0 ? Rat((k + in.m - in.mu - 1 - 2 * n) / 2)
                           : Rat((k + 3 * in.m - in.mu - 2 - 4 * n) / 2);

    CycloNumber total(Rat((n * kbr) % 2 != 0 ? -1 : 1));
    total = total * in.det2tau_pow;
    if (n % 2 == 0) {
        long d = (n * n) / 2;
        total = total * CycloNumber::root_of_unity(4, ((-d) % 4 + 4) % 4);
    }
    total = total * CycloNumber(pow_rat(in.norm_tbc, -static_cast<long>(n) * in.mu));
    total = total * CycloNumber(pow_rat(in.norm_matrix_det, -to_long(expo)));
    long pe = n * in.ell_chi * (n + 1 - to_long(k + in.m));
    total = total * CycloNumber(pow_rat(Rat(p), pe));
    total = total * in.gauss;
    total = total * (in.lambda_tau * in.g_tau).inverse();

    qexp::ExtCoeff l0 = in.satake.lambda0().pow(-in.ell_chi).normalized();
    if (l0.sqrtp_exp() != 0)
        throw domain_error("lambda0 power carries a surd part");
    total = total * l0.cyclo_part();
    total = total * in.l_ratio;

    return {padic::embed_cyclo(total, p, in.N), false};
}

}  // namespace padl::measures
