#include "padl/symlat.hpp"

#include <algorithm>

namespace padl::symlat {

HalfIntSymMatrix::HalfIntSymMatrix(int n, std::vector<Int> twice_rowmajor)
    : n_(n), t_(std::move(twice_rowmajor)) {
    if (n <= 0 || t_.size() != static_cast<size_t>(n) * n)
        throw domain_error("HalfIntSymMatrix: bad dimensions");
    for (int i = 0; i < n; ++i) {
        if (twice(i, i) % 2 != 0)
            throw domain_error("HalfIntSymMatrix: diagonal of 2*tau must be even");
        for (int j = 0; j < i; ++j)
            if (twice(i, j) != twice(j, i)) throw domain_error("HalfIntSymMatrix: not symmetric");
    }
}

HalfIntSymMatrix HalfIntSymMatrix::zero(int n) {
    return HalfIntSymMatrix(n, std::vector<Int>(static_cast<size_t>(n) * n, 0));
}

HalfIntSymMatrix HalfIntSymMatrix::scalar(const Int& twice_value) {
    return HalfIntSymMatrix(1, {twice_value});
}

Int HalfIntSymMatrix::trace_twice() const {
    Int s = 0;
    for (int i = 0; i < n_; ++i) s += twice(i, i);
    return s;
}

Int HalfIntSymMatrix::det_twice() const {
    switch (n_) {
        case 1:
            return t_[0];
        case 2:
            return twice(0, 0) * twice(1, 1) - twice(0, 1) * twice(1, 0);
        case 3:
            return twice(0, 0) * (twice(1, 1) * twice(2, 2) - twice(1, 2) * twice(2, 1)) -
                   twice(0, 1) * (twice(1, 0) * twice(2, 2) - twice(1, 2) * twice(2, 0)) +
                   twice(0, 2) * (twice(1, 0) * twice(2, 1) - twice(1, 1) * twice(2, 0));
        default:
            throw UnsupportedDegree(n_);
    }
}

bool HalfIntSymMatrix::is_positive_semidefinite() const {
    if (n_ == 1) return t_[0] >= 0;
    if (n_ == 2)
        return twice(0, 0) >= 0 && twice(1, 1) >= 0 && det_twice() >= 0;
    throw UnsupportedDegree(n_);
}

bool HalfIntSymMatrix::is_positive_definite() const {
    if (n_ == 1) return t_[0] > 0;
    if (n_ == 2) return twice(0, 0) > 0 && det_twice() > 0;
    throw UnsupportedDegree(n_);
}

bool HalfIntSymMatrix::operator<(const HalfIntSymMatrix& o) const {
    if (n_ != o.n_) return n_ < o.n_;
    Int ta = trace_twice(), tb = o.trace_twice();
    if (ta != tb) return ta < tb;
    return t_ < o.t_;
}

std::vector<Int> congruence_transform(const std::vector<Int>& m, const std::vector<Int>& a,
                                      int n) {
    // a^T m a
    std::vector<Int> ma(static_cast<size_t>(n) * n, 0), r(static_cast<size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int l = 0; l < n; ++l) ma[i * n + j] += m[i * n + l] * a[l * n + j];
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int l = 0; l < n; ++l) r[i * n + j] += a[l * n + i] * ma[l * n + j];
    return r;
}

namespace {

Int det2(const std::vector<Int>& a) { return a[0] * a[3] - a[1] * a[2]; }

std::vector<Int> mul2(const std::vector<Int>& a, const std::vector<Int>& b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

unsigned long count_automorphisms(const HalfIntSymMatrix& sigma) {
    const int n = sigma.degree();
    if (n == 1) return 2;  // GL_1(Z) = {+-1}
    const std::vector<Int>& m = sigma.twice_data();
    // Column v of an automorphism satisfies v^T m v = m_ii, so
    // |v|^2 <= max(diag) * tr(m) / det(m).
    Int maxdiag = std::max(m[0], m[3]);
    Int tr = m[0] + m[3], det = det2(m);
    Int b2 = maxdiag * tr / det + 1;
    long bound = isqrt(b2).get_si() + 1;
    unsigned long count = 0;
    std::vector<Int> a(4);
    for (long a0 = -bound; a0 <= bound; ++a0)
        for (long a1 = -bound; a1 <= bound; ++a1)
            for (long a2 = -bound; a2 <= bound; ++a2)
                for (long a3 = -bound; a3 <= bound; ++a3) {
                    a[0] = a0; a[1] = a1; a[2] = a2; a[3] = a3;
                    Int d = det2(a);
                    if (d != 1 && d != -1) continue;
                    if (congruence_transform(m, a, 2) == m) ++count;
                }
    return count;
}

}  // namespace

ReducedClass reduce_class(const HalfIntSymMatrix& sigma) {
    if (!sigma.is_positive_definite()) throw NonPositiveDefinite();
    const int n = sigma.degree();
    ReducedClass out;
    if (n == 1) {
        out.representative = sigma;
        out.aut_count = 2;
        out.transform = {Int(1)};
        return out;
    }
    if (n != 2) throw UnsupportedDegree(n);

    // Gauss reduction of the binary form 2*sigma = [[a,b],[b,c]].
    std::vector<Int> m = sigma.twice_data();
    std::vector<Int> u = {1, 0, 0, 1};
    auto apply = [&](const std::vector<Int>& g) {
        u = mul2(u, g);
        m = congruence_transform(m, g, 2);
    };
    for (;;) {
        if (m[0] > m[3]) apply({0, 1, 1, 0});
        // shift b into (-a/2, a/2]
        Int a = m[0], b = m[1];
        Int q = (2 * b + a - 1);
        Int tshift;
        mpz_fdiv_q(tshift.get_mpz_t(), q.get_mpz_t(), Int(2 * a).get_mpz_t());
        if (tshift != 0) apply({1, -tshift, 0, 1});
        if (m[0] > m[3]) continue;
        if (2 * m[1] > m[0]) continue;  // defensive; shift should have fixed this
        break;
    }
    if (m[1] < 0) apply({1, 0, 0, -1});
    // boundary tie: prefer 0 <= b; lexicographic minimum already ensured by
    // 0 <= b <= a <= c for positive definite forms.
    out.representative = HalfIntSymMatrix(2, m);
    out.transform = u;
    out.aut_count = count_automorphisms(out.representative);
    return out;
}

ThetaIdeal theta_ideal(const HalfIntSymMatrix& tau) {
    if (!tau.is_positive_definite()) throw NonPositiveDefinite();
    const int n = tau.degree();
    // inv = (2 tau)^{-1} as rationals; n <= 2 closed form.
    Int det = tau.det_twice();
    std::vector<Rat> inv(static_cast<size_t>(n) * n);
    if (n == 1) {
        inv[0] = Rat(1) / Rat(tau.twice(0, 0));
    } else if (n == 2) {
        inv[0] = Rat(tau.twice(1, 1)) / det;
        inv[1] = Rat(-tau.twice(0, 1)) / det;
        inv[2] = Rat(-tau.twice(1, 0)) / det;
        inv[3] = Rat(tau.twice(0, 0)) / det;
    } else {
        throw UnsupportedDegree(n);
    }
    // t minimal positive such that t * h^T inv h in 4Z for h = e_i and e_i + e_j.
    // The ideal (t) is then maximal with the defining property.
    Int t = 1;
    auto require = [&](const Rat& q4) {
        // need t * q4 in Z  (q4 = value / 4)
        Rat q = q4;
        q.canonicalize();
        Int den = q.get_den();
        Int g;
        mpz_gcd(g.get_mpz_t(), t.get_mpz_t(), den.get_mpz_t());
        t = t / g * den;
    };
    for (int i = 0; i < n; ++i) require(inv[i * n + i] / 4);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            require((inv[i * n + i] + inv[j * n + j] + 2 * inv[i * n + j]) / 4);
    ThetaIdeal out;
    out.t = t;
    out.tau_hat.resize(static_cast<size_t>(n) * n);
    for (size_t i = 0; i < inv.size(); ++i) {
        Rat e = inv[i] * t;
        e.canonicalize();
        if (e.get_den() != 1) throw domain_error("theta_ideal: tau_hat not integral");
        out.tau_hat[i] = e.get_num();
    }
    return out;
}

namespace {

// Rational lower bound on the least eigenvalue of a positive definite
// integer symmetric matrix (n <= 2): det/tr.
Rat min_eig_lower_bound(const std::vector<Int>& m, int n) {
    if (n == 1) return Rat(m[0]);
    Int tr = m[0] + m[3];
    Int det = det2(m);
    if (det <= 0 || tr <= 0) throw NonPositiveDefinite();
    return Rat(det) / tr;
}

}  // namespace

long v_completeness_bound(const HalfIntSymMatrix& varsigma, const std::vector<Int>& tau_hat,
                          const Rat& scale) {
    const int n = varsigma.degree();
    Rat lam = min_eig_lower_bound(tau_hat, n) * scale;
    Rat tr = Rat(varsigma.trace_twice()) / 2;
    if (tr == 0) return 0;
    Rat q = tr / lam;
    Int num = q.get_num(), den = q.get_den();
    Int fl = num / den;
    return isqrt(fl).get_si() + 1;
}

std::vector<VPair> enumerate_V(const HalfIntSymMatrix& varsigma,
                               const std::vector<Int>& tau_hat, const Rat& scale,
                               long entry_bound) {
    if (!varsigma.is_positive_semidefinite()) throw domain_error("enumerate_V: varsigma < 0");
    const int n = varsigma.degree();
    long need = v_completeness_bound(varsigma, tau_hat, scale);
    if (entry_bound < need)
        throw BoundTooSmall("enumerate_V: entry bound " + std::to_string(entry_bound) +
                            " below completeness bound " + std::to_string(need));
    std::vector<VPair> out;
    const size_t cells = static_cast<size_t>(n) * n;
    std::vector<long> e(cells, -entry_bound);
    auto emit = [&]() {
        std::vector<Int> s1(cells);
        for (size_t i = 0; i < cells; ++i) s1[i] = e[i];
        std::vector<Int> q = congruence_transform(tau_hat, s1, n);
        // 2*sigma2 = 2*varsigma - 2*scale*q ; must be integral, even diagonal, psd.
        std::vector<Int> tw(cells);
        for (size_t i = 0; i < cells; ++i) {
            Rat v = Rat(varsigma.twice_data()[i]) - 2 * scale * Rat(q[i]);
            v.canonicalize();
            if (v.get_den() != 1) return;
            tw[i] = v.get_num();
        }
        for (int i = 0; i < n; ++i)
            if (tw[i * n + i] % 2 != 0) return;
        HalfIntSymMatrix s2(n, tw);
        if (!s2.is_positive_semidefinite()) return;
        out.push_back({std::move(s1), std::move(s2)});
    };
    for (;;) {
        emit();
        size_t k = 0;
        while (k < cells && e[k] == entry_bound) e[k++] = -entry_bound;
        if (k == cells) break;
        ++e[k];
    }
    return out;
}

std::vector<HalfIntSymMatrix> enumerate_Splus(int n, long trace_bound) {
    std::vector<HalfIntSymMatrix> out;
    if (n == 1) {
        for (long a = 0; a <= trace_bound; ++a) out.push_back(HalfIntSymMatrix(1, {Int(2 * a)}));
        return out;
    }
    if (n != 2) throw UnsupportedDegree(n);
    for (long a = 0; a <= trace_bound; ++a)
        for (long c = 0; a + c <= trace_bound; ++c) {
            Int prod = Int(4) * a * c;
            long bmax = isqrt(prod).get_si();
            for (long b = -bmax; b <= bmax; ++b) {
                HalfIntSymMatrix m(2, {Int(2 * a), Int(b), Int(b), Int(2 * c)});
                if (m.is_positive_semidefinite()) out.push_back(std::move(m));
            }
        }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace padl::symlat
