#include "padl/cyclo.hpp"

#include <cmath>
#include <mutex>
#include <numeric>

namespace padl::cyclo {

namespace {

using Poly = std::vector<Rat>;  // ascending degree

void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, Rat(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    trim(r);
    return r;
}

// a = q*b + r, deg r < deg b
void divmod(Poly a, const Poly& b, Poly& q, Poly& r) {
    q.assign(a.size(), Rat(0));
    Rat lead = b.back();
    while (a.size() >= b.size()) {
        Rat f = a.back() / lead;
        size_t shift = a.size() - b.size();
        q[shift] = f;
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
        trim(a);
        if (a.empty()) break;
        if (a.size() >= b.size() && a.back() == 0) trim(a);
    }
    trim(q);
    r = std::move(a);
}

Poly poly_mod(const Poly& a, const Poly& m) {
    Poly q, r, aa = a;
    trim(aa);
    if (aa.size() < m.size()) return aa;
    divmod(aa, m, q, r);
    return r;
}

std::map<unsigned long, Poly> g_cyclo_cache;
std::mutex g_cyclo_mutex;

Poly compute_cyclotomic(unsigned long m);

const Poly& cyclo_poly(unsigned long m) {
    std::lock_guard<std::mutex> lock(g_cyclo_mutex);
    auto it = g_cyclo_cache.find(m);
    if (it == g_cyclo_cache.end()) it = g_cyclo_cache.emplace(m, compute_cyclotomic(m)).first;
    return it->second;
}

Poly compute_cyclotomic(unsigned long m) {
    // (x^m - 1) / prod_{d | m, d < m} Phi_d
    Poly num(m + 1, Rat(0));
    num[0] = -1;
    num[m] = 1;
    for (unsigned long d = 1; d < m; ++d) {
        if (m % d != 0) continue;
        auto it = g_cyclo_cache.find(d);
        Poly phi_d = (it != g_cyclo_cache.end()) ? it->second : compute_cyclotomic(d);
        g_cyclo_cache.emplace(d, phi_d);
        Poly q, r;
        divmod(num, phi_d, q, r);
        if (!r.empty()) throw domain_error("cyclotomic polynomial division not exact");
        num = std::move(q);
    }
    return num;
}

}  // namespace

const std::vector<Rat>& cyclotomic_polynomial(unsigned long m) { return cyclo_poly(m); }

CycloNumber::CycloNumber(unsigned long order, std::vector<Rat> coeffs) : m_(order) {
    const Poly& phi = cyclo_poly(m_);
    Poly r = poly_mod(coeffs, phi);
    r.resize(phi.size() - 1, Rat(0));
    c_ = std::move(r);
    if (c_.empty()) c_.assign(1, Rat(0));
}

CycloNumber CycloNumber::root_of_unity(unsigned long m, long k) {
    long kk = ((k % static_cast<long>(m)) + static_cast<long>(m)) % static_cast<long>(m);
    std::vector<Rat> c(static_cast<size_t>(kk) + 1, Rat(0));
    c[kk] = 1;
    return CycloNumber(m, std::move(c));
}

bool CycloNumber::is_zero() const {
    for (const Rat& x : c_)
        if (x != 0) return false;
    return true;
}

bool CycloNumber::is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

Rat CycloNumber::rational_value() const {
    if (!is_rational()) throw domain_error("CycloNumber is not rational");
    return c_[0];
}

bool CycloNumber::has_integer_coeffs() const {
    for (const Rat& x : c_)
        if (Rat(x).get_den() != 1) return false;
    return true;
}

CycloNumber CycloNumber::operator-() const {
    CycloNumber r = *this;
    for (Rat& x : r.c_) x = -x;
    return r;
}

CycloNumber CycloNumber::lifted(unsigned long M) const {
    if (M == m_) return *this;
    if (M % m_ != 0) throw domain_error("CycloNumber::lifted: order does not divide target");
    unsigned long step = M / m_;
    std::vector<Rat> c(c_.size() * step + 1, Rat(0));
    for (size_t i = 0; i < c_.size(); ++i) c[i * step] = c_[i];
    return CycloNumber(M, std::move(c));
}

namespace {
unsigned long lcm_ul(unsigned long a, unsigned long b) { return a / std::gcd(a, b) * b; }
}  // namespace

CycloNumber CycloNumber::operator+(const CycloNumber& o) const {
    unsigned long M = lcm_ul(m_, o.m_);
    CycloNumber a = lifted(M), b = o.lifted(M);
    for (size_t i = 0; i < a.c_.size(); ++i) a.c_[i] += b.c_[i];
    return a;
}

CycloNumber CycloNumber::operator-(const CycloNumber& o) const { return *this + (-o); }

CycloNumber CycloNumber::operator*(const CycloNumber& o) const {
    unsigned long M = lcm_ul(m_, o.m_);
    CycloNumber a = lifted(M), b = o.lifted(M);
    return CycloNumber(M, mul(a.c_, b.c_));
}

CycloNumber CycloNumber::inverse() const {
    if (is_zero()) throw domain_error("CycloNumber: division by zero");
    // extended Euclid: u * this + v * Phi_m = 1 in Q[x]
    Poly a = c_;
    trim(a);
    Poly b = cyclo_poly(m_);
    Poly u0 = {Rat(1)}, u1 = {};
    while (!b.empty()) {
        Poly q, r;
        divmod(a, b, q, r);
        Poly u2 = u0;
        Poly qu1 = mul(q, u1);
        u2.resize(std::max(u2.size(), qu1.size()), Rat(0));
        for (size_t i = 0; i < qu1.size(); ++i) u2[i] -= qu1[i];
        trim(u2);
        a = std::move(b);
        b = std::move(r);
        u0 = std::move(u1);
        u1 = std::move(u2);
    }
    if (a.size() != 1) throw domain_error("CycloNumber: inverse gcd not constant");
    Rat inv_lead = 1 / a[0];
    for (Rat& x : u0) x *= inv_lead;
    return CycloNumber(m_, std::move(u0));
}

bool CycloNumber::operator==(const CycloNumber& o) const {
    return (*this - o).is_zero();
}

CycloNumber CycloNumber::galois(long a) const {
    long m = static_cast<long>(m_);
    long aa = ((a % m) + m) % m;
    if (std::gcd(aa, m) != 1) throw domain_error("CycloNumber::galois: a not coprime to order");
    std::vector<Rat> c(m_, Rat(0));
    std::vector<Rat> out;
    for (size_t i = 0; i < c_.size(); ++i) {
        size_t e = (i * static_cast<size_t>(aa)) % m_;
        if (out.size() <= e) out.resize(e + 1, Rat(0));
        out[e] += c_[i];
    }
    return CycloNumber(m_, std::move(out));
}

CycloNumber CycloNumber::conjugate() const {
    if (m_ == 1) return *this;
    return galois(static_cast<long>(m_) - 1);
}

CycloNumber CycloNumber::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    CycloNumber r(Rat(1)), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

std::complex<double> CycloNumber::embed_complex() const {
    std::complex<double> z(0.0, 0.0);
    const double two_pi = 2.0 * 3.14159265358979323846264338327950288;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        double coeff = Rat(c_[i]).get_d();
        double ang = two_pi * static_cast<double>(i) / static_cast<double>(m_);
        z += coeff * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    return z;
}

}  // namespace padl::cyclo
