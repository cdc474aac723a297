#include "padl/chars.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>

namespace padl::chars {

namespace {

// One cyclic factor of (Z/MZ)^x: generator given both locally (mod the prime
// power) and globally (mod M, congruent to 1 at the other components).
struct UnitComponent {
    Int comp_mod;
    Int local_gen;
    Int global_gen;
    unsigned long order;
};

struct UnitGroup {
    Int M;
    std::vector<UnitComponent> comps;
    std::vector<Int> global_gens;
    std::vector<unsigned long> orders;
};

Int crt_lift(const Int& r, const Int& m, const Int& M) {
    // x = r mod m, x = 1 mod M/m  (m and M/m coprime)
    Int other = M / m;
    if (other == 1) return mod_pos(r, M);
    Int inv_other = mod_inverse(other, m);
    // x = 1 + other * t with other * t = r - 1 mod m
    Int t = mod_pos((r - 1) * inv_other, m);
    return mod_pos(1 + other * t, M);
}

Int primitive_root_mod_p(const Int& p) {
    if (p == 2) return Int(1);
    Int phi = p - 1;
    auto fac = prime_factors(phi);
    for (Int g = 2; g < p; ++g) {
        bool ok = true;
        for (const Int& q : fac) {
            if (pow_mod(g, phi / q, p) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
    throw domain_error("no primitive root found");
}

std::vector<UnitComponent> components_of(const Int& M) {
    std::vector<UnitComponent> comps;
    for (const auto& [p, e] : factorization(M)) {
        Int pe = pow_int(p, e);
        if (p == 2) {
            if (e == 1) continue;
            if (e == 2) {
                comps.push_back({pe, Int(3), crt_lift(3, pe, M), 2});
            } else {
                comps.push_back({pe, pe - 1, crt_lift(pe - 1, pe, M), 2});
                unsigned long ord5 = 1ul << (e - 2);
                comps.push_back({pe, Int(5), crt_lift(5, pe, M), ord5});
            }
            continue;
        }
        Int g = primitive_root_mod_p(p);
        if (e > 1 && pow_mod(g, p - 1, p * p) == 1) g += p;
        Int phi = pe / p * (p - 1);
        comps.push_back({pe, g, crt_lift(g, pe, M), phi.get_ui()});
    }
    return comps;
}

const UnitGroup& unit_group(const Int& M) {
    static std::map<Int, UnitGroup> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(M);
    if (it == cache.end()) {
        UnitGroup ug;
        ug.M = M;
        ug.comps = components_of(M);
        for (const auto& c : ug.comps) {
            ug.global_gens.push_back(c.global_gen);
            ug.orders.push_back(c.order);
        }
        it = cache.emplace(M, std::move(ug)).first;
    }
    return it->second;
}

unsigned long lcm_ul(unsigned long a, unsigned long b) { return a / std::gcd(a, b) * b; }

std::vector<Int> divisors_of(const Int& M) {
    std::vector<Int> divs;
    for (Int d = 1; d * d <= M; ++d) {
        if (M % d != 0) continue;
        divs.push_back(d);
        if (d * d != M) divs.push_back(M / d);
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

}  // namespace

DirichletChar::DirichletChar(const Int& modulus) : modulus_(modulus), conductor_(1) {
    if (modulus < 1) throw domain_error("character modulus must be positive");
    exps_.assign(unit_group(modulus_).comps.size(), 0);
}

DirichletChar::DirichletChar(const Int& modulus, std::vector<unsigned long> gen_exponents)
    : modulus_(modulus), exps_(std::move(gen_exponents)) {
    if (modulus < 1) throw domain_error("character modulus must be positive");
    const UnitGroup& ug = unit_group(modulus_);
    if (exps_.size() != ug.comps.size())
        throw domain_error("exponent vector length mismatch for character modulus");
    for (size_t i = 0; i < exps_.size(); ++i) exps_[i] %= ug.comps[i].order;
    compute_conductor();
}

const std::vector<Int>& DirichletChar::generators() const {
    return unit_group(modulus_).global_gens;
}

const std::vector<unsigned long>& DirichletChar::generator_orders() const {
    return unit_group(modulus_).orders;
}

std::vector<unsigned long> DirichletChar::dlog(const Int& a) const {
    const UnitGroup& ug = unit_group(modulus_);
    std::vector<unsigned long> logs;
    logs.reserve(ug.comps.size());
    // components of the same prime power (the 2-adic pair) must be solved jointly
    for (size_t i = 0; i < ug.comps.size();) {
        const Int& pe = ug.comps[i].comp_mod;
        size_t j = i;
        while (j < ug.comps.size() && ug.comps[j].comp_mod == pe) ++j;
        Int target = mod_pos(a, pe);
        if (j - i == 1) {
            const auto& c = ug.comps[i];
            Int pw = 1;
            unsigned long k = 0;
            for (; k < c.order; ++k) {
                if (pw == target) break;
                pw = mod_pos(pw * c.local_gen, pe);
            }
            if (k == c.order) throw domain_error("discrete log failed (not a unit?)");
            logs.push_back(k);
        } else {
            // 2^e with e >= 3: target = (-1)^s * 5^t
            const auto& cm = ug.comps[i];      // order 2 component (-1)
            const auto& c5 = ug.comps[i + 1];  // 5-power component
            bool found = false;
            for (unsigned long s = 0; s < 2 && !found; ++s) {
                Int base = (s == 0) ? Int(1) : mod_pos(cm.local_gen, pe);
                Int pw = base;
                for (unsigned long t = 0; t < c5.order; ++t) {
                    if (pw == target) {
                        logs.push_back(s);
                        logs.push_back(t);
                        found = true;
                        break;
                    }
                    pw = mod_pos(pw * c5.local_gen, pe);
                }
            }
            if (!found) throw domain_error("discrete log failed (2-adic component)");
        }
        i = j;
    }
    return logs;
}

CycloNumber DirichletChar::operator()(const Int& a) const {
    Int g;
    mpz_gcd(g.get_mpz_t(), Int(a).get_mpz_t(), modulus_.get_mpz_t());
    if (g != 1) return CycloNumber(Rat(0));
    if (exps_.empty()) return CycloNumber(Rat(1));
    const UnitGroup& ug = unit_group(modulus_);
    auto logs = dlog(a);
    unsigned long L = 1;
    for (const auto& c : ug.comps) L = lcm_ul(L, c.order);
    unsigned long e = 0;
    for (size_t i = 0; i < exps_.size(); ++i) {
        unsigned long d = ug.comps[i].order;
        e = (e + exps_[i] % d * (logs[i] % d) % d * (L / d)) % L;
    }
    return CycloNumber::root_of_unity(L, static_cast<long>(e));
}

bool DirichletChar::is_trivial() const { return conductor_ == 1; }

unsigned long DirichletChar::order() const {
    const UnitGroup& ug = unit_group(modulus_);
    unsigned long L = 1;
    for (size_t i = 0; i < exps_.size(); ++i) {
        unsigned long d = ug.comps[i].order;
        L = lcm_ul(L, d / std::gcd(d, exps_[i] == 0 ? d : exps_[i]));
    }
    return L;
}

bool DirichletChar::is_real() const { return order() <= 2; }

int DirichletChar::sign_value(const Int& a) const {
    CycloNumber v = (*this)(a);
    if (v.is_zero()) return 0;
    Rat r = v.rational_value();  // throws if the character is not real at a
    if (r == 1) return 1;
    if (r == -1) return -1;
    throw domain_error("sign_value: character value is not +-1");
}

int DirichletChar::parity() const {
    CycloNumber v = (*this)(modulus_ - 1);
    if (modulus_ <= 2) return 1;
    Rat r = v.rational_value();
    return r == 1 ? 1 : -1;
}

void DirichletChar::compute_conductor() {
    const UnitGroup& ug = unit_group(modulus_);
    unsigned long L = 1;
    for (const auto& c : ug.comps) L = lcm_ul(L, c.order);
    for (const Int& c : divisors_of(modulus_)) {
        bool ok = true;
        for (Int a = 1; a < modulus_ && ok; a += c) {
            Int g;
            mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), modulus_.get_mpz_t());
            if (g != 1) continue;
            if (a == 1) continue;
            auto logs = dlog(a);
            unsigned long e = 0;
            for (size_t i = 0; i < exps_.size(); ++i) {
                unsigned long d = ug.comps[i].order;
                e = (e + exps_[i] * (logs[i] % d) % d * (L / d)) % L;
            }
            if (e != 0) ok = false;
        }
        if (ok) {
            conductor_ = c;
            return;
        }
    }
    conductor_ = modulus_;
}

namespace {

// Build a character mod M from a value function defined on units.
DirichletChar from_values(const Int& M,
                          const std::function<CycloNumber(const Int&)>& f) {
    const UnitGroup& ug = unit_group(M);
    std::vector<unsigned long> exps;
    for (const auto& c : ug.comps) {
        CycloNumber v = f(c.global_gen);
        bool found = false;
        for (unsigned long k = 0; k < c.order; ++k) {
            if (v == CycloNumber::root_of_unity(c.order, static_cast<long>(k))) {
                exps.push_back(k);
                found = true;
                break;
            }
        }
        if (!found) throw domain_error("value on generator is not a root of unity of its order");
    }
    return DirichletChar(M, std::move(exps));
}

}  // namespace

DirichletChar DirichletChar::kronecker(const Int& D) {
    if (D == 0) throw domain_error("Kronecker character needs nonzero discriminant");
    Int M = D > 0 ? D : -D;
    if (M == 1) return DirichletChar(Int(1));
    return from_values(M, [&D](const Int& a) {
        int s = mpz_kronecker(D.get_mpz_t(), a.get_mpz_t());
        return CycloNumber(Rat(s));
    });
}

DirichletChar DirichletChar::induce(const Int& new_modulus) const {
    if (new_modulus % conductor_ != 0) throw ConductorNotDividing();
    DirichletChar prim = primitive_part();
    return from_values(new_modulus, [&prim](const Int& a) { return prim(a); });
}

DirichletChar DirichletChar::primitive_part() const {
    if (conductor_ == modulus_) return *this;
    Int f = conductor_;
    Int M = modulus_;
    return from_values(f, [this, &f, &M](const Int& a) {
        // lift a mod f to a unit mod M
        for (Int b = mod_pos(a, f) == 0 ? f : mod_pos(a, f); b < f * M + 1; b += f) {
            Int g;
            mpz_gcd(g.get_mpz_t(), b.get_mpz_t(), M.get_mpz_t());
            if (g == 1) return (*this)(b);
        }
        throw domain_error("no coprime lift found");
    });
}

DirichletChar DirichletChar::conjugate() const {
    const UnitGroup& ug = unit_group(modulus_);
    std::vector<unsigned long> exps = exps_;
    for (size_t i = 0; i < exps.size(); ++i)
        exps[i] = (ug.comps[i].order - exps[i]) % ug.comps[i].order;
    return DirichletChar(modulus_, std::move(exps));
}

DirichletChar DirichletChar::operator*(const DirichletChar& o) const {
    Int M;
    mpz_lcm(M.get_mpz_t(), modulus_.get_mpz_t(), o.modulus_.get_mpz_t());
    const DirichletChar& a = *this;
    const DirichletChar& b = o;
    return from_values(M, [&a, &b](const Int& x) { return a(x) * b(x); });
}

bool DirichletChar::operator==(const DirichletChar& o) const {
    return modulus_ == o.modulus_ && exps_ == o.exps_;
}

DirichletChar rho_tau(const symlat::HalfIntSymMatrix& tau) {
    if (!tau.is_positive_definite())
        throw NonPositiveDefinite();
    int n = tau.degree();
    Int d = tau.det_twice();
    if ((n / 2) % 2 == 1) d = -d;
    // squarefree part
    Int d0 = d < 0 ? Int(-1) : Int(1);
    for (const auto& [p, e] : factorization(d))
        if (e % 2 == 1) d0 *= p;
    if (d0 == 1) return DirichletChar(Int(1));
    Int D = mod_pos(d0, 4) == 1 ? d0 : 4 * d0;
    return DirichletChar::kronecker(D);
}

CycloNumber gauss_sum_n(const DirichletChar& phi, int n, unsigned long budget) {
    std::vector<Int> X(static_cast<size_t>(n) * n, Int(0));
    for (int i = 0; i < n; ++i) X[i * n + i] = 1;
    return gauss_sum_n(X, phi, n, budget);
}

CycloNumber gauss_sum_n(const std::vector<Int>& X, const DirichletChar& phi, int n,
                        unsigned long budget) {
    if (n < 1 || n > 2) throw UnsupportedDegree(n);
    if (X.size() != static_cast<size_t>(n) * n)
        throw domain_error("gauss_sum_n: X has wrong shape");
    if (budget == 0) {
        if (const char* env = std::getenv("PADL_GAUSS_BUDGET"))
            budget = std::strtoul(env, nullptr, 10);
        if (budget == 0) budget = 1000;
    }
    Int F = phi.conductor();
    if (F == 1) return CycloNumber(Rat(1));
    Int terms = pow_int(F, n * n);
    if (terms > Int(budget)) throw BudgetExceeded("gauss sum enumeration over budget");
    DirichletChar chi = phi.primitive_part();
    unsigned long Ful = F.get_ui();

    // table of character values; summing chi(|a|) (rather than its inverse)
    // is what makes the translation law G_n(X, chi) = chi(|X|)^{-1} G_n(chi)
    // and the downstream transformation formulas hold
    std::vector<CycloNumber> chival(Ful, CycloNumber(Rat(0)));
    for (unsigned long x = 0; x < Ful; ++x) chival[x] = chi(Int(x));

    CycloNumber total(Rat(0));
    if (n == 1) {
        long x0 = static_cast<long>(mpz_fdiv_ui(X[0].get_mpz_t(), Ful));
        for (unsigned long a = 0; a < Ful; ++a) {
            if (chival[a].is_zero()) continue;
            long tr = static_cast<long>(x0 * static_cast<long>(a) % static_cast<long>(Ful));
            total += chival[a] * CycloNumber::root_of_unity(Ful, tr);
        }
        return total;
    }
    long x[4];
    for (int i = 0; i < 4; ++i) x[i] = static_cast<long>(mpz_fdiv_ui(X[i].get_mpz_t(), Ful));
    long Fl = static_cast<long>(Ful);
    for (long a11 = 0; a11 < Fl; ++a11)
        for (long a12 = 0; a12 < Fl; ++a12)
            for (long a21 = 0; a21 < Fl; ++a21)
                for (long a22 = 0; a22 < Fl; ++a22) {
                    long det = ((a11 * a22 - a12 * a21) % Fl + Fl) % Fl;
                    if (chival[det].is_zero()) continue;
                    long tr = (x[0] * a11 + x[1] * a21 + x[2] * a12 + x[3] * a22) % Fl;
                    total += chival[det] * CycloNumber::root_of_unity(Ful, tr);
                }
    return total;
}

std::vector<DirichletChar> all_characters(const Int& M) {
    const UnitGroup& ug = unit_group(M);
    std::vector<DirichletChar> out;
    std::vector<unsigned long> exps(ug.comps.size(), 0);
    while (true) {
        out.emplace_back(M, exps);
        size_t i = 0;
        for (; i < exps.size(); ++i) {
            if (++exps[i] < ug.comps[i].order) break;
            exps[i] = 0;
        }
        if (i == exps.size()) break;
        if (exps.empty()) break;
    }
    return out;
}

std::vector<DirichletChar> character_family(const Int& p, int l_max) {
    if (!is_prime(p)) throw domain_error("character_family: p must be prime");
    if (l_max < 0) throw domain_error("character_family: negative level");
    return all_characters(pow_int(p, l_max));
}

}  // namespace padl::chars
