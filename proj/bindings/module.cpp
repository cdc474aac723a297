#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <string>
#include <vector>

#include "padl/chars.hpp"
#include "padl/hecke.hpp"
#include "padl/measures.hpp"
#include "padl/padic.hpp"
#include "padl/qexp.hpp"
#include "padl/symlat.hpp"

namespace py = pybind11;
using namespace padl;

namespace {

Int to_int(const std::string& s) { return Int(s); }

Rat to_rat(const std::string& s) {
    Rat r(s);
    r.canonicalize();
    return r;
}

std::vector<std::string> rat_strings(const std::vector<Rat>& v) {
    std::vector<std::string> out;
    out.reserve(v.size());
    for (const Rat& r : v) out.push_back(r.get_str());
    return out;
}

eisen::LocalPolys to_polys(const std::map<std::string, std::vector<std::string>>& m) {
    eisen::LocalPolys polys;
    for (const auto& [q, coeffs] : m) {
        std::vector<Int> c;
        for (const auto& s : coeffs) c.push_back(to_int(s));
        polys.emplace(to_int(q), std::move(c));
    }
    return polys;
}

}  // namespace

PYBIND11_MODULE(_padl, m) {
    m.doc() = "exact p-adic L-value toolkit";

    py::class_<symlat::HalfIntSymMatrix>(m, "HalfIntSymMatrix")
        .def(py::init([](int n, const std::vector<std::string>& twice) {
                 std::vector<Int> t;
                 for (const auto& s : twice) t.push_back(to_int(s));
                 return symlat::HalfIntSymMatrix(n, std::move(t));
             }),
             py::arg("n"), py::arg("twice_rowmajor"))
        .def_static("scalar",
                    [](const std::string& twice) {
                        return symlat::HalfIntSymMatrix::scalar(to_int(twice));
                    })
        .def("degree", &symlat::HalfIntSymMatrix::degree)
        .def("trace_twice",
             [](const symlat::HalfIntSymMatrix& s) { return s.trace_twice().get_str(); })
        .def("twice",
             [](const symlat::HalfIntSymMatrix& s) {
                 std::vector<std::string> out;
                 for (const Int& v : s.twice_data()) out.push_back(v.get_str());
                 return out;
             })
        .def("is_positive_definite", &symlat::HalfIntSymMatrix::is_positive_definite)
        .def(py::self == py::self);

    m.def("enumerate_splus", [](int n, long bound) {
        return symlat::enumerate_Splus(n, bound);
    });

    py::class_<cyclo::CycloNumber>(m, "CycloNumber")
        .def(py::init([](const std::string& r) { return cyclo::CycloNumber(to_rat(r)); }))
        .def_static("root_of_unity", &cyclo::CycloNumber::root_of_unity)
        .def("order", &cyclo::CycloNumber::order)
        .def("coeffs",
             [](const cyclo::CycloNumber& x) { return rat_strings(x.coeffs()); })
        .def("is_zero", &cyclo::CycloNumber::is_zero)
        .def("is_rational", &cyclo::CycloNumber::is_rational)
        .def("rational",
             [](const cyclo::CycloNumber& x) { return x.rational_value().get_str(); })
        .def("conjugate", &cyclo::CycloNumber::conjugate)
        .def(py::self + py::self)
        .def(py::self - py::self)
        .def(py::self * py::self)
        .def(py::self == py::self);

    py::class_<chars::DirichletChar>(m, "DirichletChar")
        .def_static("trivial",
                    [](const std::string& M) { return chars::DirichletChar::trivial(to_int(M)); })
        .def_static("kronecker",
                    [](const std::string& D) { return chars::DirichletChar::kronecker(to_int(D)); })
        .def("modulus", [](const chars::DirichletChar& c) { return c.modulus().get_str(); })
        .def("conductor", [](const chars::DirichletChar& c) { return c.conductor().get_str(); })
        .def("order", &chars::DirichletChar::order)
        .def("parity", &chars::DirichletChar::parity)
        .def("is_primitive", &chars::DirichletChar::is_primitive)
        .def("conjugate", &chars::DirichletChar::conjugate)
        .def("__call__",
             [](const chars::DirichletChar& c, const std::string& a) { return c(to_int(a)); })
        .def(py::self == py::self);

    m.def("all_characters",
          [](const std::string& M) { return chars::all_characters(to_int(M)); });
    m.def("character_family", [](const std::string& p, int l) {
        return chars::character_family(to_int(p), l);
    });
    m.def("gauss_sum", [](const chars::DirichletChar& chi, int n) {
        return chars::gauss_sum_n(chi, n);
    });

    py::class_<padic::PadicNumber>(m, "PadicNumber")
        .def("is_zero", &padic::PadicNumber::is_zero)
        .def("valuation",
             [](const padic::PadicNumber& x) { return x.valuation().get_str(); })
        .def("precision", &padic::PadicNumber::precision)
        .def("__str__", &padic::PadicNumber::str)
        .def(py::self == py::self);

    m.def("padic_from_rational", [](const std::string& x, const std::string& p, long N) {
        return padic::from_rational(to_rat(x), to_int(p), N);
    });
    m.def("embed_cyclo", [](const cyclo::CycloNumber& x, const std::string& p, long N) {
        return padic::embed_cyclo(x, to_int(p), N);
    });
    m.def("teichmuller", [](const std::string& a, const std::string& p, long N) {
        return padic::teichmuller(to_int(a), to_int(p), N);
    });

    m.def("hecke_verify", [](int n, const std::string& p) {
        Int pv = to_int(p);
        auto T = hecke::hecke_polynomial(n, pv);
        bool sym = hecke::check_symmetry(T, n, pv);
        bool fact = true;
        try {
            hecke::v_polys(T, n, pv);
        } catch (const hecke::FactorisationFailed&) {
            fact = false;
        }
        py::dict out;
        out["operators"] = T.size();
        out["symmetry"] = sym;
        out["factorisation"] = fact;
        return out;
    });

    m.def("omega_contains", [](int n, long weight2, int mu, const std::string& mval,
                               int sign) {
        return eisen::omega_contains(n, weight2, mu, to_rat(mval), sign);
    });
    m.def("projection_p",
          [](const symlat::HalfIntSymMatrix& sigma, const symlat::HalfIntSymMatrix& sp,
             long beta, const std::string& w, const std::string& s_prime) {
              return eisen::projection_P(sigma, sp, beta, to_rat(w), to_rat(s_prime)).get_str();
          });

    py::class_<measures::SigmaMeasure>(m, "SigmaMeasure")
        .def(py::init([](int n, const std::map<std::string, std::vector<std::string>>& polys,
                         const std::string& p, long N) {
                 return measures::SigmaMeasure(n, to_polys(polys), to_int(p), N);
             }),
             py::arg("n"), py::arg("local_polys"), py::arg("p"), py::arg("N"))
        .def("value", [](const measures::SigmaMeasure& s, const chars::DirichletChar& chi,
                         const std::string& mval) { return s.value(chi, to_rat(mval)); })
        .def("twisted", &measures::SigmaMeasure::twisted);

    m.def("kummer_family",
          [](const std::string& p, const std::map<std::string, std::vector<std::string>>& polys,
             long N, int l_max, const std::vector<std::string>& m_values) {
              Int pv = to_int(p);
              measures::SigmaMeasure S(1, to_polys(polys), pv, N);
              std::vector<std::pair<chars::DirichletChar, long>> basis;
              std::vector<padic::PadicNumber> values;
              for (const auto& ms : m_values) {
                  Rat mval = to_rat(ms);
                  long mbr = Rat(mval - Rat(1, 2)).get_num().get_si();
                  for (const auto& chi : chars::character_family(pv, l_max)) {
                      values.push_back(S.value(chi, mval));
                      basis.emplace_back(chi, mbr);
                  }
              }
              auto v = measures::kummer_check(pv, basis, values, 1000, N);
              py::dict out;
              out["pass"] = v.pass;
              out["vacuous"] = v.vacuous;
              out["kernel_rank"] = v.kernel_rank;
              out["combinations_checked"] = v.combinations_checked;
              out["witness"] = v.witness;
              return out;
          },
          py::arg("p"), py::arg("local_polys"), py::arg("N"), py::arg("l_max"),
          py::arg("m_values") = std::vector<std::string>{"1/2", "9/2"});

    m.def("interpolate_stub",
          [](const std::string& p, int n, long weight2, int mu, int sign, long ell_chi,
             const std::string& mval, long N, const std::string& det2tau_pow,
             const std::string& norm_tbc, const std::string& norm_matrix_det,
             const std::string& gauss, const std::string& lambda_tau,
             const std::string& g_tau, const std::string& l_ratio,
             const std::string& lambda_satake) {
              measures::InterpolationInput in;
              in.p = to_int(p);
              in.n = n;
              in.weight2 = weight2;
              in.mu = mu;
              in.sign = sign;
              in.ell_chi = ell_chi;
              in.m = to_rat(mval);
              in.N = N;
              in.det2tau_pow = cyclo::CycloNumber(to_rat(det2tau_pow));
              in.norm_tbc = to_rat(norm_tbc);
              in.norm_matrix_det = to_rat(norm_matrix_det);
              in.gauss = cyclo::CycloNumber(to_rat(gauss));
              in.lambda_tau = cyclo::CycloNumber(to_rat(lambda_tau));
              in.g_tau = cyclo::CycloNumber(to_rat(g_tau));
              in.l_ratio = cyclo::CycloNumber(to_rat(l_ratio));
              in.satake.p = in.p;
              in.satake.lambdas = {qexp::ExtCoeff(to_rat(lambda_satake))};
              auto res = measures::interpolation_value(in);
              return py::make_tuple(res.value.str(), res.parity_excluded);
          });
}
