// Batch front end: verification pipelines and table/report emission.
//
// Exit codes:
//   0  success
//   1  unexpected internal error
//   2  unsupported parameter / domain precondition violated
//   3  p divides the level
//   4  a verification pipeline ran and reported failure
//   5  input file missing or failed validation
#include <complex>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "padl/chars.hpp"
#include "padl/hecke.hpp"
#include "padl/io.hpp"
#include "padl/measures.hpp"
#include "padl/qexp.hpp"
#include "padl/symlat.hpp"

using namespace padl;
using io::json;

namespace {

struct Options {
    Int p = 0;
    int degree = 1;
    long bound = 10;
    long precision = 2;
    std::vector<std::string> in;
    std::string out;
    unsigned long long seed = 0;
};

void add_common(CLI::App* cmd, Options& opt) {
    cmd->add_option("--p", [&opt](const std::vector<std::string>& v) {
        opt.p = Int(v.at(0));
        return true;
    }, "working prime (0 = symbolic where supported)");
    cmd->add_option("--degree", opt.degree, "degree n");
    cmd->add_option("--bound", opt.bound, "trace / conductor-exponent bound");
    cmd->add_option("--precision", opt.precision, "p-adic precision N");
    cmd->add_option("--in", opt.in, "input files");
    cmd->add_option("--out", opt.out, "machine-readable JSON output path");
    cmd->add_option("--seed", opt.seed, "seed for reproducible sampling");
}

std::string cyclo_str(const cyclo::CycloNumber& x) {
    if (x.is_rational()) return x.rational_value().get_str();
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < x.coeffs().size(); ++i) {
        if (i) os << ",";
        os << x.coeffs()[i].get_str();
    }
    os << "]@zeta" << x.order();
    return os.str();
}

std::string ext_str(const qexp::ExtCoeff& x) {
    std::string s = cyclo_str(x.cyclo_part());
    if (x.sqrtp_exp() != 0)
        s += " * sqrt(" + x.prime().get_str() + ")^" + std::to_string(x.sqrtp_exp());
    return s;
}

void emit(const std::string& table, const json& j, const Options& opt) {
    std::cout << table;
    if (!opt.out.empty()) {
        io::save_json(opt.out, j);
        std::cout << "json: " << opt.out << "\n";
    } else {
        std::cout << j.dump(2) << "\n";
    }
}

json base_report(const std::string& command, const Options& opt) {
    return json{{"command", command}, {"seed", opt.seed}};
}

// compare two expansions on all matrices of trace <= bound
bool agree_up_to(const qexp::FourierExpansion& a, const qexp::FourierExpansion& b,
                 const Int& bound) {
    for (const auto& [tau, c] : a.coeffs)
        if (tau.trace_twice() <= 2 * bound && !(b.coeff(tau) == c)) return false;
    for (const auto& [tau, c] : b.coeffs)
        if (tau.trace_twice() <= 2 * bound && !(a.coeff(tau) == c)) return false;
    return true;
}

int cmd_hecke_verify(const Options& opt) {
    auto T = hecke::hecke_polynomial(opt.degree, opt.p);
    bool sym = hecke::check_symmetry(T, opt.degree, opt.p);
    bool fact = true;
    std::string fact_msg = "vanishing sum and factorisation hold";
    try {
        hecke::v_polys(T, opt.degree, opt.p);
    } catch (const hecke::FactorisationFailed& e) {
        fact = false;
        fact_msg = e.what();
    }
    bool weyl = true;
    for (const auto& t : T) weyl = weyl && t.is_weyl_invariant();

    std::ostringstream table;
    table << "hecke-verify  n=" << opt.degree << "  p="
          << (opt.p == 0 ? std::string("symbolic") : opt.p.get_str()) << "\n"
          << "  operators computed        : " << T.size() << "\n"
          << "  Weyl invariance           : " << (weyl ? "pass" : "FAIL") << "\n"
          << "  index symmetry            : " << (sym ? "pass" : "FAIL") << "\n"
          << "  factorisation             : " << (fact ? "pass" : "FAIL") << "\n";

    json j = base_report("hecke-verify", opt);
    j["degree"] = opt.degree;
    j["p"] = io::int_to_json(opt.p);
    j["checks"] = {{"weyl_invariance", weyl}, {"symmetry", sym}, {"factorisation", fact}};
    j["factorisation_detail"] = fact_msg;
    bool pass = sym && fact && weyl;
    j["pass"] = pass;
    emit(table.str(), j, opt);
    return pass ? 0 : 4;
}

int cmd_pstab(const Options& opt) {
    if (opt.in.size() != 2)
        throw io::LoadError("pstab needs --in <form.json> <eigen.json>");
    auto f = io::expansion_from_json(io::load_json(opt.in[0]));
    auto eig = io::eigen_from_json(io::load_json(opt.in[1]));
    const Int& p = opt.p == 0 ? eig.p : opt.p;
    if (f.level_c % p == 0) throw hecke::PDividesLevel();

    hecke::SatakeParams sp{p, eig.lambdas};
    bool warn = false;
    auto f0 = hecke::p_stabilise(f, eig.T_values, sp, Int(opt.bound), &warn);
    auto lambda0 = sp.lambda0();

    // U_p eigen verification on the truncation-valid region
    auto uf0 = qexp::u_p(f0, p);
    auto lf0 = qexp::scale_expansion(f0, lambda0);
    bool eigen_ok = agree_up_to(uf0, lf0, uf0.trace_bound);

    // n = 1 closed-form cross-check
    bool explicit_ok = true;
    if (f.degree == 1 && eig.lambdas.size() == 1) {
        auto g = hecke::pstab_n1_explicit(f, eig.lambdas[0], p, Int(opt.bound));
        explicit_ok = agree_up_to(f0, g, f0.trace_bound);
    }

    bool all_zero = f0.coeffs.empty();

    std::ostringstream table;
    table << "pstab  p=" << p.get_str() << "  bound=" << opt.bound << "\n";
    table << "  U_p eigen check            : " << (eigen_ok ? "pass" : "FAIL") << "\n";
    table << "  closed-form cross-check    : " << (explicit_ok ? "pass" : "FAIL") << "\n";
    table << "  ordinarity                 : " << (warn ? "WARN: not ordinary" : "ok") << "\n";
    if (all_zero) table << "  WARNING: stabilised expansion is identically zero\n";
    table << "  coefficients (trace, 2tau, value):\n";
    long shown = 0;
    json coeff_rows = json::array();
    for (const auto& [tau, c] : f0.coeffs) {
        json row = json::object();
        json t = json::array();
        for (const Int& v : tau.twice_data()) t.push_back(io::int_to_json(v));
        row["tau_twice"] = t;
        row["value"] = io::ext_to_json(c);
        coeff_rows.push_back(row);
        if (shown < 20) {
            table << "    " << tau.trace_twice() / 2 << "  [";
            for (size_t i = 0; i < tau.twice_data().size(); ++i)
                table << (i ? "," : "") << tau.twice_data()[i].get_str();
            table << "]  " << ext_str(c) << "\n";
            ++shown;
        }
    }

    json j = base_report("pstab", opt);
    j["p"] = io::int_to_json(p);
    j["lambda0"] = io::ext_to_json(lambda0);
    j["eigen_check"] = eigen_ok;
    j["explicit_check"] = explicit_ok;
    j["ordinary"] = !warn;
    j["all_zero"] = all_zero;
    j["coefficients"] = coeff_rows;
    bool pass = eigen_ok && explicit_ok;
    j["pass"] = pass;
    emit(table.str(), j, opt);
    return pass ? 0 : 4;
}

int cmd_theta_check(const Options& opt) {
    std::vector<Int> conductors{3, 5};
    symlat::HalfIntSymMatrix tau = symlat::HalfIntSymMatrix::scalar(2);
    Rat b(1);
    Int c(1);
    std::vector<std::complex<double>> zs{{0.0, 1.0}, {1.0, 2.0}};
    long terms = 200;
    if (!opt.in.empty()) {
        json cfg = io::load_json(opt.in[0]);
        if (cfg.contains("conductors")) {
            conductors.clear();
            for (const auto& f : cfg["conductors"]) conductors.push_back(io::int_from_json(f));
        }
        if (cfg.contains("tau_twice")) {
            std::vector<Int> t;
            for (const auto& row : cfg["tau_twice"])
                for (const auto& v : row) t.push_back(io::int_from_json(v));
            int n = static_cast<int>(cfg["tau_twice"].size());
            tau = symlat::HalfIntSymMatrix(n, std::move(t));
        }
        if (cfg.contains("b")) b = io::rat_from_json(cfg["b"]);
        if (cfg.contains("c")) c = io::int_from_json(cfg["c"]);
        if (cfg.contains("terms")) terms = cfg["terms"].get<long>();
        if (cfg.contains("z")) {
            zs.clear();
            for (const auto& z : cfg["z"]) zs.emplace_back(z.at(0).get<double>(),
                                                          z.at(1).get<double>());
        }
    }

    std::ostringstream table;
    table << "theta-check  terms=" << terms << "\n"
          << "  conductor  mu  z            residual\n";
    json rows = json::array();
    bool pass = true;
    for (const Int& F : conductors) {
        int idx = 0;
        for (const auto& chi : chars::all_characters(F)) {
            if (!chi.is_primitive()) continue;
            int mu = chi.parity() == 1 ? 0 : 1;
            for (const auto& z : zs) {
                double res = qexp::numeric_theta_check(tau, chi, mu, b, c, z, terms);
                bool ok = res < 1e-9;
                pass = pass && ok;
                table << "  " << std::setw(9) << F.get_str() << "  " << mu << "   "
                      << std::setw(6) << z.real() << "+" << z.imag() << "i  "
                      << std::scientific << std::setprecision(3) << res
                      << (ok ? "" : "  FAIL") << "\n";
                table.unsetf(std::ios::scientific);
                rows.push_back(json{{"conductor", io::int_to_json(F)},
                                    {"char_index", idx},
                                    {"mu", mu},
                                    {"z", {z.real(), z.imag()}},
                                    {"residual", res},
                                    {"pass", ok}});
            }
            ++idx;
        }
    }
    json j = base_report("theta-check", opt);
    j["rows"] = rows;
    j["pass"] = pass;
    emit(table.str(), j, opt);
    return pass ? 0 : 4;
}

int cmd_kummer(const Options& opt) {
    if (opt.in.empty()) throw io::LoadError("kummer needs --in <local_polys.json>");
    if (opt.p < 2) throw domain_error("kummer needs --p");
    auto polys = io::local_polys_from_json(io::load_json(opt.in[0]),
                                           io::PolyShape::NoConstant);
    measures::SigmaMeasure S(opt.degree, polys, opt.p, opt.precision);

    // basis: tame characters of conductor <= p^bound at two special points
    std::vector<Rat> ms{Rat(1, 2), Rat(9, 2)};
    auto family = chars::character_family(opt.p, static_cast<int>(opt.bound));
    std::vector<std::pair<chars::DirichletChar, long>> basis;
    std::vector<padic::PadicNumber> values;
    long skipped_wild = 0;
    for (const Rat& m : ms) {
        long mbr = Rat(m - Rat(1, 2)).get_num().get_si();
        for (const auto& chi : family) {
            try {
                values.push_back(S.value(chi, m));
                basis.emplace_back(chi, mbr);
            } catch (const padic::WildPartUnsupported&) {
                ++skipped_wild;
            }
        }
    }
    auto verdict = measures::kummer_check(opt.p, basis, values, 1000, opt.precision);

    std::ostringstream table;
    table << "kummer  p=" << opt.p.get_str() << "  N=" << opt.precision
          << "  l_max=" << opt.bound << "\n"
          << "  family size (tame)        : " << basis.size() << "\n"
          << "  wild characters skipped   : " << skipped_wild << "\n"
          << "  kernel rank               : " << verdict.kernel_rank << "\n"
          << "  combinations checked      : " << verdict.combinations_checked << "\n"
          << "  verdict                   : "
          << (verdict.pass ? (verdict.vacuous ? "pass (vacuous)" : "PASS") : "FAIL") << "\n";
    if (!verdict.witness.empty()) table << "  witness: " << verdict.witness << "\n";

    json j = base_report("kummer", opt);
    j["p"] = io::int_to_json(opt.p);
    j["N"] = opt.precision;
    j["family_size"] = basis.size();
    j["skipped_wild"] = skipped_wild;
    j["kernel_rank"] = verdict.kernel_rank;
    j["combinations_checked"] = verdict.combinations_checked;
    j["vacuous"] = verdict.vacuous;
    j["witness"] = verdict.witness;
    j["pass"] = verdict.pass;
    j["system"] = io::measure_to_json(S.system());
    emit(table.str(), j, opt);
    return verdict.pass ? 0 : 4;
}

int cmd_interpolate(const Options& opt) {
    if (opt.in.empty()) throw io::LoadError("interpolate needs --in <config.json>");
    json cfg = io::load_json(opt.in[0]);
    auto cy_field = [&](const char* key, const Rat& dflt) {
        if (!cfg.contains(key)) return cyclo::CycloNumber(dflt);
        const json& v = cfg[key];
        if (v.is_object()) return io::cyclo_from_json(v);
        return cyclo::CycloNumber(io::rat_from_json(v));
    };

    measures::InterpolationInput in;
    in.p = opt.p;
    in.N = opt.precision;
    in.n = cfg.value("n", 1);
    in.weight2 = cfg.value("weight2", 13L);
    in.mu = cfg.value("mu", 0);
    in.det2tau_pow = cy_field("det2tau_pow", Rat(1));
    in.norm_tbc = cfg.contains("norm_tbc") ? io::rat_from_json(cfg["norm_tbc"]) : Rat(1);
    in.norm_matrix_det =
        cfg.contains("norm_matrix_det") ? io::rat_from_json(cfg["norm_matrix_det"]) : Rat(1);
    in.gauss = cy_field("gauss", Rat(1));
    in.lambda_tau = cy_field("lambda_tau", Rat(1));
    in.g_tau = cy_field("g_tau", Rat(1));
    in.l_ratio = cy_field("l_ratio", Rat(1));
    in.psi_chi_sq_trivial = cfg.value("psi_chi_sq_trivial", false);
    in.satake.p = opt.p;
    if (cfg.contains("lambdas"))
        for (const auto& l : cfg["lambdas"]) in.satake.lambdas.push_back(io::ext_from_json(l));

    std::ostringstream table;
    table << "interpolate  p=" << opt.p.get_str() << "  N=" << opt.precision << "\n"
          << "  ell_chi  m      sign  value\n";
    json rows = json::array();
    for (const auto& row : cfg.value("rows", json::array())) {
        in.m = io::rat_from_json(row.at("m"));
        in.sign = row.value("sign", 1);
        in.ell_chi = row.value("ell_chi", 1L);
        json jr{{"m", io::rat_to_json(in.m)},
                {"sign", in.sign},
                {"ell_chi", in.ell_chi}};
        std::string shown;
        try {
            auto res = measures::interpolation_value(in);
            if (res.parity_excluded) {
                shown = "0 (excluded)";
                jr["value"] = io::padic_to_json(res.value);
                jr["parity_excluded"] = true;
            } else {
                shown = res.value.str();
                jr["value"] = io::padic_to_json(res.value);
                jr["parity_excluded"] = false;
            }
        } catch (const eisen::ExcludedSpecialValue&) {
            shown = "excluded special value";
            jr["excluded_special_value"] = true;
        }
        table << "  " << std::setw(7) << in.ell_chi << "  " << std::setw(5)
              << in.m.get_str() << "  " << (in.sign > 0 ? "+" : "-") << "     " << shown
              << "\n";
        rows.push_back(jr);
    }
    json j = base_report("interpolate", opt);
    j["p"] = io::int_to_json(opt.p);
    j["N"] = opt.precision;
    j["rows"] = rows;
    j["pass"] = true;
    emit(table.str(), j, opt);
    return 0;
}

int cmd_enumerate(const Options& opt) {
    auto mats = symlat::enumerate_Splus(opt.degree, opt.bound);
    std::ostringstream table;
    table << "enumerate  n=" << opt.degree << "  trace_bound=" << opt.bound << "  count="
          << mats.size() << "\n";
    json rows = json::array();
    for (const auto& m : mats) {
        json t = json::array();
        for (const Int& v : m.twice_data()) t.push_back(io::int_to_json(v));
        rows.push_back(t);
        table << "  tr=" << m.trace_twice() / 2 << "  2tau=[";
        for (size_t i = 0; i < m.twice_data().size(); ++i)
            table << (i ? "," : "") << m.twice_data()[i].get_str();
        table << "]\n";
    }
    json j = base_report("enumerate", opt);
    j["degree"] = opt.degree;
    j["trace_bound"] = opt.bound;
    j["count"] = mats.size();
    j["matrices"] = rows;
    j["pass"] = true;
    emit(table.str(), j, opt);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact-arithmetic toolkit for half-integral weight forms"};
    app.require_subcommand(1);
    Options opt;
    auto* hv = app.add_subcommand("hecke-verify", "symbolic Hecke identities");
    auto* ps = app.add_subcommand("pstab", "p-stabilisation and eigen verification");
    auto* tc = app.add_subcommand("theta-check", "numeric theta transformation residuals");
    auto* ku = app.add_subcommand("kummer", "Kummer-congruence verdict for a Sigma measure");
    auto* ip = app.add_subcommand("interpolate", "interpolation-value table");
    auto* en = app.add_subcommand("enumerate", "positive semi-integral matrices by trace");
    for (auto* c : {hv, ps, tc, ku, ip, en}) add_common(c, opt);

    CLI11_PARSE(app, argc, argv);

    try {
        if (hv->parsed()) return cmd_hecke_verify(opt);
        if (ps->parsed()) return cmd_pstab(opt);
        if (tc->parsed()) return cmd_theta_check(opt);
        if (ku->parsed()) return cmd_kummer(opt);
        if (ip->parsed()) return cmd_interpolate(opt);
        if (en->parsed()) return cmd_enumerate(opt);
    } catch (const hecke::PDividesLevel& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const io::LoadError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    } catch (const measures::ConstantTermPresent& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    } catch (const measures::BadPrime& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    } catch (const domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
