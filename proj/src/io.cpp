#include "padl/io.hpp"

#include <fstream>

namespace padl::io {

namespace {

Int parse_int(const std::string& s) {
    try {
        return Int(s);
    } catch (const std::invalid_argument&) {
        throw LoadError("bad integer literal: " + s);
    }
}

Rat parse_rat(const std::string& s) {
    try {
        Rat r(s);
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw LoadError("bad rational literal: " + s);
    }
}

const json& field(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw LoadError(std::string("missing field: ") + key);
    return *it;
}

}  // namespace

json rat_to_json(const Rat& x) { return x.get_str(); }

Rat rat_from_json(const json& j) {
    if (j.is_number_integer()) return Rat(j.get<long>());
    if (j.is_string()) return parse_rat(j.get<std::string>());
    throw LoadError("rational must be a string or integer");
}

json int_to_json(const Int& x) { return x.get_str(); }

Int int_from_json(const json& j) {
    if (j.is_number_integer()) return Int(j.get<long>());
    if (j.is_string()) return parse_int(j.get<std::string>());
    throw LoadError("integer must be a string or number");
}

json cyclo_to_json(const cyclo::CycloNumber& x) {
    json coeffs = json::array();
    for (const Rat& c : x.coeffs()) coeffs.push_back(rat_to_json(c));
    return json{{"order", x.order()}, {"coeffs", coeffs}};
}

cyclo::CycloNumber cyclo_from_json(const json& j) {
    unsigned long order = field(j, "order").get<unsigned long>();
    std::vector<Rat> coeffs;
    for (const auto& c : field(j, "coeffs")) coeffs.push_back(rat_from_json(c));
    return cyclo::CycloNumber(order, std::move(coeffs));
}

json ext_to_json(const qexp::ExtCoeff& x) {
    return json{{"cyclo", cyclo_to_json(x.cyclo_part())},
                {"sqrtp_exp", x.sqrtp_exp()},
                {"prime", int_to_json(x.prime())}};
}

qexp::ExtCoeff ext_from_json(const json& j) {
    if (j.is_string() || j.is_number_integer())
        return qexp::ExtCoeff(rat_from_json(j));  // bare rational shorthand
    cyclo::CycloNumber c = cyclo_from_json(field(j, "cyclo"));
    long e = j.value("sqrtp_exp", 0L);
    Int p = j.contains("prime") ? int_from_json(j["prime"]) : Int(0);
    if (e == 0 && p == 0) return qexp::ExtCoeff(std::move(c));
    return qexp::ExtCoeff(std::move(c), e, p);
}

json padic_to_json(const padic::PadicNumber& x) {
    if (x.is_zero())
        return json{{"p", int_to_json(x.prime())}, {"zero", true}, {"N", x.precision()}};
    return json{{"p", int_to_json(x.prime())},
                {"zero", false},
                {"val", rat_to_json(x.valuation())},
                {"unit", int_to_json(x.unit())},
                {"N", x.precision()}};
}

padic::PadicNumber padic_from_json(const json& j) {
    Int p = int_from_json(field(j, "p"));
    long N = field(j, "N").get<long>();
    if (j.value("zero", false)) return padic::PadicNumber::zero(p, N);
    return padic::PadicNumber(p, rat_from_json(field(j, "val")),
                              int_from_json(field(j, "unit")), N);
}

json char_to_json(const chars::DirichletChar& chi) {
    json exps = json::array();
    for (unsigned long e : chi.exponents()) exps.push_back(e);
    return json{{"modulus", int_to_json(chi.modulus())}, {"exponents", exps}};
}

chars::DirichletChar char_from_json(const json& j) {
    Int modulus = int_from_json(field(j, "modulus"));
    std::vector<unsigned long> exps;
    for (const auto& e : field(j, "exponents")) exps.push_back(e.get<unsigned long>());
    return chars::DirichletChar(modulus, std::move(exps));
}

json expansion_to_json(const qexp::FourierExpansion& f) {
    json coeffs = json::array();
    for (const auto& [tau, c] : f.coeffs) {
        json rows = json::array();
        int n = tau.degree();
        const auto& t = tau.twice_data();
        for (int i = 0; i < n; ++i) {
            json row = json::array();
            for (int k = 0; k < n; ++k) row.push_back(int_to_json(t[i * n + k]));
            rows.push_back(row);
        }
        coeffs.push_back(json{{"tau_twice", rows},
                              {"cyclo", cyclo_to_json(c.cyclo_part())},
                              {"sqrtp_exp", c.sqrtp_exp()}});
    }
    return json{{"degree", f.degree},     {"weight2", f.weight2},
                {"b", rat_to_json(f.level_b)}, {"c", int_to_json(f.level_c)},
                {"prime", int_to_json(f.prime)}, {"trace_bound", int_to_json(f.trace_bound)},
                {"coeffs", coeffs}};
}

qexp::FourierExpansion expansion_from_json(const json& j) {
    qexp::FourierExpansion f;
    f.degree = field(j, "degree").get<int>();
    f.weight2 = field(j, "weight2").get<long>();
    f.level_b = rat_from_json(field(j, "b"));
    f.level_c = int_from_json(field(j, "c"));
    f.prime = j.contains("prime") ? int_from_json(j["prime"]) : Int(0);
    f.trace_bound = int_from_json(field(j, "trace_bound"));
    for (const auto& entry : field(j, "coeffs")) {
        const json& rows = field(entry, "tau_twice");
        int n = static_cast<int>(rows.size());
        if (n != f.degree) throw LoadError("tau_twice size does not match degree");
        std::vector<Int> t;
        for (const auto& row : rows) {
            if (static_cast<int>(row.size()) != n) throw LoadError("ragged tau_twice");
            for (const auto& v : row) t.push_back(int_from_json(v));
        }
        symlat::HalfIntSymMatrix tau(n, std::move(t));
        cyclo::CycloNumber c = cyclo_from_json(field(entry, "cyclo"));
        long e = entry.value("sqrtp_exp", 0L);
        if (e == 0)
            f.set(tau, qexp::ExtCoeff(std::move(c)));
        else
            f.set(tau, qexp::ExtCoeff(std::move(c), e, f.prime));
    }
    return f;
}

json eigen_to_json(const EigenData& d) {
    json lambdas = json::array();
    for (const auto& l : d.lambdas) lambdas.push_back(ext_to_json(l));
    json tv = json::object();
    for (const auto& [m, v] : d.T_values) tv[std::to_string(m)] = ext_to_json(v);
    return json{{"p", int_to_json(d.p)}, {"lambdas", lambdas}, {"T_values", tv}};
}

EigenData eigen_from_json(const json& j) {
    EigenData d;
    d.p = int_from_json(field(j, "p"));
    for (const auto& l : field(j, "lambdas")) d.lambdas.push_back(ext_from_json(l));
    for (const auto& [key, v] : field(j, "T_values").items())
        d.T_values.emplace(std::stoi(key), ext_from_json(v));
    return d;
}

json local_polys_to_json(const eisen::LocalPolys& polys) {
    json out = json::object();
    for (const auto& [q, coeffs] : polys) {
        json arr = json::array();
        for (const Int& c : coeffs) arr.push_back(int_to_json(c));
        out[q.get_str()] = arr;
    }
    return out;
}

eisen::LocalPolys local_polys_from_json(const json& j, PolyShape shape) {
    if (!j.is_object()) throw LoadError("local polynomial file must be an object");
    eisen::LocalPolys polys;
    for (const auto& [key, arr] : j.items()) {
        Int q = parse_int(key);
        if (!is_prime(q)) throw LoadError("local polynomial index is not prime: " + key);
        std::vector<Int> coeffs;
        for (const auto& c : arr) coeffs.push_back(int_from_json(c));
        if (coeffs.empty()) throw LoadError("empty local polynomial at q = " + key);
        if (shape == PolyShape::UnitConstant && coeffs[0] != 1)
            throw LoadError("local polynomial at q = " + key + " must have constant term 1");
        if (shape == PolyShape::NoConstant && coeffs[0] != 0)
            throw LoadError("local polynomial at q = " + key + " must have no constant term");
        polys.emplace(std::move(q), std::move(coeffs));
    }
    return polys;
}

json measure_to_json(const measures::DistributionSystem& nu) {
    json levels = json::array();
    for (long i = 1; i <= nu.depth(); ++i) {
        json values = json::object();
        for (const auto& [x, v] : nu.level(i)) values[x.get_str()] = padic_to_json(v);
        levels.push_back(json{{"i", i}, {"values", values}});
    }
    json out{{"p", int_to_json(nu.prime())}, {"I_max", nu.depth()}, {"levels", levels}};
    if (nu.boundedness())
        out["boundedness_valuation"] = rat_to_json(*nu.boundedness());
    return out;
}

measures::DistributionSystem measure_from_json(const json& j) {
    Int p = int_from_json(field(j, "p"));
    long imax = field(j, "I_max").get<long>();
    std::vector<measures::Level> levels(imax);
    for (const auto& lv : field(j, "levels")) {
        long i = field(lv, "i").get<long>();
        if (i < 1 || i > imax) throw LoadError("level index out of range");
        for (const auto& [key, v] : field(lv, "values").items())
            levels[i - 1].emplace(parse_int(key), padic_from_json(v));
    }
    return measures::DistributionSystem::from_system(p, std::move(levels));
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw LoadError("parse error in " + path + ": " + e.what());
    }
    return j;
}

void save_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw LoadError("cannot write: " + path);
    out << j.dump(2) << "\n";
}

}  // namespace padl::io
