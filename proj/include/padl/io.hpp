#pragma once

#include <string>

#include "json.hpp"
#include "padl/chars.hpp"
#include "padl/common.hpp"
#include "padl/cyclo.hpp"
#include "padl/eisen.hpp"
#include "padl/measures.hpp"
#include "padl/padic.hpp"
#include "padl/qexp.hpp"

namespace padl::io {

using nlohmann::json;

struct LoadError : error {
    using error::error;
};

// scalars (arbitrary-precision values travel as decimal strings)
json rat_to_json(const Rat& x);
Rat rat_from_json(const json& j);
json int_to_json(const Int& x);
Int int_from_json(const json& j);

json cyclo_to_json(const cyclo::CycloNumber& x);
cyclo::CycloNumber cyclo_from_json(const json& j);

json ext_to_json(const qexp::ExtCoeff& x);
qexp::ExtCoeff ext_from_json(const json& j);

json padic_to_json(const padic::PadicNumber& x);
padic::PadicNumber padic_from_json(const json& j);

json char_to_json(const chars::DirichletChar& chi);
chars::DirichletChar char_from_json(const json& j);

// {degree, weight2, b, c, prime, trace_bound,
//  coeffs: [{tau_twice: [[..]], cyclo: {..}, sqrtp_exp}]}
json expansion_to_json(const qexp::FourierExpansion& f);
qexp::FourierExpansion expansion_from_json(const json& j);

// {p, lambdas: [..], T_values: {"m": ..}}
struct EigenData {
    Int p;
    std::vector<qexp::ExtCoeff> lambdas;
    std::map<int, qexp::ExtCoeff> T_values;
};
json eigen_to_json(const EigenData& d);
EigenData eigen_from_json(const json& j);

// {q: [c0, c1, ...]}; the two admissible shapes are validated on load
enum class PolyShape { UnitConstant, NoConstant };
json local_polys_to_json(const eisen::LocalPolys& polys);
eisen::LocalPolys local_polys_from_json(const json& j, PolyShape shape);

// {p, I_max, levels: [{i, values: {residue: padic}}], boundedness_valuation}
json measure_to_json(const measures::DistributionSystem& nu);
measures::DistributionSystem measure_from_json(const json& j);

json load_json(const std::string& path);
void save_json(const std::string& path, const json& j);

}  // namespace padl::io
