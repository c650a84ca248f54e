#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "vvmf/diagnostic.hpp"
#include "vvmf/mlde.hpp"
#include "vvmf/rep.hpp"
#include "vvmf/series.hpp"

namespace vvmf::io {

using json = nlohmann::json;

// A number, [re, im], or a string "p/q".
cd parse_complex(const json& j);
json complex_json(cd z);

// {"eigenvalues": [...], "matrix": optional, "group": "Gamma"|"G"}, or a bare
// eigenvalue array.
ExponentData parse_exponents(const json& j, Group fallback = Group::Gamma);
json exponents_json(const ExponentData& e);

// Missing rank-2 fields (x, y, a) are filled from the exponents when given.
Rank2Rep parse_rank2(const json& j, const std::optional<ExponentData>& L);
Rank4Rep parse_rank4(const json& j, const std::optional<ExponentData>& L);
GRank2Rep parse_g_rank2(const json& j, const std::optional<ExponentData>& L);

template <class Real>
json series_json(const PuiseuxSeries<Real>& s);
PuiseuxSeries<double> parse_series(const json& j);

template <class Real>
json form_json(const VectorSeries<Real>& f);

json case_json(const CaseReport& c);
template <class Real>
json coefficients_json(const ODECoefficients<Real>& co);
json diagnostics_json(const std::vector<Diagnostic>& ds);

}  // namespace vvmf::io
