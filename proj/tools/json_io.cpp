#include "json_io.hpp"

#include <cmath>

#include "vvmf/error.hpp"

namespace vvmf::io {

namespace {

double parse_real_string(const std::string& s) {
  try {
    auto slash = s.find('/');
    size_t used = 0;
    if (slash == std::string::npos) {
      double v = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    }
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    double p = std::stod(num, &used);
    if (used != num.size()) throw std::invalid_argument(s);
    double q = std::stod(den, &used);
    if (used != den.size() || q == 0.0) throw std::invalid_argument(s);
    return p / q;
  } catch (const std::exception&) {
    throw Error(ErrorKind::ValidationError, "cannot read number '" + s + "'");
  }
}

double parse_real(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return parse_real_string(j.get<std::string>());
  throw Error(ErrorKind::ValidationError, "expected a number, got " + j.dump());
}

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw Error(ErrorKind::ValidationError, std::string("missing field '") + key + "'");
  return j.at(key);
}

cd exp2pi(cd z) { return std::exp(cd(0, 2 * M_PI) * z); }

}  // namespace

cd parse_complex(const json& j) {
  if (j.is_array()) {
    if (j.size() != 2) throw Error(ErrorKind::ValidationError, "complex numbers are [re, im]");
    return {parse_real(j[0]), parse_real(j[1])};
  }
  return {parse_real(j), 0.0};
}

json complex_json(cd z) { return json::array({z.real(), z.imag()}); }

ExponentData parse_exponents(const json& j, Group fallback) {
  ExponentData out;
  out.group = fallback;
  if (j.is_array()) {
    for (const auto& v : j) out.eigenvalues.push_back(parse_complex(v));
    return out;
  }
  if (!j.is_object()) throw Error(ErrorKind::ValidationError, "exponents must be an object or an array");
  if (j.contains("group")) out.group = parse_group(j.at("group").get<std::string>());
  if (j.contains("matrix")) {
    const auto& m = j.at("matrix");
    const auto n = static_cast<Eigen::Index>(m.size());
    Eigen::MatrixXcd mat(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
      if (m[static_cast<size_t>(r)].size() != m.size())
        throw Error(ErrorKind::ValidationError, "exponent matrix must be square");
      for (Eigen::Index c = 0; c < n; ++c) mat(r, c) = parse_complex(m[static_cast<size_t>(r)][static_cast<size_t>(c)]);
    }
    out.matrix = mat;
  }
  if (j.contains("eigenvalues")) {
    for (const auto& v : j.at("eigenvalues")) out.eigenvalues.push_back(parse_complex(v));
  } else if (out.matrix) {
    out.eigenvalues = eigenvalues_of(*out.matrix);
  } else {
    throw Error(ErrorKind::ValidationError, "exponents need eigenvalues or a matrix");
  }
  return out;
}

json exponents_json(const ExponentData& e) {
  json out;
  out["group"] = group_name(e.group);
  json ev = json::array();
  for (const auto& v : e.eigenvalues) ev.push_back(complex_json(v));
  out["eigenvalues"] = ev;
  if (e.matrix) {
    json m = json::array();
    for (Eigen::Index r = 0; r < e.matrix->rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < e.matrix->cols(); ++c) row.push_back(complex_json((*e.matrix)(r, c)));
      m.push_back(row);
    }
    out["matrix"] = m;
  }
  return out;
}

Rank2Rep parse_rank2(const json& j, const std::optional<ExponentData>& L) {
  Rank2Rep r;
  r.jordan = j.value("jordan", false);
  const bool have_l = L && L->rank() == 2;
  if (j.contains("x")) {
    r.x = parse_complex(j.at("x"));
  } else if (have_l) {
    r.x = exp2pi(L->eigenvalues[0]);
  } else {
    throw Error(ErrorKind::ValidationError, "rank2 rep needs x or exponents");
  }
  if (j.contains("y")) {
    r.y = parse_complex(j.at("y"));
  } else if (r.jordan) {
    r.y = r.x;
  } else if (have_l) {
    r.y = exp2pi(L->eigenvalues[1]);
  } else {
    throw Error(ErrorKind::ValidationError, "rank2 rep needs y or exponents");
  }
  if (j.contains("a")) {
    r.a = static_cast<int>(mod(j.at("a").get<long>(), 12));
  } else if (r.jordan) {
    r.a = static_cast<int>(mod(std::lround(12.0 * std::arg(r.x) / (2 * M_PI)), 12));
  } else {
    r.a = static_cast<int>(mod(std::lround(6.0 * std::arg(r.x * r.y) / (2 * M_PI)), 12));
  }
  return r;
}

Rank4Rep parse_rank4(const json& j, const std::optional<ExponentData>& L) {
  std::vector<cd> spec;
  if (j.contains("spectrum")) {
    for (const auto& v : j.at("spectrum")) spec.push_back(parse_complex(v));
  } else if (L) {
    for (const auto& e : L->eigenvalues) spec.push_back(exp2pi(e));
  }
  if (spec.size() != 4) throw Error(ErrorKind::WrongRank, "rank4 rep needs 4 eigenvalues of rho(T)");
  const int e = static_cast<int>(mod(require(j, "e").get<long>(), 2));
  if (j.contains("d")) return {spec[0], spec[1], spec[2], spec[3], static_cast<int>(mod(j.at("d").get<long>(), 6)), e};
  return Rank4Rep::from_spectrum(spec[0], spec[1], spec[2], spec[3], e);
}

GRank2Rep parse_g_rank2(const json& j, const std::optional<ExponentData>& L) {
  GRank2Rep r;
  r.e = static_cast<int>(mod(require(j, "e").get<long>(), 2));
  r.zeta1 = parse_complex(require(j, "zeta1"));
  r.zeta2 = parse_complex(require(j, "zeta2"));
  r.zeta3 = parse_complex(require(j, "zeta3"));
  if (j.contains("a")) {
    r.a = parse_complex(j.at("a"));
  } else if (L && L->rank() == 2) {
    r.a = a_for_t2_trace(r.e, r.zeta1, r.zeta2, r.zeta3, exp2pi(L->eigenvalues[0]) + exp2pi(L->eigenvalues[1]));
  } else {
    throw Error(ErrorKind::ValidationError, "g-rank2 rep needs a or exponents");
  }
  return r;
}

template <class Real>
json series_json(const PuiseuxSeries<Real>& s) {
  json out;
  out["nome"] = std::string(nome_name(s.nome()));
  out["lead_exponent"] = complex_json(to_cd(s.lead()));
  json cs = json::array();
  for (const auto& c : s.coeffs()) cs.push_back(complex_json(to_cd(c)));
  out["coeffs"] = cs;
  return out;
}

PuiseuxSeries<double> parse_series(const json& j) {
  std::vector<cd> cs;
  for (const auto& c : require(j, "coeffs")) cs.push_back(parse_complex(c));
  if (cs.empty()) throw Error(ErrorKind::ValidationError, "series needs at least one coefficient");
  return PuiseuxSeries<double>(parse_nome(require(j, "nome").get<std::string>()),
                               parse_complex(require(j, "lead_exponent")), std::move(cs));
}

template <class Real>
json form_json(const VectorSeries<Real>& f) {
  json out;
  out["weight"] = f.weight;
  json comps = json::array();
  for (const auto& c : f.components) comps.push_back(series_json(c));
  out["components"] = comps;
  return out;
}

json case_json(const CaseReport& c) {
  return {{"case", case_name(c.kind)}, {"k1", c.k1},          {"weights", c.weights},
          {"d", c.d},                  {"e", c.e},            {"three_trace", c.three_trace}};
}

template <class Real>
json coefficients_json(const ODECoefficients<Real>& co) {
  json f = json::array();
  for (const auto& x : co.f) f.push_back(complex_json(to_cd(x)));
  return {{"a", complex_json(to_cd(co.a))},
          {"b", complex_json(to_cd(co.b))},
          {"c", complex_json(to_cd(co.c))},
          {"case", case_name(co.kind)},
          {"f", f}};
}

json diagnostics_json(const std::vector<Diagnostic>& ds) {
  json out = json::array();
  for (const auto& d : ds)
    out.push_back({{"name", d.name},
                   {"value", d.value},
                   {"tolerance", d.tolerance},
                   {"lower_is_better", d.lower_is_better},
                   {"passed", d.passed()}});
  return out;
}

template json series_json<double>(const PuiseuxSeries<double>&);
template json series_json<Mp>(const PuiseuxSeries<Mp>&);
template json form_json<double>(const VectorSeries<double>&);
template json form_json<Mp>(const VectorSeries<Mp>&);
template json coefficients_json<double>(const ODECoefficients<double>&);
template json coefficients_json<Mp>(const ODECoefficients<Mp>&);

}  // namespace vvmf::io
