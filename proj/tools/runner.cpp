#include "runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <thread>

#include "vvmf/constructions.hpp"
#include "vvmf/error.hpp"

namespace vvmf::cli {

namespace {

using io::json;

struct Input {
  const json& j;

  std::string construction() const { return j.value("construction", std::string()); }

  bool has(const char* key) const { return j.is_object() && j.contains(key); }

  std::optional<ExponentData> single_exponents(Group fallback = Group::Gamma) const {
    if (!has("exponents")) return std::nullopt;
    const auto& e = j.at("exponents");
    if (e.is_array() && !e.empty() && e[0].is_object()) return io::parse_exponents(e[0], fallback);
    return io::parse_exponents(e, fallback);
  }

  std::vector<ExponentData> exponent_list() const {
    std::vector<ExponentData> out;
    if (!has("exponents")) return out;
    const auto& e = j.at("exponents");
    if (e.is_array() && !e.empty() && e[0].is_object()) {
      for (const auto& x : e) out.push_back(io::parse_exponents(x));
    } else {
      out.push_back(io::parse_exponents(e));
    }
    return out;
  }

  std::vector<json> reps() const {
    if (has("reps")) return j.at("reps").get<std::vector<json>>();
    if (has("rep")) return {j.at("rep")};
    return {};
  }

  std::string rep_kind() const {
    auto rs = reps();
    if (rs.empty()) return "";
    return rs[0].value("kind", std::string());
  }
};

std::vector<Rank2Rep> rank2_factors(const Input& in, std::vector<ExponentData>& ls, size_t count) {
  auto rs = in.reps();
  ls = in.exponent_list();
  if (rs.size() != count || ls.size() != count)
    throw Error(ErrorKind::ValidationError,
                "construction '" + in.construction() + "' needs " + std::to_string(count) + " reps and exponents");
  std::vector<Rank2Rep> out;
  for (size_t i = 0; i < count; ++i) {
    if (rs[i].value("kind", std::string("rank2")) != "rank2")
      throw Error(ErrorKind::ValidationError, "construction factors must be rank2");
    out.push_back(io::parse_rank2(rs[i], ls[i]));
  }
  return out;
}

InductionJob induction_job(const Input& in) {
  std::optional<cd> u;
  if (in.has("u")) u = io::parse_complex(in.j.at("u"));
  if (in.has("rep")) {
    auto L = in.single_exponents(Group::G);
    if (!L) throw Error(ErrorKind::ValidationError, "induction needs exponents for G");
    return make_induction_job(io::parse_g_rank2(in.j.at("rep"), L), *L, u);
  }
  if (in.has("k1") && in.has("r")) {
    auto job = induction_job_from_exponent(in.j.at("k1").get<int>(), io::parse_complex(in.j.at("r")));
    if (u && std::abs(*u - job.u) > kStructuralTol * (1.0 + std::abs(job.u)))
      throw Error(ErrorKind::ValidationError, "u does not match r");
    return job;
  }
  throw Error(ErrorKind::ValidationError, "induction needs a g-rank2 rep with exponents, or k1 and r");
}

json induction_json(const InductionJob& job) {
  return {{"k1", job.k1},
          {"u", io::complex_json(job.u)},
          {"r", io::complex_json(job.r)},
          {"branch", job.trace_branch ? "3Tr(L)" : "3Tr(L)+1"},
          {"exponents", io::exponents_json(job.L)}};
}

struct Rank4Data {
  Rank4Rep rep;
  ExponentData L;
};

Rank4Data derive_rank4(const Input& in, json& env) {
  const std::string c = in.construction();
  if (c == "sym3") {
    std::vector<ExponentData> ls;
    auto a = rank2_factors(in, ls, 1)[0];
    const cd x = a.x, y = a.y;
    return {Rank4Rep::from_spectrum(x * x * x, x * x * y, x * y * y, y * y * y, parity(a)), sym3_exponents(ls[0])};
  }
  if (c == "tensor") {
    std::vector<ExponentData> ls;
    auto f = rank2_factors(in, ls, 2);
    const auto& a = f[0];
    const auto& b = f[1];
    return {Rank4Rep::from_spectrum(a.x * b.x, a.x * b.y, a.y * b.x, a.y * b.y,
                                    static_cast<int>(mod(parity(a) + parity(b), 2))),
            tensor_exponents(ls[0], ls[1])};
  }
  if (c == "induction") {
    auto job = induction_job(in);
    env["induction"] = induction_json(job);
    const GRank2Rep rho = twist(job.rep, 1);
    const auto spec = eigenvalues_of(Eigen::MatrixXcd(induced_t_matrix(rho)));
    return {Rank4Rep::from_spectrum(spec[0], spec[1], spec[2], spec[3], job.rep.e), induced_exponents(job.L, rho)};
  }
  if (!c.empty()) throw Error(ErrorKind::ValidationError, "unknown construction '" + c + "'");
  if (in.rep_kind() != "rank4") throw Error(ErrorKind::ValidationError, "expected a rank4 rep or a construction");
  auto L = in.single_exponents();
  if (!L) throw Error(ErrorKind::ValidationError, "missing exponents");
  return {io::parse_rank4(in.j.at("rep"), L), *L};
}

template <class Real>
json operator_json(const FuchsianOperator<Real>& op) {
  json polys = json::array();
  for (const auto& p : op.polys) {
    json row = json::array();
    for (const auto& c : p) row.push_back(io::complex_json(to_cd(c)));
    polys.push_back(row);
  }
  return {{"nome", std::string(nome_name(op.nome))}, {"theta_polys", polys}};
}

template <class Real>
void push_forms(json& env, const std::vector<VectorSeries<Real>>& forms, std::optional<int> twist = std::nullopt) {
  if (!env.contains("basis")) env["basis"] = json::array();
  for (const auto& f : forms) {
    json fj = io::form_json(f);
    if (twist) fj["twist"] = *twist;
    env["basis"].push_back(fj);
  }
}

template <class Real>
void append(std::vector<Diagnostic>& ds, const std::vector<Diagnostic>& more, const std::string& prefix = "") {
  for (auto d : more) {
    d.name = prefix + d.name;
    ds.push_back(d);
  }
}

template <class Real>
void run_forms(const JobSpec& job, const Input& in, json& env, std::vector<Diagnostic>& ds) {
  const bool full = job.command == Command::Basis;
  const int n = job.order;
  ClassicalCatalog<Real> cat(n);
  const std::string c = in.construction();

  if (c == "sym3" || c == "tensor") {
    std::vector<ExponentData> ls;
    auto f = rank2_factors(in, ls, c == "sym3" ? 1 : 2);
    auto basis = c == "sym3" ? sym3_pipeline(f[0], ls[0], n, cat) : tensor_pipeline(f[0], f[1], ls[0], ls[1], n, cat);
    env["case"] = io::case_json(basis.report);
    if (!full) basis.forms.resize(1);
    push_forms(env, basis.forms);
    append<Real>(ds, basis.diagnostics);
    return;
  }
  if (c == "induction") {
    auto ij = induction_job(in);
    env["induction"] = induction_json(ij);
    if (!full) {
      auto pair = induction_minimal_pair(ij, n, cat);
      push_forms(env, std::vector<VectorSeries<Real>>{pair.a}, 1);
      push_forms(env, std::vector<VectorSeries<Real>>{pair.b}, 2);
      append<Real>(ds, pair.diagnostics);
      return;
    }
    auto [b1, b2] = induction_pipeline(ij, n, cat);
    env["case"] = io::case_json(b1.report);
    push_forms(env, b1.forms, 1);
    push_forms(env, b2.forms, 2);
    append<Real>(ds, b1.diagnostics, "twist 1: ");
    append<Real>(ds, b2.diagnostics, "twist 2: ");
    return;
  }
  if (!c.empty()) throw Error(ErrorKind::ValidationError, "unknown construction '" + c + "'");

  const std::string kind = in.rep_kind();
  if (kind == "rank2") {
    auto L = in.single_exponents();
    if (!L) throw Error(ErrorKind::ValidationError, "missing exponents");
    auto rep = io::parse_rank2(in.j.at("rep"), L);
    auto m = rank2_minimal(rep, *L, n, cat);
    env["rank2"] = {{"k1", m.k1}, {"source", rank2_source_name(m.source)}, {"symbolic_first", m.symbolic_first}};
    std::vector<VectorSeries<Real>> forms{m.form};
    if (full) {
      forms.push_back(modular_derivative(m.form, cat));
      if (!m.symbolic_first) ds.push_back({"leading coefficient rank", leading_rank_ratio(forms), 1e-6, false});
    }
    push_forms(env, forms);
    return;
  }
  if (kind == "rank4") {
    auto L = in.single_exponents();
    if (!L) throw Error(ErrorKind::ValidationError, "missing exponents");
    auto basis = rank4_pipeline(io::parse_rank4(in.j.at("rep"), L), *L, n, cat);
    env["case"] = io::case_json(basis.report);
    if (!full) basis.forms.resize(1);
    push_forms(env, basis.forms);
    append<Real>(ds, basis.diagnostics);
    return;
  }
  throw Error(ErrorKind::ValidationError, "expected a rank2 or rank4 rep, or a construction");
}

template <class Real>
void run_typed(const JobSpec& job, json& env, std::vector<Diagnostic>& ds) {
  const Input in{job.input};
  switch (job.command) {
    case Command::Classify: {
      if (in.construction().empty() && in.rep_kind() == "rank2") {
        auto L = in.single_exponents();
        if (!L) throw Error(ErrorKind::ValidationError, "missing exponents");
        auto rep = io::parse_rank2(in.j.at("rep"), L);
        validate(rep);
        check_exponents_match(*L, rep.jordan ? std::vector<cd>{rep.x, rep.x} : std::vector<cd>{rep.x, rep.y});
        const cd six = 6.0 * L->trace();
        if (!near_integer(six)) throw Error(ErrorKind::ValidationError, "6 Tr(L) is not an integer");
        env["rank2"] = {{"k1", nearest_integer(six) - 1},
                        {"irreducible", rank2_is_irreducible(rep)},
                        {"t_regular", rank2_is_t_regular(rep)},
                        {"parity", parity(rep)}};
        return;
      }
      auto d = derive_rank4(in, env);
      auto report = classify(d.rep, d.L);
      env["case"] = io::case_json(report);
      json dims = json::array();
      for (int k = report.k1; k <= report.k1 + 12; ++k) dims.push_back({{"k", k}, {"dim", dimension(k, d.rep, d.L)}});
      env["dimensions"] = dims;
      return;
    }
    case Command::Coeffs: {
      auto d = derive_rank4(in, env);
      auto report = classify(d.rep, d.L);
      env["case"] = io::case_json(report);
      const auto f = shifted_exponents<Real>(d.L.eigenvalues, report.kind);
      if (report.kind == CaseKind::Cyclic) {
        auto co = cyclic_coeffs(f);
        env["coefficients"] = io::coefficients_json(co);
        env["operator"] = operator_json(build_cyclic_operator(co));
      } else {
        auto co = noncyclic_coeffs(f);
        env["coefficients"] = io::coefficients_json(co);
        env["operator"] = operator_json(build_noncyclic_operator(co));
      }
      return;
    }
    case Command::Minimal:
    case Command::Basis:
      run_forms<Real>(job, in, env, ds);
      return;
    case Command::Classical: {
      ClassicalCatalog<Real> cat(job.order);
      std::vector<std::string> names;
      if (in.has("name")) {
        names.push_back(in.j.at("name").get<std::string>());
      } else {
        for (const auto& nm : ClassicalCatalog<Real>::names())
          if (nm.find('(') == std::string::npos) names.push_back(nm);
      }
      json series = json::array();
      for (const auto& nm : names) series.push_back({{"name", nm}, {"series", io::series_json(cat.get(nm))}});
      env["series"] = series;
      return;
    }
    case Command::Check: {
      ClassicalCatalog<Real> cat(job.order);
      append<Real>(ds, classical_identities(cat));
      append<Real>(ds, level2_identities(cat));
      return;
    }
  }
}

}  // namespace

std::string command_name(Command c) {
  switch (c) {
    case Command::Classify: return "classify";
    case Command::Coeffs: return "coeffs";
    case Command::Minimal: return "minimal";
    case Command::Basis: return "basis";
    case Command::Classical: return "classical";
    case Command::Check: return "check";
  }
  return "?";
}

Command parse_command(const std::string& s) {
  for (auto c : {Command::Classify, Command::Coeffs, Command::Minimal, Command::Basis, Command::Classical,
                 Command::Check})
    if (command_name(c) == s) return c;
  if (s == "solve") return Command::Minimal;
  throw Error(ErrorKind::ValidationError, "unknown command '" + s + "'");
}

Precision default_precision(Command c) {
  return (c == Command::Minimal || c == Command::Basis) ? Precision::Extended : Precision::Double;
}

JobSpec make_job(Command command, const json& input, const Overrides& ov) {
  JobSpec job;
  job.input = input.is_null() ? json::object() : input;
  job.command = command;
  if (job.input.contains("command")) {
    const Command c = parse_command(job.input.at("command").get<std::string>());
    if (c != command) throw Error(ErrorKind::ValidationError, "job file is for '" + command_name(c) + "'");
  }
  job.order = ov.order ? *ov.order : job.input.value("order", 40);
  if (job.order < 1) throw Error(ErrorKind::ValidationError, "order must be at least 1");
  if (ov.precision) {
    job.precision = *ov.precision;
  } else if (job.input.contains("precision")) {
    job.precision = parse_precision(job.input.at("precision").get<std::string>());
  } else {
    job.precision = default_precision(command);
  }
  job.tol = ov.tol;
  return job;
}

Result run(const JobSpec& job) {
  const auto start = std::chrono::steady_clock::now();
  Result res;
  json env;
  env["job"] = {{"command", command_name(job.command)},
                {"order", job.order},
                {"precision", precision_name(job.precision)},
                {"input", job.input}};
  std::vector<Diagnostic> ds;
  try {
    if (job.precision == Precision::Double) {
      run_typed<double>(job, env, ds);
    } else {
      run_typed<Mp>(job, env, ds);
    }
  } catch (const Error& e) {
    env["error"] = {{"kind", std::string(kind_name(e.kind()))},
                    {"step", e.step() ? json(std::string(1, e.step())) : json(nullptr)},
                    {"detail", e.detail()}};
    res.error = true;
  } catch (const json::exception& e) {
    env["error"] = {{"kind", "ValidationError"}, {"step", nullptr}, {"detail", e.what()}};
    res.error = true;
  }
  if (job.tol)
    for (auto& d : ds)
      if (d.lower_is_better) d.tolerance = *job.tol;
  env["residuals"] = io::diagnostics_json(ds);
  res.ok = !res.error && all_passed(ds);
  env["ok"] = res.ok;
  res.envelope = std::move(env);
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

unsigned batch_digits(const std::vector<JobSpec>& jobs) {
  unsigned d = 50;
  for (const auto& j : jobs)
    if (j.precision == Precision::Extended) d = std::max(d, digits_for_order(j.order));
  return d;
}

std::vector<Result> run_all(const std::vector<JobSpec>& jobs, int workers) {
  std::vector<Result> out(jobs.size());
  const size_t nw = std::clamp<size_t>(static_cast<size_t>(std::max(workers, 1)), 1, std::max<size_t>(jobs.size(), 1));
  if (nw == 1) {
    for (size_t i = 0; i < jobs.size(); ++i) out[i] = run(jobs[i]);
    return out;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  for (size_t w = 0; w < nw; ++w)
    pool.emplace_back([&] {
      for (size_t i = next++; i < jobs.size(); i = next++) out[i] = run(jobs[i]);
    });
  for (auto& t : pool) t.join();
  return out;
}

void write_csv(const json& envelope, std::ostream& out) {
  out << "form_index,component,n,re,im\n";
  out << std::setprecision(17);
  auto rows = [&](size_t form, size_t comp, const json& s) {
    const auto& cs = s.at("coeffs");
    const double lead = s.at("lead_exponent")[0].get<double>();
    for (size_t n = 0; n < cs.size(); ++n)
      out << form << ',' << comp << ',' << lead + static_cast<double>(n) << ',' << cs[n][0].get<double>() << ','
          << cs[n][1].get<double>() << '\n';
  };
  if (envelope.contains("basis")) {
    const auto& b = envelope.at("basis");
    for (size_t i = 0; i < b.size(); ++i) {
      const auto& comps = b[i].at("components");
      for (size_t j = 0; j < comps.size(); ++j) rows(i, j, comps[j]);
    }
  }
  if (envelope.contains("series")) {
    const auto& s = envelope.at("series");
    for (size_t i = 0; i < s.size(); ++i) rows(i, 0, s[i].at("series"));
  }
}

std::optional<double> tolerance_from_env() {
  const char* v = std::getenv("VVMF_TOL");
  if (!v || !*v) return std::nullopt;
  try {
    size_t used = 0;
    double t = std::stod(v, &used);
    if (used != std::string(v).size() || !(t > 0)) throw std::invalid_argument(v);
    return t;
  } catch (const std::exception&) {
    throw Error(ErrorKind::ValidationError, std::string("VVMF_TOL is not a positive number: ") + v);
  }
}

}  // namespace vvmf::cli
