#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "runner.hpp"
#include "vvmf/error.hpp"

using namespace vvmf;
using namespace vvmf::cli;

namespace {

struct Flags {
  std::string spec;
  std::optional<int> order;
  std::string precision;
  std::string format = "json";
  std::string out;
  int jobs = 1;
  bool timing = false;
  std::string name;
};

json load_spec(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IOError, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ValidationError, path + ": " + e.what());
  }
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IOError, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorKind::IOError, "write failed for " + path);
}

int execute(Command command, const Flags& fl) {
  Overrides ov;
  ov.order = fl.order;
  if (!fl.precision.empty()) ov.precision = parse_precision(fl.precision);
  ov.tol = tolerance_from_env();

  json spec = load_spec(fl.spec);
  std::vector<json> inputs;
  if (spec.is_array()) {
    for (auto& j : spec) inputs.push_back(j);
  } else {
    inputs.push_back(spec);
  }
  if (!fl.name.empty())
    for (auto& j : inputs) j["name"] = fl.name;

  std::vector<JobSpec> jobs;
  for (const auto& j : inputs) jobs.push_back(make_job(command, j, ov));
  if (fl.format == "csv" && jobs.size() != 1)
    throw Error(ErrorKind::ValidationError, "csv output takes exactly one job");

  PrecisionScope scope(batch_digits(jobs));
  auto results = run_all(jobs, fl.jobs);

  bool any_error = false, all_ok = true;
  for (auto& r : results) {
    any_error = any_error || r.error;
    all_ok = all_ok && r.ok;
    if (fl.timing) r.envelope["timing"] = {{"seconds", r.seconds}};
  }

  std::ostringstream text;
  if (fl.format == "csv") {
    write_csv(results[0].envelope, text);
  } else if (results.size() == 1 && !spec.is_array()) {
    text << results[0].envelope.dump(2) << '\n';
  } else {
    json arr = json::array();
    for (auto& r : results) arr.push_back(std::move(r.envelope));
    text << arr.dump(2) << '\n';
  }
  emit(text.str(), fl.out);
  for (const auto& r : results)
    if (r.envelope.contains("error")) std::cerr << "vvmf: " << r.envelope["error"].dump() << '\n';
  if (any_error) return 2;
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vvmf: vector-valued modular forms via modular linear differential equations"};
  app.require_subcommand(1);
  Flags fl;

  const std::vector<std::pair<Command, std::string>> commands = {
      {Command::Classify, "case and dimensions for a rank-4 job"},
      {Command::Coeffs, "MLDE coefficients and the Fuchsian operator"},
      {Command::Minimal, "minimal-weight form (or the induction pair)"},
      {Command::Basis, "free basis of the module of forms"},
      {Command::Classical, "q-expansions of the classical catalog"},
      {Command::Check, "classical and level-2 identity residuals"},
  };
  std::vector<std::pair<CLI::App*, Command>> subs;
  for (const auto& [c, help] : commands) {
    auto* sub = app.add_subcommand(command_name(c), help);
    if (c == Command::Minimal) sub->alias("solve");
    sub->add_option("--spec", fl.spec, "job file (object or array of objects)");
    sub->add_option("--order", fl.order, "truncation order N")->check(CLI::PositiveNumber);
    sub->add_option("--precision", fl.precision, "double or extended")
        ->check(CLI::IsMember({"double", "extended"}));
    sub->add_option("--format", fl.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", fl.out, "output path (stdout if omitted)");
    sub->add_option("--jobs", fl.jobs, "worker threads for a job array")->check(CLI::PositiveNumber);
    sub->add_flag("--timing", fl.timing, "add wall-clock seconds per job");
    if (c == Command::Classical) sub->add_option("--name", fl.name, "single catalog series");
    subs.emplace_back(sub, c);
  }

  CLI11_PARSE(app, argc, argv);

  for (const auto& [sub, c] : subs) {
    if (!sub->parsed()) continue;
    try {
      return execute(c, fl);
    } catch (const Error& e) {
      json err = {{"error", {{"kind", std::string(kind_name(e.kind()))}, {"step", nullptr}, {"detail", e.detail()}}}};
      std::cout << err.dump(2) << '\n';
      std::cerr << "vvmf: " << e.what() << '\n';
      return 2;
    }
  }
  return 2;
}
