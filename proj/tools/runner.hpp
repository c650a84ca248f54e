#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json_io.hpp"

namespace vvmf::cli {

using json = nlohmann::json;

enum class Command { Classify, Coeffs, Minimal, Basis, Classical, Check };

std::string command_name(Command c);
Command parse_command(const std::string& s);

// Extended for minimal and basis, double otherwise.
Precision default_precision(Command c);

struct JobSpec {
  Command command = Command::Check;
  json input = json::object();
  int order = 40;
  Precision precision = Precision::Double;
  std::optional<double> tol;
};

struct Overrides {
  std::optional<int> order;
  std::optional<Precision> precision;
  std::optional<double> tol;
};

// Resolution order: explicit flag, then the job file, then the default.
JobSpec make_job(Command command, const json& input, const Overrides& ov);

struct Result {
  json envelope;
  bool ok = false;
  bool error = false;
  double seconds = 0.0;
};

// The caller must have set the extended-precision default beforehand.
Result run(const JobSpec& job);

// Working digits for a batch: the largest any extended job needs.
unsigned batch_digits(const std::vector<JobSpec>& jobs);

std::vector<Result> run_all(const std::vector<JobSpec>& jobs, int workers);

// Rows form_index, component, n, re, im for every series in the envelope;
// n is the absolute exponent (lead exponent plus offset).
void write_csv(const json& envelope, std::ostream& out);

// VVMF_TOL, if set.
std::optional<double> tolerance_from_env();

}  // namespace vvmf::cli
