#pragma once
// Configurable verification suites over every identity in the library, with
// deterministic seeding and machine-readable reports.

#include "qonsager/boundary.hpp"
#include "qonsager/linalg.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace qonsager {

struct QSampling {
  double r_min = 0.7;
  double r_max = 1.4;
  int count = 40;  // samples per randomized check
};

struct RunConfig {
  int n_sites = 3;
  int depth = -1;  // generator-tower depth; -1 derives n_sites + 2
  QSampling q_sampling;
  std::string twist_mode = "unimodular";  // unimodular | generic | fixed-list
  std::vector<Complex> twist_values;      // used by fixed-list
  std::string inhomogeneity_mode = "ones";  // ones | fixed-list | random
  std::vector<Complex> inhomogeneity_values;
  std::string boundary_mode = "random";  // random | fixed
  BoundaryParams boundary;               // used by fixed
  std::uint64_t seed = 20260815ULL;
  std::map<std::string, double> tolerance_overrides;  // "suite.check" or "check"
  std::vector<std::string> suites;  // empty list = nothing to run
};

RunConfig default_config();  // all nine suites

const std::vector<std::string>& all_suites();

struct CheckRecord {
  std::string name;      // unique within its suite
  std::string identity;  // what equality is being verified
  int samples = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool expect_failure = false;  // negative control: passes when residual > tolerance
  bool pass = false;
  std::string note;
};

struct SuiteResult {
  std::string suite;
  std::vector<CheckRecord> checks;
  bool pass = true;
};

struct VerificationReport {
  RunConfig config;
  std::vector<SuiteResult> suites;
  std::vector<std::string> errors;  // configuration / precondition problems
  bool all_pass = true;
  std::string overall() const;  // "pass" | "fail" | "nothing-run"
};

// Throws std::invalid_argument with a descriptive message on unreadable
// files, malformed JSON, or invalid field values.
RunConfig load_config(const std::string& path);
RunConfig config_from_json_text(const std::string& text);
std::string config_to_json(const RunConfig& cfg);

VerificationReport run_suites(const RunConfig& cfg);

// format: "json" | "text". Output is stable: no timestamps, no addresses,
// fixed key order; identical configs produce byte-identical reports.
std::string emit_report(const VerificationReport& report, const std::string& format);

// Number of worker threads honored by sample loops (QONSAGER_WORKERS, >= 1).
int worker_count();

}  // namespace qonsager
