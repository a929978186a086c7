#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace dsfem::cli {

enum ExitCode { Success = 0, UsageError = 1, NumericalFailure = 2 };

struct RunConfig {
  std::string family = "t1";
  std::string element = "ds";               ///< ds, ds-map, mixed-full, mixed-red
  std::optional<std::string> supplement;    ///< simple, geometric, lemma, mapped
  double xi = 1.0, eta = 1.0;               ///< constants of the simple and lemma supplements
  std::optional<int> r;
  std::vector<int> ns{8};
  int quad_points = 0;                      ///< per axis; 0 selects r+5
  double tol = 1e-12;
  std::string solver = "cholesky";          ///< cholesky or pcg
  std::string format = "csv";               ///< csv or md
  std::string out;                          ///< empty writes to stdout
  std::string mesh;                         ///< mesh file for audit and mesh-info
  std::uint64_t seed = 42;
  int samples = 200;
};

/// Each returns an ExitCode; diagnostics go to `err`.
int run_convergence(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_audit(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_mesh_info(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace dsfem::cli
