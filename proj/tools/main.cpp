#include <iostream>

#include <CLI11.hpp>

#include "cli.hpp"

int main(int argc, char** argv) {
  using namespace dsfem::cli;
  CLI::App app{"Direct serendipity and direct mixed finite elements on quadrilaterals"};
  app.require_subcommand(1);
  RunConfig c;
  int r = 0;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--family", c.family, "Mesh family: t1, t2 or t3")->capture_default_str();
    sub->add_option("--element", c.element, "ds, ds-map, mixed-full or mixed-red")
        ->check(CLI::IsMember({"ds", "ds-map", "mixed-full", "mixed-red"}))
        ->capture_default_str();
    sub->add_option("--supplement", c.supplement, "simple, geometric, lemma or mapped")
        ->check(CLI::IsMember({"simple", "geometric", "lemma", "mapped"}));
    sub->add_option("--xi", c.xi, "xi_V = xi_H for simple and lemma supplements")->capture_default_str();
    sub->add_option("--eta", c.eta, "eta_V = eta_H for simple and lemma supplements")->capture_default_str();
    sub->add_option("--r", r, "Element index");
    sub->add_option("--out", c.out, "Output file");
  };

  auto* conv = app.add_subcommand("convergence", "Manufactured-solution convergence study");
  common(conv);
  conv->add_option("--n", c.ns, "Comma-separated subdivision counts")->delimiter(',')->capture_default_str();
  conv->add_option("--quad-points", c.quad_points, "Gauss points per axis (0: r+5)")->capture_default_str();
  conv->add_option("--tol", c.tol, "Relative residual tolerance for pcg")->capture_default_str();
  conv->add_option("--solver", c.solver, "cholesky or pcg")
      ->check(CLI::IsMember({"cholesky", "pcg"}))
      ->capture_default_str();
  conv->add_option("--format", c.format, "csv or md")->check(CLI::IsMember({"csv", "md"}))->capture_default_str();

  auto* audit = app.add_subcommand("audit", "Unisolvence, continuity and de Rham property suites");
  common(audit);
  audit->add_option("--seed", c.seed, "Seed for random quadrilaterals")->capture_default_str();
  audit->add_option("--samples", c.samples, "Random quadrilaterals in the unisolvence audit")->capture_default_str();
  audit->add_option("--mesh", c.mesh, "Audit the cells of a mesh file instead of random quadrilaterals");

  auto* info = app.add_subcommand("mesh-info", "Mesh statistics, optionally writing the mesh");
  info->add_option("--family", c.family, "Mesh family: t1, t2 or t3")->capture_default_str();
  info->add_option("--n", c.ns, "Subdivisions")->expected(1)->capture_default_str();
  info->add_option("--mesh", c.mesh, "Read a mesh file instead of generating one");
  info->add_option("--out", c.out, "Write the mesh to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? Success : UsageError;
  }
  if (conv->count("--r") || audit->count("--r")) c.r = r;

  if (*conv) return run_convergence(c, std::cout, std::cerr);
  if (*audit) return run_audit(c, std::cout, std::cerr);
  return run_mesh_info(c, std::cout, std::cerr);
}
