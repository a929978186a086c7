#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "dsfem/analysis.hpp"
#include "dsfem/audit.hpp"
#include "dsfem/error.hpp"
#include "dsfem/mesh.hpp"
#include "dsfem/report.hpp"

namespace dsfem::cli {

namespace {

struct UsageFailure {
  std::string message;
};

bool is_mixed(const std::string& element) { return element == "mixed-full" || element == "mixed-red"; }

SupplementChoice make_choice(const std::string& name, double xi, double eta) {
  SupplementKind kind{};
  try {
    kind = parse_supplement(name);
  } catch (const Error& e) {
    throw UsageFailure{e.what()};
  }
  return {kind, xi, eta, xi, eta};
}

SupplementChoice resolve_supplement(const RunConfig& c) {
  if (!(c.xi > 0.0) || !(c.eta > 0.0)) throw UsageFailure{"--xi and --eta must be positive"};
  if (c.element == "ds-map") {
    if (c.supplement && *c.supplement != "mapped") throw UsageFailure{"ds-map requires the mapped supplement"};
    return SupplementChoice::mapped();
  }
  if (c.supplement) return make_choice(*c.supplement, c.xi, c.eta);
  return is_mixed(c.element) ? SupplementChoice::simple(c.xi, c.eta, c.xi, c.eta) : SupplementChoice::geometric();
}

MeshFamily resolve_family(const std::string& s) {
  try {
    return parse_family(s);
  } catch (const Error& e) {
    throw UsageFailure{e.what()};
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageFailure{"cannot open '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes to --out if given, else to out.
void emit(const RunConfig& c, const std::string& text, std::ostream& out) {
  if (c.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw UsageFailure{"cannot write '" + c.out + "'"};
  f << text;
}

bool usage_code(ErrorCode code) {
  return code == ErrorCode::InvalidArgument || code == ErrorCode::BadSubdivision ||
         code == ErrorCode::UnsupportedOrder || code == ErrorCode::ParseError;
}

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const UsageFailure& u) {
    err << "error: " << u.message << "\n";
    return UsageError;
  } catch (const Error& e) {
    err << "error: " << e.what();
    if (e.line() > 0) err << " (line " << e.line() << ")";
    err << "\n";
    return usage_code(e.code()) ? UsageError : NumericalFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return NumericalFailure;
  }
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, x);
  return buf;
}

}  // namespace

int run_convergence(const RunConfig& c, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const MeshFamily family = resolve_family(c.family);
    const bool mixed = is_mixed(c.element);
    if (!mixed && c.element != "ds" && c.element != "ds-map") {
      throw UsageFailure{"unknown element '" + c.element + "' (ds, ds-map, mixed-full, mixed-red)"};
    }
    const int r = c.r.value_or(mixed ? 1 : 2);
    if (!mixed && r < 2) throw UsageFailure{"serendipity elements need r >= 2"};
    if (mixed && r < 1) throw UsageFailure{"mixed elements need r >= 1"};
    if (c.ns.empty()) throw UsageFailure{"--n needs at least one value"};
    for (std::size_t i = 0; i < c.ns.size(); ++i) {
      if (c.ns[i] < 1) throw UsageFailure{"--n values must be positive"};
      if (i > 0 && c.ns[i] <= c.ns[i - 1]) throw UsageFailure{"--n values must be increasing"};
    }
    if (c.format != "csv" && c.format != "md") throw UsageFailure{"--format must be csv or md"};
    if (!(c.tol > 0.0)) throw UsageFailure{"--tol must be positive"};
    StudyOptions options;
    if (c.solver == "pcg") {
      options.solver = SolverKind::Pcg;
    } else if (c.solver != "cholesky") {
      throw UsageFailure{"--solver must be cholesky or pcg"};
    }
    options.rel_tol = c.tol;
    options.quad_points = c.quad_points;
    const SupplementChoice choice = resolve_supplement(c);

    std::string text;
    if (mixed) {
      const auto variant = c.element == "mixed-full" ? MixedVariant::Full : MixedVariant::Reduced;
      const auto rows = mixed_study(family, r, variant, c.ns, choice, options);
      text = c.format == "csv" ? mixed_csv(rows) : mixed_markdown(rows);
    } else {
      const auto rows = galerkin_study(family, r, c.ns, choice, options);
      text = c.format == "csv" ? galerkin_csv(rows) : galerkin_markdown(rows);
    }
    emit(c, text, out);
    return Success;
  });
}

int run_audit(const RunConfig& c, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (c.samples < 1) throw UsageFailure{"--samples must be positive"};
    std::vector<SupplementChoice> choices;
    if (c.element == "ds-map" || c.supplement) {
      choices.push_back(resolve_supplement(c));
    } else {
      choices = {SupplementChoice::simple(), SupplementChoice::geometric(), SupplementChoice::lemma(),
                 SupplementChoice::mapped()};
    }
    const bool mixed_only = is_mixed(c.element);
    if (!mixed_only && c.element != "ds" && c.element != "ds-map") {
      throw UsageFailure{"unknown element '" + c.element + "'"};
    }
    std::vector<int> ds_orders{2, 3, 4, 5}, mixed_orders{1, 2, 3};
    if (c.r) {
      if (*c.r < 1) throw UsageFailure{"--r must be positive"};
      ds_orders = *c.r >= 2 ? std::vector<int>{*c.r} : std::vector<int>{};
      mixed_orders = {*c.r};
    }

    AuditReport rep;
    std::mt19937_64 rng(c.seed);
    std::vector<Quad> quads;
    if (!c.mesh.empty()) {
      const Mesh mesh = load_mesh(read_file(c.mesh));
      for (int k = 0; k < mesh.num_cells(); ++k) quads.push_back(mesh.quad(k));
      for (int r : ds_orders) {
        for (const auto& choice : choices) rep.merge(continuity_audit(mesh, r, choice));
      }
    } else {
      for (int k = 0; k < 4; ++k) quads.push_back(k % 2 == 0 ? random_convex_quad(rng) : random_trapezoid(rng));
      quads.push_back(Quad({Point2{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
      if (!mixed_only) {
        rep.merge(unisolvence_audit(c.samples, c.seed, ds_orders));
        for (auto family : {MeshFamily::Squares, MeshFamily::Trapezoids, MeshFamily::Perturbed}) {
          const Mesh mesh = generate_mesh(family, 4);
          for (int r : ds_orders) {
            for (const auto& choice : choices) rep.merge(continuity_audit(mesh, r, choice));
          }
        }
        rep.merge(explicit_basis_audit(std::min(c.samples, 50), c.seed, ds_orders));
      }
    }
    if (!mixed_only) {
      for (std::size_t k = 0; k < quads.size(); ++k) {
        for (int r : ds_orders) {
          for (const auto& choice : choices) rep.merge(element_audit(quads[k], r, choice, c.seed + k));
          rep.merge(variant_consistency_audit(quads[k], r, c.xi, c.eta));
        }
      }
    }
    for (const auto& q : quads) {
      for (int r : mixed_orders) {
        for (const auto& choice : choices) rep.merge(derham_audit(q, r, choice));
      }
    }

    std::string text;
    int failed = 0;
    for (const auto& e : rep.entries) {
      failed += !e.passed;
      text += std::string(e.passed ? "PASS " : "FAIL ") + e.name + "  residual " + fmt("%.3e", e.residual) +
              "  tol " + fmt("%.0e", e.tolerance);
      if (!e.detail.empty()) text += "  (" + e.detail + ")";
      text += "\n";
    }
    text += "audit: " + std::to_string(rep.entries.size()) + " checks, " + std::to_string(failed) + " failed\n";
    emit(c, text, out);
    if (!c.out.empty()) out << "audit: " << rep.entries.size() << " checks, " << failed << " failed\n";
    return failed == 0 ? Success : NumericalFailure;
  });
}

int run_mesh_info(const RunConfig& c, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Mesh mesh = c.mesh.empty() ? generate_mesh(resolve_family(c.family), c.ns.empty() ? 8 : c.ns.front())
                                     : load_mesh(read_file(c.mesh));
    int boundary = 0;
    for (const auto& e : mesh.edges()) boundary += e.boundary;
    if (mesh.family()) out << "family " << to_string(*mesh.family()) << "  n " << mesh.subdivisions() << "\n";
    out << "vertices " << mesh.num_vertices() << "\n"
        << "edges " << mesh.num_edges() << " (" << boundary << " on the boundary)\n"
        << "cells " << mesh.num_cells() << "\n"
        << "h " << fmt("%.6g", mesh.h()) << "\n"
        << "quality " << fmt("%.4f", mesh_quality(mesh)) << "\n"
        << "no parallel opposite edges: " << (no_parallel_opposite_edges(mesh) ? "true" : "false") << "\n";
    if (!c.out.empty()) {
      emit(c, save_mesh(mesh), out);
      out << "wrote " << c.out << "\n";
    }
    return Success;
  });
}

}  // namespace dsfem::cli
