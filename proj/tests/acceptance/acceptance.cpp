// Acceptance criteria 1-8. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "dsfem/analysis.hpp"
#include "dsfem/audit.hpp"
#include "dsfem/error.hpp"
#include "reference_tables.hpp"

using namespace dsfem;

namespace {

constexpr double kSquaresErrorTol = 0.02;
constexpr double kSquaresRateTol = 0.05;
constexpr double kTrapezoidsErrorTol = 0.05;
constexpr double kTrapezoidsFinalRateTol = 0.1;
constexpr double kMixedErrorTol = 0.05;
constexpr double kMixedRateTol = 0.05;
constexpr double kMappedErrorTol = 0.05;
constexpr double kMappedRateTol = 0.1;
constexpr double kT3RateTol = 0.15;
constexpr double kPropertySeconds = 120.0;
constexpr double kSquaresSeconds = 300.0;
constexpr std::uint64_t kSeed = 42;

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Deviation {
  double rel = 0.0;  // worst relative error deviation
  double rate = 0.0; // worst rate deviation
  std::string where;
  std::string rate_where;

  void error(double ours, double printed, const std::string& at) {
    const double d = std::abs(ours - printed) / printed;
    if (d > rel) rel = d, where = at;
  }
  void rate_dev(double ours, double target, const std::string& at) {
    const double d = std::abs(ours - target);
    if (d > rate) rate = d, rate_where = at;
  }
};

std::string fmt(const char* f, double x) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), f, x);
  return buf;
}

std::string at(const char* what, int r, int n) {
  return std::string(what) + " r=" + std::to_string(r) + " n=" + std::to_string(n);
}

// Galerkin rows for n = 8, 12, 16, 24. The printed n = 8 rates are taken
// against n = 6, so that level is solved and dropped.
std::vector<GalerkinRow> study(MeshFamily family, int r, const SupplementChoice& choice) {
  const auto rows = galerkin_study(family, r, {6, 8, 12, 16, 24}, choice);
  return {rows.begin() + 1, rows.end()};
}

// Errors and printed rates of one pair of Galerkin reference tables.
Outcome compare_galerkin(MeshFamily family, const SupplementChoice& choice, const reference::GalerkinTable& l2,
                         const reference::GalerkinTable& h1, bool use_l2, bool use_h1, double err_tol,
                         double rate_tol, bool final_rate_only) {
  Deviation dev;
  for (int r = 2; r <= 5; ++r) {
    const auto rows = study(family, r, choice);
    for (int k = 0; k < 4; ++k) {
      const int n = reference::galerkin_ns[k];
      const bool check_rate = !final_rate_only || k == 3;
      if (use_l2) {
        dev.error(rows[k].e_l2, l2[r - 2][k].error, at("L2", r, n));
        if (check_rate) {
          const double target = final_rate_only ? r + 1 : l2[r - 2][k].rate;
          dev.rate_dev(*rows[k].rate_l2, target, at("L2 rate", r, n));
        }
      }
      if (use_h1) {
        dev.error(rows[k].e_h1, h1[r - 2][k].error, at("H1", r, n));
        if (check_rate) {
          const double target = final_rate_only ? r : h1[r - 2][k].rate;
          dev.rate_dev(*rows[k].rate_h1, target, at("H1 rate", r, n));
        }
      }
    }
  }
  Outcome o;
  o.pass = dev.rel <= err_tol && dev.rate <= rate_tol;
  o.detail = "worst error deviation " + fmt("%.2f%%", 100 * dev.rel) + " (" + dev.where + ", tol " +
             fmt("%.0f%%", 100 * err_tol) + "), worst rate deviation " + fmt("%.3f", dev.rate) + " (" +
             dev.rate_where + ", tol " + fmt("%.2f", rate_tol) + ")";
  return o;
}

Outcome criterion_mixed() {
  struct Case {
    int r;
    MixedVariant variant;
    const reference::MixedTable* table;
  };
  const Case cases[] = {{1, MixedVariant::Reduced, &reference::mixed_r1_reduced},
                        {2, MixedVariant::Reduced, &reference::mixed_r2_reduced},
                        {1, MixedVariant::Full, &reference::mixed_r1_full},
                        {2, MixedVariant::Full, &reference::mixed_r2_full}};
  Deviation dev;
  const std::vector<int> ns(reference::mixed_ns.begin(), reference::mixed_ns.end());
  for (const auto& c : cases) {
    const auto rows = mixed_study(MeshFamily::Trapezoids, c.r, c.variant, ns, SupplementChoice::simple());
    const std::string tag = std::string(to_string(c.variant)) + " ";
    for (int k = 0; k < 4; ++k) {
      const auto& t = (*c.table)[k];
      dev.error(rows[k].e_p, t.p.error, at((tag + "p").c_str(), c.r, ns[k]));
      dev.error(rows[k].e_u, t.u.error, at((tag + "u").c_str(), c.r, ns[k]));
      dev.error(rows[k].e_div, t.div.error, at((tag + "div").c_str(), c.r, ns[k]));
    }
    const auto& last = rows.back();
    const auto& t = (*c.table)[3];
    dev.rate_dev(*last.rate_p, t.p.rate, at((tag + "p rate").c_str(), c.r, 32));
    dev.rate_dev(*last.rate_u, t.u.rate, at((tag + "u rate").c_str(), c.r, 32));
    dev.rate_dev(*last.rate_div, t.div.rate, at((tag + "div rate").c_str(), c.r, 32));
  }
  Outcome o;
  o.pass = dev.rel <= kMixedErrorTol && dev.rate <= kMixedRateTol;
  o.detail = "worst error deviation " + fmt("%.2f%%", 100 * dev.rel) + " (" + dev.where + ", tol 5%), worst final rate deviation " +
             fmt("%.3f", dev.rate) + " (" + dev.rate_where + ", tol 0.05)";
  return o;
}

Outcome criterion_t3() {
  double worst = 0.0;
  std::string where, rates;
  for (int r = 2; r <= 5; ++r) {
    const auto rows = galerkin_study(MeshFamily::Perturbed, r, {16, 24}, SupplementChoice::geometric());
    const double rate = *rows.back().rate_l2;
    rates += (r > 2 ? ", " : "") + fmt("%.2f", rate);
    if (std::abs(rate - (r + 1)) > worst) worst = std::abs(rate - (r + 1)), where = "r=" + std::to_string(r);
  }
  Outcome o;
  o.pass = worst <= kT3RateTol;
  o.detail = "L2 rates at n=24 for r=2..5: " + rates + "; worst |rate - (r+1)| " + fmt("%.3f", worst) + " (" +
             where + ", tol 0.15)";
  return o;
}

Outcome criterion_properties() {
  AuditReport rep;
  rep.merge(unisolvence_audit(200, kSeed, {2, 3, 4, 5}));
  std::mt19937_64 rng(kSeed);
  const std::vector<SupplementChoice> choices{SupplementChoice::simple(1.3, 0.8, 0.9, 1.2),
                                              SupplementChoice::geometric(), SupplementChoice::lemma(),
                                              SupplementChoice::mapped()};
  for (int s = 0; s < 20; ++s) {
    const Quad quad = s % 2 == 0 ? random_convex_quad(rng) : random_trapezoid(rng);
    for (int r = 2; r <= 5; ++r) {
      for (const auto& c : choices) rep.merge(element_audit(quad, r, c, kSeed + s));
    }
    for (int r = 1; r <= 3; ++r) {
      for (const auto& c : choices) rep.merge(derham_audit(quad, r, c));
    }
  }
  for (auto family : {MeshFamily::Squares, MeshFamily::Trapezoids, MeshFamily::Perturbed}) {
    const Mesh mesh = generate_mesh(family, 4);
    for (int r = 2; r <= 5; ++r) {
      for (const auto& c : choices) rep.merge(continuity_audit(mesh, r, c));
    }
  }
  Outcome o;
  o.pass = rep.passed();
  int failed = 0;
  std::string first;
  for (const auto& e : rep.entries) {
    if (!e.passed && failed++ == 0) first = e.name + " residual " + fmt("%.2e", e.residual);
  }
  o.detail = std::to_string(rep.entries.size()) + " checks, " + std::to_string(failed) + " failed" +
             (first.empty() ? "" : " (first: " + first + ")") + "; worst unisolvence " +
             fmt("%.1e", rep.worst("unisolvence")) + ", reproduction " + fmt("%.1e", rep.worst("polynomial")) +
             ", continuity " + fmt("%.1e", rep.worst("inter-element")) + ", commuting " +
             fmt("%.1e", rep.worst("commuting")) + ", curl inclusion " + fmt("%.1e", rep.worst("curl DS")) +
             ", gradient " + fmt("%.1e", rep.worst("gradient"));
  return o;
}

Outcome criterion_explicit() {
  const AuditReport rep = explicit_basis_audit(50, kSeed, {2, 3, 4, 5});
  Outcome o;
  o.pass = rep.passed();
  o.detail = "50 random quads, r=2..5: max |explicit - matrix| " + fmt("%.2e", rep.worst("explicit")) + " (tol 1e-9)";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
    double time_limit;
  };
  const Criterion criteria[] = {
      {1, "squares, DS_r, L2 errors",
       [] {
         return compare_galerkin(MeshFamily::Squares, SupplementChoice::geometric(), reference::t1_l2, reference::t1_h1, true,
                                 false, kSquaresErrorTol, kSquaresRateTol, false);
       },
       kSquaresSeconds},
      {2, "squares, DS_r, H1 seminorm errors",
       [] {
         return compare_galerkin(MeshFamily::Squares, SupplementChoice::geometric(), reference::t1_l2, reference::t1_h1, false,
                                 true, kSquaresErrorTol, kSquaresRateTol, false);
       },
       0.0},
      {3, "trapezoids, DS_r, L2 and H1 errors",
       [] {
         return compare_galerkin(MeshFamily::Trapezoids, SupplementChoice::geometric(), reference::t2_l2, reference::t2_h1,
                                 true, true, kTrapezoidsErrorTol, kTrapezoidsFinalRateTol, true);
       },
       0.0},
      {4, "trapezoids, direct mixed V_r", criterion_mixed, 0.0},
      {5, "trapezoids, mapped DS_r",
       [] {
         return compare_galerkin(MeshFamily::Trapezoids, SupplementChoice::mapped(), reference::map_l2, reference::map_h1, true,
                                 true, kMappedErrorTol, kMappedRateTol, false);
       },
       0.0},
      {6, "T3 rates", criterion_t3, 0.0},
      {7, "Property suite", criterion_properties, kPropertySeconds},
      {8, "Explicit basis equivalence", criterion_explicit, 0.0},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.time_limit > 0.0 && secs > c.time_limit) {
      o.pass = false;
      o.detail += "; exceeded " + fmt("%.0f s", c.time_limit);
    }
    failures += !o.pass;
    std::printf("%s %d %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
