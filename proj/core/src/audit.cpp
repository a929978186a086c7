#include "dsfem/audit.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "dsfem/analysis.hpp"
#include "dsfem/error.hpp"
#include "dsfem/galerkin.hpp"
#include "dsfem/quadrature.hpp"

namespace dsfem {

bool AuditReport::passed() const {
  return std::all_of(entries.begin(), entries.end(), [](const AuditEntry& e) { return e.passed; });
}

void AuditReport::check(std::string name, double residual, double tolerance, std::string detail) {
  const bool ok = std::isfinite(residual) && residual <= tolerance;
  entries.push_back({std::move(name), ok, residual, tolerance, std::move(detail)});
}

void AuditReport::fail(std::string name, std::string detail) {
  entries.push_back({std::move(name), false, INFINITY, 0.0, std::move(detail)});
}

void AuditReport::merge(const AuditReport& other) {
  entries.insert(entries.end(), other.entries.begin(), other.entries.end());
}

double AuditReport::worst(const std::string& prefix) const {
  double w = 0.0;
  for (const auto& e : entries) {
    if (e.name.starts_with(prefix)) w = std::max(w, e.residual);
  }
  return w;
}

namespace {

Point2 random_reference(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-0.95, 0.95);
  return {u(rng), u(rng)};
}

/// Max residual of the least-squares fit of values(t) by polynomials of degree <= deg.
double poly_fit_residual(const std::vector<double>& t, const std::vector<double>& values, int deg) {
  const int n = static_cast<int>(t.size());
  Eigen::MatrixXd v(n, deg + 1);
  Eigen::VectorXd f(n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k <= deg; ++k) v(i, k) = legendre(k, t[i]);
    f(i) = values[i];
  }
  const Eigen::VectorXd c = v.colPivHouseholderQr().solve(f);
  return (v * c - f).lpNorm<Eigen::Infinity>();
}

std::string label(std::string_view what, const SupplementChoice& choice, int r) {
  return std::string(what) + " [" + std::string(to_string(choice.kind)) + ", r=" + std::to_string(r) + "]";
}

std::string label(std::string_view what, const SupplementChoice& choice, int r, MixedVariant v) {
  return std::string(what) + " [" + std::string(to_string(choice.kind)) + ", " + std::string(to_string(v)) +
         ", r=" + std::to_string(r) + "]";
}

}  // namespace

AuditReport unisolvence_audit(int samples, std::uint64_t seed, const std::vector<int>& orders) {
  std::mt19937_64 rng(seed);
  std::vector<Quad> quads;
  for (int s = 0; s < samples; ++s) quads.push_back(random_convex_quad(rng));
  const std::array<SupplementChoice, 4> choices{SupplementChoice::simple(), SupplementChoice::geometric(),
                                                SupplementChoice::lemma(), SupplementChoice::mapped()};
  AuditReport rep;
  std::vector<ValueGrad> phi;
  for (const auto& choice : choices) {
    for (int r : orders) {
      double worst = 0.0;
      std::string failure;
      for (std::size_t s = 0; s < quads.size() && failure.empty(); ++s) {
        try {
          const DSElement el(quads[s], r, choice);
          if (static_cast<int>(el.nodes().size()) != ds_dimension(r)) {
            failure = "wrong dimension on sample " + std::to_string(s);
            break;
          }
          for (int j = 0; j < el.dimension(); ++j) {
            el.eval_basis(el.nodes()[j].at, phi);
            if (static_cast<int>(phi.size()) != ds_dimension(r)) failure = "wrong basis size";
            for (int i = 0; i < el.dimension(); ++i) {
              worst = std::max(worst, std::abs(phi[i].v - (i == j ? 1.0 : 0.0)));
            }
          }
        } catch (const Error& e) {
          failure = "sample " + std::to_string(s) + ": " + e.what();
        }
      }
      const std::string name = label("unisolvence", choice, r);
      if (failure.empty()) {
        rep.check(name, worst, 1e-9, std::to_string(samples) + " quads, max |phi_i(x_j) - delta_ij|");
      } else {
        rep.fail(name, failure);
      }
    }
  }
  return rep;
}

AuditReport element_audit(const Quad& quad, int r, const SupplementChoice& choice, std::uint64_t seed) {
  AuditReport rep;
  std::mt19937_64 rng(seed);
  const DSElement el(quad, r, choice);
  const int dim = el.dimension();
  std::vector<ValueGrad> phi;

  // Polynomial reproduction.
  const MonomialBasis mono(quad.centroid(), quad.scale(), r);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::vector<double> a(mono.size());
  for (double& x : a) x = coef(rng);
  auto poly = [&](const Point2& x) {
    double s = 0.0;
    for (int k = 0; k < mono.size(); ++k) s += a[k] * mono.eval(k, x).v;
    return s;
  };
  const std::vector<double> nodal = el.interpolate(poly);
  double err = 0.0, fmax = 0.0;
  for (int s = 0; s < 100; ++s) {
    const SamplePoint p = quad.sample(random_reference(rng));
    el.eval_basis(p, phi);
    double ip = 0.0;
    for (int i = 0; i < dim; ++i) ip += nodal[i] * phi[i].v;
    const double f = poly(p.x);
    err = std::max(err, std::abs(ip - f));
    fmax = std::max(fmax, std::abs(f));
  }
  rep.check(label("polynomial reproduction", choice, r), err / fmax, 1e-9, "sup |I_E f - f| / sup |f|");

  // Edge traces.
  double trace = 0.0;
  for (int i = 0; i < 4; ++i) {
    const auto pts = edge_quadrature(quad, i, r + 3);
    std::vector<double> t;
    std::vector<std::vector<double>> vals(dim);
    for (const auto& q : pts) {
      t.push_back(q.t);
      el.eval_basis(q, phi);
      for (int j = 0; j < dim; ++j) vals[j].push_back(phi[j].v);
    }
    for (int j = 0; j < dim; ++j) trace = std::max(trace, poly_fit_residual(t, vals[j], r));
  }
  rep.check(label("edge trace degree", choice, r), trace, 1e-9, "P_r fit residual at r+3 Gauss points");

  // Gradients against central differences.
  const double step = 1e-6 * quad.h();
  double grad = 0.0;
  std::vector<ValueGrad> plus_x, minus_x, plus_y, minus_y;
  for (int s = 0; s < 30; ++s) {
    const SamplePoint p = quad.sample(random_reference(rng));
    el.eval_basis(p, phi);
    plus_x = el.eval_basis(p.x + Vec2{step, 0.0});
    minus_x = el.eval_basis(p.x - Vec2{step, 0.0});
    plus_y = el.eval_basis(p.x + Vec2{0.0, step});
    minus_y = el.eval_basis(p.x - Vec2{0.0, step});
    for (int j = 0; j < dim; ++j) {
      const Vec2 fd{(plus_x[j].v - minus_x[j].v) / (2 * step), (plus_y[j].v - minus_y[j].v) / (2 * step)};
      grad = std::max(grad, norm(fd - phi[j].g) / std::max(norm(phi[j].g), 1.0 / quad.h()));
    }
  }
  rep.check(label("gradient vs finite differences", choice, r), grad, 1e-5, "relative, step 1e-6 h");
  return rep;
}

AuditReport continuity_audit(const Mesh& mesh, int r, const SupplementChoice& choice) {
  AuditReport rep;
  const DSSpace sp = build_ds_space(mesh, r, choice);
  std::vector<ValueGrad> phi;
  std::vector<double> side0(sp.num_dofs), side1(sp.num_dofs);
  double worst = 0.0;
  for (const MeshEdge& e : mesh.edges()) {
    if (e.boundary) continue;
    for (int s = 0; s < 20; ++s) {
      const double t = -1.0 + 2.0 * (s + 0.5) / 20.0;
      for (int side = 0; side < 2; ++side) {
        const int c = e.cells[side], i = e.local[side];
        auto& out = side == 0 ? side0 : side1;
        const double tl = mesh.edge_aligned(c, i) ? t : -t;
        sp.elements[c].eval_basis(mesh.quad(c).sample(reference_edge_point(i, tl)), phi);
        for (int g : sp.cell_dofs[e.cells[0]]) out[g] = 0.0;
        for (int g : sp.cell_dofs[e.cells[1]]) out[g] = 0.0;
        for (std::size_t l = 0; l < phi.size(); ++l) out[sp.cell_dofs[c][l]] = phi[l].v;
      }
      for (int g : sp.cell_dofs[e.cells[0]]) worst = std::max(worst, std::abs(side0[g] - side1[g]));
      for (int g : sp.cell_dofs[e.cells[1]]) worst = std::max(worst, std::abs(side0[g] - side1[g]));
    }
  }
  rep.check(label("inter-element continuity", choice, r), worst, 1e-9, "max jump of global basis functions");
  return rep;
}

AuditReport derham_audit(const Quad& quad, int r, const SupplementChoice& choice, MixedElement::Options options) {
  AuditReport rep;
  const DSElement ds(quad, r + 1, choice);
  const int nds = ds.dimension();
  const auto pts = cell_quadrature(quad, r + 4);
  const int npts = static_cast<int>(pts.size());
  std::vector<ValueGrad> phi;
  std::vector<VecDiv> psi;

  Eigen::MatrixXd curls(2 * npts, nds);
  for (int q = 0; q < npts; ++q) {
    ds.eval_basis(pts[q], phi);
    for (int i = 0; i < nds; ++i) {
      const Vec2 c = curl_of_gradient(phi[i].g);
      curls(2 * q, i) = c.x;
      curls(2 * q + 1, i) = c.y;
    }
  }

  // Tangential derivative of phi equals the normal component of its curl.
  double tn = 0.0;
  for (int i = 0; i < 4; ++i) {
    const Edge& edge = quad.edge(i);
    for (const auto& q : edge_quadrature(quad, i, 20)) {
      ds.eval_basis(q, phi);
      for (const auto& f : phi) {
        const double scale = std::max(norm(f.g), 1.0 / quad.h());
        tn = std::max(tn, std::abs(dot(f.g, edge.tangent) - dot(curl_of_gradient(f.g), edge.normal)) / scale);
      }
    }
  }
  rep.check(label("tangential-normal identity", choice, r + 1), tn, 1e-9, "DS_{r+1} basis, 20 points per edge");

  for (MixedVariant variant : {MixedVariant::Reduced, MixedVariant::Full}) {
    const MixedElement el(quad, r, variant, choice, options);
    const int dim = el.dimension();
    const MonomialBasis& w = el.scalar_basis();

    // curl DS_{r+1} inside V_r.
    Eigen::MatrixXd basis(2 * npts, dim);
    for (int q = 0; q < npts; ++q) {
      el.eval_basis(pts[q], psi);
      for (int j = 0; j < dim; ++j) {
        basis(2 * q, j) = psi[j].v.x;
        basis(2 * q + 1, j) = psi[j].v.y;
      }
    }
    const auto qr = basis.colPivHouseholderQr();
    const Eigen::MatrixXd fit = qr.solve(curls);
    double incl = 0.0, bubble = 0.0;
    for (int i = 0; i < nds; ++i) {
      const double fmax = std::max(curls.col(i).lpNorm<Eigen::Infinity>(), 1e-300);
      incl = std::max(incl, (basis * fit.col(i) - curls.col(i)).lpNorm<Eigen::Infinity>() / fmax);
      if (ds.nodes()[i].kind == NodeKind::Cell) {
        const double cmax = fit.col(i).lpNorm<Eigen::Infinity>();
        bubble = std::max(bubble, fit.col(i).head(el.num_edge_dofs()).lpNorm<Eigen::Infinity>() / cmax);
      }
    }
    rep.check(label("curl DS_{r+1} in V_r", choice, r, variant), incl, 1e-9, "least-squares residual, relative");
    if (r + 1 >= 4) {
      rep.check(label("bubble consistency", choice, r, variant), bubble, 1e-9,
                "edge coefficients of curls of DS_{r+1} cell functions");
    }

    // Normal traces of degree r and supplement zero traces.
    std::vector<double> fn_max(dim, 0.0);
    for (int q = 0; q < npts; ++q) {
      for (int j = 0; j < dim; ++j) {
        fn_max[j] = std::max(fn_max[j], std::max(std::abs(basis(2 * q, j)), std::abs(basis(2 * q + 1, j))));
      }
    }
    double trace = 0.0, zero = 0.0, smax = 0.0;
    for (int i = 0; i < 4; ++i) {
      const Vec2 nu = quad.edge(i).normal;
      std::vector<double> t;
      std::vector<std::vector<double>> vals(dim);
      for (const auto& q : edge_quadrature(quad, i, r + 3)) {
        t.push_back(q.t);
        el.eval_basis(q, psi);
        for (int j = 0; j < dim; ++j) {
          vals[j].push_back(dot(psi[j].v, nu));
          fn_max[j] = std::max(fn_max[j], norm(psi[j].v));
        }
        const auto sup = el.supplements(q);
        smax = std::max({smax, norm(sup[0].v), norm(sup[1].v)});
        zero = std::max(zero, std::abs(dot(sup[i < 2 ? 1 : 0].v, nu)));
      }
      for (int j = 0; j < dim; ++j) trace = std::max(trace, poly_fit_residual(t, vals[j], r) / fn_max[j]);
    }
    rep.check(label("normal trace degree", choice, r, variant), trace, 1e-9, "P_r fit residual at r+3 points");
    rep.check(label("supplement zero traces", choice, r, variant), zero / smax, 1e-9,
              "sigma_1.nu on e_3, e_4 and sigma_2.nu on e_1, e_2");

    // div V_r = P_s.
    const int ns = w.size();
    Eigen::MatrixXd wv(npts, ns), divs(npts, dim);
    for (int q = 0; q < npts; ++q) {
      el.eval_basis(pts[q], psi);
      for (int a = 0; a < ns; ++a) wv(q, a) = w.eval(a, pts[q].x).v;
      for (int j = 0; j < dim; ++j) divs(q, j) = psi[j].div;
    }
    const Eigen::MatrixXd dfit = wv.colPivHouseholderQr().solve(divs);
    double dres = 0.0;
    for (int j = 0; j < dim; ++j) {
      const double m = std::max(divs.col(j).lpNorm<Eigen::Infinity>(), 1.0 / quad.h());
      dres = std::max(dres, (wv * dfit.col(j) - divs.col(j)).lpNorm<Eigen::Infinity>() / m);
    }
    rep.check(label("div V_r in P_s", choice, r, variant), dres, 1e-9, "fit residual, relative");
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(dfit);
    const auto sv = svd.singularValues();
    int rank = 0;
    for (int k = 0; k < sv.size(); ++k) rank += sv(k) > 1e-10 * sv(0);
    rep.check(label("div onto P_s", choice, r, variant), std::abs(rank - ns), 0.0,
              "rank " + std::to_string(rank) + " of dim P_s = " + std::to_string(ns));

    // Green's identity with the reported divergences.
    const int kg = 20;
    Eigen::MatrixXd green = Eigen::MatrixXd::Zero(dim, ns), mag = Eigen::MatrixXd::Zero(dim, ns);
    for (const auto& q : cell_quadrature(quad, kg)) {
      el.eval_basis(q, psi);
      for (int a = 0; a < ns; ++a) {
        const ValueGrad wa = w.eval(a, q.x);
        for (int j = 0; j < dim; ++j) {
          const double t1 = q.weight * psi[j].div * wa.v, t2 = q.weight * dot(psi[j].v, wa.g);
          green(j, a) += t1 + t2;
          mag(j, a) += std::abs(t1) + std::abs(t2);
        }
      }
    }
    for (int i = 0; i < 4; ++i) {
      const Vec2 nu = quad.edge(i).normal;
      for (const auto& q : edge_quadrature(quad, i, kg)) {
        el.eval_basis(q, psi);
        for (int a = 0; a < ns; ++a) {
          const double wa = w.eval(a, q.x).v;
          for (int j = 0; j < dim; ++j) {
            const double t3 = q.weight * dot(psi[j].v, nu) * wa;
            green(j, a) -= t3;
            mag(j, a) += std::abs(t3);
          }
        }
      }
    }
    const double gres = green.lpNorm<Eigen::Infinity>() / std::max(mag.lpNorm<Eigen::Infinity>(), 1e-300);
    rep.check(label("Green identity", choice, r, variant), gres, 1e-9, "div against P_s, 20-point quadrature");

    // Commuting projection.
    const std::array<std::function<Vec2(const Point2&)>, 2> fields{
        [](const Point2& x) { return Vec2{std::sin(x.y), std::cos(x.x)}; },
        [](const Point2& x) { return Vec2{std::exp(0.3 * x.x) * x.y, x.x * x.x * std::sin(x.y)}; }};
    const std::array<std::function<double(const Point2&)>, 2> field_divs{
        [](const Point2&) { return 0.0; },
        [](const Point2& x) { return 0.3 * std::exp(0.3 * x.x) * x.y + x.x * x.x * std::cos(x.y); }};
    double comm = 0.0;
    const auto fine = cell_quadrature(quad, kg);
    for (int f = 0; f < 2; ++f) {
      const Eigen::VectorXd c = el.dofs_of([&](const SamplePoint& p) { return fields[f](p.x); }, 16, kg);
      Eigen::MatrixXd mass = Eigen::MatrixXd::Zero(ns, ns);
      Eigen::VectorXd rhs = Eigen::VectorXd::Zero(ns);
      for (const auto& q : fine) {
        for (int a = 0; a < ns; ++a) {
          const double wa = w.eval(a, q.x).v;
          rhs(a) += q.weight * wa * field_divs[f](q.x);
          for (int b = 0; b < ns; ++b) mass(a, b) += q.weight * wa * w.eval(b, q.x).v;
        }
      }
      const Eigen::VectorXd proj = mass.ldlt().solve(rhs);
      double diff = 0.0, ref = 0.0;
      for (const auto& q : fine) {
        el.eval_basis(q, psi);
        double dpi = 0.0, pw = 0.0;
        for (int j = 0; j < dim; ++j) dpi += c(j) * psi[j].div;
        for (int a = 0; a < ns; ++a) pw += proj(a) * w.eval(a, q.x).v;
        diff += q.weight * (pw - dpi) * (pw - dpi);
        ref += q.weight * pw * pw;
      }
      comm = std::max(comm, std::sqrt(diff) / std::max(std::sqrt(ref), std::sqrt(quad.area())));
    }
    rep.check(label("commuting projection", choice, r, variant), comm, 1e-9,
              "||P_W div v - div pi v|| / max(||P_W div v||, |E|^(1/2))");
  }
  return rep;
}

AuditReport explicit_basis_audit(int samples, std::uint64_t seed, const std::vector<int>& orders) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> xi(0.5, 2.0);
  AuditReport rep;
  for (int r : orders) {
    double worst = 0.0;
    std::string failure;
    std::vector<ValueGrad> phi;
    for (int s = 0; s < samples && failure.empty(); ++s) {
      const Quad quad = s % 2 == 0 ? random_convex_quad(rng) : random_trapezoid(rng);
      const auto choice = SupplementChoice::lemma(xi(rng), xi(rng), xi(rng), xi(rng));
      try {
        const DSElement el(quad, r, choice);
        for (int k = 0; k < 20; ++k) {
          const SamplePoint p = quad.sample(random_reference(rng));
          el.eval_basis(p, phi);
          const std::vector<double> ex = explicit_basis(el, p.x);
          for (std::size_t i = 0; i < phi.size(); ++i) worst = std::max(worst, std::abs(ex[i] - phi[i].v));
        }
      } catch (const Error& e) {
        failure = "sample " + std::to_string(s) + ": " + e.what();
      }
    }
    const std::string name = label("explicit basis", SupplementChoice::lemma(), r);
    if (failure.empty()) {
      rep.check(name, worst, 1e-9, std::to_string(samples) + " quads x 20 points");
    } else {
      rep.fail(name, failure);
    }
  }
  return rep;
}

AuditReport variant_consistency_audit(const Quad& quad, int r, double xi, double eta) {
  AuditReport rep;
  const DSElement lemma(quad, r, SupplementChoice::lemma(xi, eta, xi, eta));
  const DSElement simple(quad, r, SupplementChoice::simple(xi, eta, xi, eta));
  const int dim = lemma.dimension();
  std::vector<ValueGrad> a, b;

  // Cross-interpolate every Lemma basis function into the Simple element.
  auto cross_residual = [&](const std::vector<SamplePoint>& pts) {
    double worst = 0.0;
    for (const auto& p : pts) {
      lemma.eval_basis(p, a);
      simple.eval_basis(p, b);
      for (int i = 0; i < dim; ++i) {
        // Interpolant of lemma phi_i in the Simple element is simple phi_i.
        worst = std::max(worst, std::abs(a[i].v - b[i].v));
      }
    }
    return worst;
  };
  std::vector<SamplePoint> boundary, interior;
  for (int i = 0; i < 4; ++i) {
    for (const auto& q : edge_quadrature(quad, i, 20)) boundary.push_back(q);
  }
  for (const auto& q : cell_quadrature(quad, 8)) interior.push_back(q);
  const std::string tag = " [r=" + std::to_string(r) + "]";
  rep.check("lemma/simple edge traces" + tag, cross_residual(boundary), 1e-8, "cross-interpolation on edges");
  const bool parallelogram = quad.parallel(0, 1) && quad.parallel(2, 3);
  if (parallelogram && xi == 1.0 && eta == 1.0) {
    rep.check("lemma/simple interior" + tag, cross_residual(interior), 1e-8, "parallelogram, xi = eta = 1");
  }
  return rep;
}

}  // namespace dsfem
