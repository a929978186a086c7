#include "dsfem/analysis.hpp"

#include <cmath>
#include <numbers>

#include "dsfem/error.hpp"
#include "dsfem/quadrature.hpp"

namespace dsfem {

ExactSolution sine_solution() {
  constexpr double pi = std::numbers::pi;
  return {
      [](const Point2& x) { return std::sin(pi * x.x) * std::sin(pi * x.y); },
      [](const Point2& x) {
        return Vec2{pi * std::cos(pi * x.x) * std::sin(pi * x.y), pi * std::sin(pi * x.x) * std::cos(pi * x.y)};
      },
      [](const Point2& x) { return 2.0 * pi * pi * std::sin(pi * x.x) * std::sin(pi * x.y); },
  };
}

ScalarErrors galerkin_errors(const DSSpace& space, const std::vector<double>& nodal, const ScalarField& p,
                             const VectorField& grad_p, int k) {
  if (k <= 0) k = space.r + 5;
  double l2 = 0.0, h1 = 0.0;
  std::vector<ValueGrad> phi;
  for (std::size_t c = 0; c < space.elements.size(); ++c) {
    const DSElement& el = space.elements[c];
    const auto& dofs = space.cell_dofs[c];
    for (const auto& q : cell_quadrature(el.quad(), k)) {
      el.eval_basis(q, phi);
      ValueGrad ph{};
      for (std::size_t i = 0; i < dofs.size(); ++i) ph = ph + nodal[dofs[i]] * phi[i];
      const double dv = p(q.x) - ph.v;
      const Vec2 dg = grad_p(q.x) - ph.g;
      l2 += q.weight * dv * dv;
      h1 += q.weight * dot(dg, dg);
    }
  }
  return {std::sqrt(l2), std::sqrt(h1)};
}

MixedErrors mixed_errors(const HybridSystem& system, const MixedSolution& solution, const ExactSolution& exact,
                         int k) {
  if (k <= 0) k = system.r + 5;
  double ep = 0.0, eu = 0.0, ed = 0.0;
  std::vector<VecDiv> psi;
  for (std::size_t c = 0; c < system.elements.size(); ++c) {
    const MixedElement& el = system.elements[c];
    const MonomialBasis& w = el.scalar_basis();
    const Eigen::VectorXd& uc = solution.u[c];
    const Eigen::VectorXd& pc = solution.p[c];
    for (const auto& q : cell_quadrature(el.quad(), k)) {
      el.eval_basis(q, psi);
      Vec2 uh;
      double divh = 0.0, ph = 0.0;
      for (int j = 0; j < el.dimension(); ++j) {
        uh += uc(j) * psi[j].v;
        divh += uc(j) * psi[j].div;
      }
      for (int a = 0; a < w.size(); ++a) ph += pc(a) * w.eval(a, q.x).v;
      const double dp = exact.p(q.x) - ph;
      const Vec2 du = -exact.grad_p(q.x) - uh;
      const double dd = exact.f(q.x) - divh;
      ep += q.weight * dp * dp;
      eu += q.weight * dot(du, du);
      ed += q.weight * dd * dd;
    }
  }
  return {std::sqrt(ep), std::sqrt(eu), std::sqrt(ed)};
}

std::vector<std::optional<double>> convergence_rates(const std::vector<double>& errors, const std::vector<int>& ns) {
  if (errors.size() != ns.size()) throw Error(ErrorCode::InvalidArgument, "errors and n lists differ in length");
  std::vector<std::optional<double>> out(errors.size());
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!(errors[i] > 0.0)) {
      throw Error(ErrorCode::NonPositiveError, "error entry " + std::to_string(i) + " is not positive");
    }
    if (i == 0) continue;
    if (ns[i] <= ns[i - 1]) throw Error(ErrorCode::InvalidArgument, "n list must be increasing");
    out[i] = std::log(errors[i - 1] / errors[i]) / std::log(static_cast<double>(ns[i]) / ns[i - 1]);
  }
  return out;
}

long long dof_count(int r, int n, DofKind kind) {
  const long long rr = r, nn = n;
  if (kind == DofKind::Tensor) return (nn * rr + 1) * (nn * rr + 1);
  return (rr * rr - rr + 4) * nn * nn / 2 + 2 * rr * nn + 1;
}

namespace {

Quad place(std::array<Point2, 4> v, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi), scale(0.2, 3.0), shift(-5.0, 5.0);
  const double th = angle(rng), s = scale(rng);
  const Vec2 t{shift(rng), shift(rng)};
  const double c = std::cos(th), sn = std::sin(th);
  for (auto& p : v) p = Point2{s * (c * p.x - sn * p.y), s * (sn * p.x + c * p.y)} + t;
  // Random choice of the starting vertex; counter-clockwise order is kept.
  std::uniform_int_distribution<int> start(0, 3);
  const int k = start(rng);
  std::array<Point2, 4> out;
  for (int i = 0; i < 4; ++i) out[i] = v[(i + k) % 4];
  return Quad(out);
}

}  // namespace

Quad random_convex_quad(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> jitter(-0.35, 0.35), radius(0.5, 1.5);
  for (;;) {
    std::array<Point2, 4> v;
    for (int i = 0; i < 4; ++i) {
      const double a = (i + 0.5 + jitter(rng)) * std::numbers::pi / 2.0 + std::numbers::pi;
      const double rad = radius(rng);
      v[i] = {rad * std::cos(a), rad * std::sin(a)};
    }
    try {
      Quad q(v);
      if (q.rho() / q.h() >= 0.1) return place(v, rng);
    } catch (const Error&) {
    }
  }
}

Quad random_trapezoid(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> width(0.5, 2.0), height(0.4, 1.6), offset(-0.5, 0.5);
  for (;;) {
    const double w = width(rng);
    const double y0 = offset(rng), y1 = offset(rng);
    const double hl = height(rng), hr = height(rng);
    const std::array<Point2, 4> v{Point2{0.0, 0.0}, Point2{w, y0}, Point2{w, y1 + hr}, Point2{0.0, hl}};
    try {
      Quad q(v);
      if (q.rho() / q.h() >= 0.1) return place(v, rng);
    } catch (const Error&) {
    }
  }
}

namespace {

SolveReport checked_solve(const CsrMatrix& a, const std::vector<double>& b, const StudyOptions& o) {
  SolveReport rep = solve_spd(a, b, o.solver, o.rel_tol);
  if (!rep.converged) {
    throw Error(ErrorCode::NoConvergence, "linear solve stopped at relative residual " +
                                              std::to_string(rep.relative_residual) + " after " +
                                              std::to_string(rep.iterations) + " iterations");
  }
  return rep;
}

}  // namespace

std::vector<GalerkinRow> galerkin_study(MeshFamily family, int r, const std::vector<int>& ns,
                                        const SupplementChoice& choice, const StudyOptions& options) {
  const ExactSolution ex = sine_solution();
  std::vector<GalerkinRow> rows;
  std::vector<double> l2, h1;
  for (int n : ns) {
    const Mesh mesh = generate_mesh(family, n);
    const GalerkinSystem sys = assemble_galerkin(mesh, r, choice, {ex.f, {}, {}}, options.quad_points);
    const SolveReport rep = checked_solve(sys.matrix, sys.rhs, options);
    const ScalarErrors err =
        galerkin_errors(sys.space, expand_solution(sys, rep.x), ex.p, ex.grad_p, options.quad_points);
    GalerkinRow row;
    row.family = std::string(to_string(family));
    row.element = choice.kind == SupplementKind::Mapped ? "ds-map" : "ds";
    row.variant = std::string(to_string(choice.kind));
    row.r = r;
    row.n = n;
    row.dofs = sys.space.num_dofs;
    row.e_l2 = err.l2;
    row.e_h1 = err.h1;
    row.iterations = rep.iterations;
    row.residual = rep.relative_residual;
    rows.push_back(row);
    l2.push_back(err.l2);
    h1.push_back(err.h1);
  }
  const auto rl2 = convergence_rates(l2, ns), rh1 = convergence_rates(h1, ns);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i].rate_l2 = rl2[i];
    rows[i].rate_h1 = rh1[i];
  }
  return rows;
}

std::vector<MixedRow> mixed_study(MeshFamily family, int r, MixedVariant variant, const std::vector<int>& ns,
                                  const SupplementChoice& choice, const StudyOptions& options) {
  const ExactSolution ex = sine_solution();
  std::vector<MixedRow> rows;
  std::vector<double> ep, eu, ed;
  for (int n : ns) {
    const Mesh mesh = generate_mesh(family, n);
    const HybridSystem sys = assemble_hybrid_mixed(mesh, r, variant, choice, {ex.f, {}, {}}, options.quad_points);
    const SolveReport rep = checked_solve(sys.schur, sys.rhs, options);
    const MixedErrors err = mixed_errors(sys, recover_fields(sys, rep.x), ex, options.quad_points);
    MixedRow row;
    row.family = std::string(to_string(family));
    row.variant = std::string(to_string(variant));
    row.r = r;
    row.n = n;
    row.dofs = sys.num_multipliers;
    row.e_p = err.p;
    row.e_u = err.u;
    row.e_div = err.div;
    row.iterations = rep.iterations;
    row.residual = rep.relative_residual;
    rows.push_back(row);
    ep.push_back(err.p);
    eu.push_back(err.u);
    ed.push_back(err.div);
  }
  const auto rp = convergence_rates(ep, ns), ru = convergence_rates(eu, ns), rd = convergence_rates(ed, ns);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i].rate_p = rp[i];
    rows[i].rate_u = ru[i];
    rows[i].rate_div = rd[i];
  }
  return rows;
}

}  // namespace dsfem
