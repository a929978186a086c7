#include "dsfem/hybrid.hpp"

#include <optional>
#include <string>

#include "dsfem/error.hpp"
#include "dsfem/parallel.hpp"
#include "dsfem/quadrature.hpp"

namespace dsfem {

HybridSystem assemble_hybrid_mixed(const Mesh& mesh, int r, MixedVariant variant, const SupplementChoice& choice,
                                   const EllipticProblem& problem, int quad_points,
                                   MixedElement::Options options) {
  HybridSystem sys;
  sys.r = r;
  sys.variant = variant;
  const int nc = mesh.num_cells();
  const int k = quad_points > 0 ? quad_points : r + 5;

  sys.edge_offset.assign(mesh.num_edges(), -1);
  for (int e = 0; e < mesh.num_edges(); ++e) {
    if (!mesh.edges()[e].boundary) {
      sys.edge_offset[e] = sys.num_multipliers;
      sys.num_multipliers += r + 1;
    }
  }

  std::vector<std::optional<MixedElement>> slots(nc);
  sys.links.resize(nc);
  sys.local_inverse.resize(nc);
  sys.particular.resize(nc);
  parallel_for(nc, [&](int c) {
    const MixedElement& el = slots[c].emplace(mesh.quad(c), r, variant, choice, options);
    const Quad& quad = el.quad();
    const int nu = el.dimension();
    const MonomialBasis& w = el.scalar_basis();
    const int np = w.size();

    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(nu + np, nu + np);
    Eigen::VectorXd load = Eigen::VectorXd::Zero(nu + np);
    std::vector<VecDiv> psi;
    for (const auto& q : cell_quadrature(quad, k)) {
      el.eval_basis(q, psi);
      const Mat2 ainv = problem.a ? problem.a(q.x).inverse() : Mat2{1.0, 0.0, 0.0, 1.0};
      const double fv = problem.f ? problem.f(q.x) : 0.0;
      for (int i = 0; i < nu; ++i) {
        const Vec2 ai = ainv * psi[i].v;
        for (int j = 0; j < nu; ++j) m(i, j) += q.weight * dot(ai, psi[j].v);
      }
      for (int a = 0; a < np; ++a) {
        const double wa = w.eval(a, q.x).v;
        for (int j = 0; j < nu; ++j) {
          const double b = q.weight * wa * psi[j].div;
          m(nu + a, j) -= b;
          m(j, nu + a) -= b;
        }
        load(nu + a) -= q.weight * fv * wa;
      }
    }

    auto& links = sys.links[c];
    for (int i = 0; i < 4; ++i) {
      const int e = mesh.cell_edges(c)[i];
      if (sys.edge_offset[e] >= 0) {
        const bool aligned = mesh.edge_aligned(c, i);
        for (int kk = 0; kk <= r; ++kk) {
          const double s = aligned || kk % 2 == 0 ? 1.0 : -1.0;
          links.push_back({el.edge_dof(i, kk), sys.edge_offset[e] + kk, s});
        }
      } else if (problem.g) {
        const Vec2 nu_i = quad.edge(i).normal;
        for (const auto& q : edge_quadrature(quad, i, k)) {
          el.eval_basis(q, psi);
          const double gv = problem.g(q.x);
          for (int j = 0; j < nu; ++j) load(j) -= q.weight * gv * dot(psi[j].v, nu_i);
        }
      }
    }

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
    const double rc = lu.rcond();
    if (!(rc > 1e-14)) {
      throw Error(ErrorCode::SingularLocalBlock,
                  "local saddle matrix of cell " + std::to_string(c) + " is singular (rcond " + std::to_string(rc) + ")");
    }
    sys.local_inverse[c] = lu.inverse();
    sys.particular[c] = sys.local_inverse[c] * load;
  });
  sys.elements.reserve(nc);
  for (auto& s : slots) sys.elements.push_back(std::move(*s));

  std::vector<Triplet> trip;
  sys.rhs.assign(sys.num_multipliers, 0.0);
  for (int c = 0; c < nc; ++c) {
    const auto& kinv = sys.local_inverse[c];
    for (const auto& a : sys.links[c]) {
      sys.rhs[a.global] += a.sign * sys.particular[c](a.local);
      for (const auto& b : sys.links[c]) {
        trip.push_back({a.global, b.global, a.sign * b.sign * kinv(a.local, b.local)});
      }
    }
  }
  sys.schur = CsrMatrix(sys.num_multipliers, sys.num_multipliers, std::move(trip));
  return sys;
}

MixedSolution recover_fields(const HybridSystem& system, const std::vector<double>& multipliers) {
  MixedSolution sol;
  const int nc = static_cast<int>(system.elements.size());
  sol.u.resize(nc);
  sol.p.resize(nc);
  for (int c = 0; c < nc; ++c) {
    const int nu = system.elements[c].dimension();
    const auto& kinv = system.local_inverse[c];
    Eigen::VectorXd x = system.particular[c];
    for (const auto& l : system.links[c]) x -= (l.sign * multipliers.at(l.global)) * kinv.col(l.local);
    sol.u[c] = x.head(nu);
    sol.p[c] = x.tail(x.size() - nu);
  }
  return sol;
}

}  // namespace dsfem
