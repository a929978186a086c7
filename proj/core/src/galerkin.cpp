#include "dsfem/galerkin.hpp"

#include <optional>

#include <Eigen/Dense>

#include "dsfem/error.hpp"
#include "dsfem/parallel.hpp"
#include "dsfem/quadrature.hpp"

namespace dsfem {

namespace {

std::vector<DSElement> build_elements(const Mesh& mesh, int r, const SupplementChoice& choice) {
  const int nc = mesh.num_cells();
  std::vector<std::optional<DSElement>> slots(nc);
  parallel_for(nc, [&](int c) { slots[c].emplace(mesh.quad(c), r, choice); });
  std::vector<DSElement> out;
  out.reserve(nc);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace

DSSpace build_ds_space(const Mesh& mesh, int r, const SupplementChoice& choice) {
  DSSpace sp;
  sp.r = r;
  sp.elements = build_elements(mesh, r, choice);
  const int nv = mesh.num_vertices(), ne = mesh.num_edges(), nc = mesh.num_cells();
  const int per_edge = r - 1;
  const int per_cell = (r - 2) * (r - 3) / 2;
  const int edge_base = nv, cell_base = nv + ne * per_edge;
  sp.num_dofs = cell_base + nc * per_cell;
  sp.positions.assign(sp.num_dofs, Point2{});
  sp.on_boundary.assign(sp.num_dofs, 0);
  std::vector<char> seen(sp.num_dofs, 0);
  sp.cell_dofs.resize(nc);
  const double tol = 1e-12 * mesh.h();

  for (int c = 0; c < nc; ++c) {
    const auto& nodes = sp.elements[c].nodes();
    auto& dofs = sp.cell_dofs[c];
    dofs.resize(nodes.size());
    for (std::size_t l = 0; l < nodes.size(); ++l) {
      const NodalPoint& n = nodes[l];
      int g = 0;
      switch (n.kind) {
        case NodeKind::Vertex:
          g = mesh.cells()[c][n.entity];
          break;
        case NodeKind::Edge: {
          const int e = mesh.cell_edges(c)[n.entity];
          const int j = mesh.edge_aligned(c, n.entity) ? n.index : r - n.index;
          g = edge_base + e * per_edge + (j - 1);
          break;
        }
        case NodeKind::Cell:
          g = cell_base + c * per_cell + n.index;
          break;
      }
      if (seen[g]) {
        if (norm(sp.positions[g] - n.at.x) > tol) {
          throw Error(ErrorCode::NonConforming, "shared node positions disagree in cell " + std::to_string(c));
        }
      } else {
        seen[g] = 1;
        sp.positions[g] = n.at.x;
      }
      dofs[l] = g;
    }
  }
  for (int e = 0; e < ne; ++e) {
    const MeshEdge& me = mesh.edges()[e];
    if (!me.boundary) continue;
    sp.on_boundary[me.vertices[0]] = 1;
    sp.on_boundary[me.vertices[1]] = 1;
    for (int j = 0; j < per_edge; ++j) sp.on_boundary[edge_base + e * per_edge + j] = 1;
  }
  return sp;
}

GalerkinSystem assemble_galerkin(const Mesh& mesh, int r, const SupplementChoice& choice,
                                 const EllipticProblem& problem, int quad_points) {
  GalerkinSystem sys;
  sys.space = build_ds_space(mesh, r, choice);
  const DSSpace& sp = sys.space;
  const int k = quad_points > 0 ? quad_points : r + 5;

  sys.free_index.assign(sp.num_dofs, -1);
  sys.boundary_values.assign(sp.num_dofs, 0.0);
  int nfree = 0;
  for (int g = 0; g < sp.num_dofs; ++g) {
    if (!sp.on_boundary[g]) {
      sys.free_index[g] = nfree++;
    } else if (problem.g) {
      sys.boundary_values[g] = problem.g(sp.positions[g]);
    }
  }

  const int nc = mesh.num_cells();
  std::vector<Eigen::MatrixXd> local_k(nc);
  std::vector<Eigen::VectorXd> local_f(nc);
  parallel_for(nc, [&](int c) {
    const DSElement& el = sp.elements[c];
    const int m = el.dimension();
    Eigen::MatrixXd kk = Eigen::MatrixXd::Zero(m, m);
    Eigen::VectorXd ff = Eigen::VectorXd::Zero(m);
    std::vector<ValueGrad> phi;
    for (const auto& q : cell_quadrature(el.quad(), k)) {
      el.eval_basis(q, phi);
      const Mat2 a = problem.a ? problem.a(q.x) : Mat2{1.0, 0.0, 0.0, 1.0};
      const double fv = problem.f ? problem.f(q.x) : 0.0;
      for (int i = 0; i < m; ++i) {
        const Vec2 agi = a * phi[i].g;
        for (int j = 0; j < m; ++j) kk(i, j) += q.weight * dot(agi, phi[j].g);
        ff(i) += q.weight * fv * phi[i].v;
      }
    }
    local_k[c] = std::move(kk);
    local_f[c] = std::move(ff);
  });

  std::vector<Triplet> trip;
  sys.rhs.assign(nfree, 0.0);
  for (int c = 0; c < nc; ++c) {
    const auto& dofs = sp.cell_dofs[c];
    const int m = static_cast<int>(dofs.size());
    for (int i = 0; i < m; ++i) {
      const int fi = sys.free_index[dofs[i]];
      if (fi < 0) continue;
      sys.rhs[fi] += local_f[c](i);
      for (int j = 0; j < m; ++j) {
        const int fj = sys.free_index[dofs[j]];
        if (fj >= 0) {
          trip.push_back({fi, fj, local_k[c](i, j)});
        } else {
          sys.rhs[fi] -= local_k[c](i, j) * sys.boundary_values[dofs[j]];
        }
      }
    }
  }
  sys.matrix = CsrMatrix(nfree, nfree, std::move(trip));
  return sys;
}

std::vector<double> expand_solution(const GalerkinSystem& system, const std::vector<double>& free_values) {
  std::vector<double> out = system.boundary_values;
  for (std::size_t g = 0; g < out.size(); ++g) {
    const int fi = system.free_index[g];
    if (fi >= 0) out[g] = free_values.at(fi);
  }
  return out;
}

std::vector<double> interpolate(const DSSpace& space, const ScalarField& f) {
  std::vector<double> out(space.num_dofs);
  for (int g = 0; g < space.num_dofs; ++g) out[g] = f(space.positions[g]);
  return out;
}

}  // namespace dsfem
