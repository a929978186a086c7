#include "dsfem/serendipity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dsfem/error.hpp"

namespace dsfem {

std::string_view to_string(SupplementKind k) {
  switch (k) {
    case SupplementKind::Simple: return "simple";
    case SupplementKind::Geometric: return "geometric";
    case SupplementKind::Lemma: return "lemma";
    case SupplementKind::Mapped: return "mapped";
  }
  return "?";
}

SupplementKind parse_supplement(std::string_view s) {
  if (s == "simple") return SupplementKind::Simple;
  if (s == "geometric") return SupplementKind::Geometric;
  if (s == "lemma") return SupplementKind::Lemma;
  if (s == "mapped") return SupplementKind::Mapped;
  throw Error(ErrorCode::InvalidArgument, "unknown supplement '" + std::string(s) + "'");
}

std::array<double, 4> geometric_constants(const Quad& quad) {
  const Vec2 n1 = quad.edge(0).normal, n2 = quad.edge(1).normal;
  const Vec2 n3 = quad.edge(2).normal, n4 = quad.edge(3).normal;
  const Vec2 nu_h = (n3 - n4) / norm(n3 - n4);
  const Vec2 nu_v = (n1 - n2) / norm(n1 - n2);
  auto inv = [](const Vec2& a, const Vec2& b) {
    const double c = dot(a, b);
    return 1.0 / std::sqrt(std::max(0.0, 1.0 - c * c));
  };
  // R_V equals -eta_V on e_1 and xi_V on e_2, so each constant uses the normal of its own edge.
  return {inv(nu_h, n2), inv(nu_h, n1), inv(nu_v, n4), inv(nu_v, n3)};
}

namespace {

Affine lambda_of(const Quad& quad, int i) {
  const Edge& e = quad.edge(i);
  return {-e.normal, dot(e.midpoint, e.normal)};
}

// Expands target in {1, la, lb}; flips target so that alpha, beta > 0.
PairExpansion expand(const Quad& quad, int ia, int ib, const Affine& la, const Affine& lb,
                     Affine& target) {
  PairExpansion ex;
  if (quad.parallel(ia, ib)) {
    ex.parallel = true;
    ex.delta = la(quad.centroid()) + lb(quad.centroid());
    return ex;
  }
  // Unknowns (gamma, alpha, beta): gradient and constant parts must match.
  Eigen::Matrix3d m;
  m << 0.0, la.grad.x, lb.grad.x,
       0.0, la.grad.y, lb.grad.y,
       1.0, la.c, lb.c;
  const Eigen::Vector3d rhs(target.grad.x, target.grad.y, target.c);
  Eigen::FullPivLU<Eigen::Matrix3d> lu(m);
  if (lu.rank() < 3) throw Error(ErrorCode::SingularExpansion, "expansion system is singular");
  Eigen::Vector3d sol = lu.solve(rhs);
  if (sol(1) < 0.0 && sol(2) < 0.0) {
    sol = -sol;
    target = -1.0 * target;
  }
  if (!(sol(1) > 0.0 && sol(2) > 0.0)) {
    throw Error(ErrorCode::SingularExpansion, "expansion coefficients have mixed signs");
  }
  if (std::abs(sol(0)) <= 1e-14 * (std::abs(sol(1)) + std::abs(sol(2))) * quad.h()) {
    throw Error(ErrorCode::SingularExpansion, "zero line passes through the edge intersection");
  }
  ex.gamma = sol(0);
  ex.alpha = sol(1);
  ex.beta = sol(2);
  return ex;
}

ValueGrad pulled_back(const ValueGrad& ref, const SamplePoint& p) {
  return {ref.v, p.jacobian.inverse_transpose() * ref.g};
}

}  // namespace

DirectionFunctions build_directions(const Quad& quad, const SupplementChoice& choice) {
  DirectionFunctions d;
  d.kind = choice.kind;
  switch (choice.kind) {
    case SupplementKind::Simple:
    case SupplementKind::Lemma:
      if (!(choice.xi_v > 0 && choice.eta_v > 0 && choice.xi_h > 0 && choice.eta_h > 0)) {
        throw Error(ErrorCode::InvalidArgument, "xi and eta must be positive");
      }
      d.xi_v = choice.xi_v;
      d.eta_v = choice.eta_v;
      d.xi_h = choice.xi_h;
      d.eta_h = choice.eta_h;
      break;
    case SupplementKind::Geometric: {
      const auto c = geometric_constants(quad);
      d.xi_v = c[0];
      d.eta_v = c[1];
      d.xi_h = c[2];
      d.eta_h = c[3];
      break;
    }
    case SupplementKind::Mapped:
      break;
  }
  for (int i = 0; i < 4; ++i) d.lambda[i] = lambda_of(quad, i);
  d.lambda_h = d.lambda[2] - d.lambda[3];
  d.lambda_v = d.lambda[0] - d.lambda[1];
  d.h = expand(quad, 0, 1, d.lambda[0], d.lambda[1], d.lambda_h);
  d.v = expand(quad, 2, 3, d.lambda[2], d.lambda[3], d.lambda_v);
  d.lambda_12 = (d.h.alpha * d.xi_v) * d.lambda[0] - (d.h.beta * d.eta_v) * d.lambda[1];
  d.lambda_34 = (d.v.alpha * d.xi_h) * d.lambda[2] - (d.v.beta * d.eta_h) * d.lambda[3];
  return d;
}

ValueGrad DirectionFunctions::r_v(const SamplePoint& p) const {
  switch (kind) {
    case SupplementKind::Mapped:
      return pulled_back({p.xh.x, {1.0, 0.0}}, p);
    case SupplementKind::Lemma:
      if (h.parallel) return lambda_12.eval(p.x) / h.delta;
      return lambda_12.eval(p.x) / (lambda_h.eval(p.x) - h.gamma);
    default: {
      const ValueGrad l1 = lambda[0].eval(p.x), l2 = lambda[1].eval(p.x);
      return (l1 - l2) / (l1 / xi_v + l2 / eta_v);
    }
  }
}

ValueGrad DirectionFunctions::r_h(const SamplePoint& p) const {
  switch (kind) {
    case SupplementKind::Mapped:
      return pulled_back({p.xh.y, {0.0, 1.0}}, p);
    case SupplementKind::Lemma:
      if (v.parallel) return lambda_34.eval(p.x) / v.delta;
      return lambda_34.eval(p.x) / (lambda_v.eval(p.x) - v.gamma);
    default: {
      const ValueGrad l3 = lambda[2].eval(p.x), l4 = lambda[3].eval(p.x);
      return (l3 - l4) / (l3 / xi_h + l4 / eta_h);
    }
  }
}

std::array<double, 2> DirectionFunctions::denominators(const Point2& x) const {
  switch (kind) {
    case SupplementKind::Mapped:
      return {1.0, 1.0};
    case SupplementKind::Lemma:
      return {h.parallel ? h.delta : lambda_h(x) - h.gamma, v.parallel ? v.delta : lambda_v(x) - v.gamma};
    default:
      return {lambda[0](x) / xi_v + lambda[1](x) / eta_v, lambda[2](x) / xi_h + lambda[3](x) / eta_h};
  }
}

std::array<ValueGrad, 2> reference_supplement_pair(int k, const Point2& xh) {
  const ValueGrad x{xh.x, {1.0, 0.0}}, y{xh.y, {0.0, 1.0}};
  const ValueGrad one = ValueGrad::constant(1.0);
  return {(one - y * y) * x * pow(y, k - 2), (one - x * x) * y * pow(x, k - 2)};
}

std::array<ValueGrad, 2> supplement_pair(const DirectionFunctions& d, int k, const SamplePoint& p) {
  if (d.kind == SupplementKind::Mapped) {
    const auto ref = reference_supplement_pair(k, p.xh);
    return {pulled_back(ref[0], p), pulled_back(ref[1], p)};
  }
  const ValueGrad l1 = d.lambda[0].eval(p.x), l2 = d.lambda[1].eval(p.x);
  const ValueGrad l3 = d.lambda[2].eval(p.x), l4 = d.lambda[3].eval(p.x);
  return {l3 * l4 * pow(d.lambda_h.eval(p.x), k - 2) * d.r_v(p),
          l1 * l2 * pow(d.lambda_v.eval(p.x), k - 2) * d.r_h(p)};
}

std::vector<NodalPoint> nodal_points(const Quad& quad, int r) {
  std::vector<NodalPoint> out;
  out.reserve(ds_dimension(r));
  constexpr std::array<Point2, 4> corners{{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}}};
  for (int k = 0; k < 4; ++k) out.push_back({quad.sample(corners[k]), NodeKind::Vertex, k, 0});
  for (int i = 0; i < 4; ++i) {
    for (int j = 1; j < r; ++j) {
      const double t = -1.0 + 2.0 * j / r;
      out.push_back({quad.sample(reference_edge_point(i, t)), NodeKind::Edge, i, j});
    }
  }
  if (r >= 4) {
    const int m = r - 4;
    const Point2 p0 = quad.map()({-0.5, -0.5});
    const Point2 p1 = quad.map()({0.5, -0.5});
    const Point2 p2 = quad.map()({0.0, 0.5});
    int index = 0;
    if (m == 0) {
      out.push_back({quad.sample_physical((p0 + p1 + p2) / 3.0), NodeKind::Cell, 0, index});
    } else {
      for (int j = 0; j <= m; ++j) {
        for (int i = 0; i + j <= m; ++i) {
          const Point2 x = p0 + (static_cast<double>(i) / m) * (p1 - p0) + (static_cast<double>(j) / m) * (p2 - p0);
          out.push_back({quad.sample_physical(x), NodeKind::Cell, 0, index++});
        }
      }
    }
  }
  return out;
}

MonomialBasis::MonomialBasis(const Point2& c, double s, int max_degree, int min_degree)
    : centre(c), scale(s) {
  for (int deg = std::max(min_degree, 0); deg <= max_degree; ++deg) {
    for (int a = deg; a >= 0; --a) exponents.push_back({a, deg - a});
  }
}

ValueGrad MonomialBasis::eval(int i, const Point2& x) const {
  const auto [a, b] = exponents[i];
  const double y1 = (x.x - centre.x) / scale, y2 = (x.y - centre.y) / scale;
  auto ipow = [](double v, int n) {
    double p = 1.0;
    for (int k = 0; k < n; ++k) p *= v;
    return p;
  };
  const double pa = ipow(y1, a), pb = ipow(y2, b);
  const double da = a > 0 ? a * ipow(y1, a - 1) : 0.0;
  const double db = b > 0 ? b * ipow(y2, b - 1) : 0.0;
  return {pa * pb, Vec2{da * pb, pa * db} / scale};
}

DSElement::DSElement(const Quad& quad, int r, const SupplementChoice& choice)
    : quad_(quad),
      r_(r),
      choice_(choice),
      dirs_(build_directions(quad, choice)),
      nodes_(),
      cell_monomials_(quad.centroid(), quad.scale(), r - 4) {
  if (r < 2) throw Error(ErrorCode::UnsupportedOrder, "DS_r needs r >= 2");
  nodes_ = nodal_points(quad, r);

  const int supplement_power = choice.kind == SupplementKind::Mapped ? 0 : r;
  scale_powers_ = {2, 2, 2, 2};
  for (int block = 0; block < 2; ++block) {
    for (int j = 0; j <= r - 2; ++j) scale_powers_.push_back(j + 2);
    for (int j = 0; j <= r - 3; ++j) scale_powers_.push_back(j + 3);
    scale_powers_.push_back(supplement_power);
  }
  for (int k = 0; k < cell_monomials_.size(); ++k) scale_powers_.push_back(4);

  const int dim = dimension();
  const int nb = 4 * r;
  Eigen::MatrixXd p(dim, dim);
  std::vector<ValueGrad> vals;
  for (int j = 0; j < dim; ++j) {
    eval_pre_basis(nodes_[j].at, vals);
    for (int i = 0; i < dim; ++i) p(i, j) = vals[i].v;
  }
  dof_matrix_ = p.topLeftCorner(nb, nb);
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(dof_matrix_);
  const double rc = lu.rcond();
  if (!(rc > 1e-14)) {
    throw Error(ErrorCode::SingularDoFMatrix,
                "DoF matrix is singular (rcond " + std::to_string(rc) + ")");
  }
  const Eigen::MatrixXd b = lu.inverse();

  coeff_ = Eigen::MatrixXd::Zero(dim, dim);
  coeff_.topLeftCorner(nb, nb) = b;
  const int m = dim - nb;
  if (m > 0) {
    Eigen::PartialPivLU<Eigen::MatrixXd> clu(p.bottomRightCorner(m, m));
    if (!(clu.rcond() > 1e-14)) throw Error(ErrorCode::SingularDoFMatrix, "cell block is singular");
    const Eigen::MatrixXd cinv = clu.inverse();
    const Eigen::MatrixXd leak = b * p.topRightCorner(nb, m);
    coeff_.topRightCorner(nb, m) = -leak * cinv;
    coeff_.bottomRightCorner(m, m) = cinv;
  }
}

void DSElement::eval_pre_basis(const SamplePoint& p, std::vector<ValueGrad>& out) const {
  const int r = r_;
  out.resize(dimension());
  const auto& d = dirs_;
  const ValueGrad l1 = d.lambda[0].eval(p.x), l2 = d.lambda[1].eval(p.x);
  const ValueGrad l3 = d.lambda[2].eval(p.x), l4 = d.lambda[3].eval(p.x);
  const ValueGrad lh = d.lambda_h.eval(p.x), lv = d.lambda_v.eval(p.x);
  const ValueGrad l12 = d.lambda_12.eval(p.x), l34 = d.lambda_34.eval(p.x);
  const auto supp = supplement_pair(d, r, p);

  int k = 0;
  out[k++] = l2 * l4;
  out[k++] = l1 * l4;
  out[k++] = l1 * l3;
  out[k++] = l2 * l3;

  auto edge_block = [&](const ValueGrad& bubble, const ValueGrad& dir, const ValueGrad& pair,
                        const ValueGrad& supplement) {
    ValueGrad powj = ValueGrad::constant(1.0);
    for (int j = 0; j <= r - 2; ++j) {
      out[k++] = bubble * powj;
      powj = powj * dir;
    }
    powj = ValueGrad::constant(1.0);
    for (int j = 0; j <= r - 3; ++j) {
      out[k++] = bubble * pair * powj;
      powj = powj * dir;
    }
    out[k++] = supplement;
  };
  edge_block(l3 * l4, lh, l12, supp[0]);
  edge_block(l1 * l2, lv, l34, supp[1]);

  if (cell_monomials_.size() > 0) {
    const ValueGrad bubble = l1 * l2 * l3 * l4;
    for (int j = 0; j < cell_monomials_.size(); ++j) out[k++] = bubble * cell_monomials_.eval(j, p.x);
  }

  const double s = quad_.scale();
  for (int i = 0; i < k; ++i) {
    if (scale_powers_[i] != 0) out[i] = out[i] / std::pow(s, scale_powers_[i]);
  }
}

void DSElement::eval_basis(const SamplePoint& p, std::vector<ValueGrad>& out) const {
  thread_local std::vector<ValueGrad> pre;
  eval_pre_basis(p, pre);
  const int dim = dimension();
  out.assign(dim, ValueGrad{});
  for (int i = 0; i < dim; ++i) {
    ValueGrad acc{};
    for (int j = 0; j < dim; ++j) {
      const double c = coeff_(i, j);
      if (c != 0.0) {
        acc.v += c * pre[j].v;
        acc.g += c * pre[j].g;
      }
    }
    out[i] = acc;
  }
}

std::vector<ValueGrad> DSElement::eval_basis(const Point2& x) const {
  std::vector<ValueGrad> out;
  eval_basis(quad_.sample_physical(x), out);
  return out;
}

std::vector<double> DSElement::interpolate(const std::function<double(const Point2&)>& f) const {
  std::vector<double> out;
  out.reserve(nodes_.size());
  for (const auto& n : nodes_) out.push_back(f(n.at.x));
  return out;
}

std::vector<double> explicit_basis(const DSElement& element, const Point2& x) {
  if (element.choice().kind != SupplementKind::Lemma) {
    throw Error(ErrorCode::InvalidArgument, "explicit basis needs the lemma supplement");
  }
  const int r = element.r();
  const auto& d = element.directions();
  const auto& nodes = element.nodes();
  auto node_x = [&](int edge, int j) { return nodes[4 + edge * (r - 1) + (j - 1)].at.x; };

  // Values of the 4r boundary basis functions at y, before cell correction.
  auto boundary = [&](const Point2& y) {
    std::vector<double> out(4 * r, 0.0);
    const double l[4] = {d.lambda[0](y), d.lambda[1](y), d.lambda[2](y), d.lambda[3](y)};
    // edge i in {0,1} pairs with R_V and lambda_H, {2,3} with R_H and lambda_V.
    auto edge_fn = [&](int i, int j, const Point2& z) {
      const bool horizontal = i < 2;
      const Affine& dir = horizontal ? d.lambda_h : d.lambda_v;
      const int a = horizontal ? 2 : 0, b = horizontal ? 3 : 1;
      const double xi = horizontal ? d.xi_v : d.xi_h, eta = horizontal ? d.eta_v : d.eta_h;
      const double rz = horizontal ? d.r_v({z, {}, {}}).v : d.r_h({z, {}, {}}).v;
      const Point2 xj = node_x(i, j);
      double val = d.lambda[a](z) * d.lambda[b](z) / (d.lambda[a](xj) * d.lambda[b](xj));
      val *= (i % 2 == 0 ? xi - rz : rz + eta) / (xi + eta);
      for (int k = 1; k < r; ++k) {
        if (k == j) continue;
        const double dk = dir(node_x(i, k));
        val *= (dir(z) - dk) / (dir(xj) - dk);
      }
      return val;
    };
    for (int i = 0; i < 4; ++i) {
      for (int j = 1; j < r; ++j) out[4 + i * (r - 1) + (j - 1)] = edge_fn(i, j, y);
    }
    // Vertex k: the pair of lambdas vanishing on the two edges away from it,
    // and the two edges through it.
    constexpr int pair[4][2] = {{1, 3}, {0, 3}, {0, 2}, {1, 2}};
    constexpr int through[4][2] = {{0, 2}, {1, 2}, {1, 3}, {0, 3}};
    for (int k = 0; k < 4; ++k) {
      const Point2 v = nodes[k].at.x;
      auto tilde = [&](const Point2& z) {
        return d.lambda[pair[k][0]](z) * d.lambda[pair[k][1]](z) /
               (d.lambda[pair[k][0]](v) * d.lambda[pair[k][1]](v));
      };
      double val = l[pair[k][0]] * l[pair[k][1]] /
                   (d.lambda[pair[k][0]](v) * d.lambda[pair[k][1]](v));
      for (int e : through[k]) {
        for (int j = 1; j < r; ++j) val -= tilde(node_x(e, j)) * edge_fn(e, j, y);
      }
      out[k] = val;
    }
    return out;
  };

  std::vector<double> out = boundary(x);
  const int m = element.dimension() - 4 * r;
  if (m > 0) {
    // Cell functions lambda_1..4 times monomials, made Kronecker on the cell nodes.
    const Quad& q = element.quad();
    const MonomialBasis mono(q.centroid(), q.scale(), r - 4);
    auto bubble = [&](const Point2& z) {
      return d.lambda[0](z) * d.lambda[1](z) * d.lambda[2](z) * d.lambda[3](z);
    };
    Eigen::MatrixXd cm(m, m);
    for (int k = 0; k < m; ++k) {
      for (int l = 0; l < m; ++l) {
        const Point2 z = nodes[4 * r + l].at.x;
        cm(k, l) = bubble(z) * mono.eval(k, z).v;
      }
    }
    Eigen::VectorXd raw(m);
    for (int k = 0; k < m; ++k) raw(k) = bubble(x) * mono.eval(k, x).v;
    const Eigen::VectorXd cell = cm.partialPivLu().solve(raw);
    for (int l = 0; l < m; ++l) {
      const auto at_node = boundary(nodes[4 * r + l].at.x);
      for (int i = 0; i < 4 * r; ++i) out[i] -= at_node[i] * cell(l);
    }
    out.resize(element.dimension());
    for (int l = 0; l < m; ++l) out[4 * r + l] = cell(l);
  }
  return out;
}

}  // namespace dsfem
