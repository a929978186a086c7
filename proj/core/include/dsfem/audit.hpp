#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dsfem/geometry.hpp"
#include "dsfem/mesh.hpp"
#include "dsfem/mixed.hpp"
#include "dsfem/serendipity.hpp"

namespace dsfem {

struct AuditEntry {
  std::string name;
  bool passed = false;
  double residual = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct AuditReport {
  std::vector<AuditEntry> entries;

  bool passed() const;
  /// Records a residual check: passes when residual <= tolerance.
  void check(std::string name, double residual, double tolerance, std::string detail = {});
  void fail(std::string name, std::string detail);
  void merge(const AuditReport& other);
  /// Largest residual among entries whose name starts with prefix.
  double worst(const std::string& prefix) const;
};

/// Nodal duality phi_i(x_j) = delta_ij and dimension D_r on `samples`
/// seeded random convex quads, for every supplement kind and each order.
AuditReport unisolvence_audit(int samples, std::uint64_t seed, const std::vector<int>& orders = {2, 3, 4, 5});

/// One DS element: interpolation of a random P_r polynomial (100 points),
/// edge traces of degree r (fit at r+3 Gauss points) and analytic
/// gradients against central differences (30 points, step 1e-6 h).
AuditReport element_audit(const Quad& quad, int r, const SupplementChoice& choice, std::uint64_t seed);

/// Every global basis function evaluated from both sides of every interior
/// edge at 20 points.
AuditReport continuity_audit(const Mesh& mesh, int r, const SupplementChoice& choice);

/// Mixed-element suite for both variants: curl DS_{r+1} in V_r, normal
/// traces of degree r, supplement zero traces, div V_r = P_s, commuting
/// projection, tangential/normal identity, bubble consistency and Green's
/// identity for the reported divergences.
AuditReport derham_audit(const Quad& quad, int r, const SupplementChoice& choice,
                         MixedElement::Options options = {});

/// Closed-form Lemma basis against the matrix-built one at 20 random points
/// per quad, `samples` random quads (half trapezoids), each order.
AuditReport explicit_basis_audit(int samples, std::uint64_t seed, const std::vector<int>& orders = {2, 3, 4, 5});

/// Lemma and Simple elements with equal xi, eta have the same edge traces
/// (cross-interpolation residual on the boundary).
AuditReport variant_consistency_audit(const Quad& quad, int r, double xi, double eta);

}  // namespace dsfem
