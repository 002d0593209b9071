#pragma once

// Polyhedral chains in the sphere quotient, stored equivariantly: every simplex
// corner names a quotient vertex and the group element that moves the stored
// vertex lift to the corner. Gluing between simplices is therefore implicit:
// two faces are identified when their corner lists agree up to a common left
// translation.

#include "plateau/hilbert_sphere.hpp"
#include "plateau/kernels.hpp"

#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace plateau {

struct Corner {
  int vertex = 0;
  Element twist;
};

struct Simplex {
  std::vector<Corner> corners;  // dim + 1 corners, orientation = order
  int multiplicity = 1;          // signed; orientation sign folded in
};

struct SimplicialCycle {
  GroupPtr group;
  int dim = 0;
  std::vector<SphereVector> vertices;
  std::vector<Simplex> simplices;

  SphereVector corner_lift(std::size_t s, std::size_t k) const;
  std::vector<SphereVector> lifts(std::size_t s) const;
  /// t_i^-1 t_j for corners i, j of simplex s.
  Element relative_twist(std::size_t s, std::size_t i, std::size_t j) const;
  Eigen::MatrixXd gram(std::size_t s) const;
  void validate() const;
};

/// Gram matrix of the lifts t_k v_k of a corner list, computed in relative frames.
Eigen::MatrixXd corner_gram(const SimplicialCycle& c, const std::vector<Corner>& corners);
Eigen::MatrixXd gram_matrix(const std::vector<SphereVector>& lifts);

/// Volume of the radially projected simplex spanned by the lifts.
SimplexVolume simplex_volume(const std::vector<SphereVector>& lifts, int q = 8);

struct MassBreakdown {
  double total = 0.0;
  std::vector<double> per_simplex;  // |multiplicity| * volume
  std::map<double, double> thick_mass;
  bool any_degenerate = false;
};

MassBreakdown mass(const SimplicialCycle& c, int q = 8, ExecutionPolicy policy = ExecutionPolicy::Parallel);

/// Total unmatched codimension-1 face measure (counting measure for points).
double boundary_check(const SimplicialCycle& c, int q = 8);
/// Residual of (boundary of c) - b, for chains living in the same group.
double boundary_residual_against(const SimplicialCycle& c, const SimplicialCycle& b, int q = 8);

/// Mass of the part whose quadrature nodes have displacement > delta.
std::map<double, double> thick_mass_profile(const SimplicialCycle& c, const std::vector<double>& deltas, int radius,
                                            int q = 4);

/// Vertexwise map with declared Lipschitz constant <= 1.
struct VertexMap {
  enum class Kind { Abs, Homomorphism, Convolve, Custom } kind = Kind::Abs;
  std::optional<Homomorphism> theta;
  Weights eta;
  std::function<SphereVector(const SphereVector&)> custom;
  GroupPtr custom_target;

  static VertexMap abs();
  static VertexMap homomorphism(Homomorphism h);
  static VertexMap convolution(Weights w);
  /// The map must be 1-Lipschitz and equivariant for the frozen twists.
  static VertexMap user(std::function<SphereVector(const SphereVector&)> f);
};

class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PushResult {
  SimplicialCycle image;
  double mass_before = 0.0;
  double mass_after = 0.0;
};

/// Push the cycle through a 1-Lipschitz map; throws InvariantViolation if mass grows beyond tolerance.
PushResult pushforward(const SimplicialCycle& c, const VertexMap& map, int q = 8, double tolerance = 1e-8);

/// Edge-midpoint subdivision (1 -> 2, 4, 8 simplices for dim 1, 2, 3).
SimplicialCycle subdivide(const SimplicialCycle& c);

/// Cone over b from a fixed apex; b must close up without group translations.
SimplicialCycle cone_fill(const SphereVector& apex, const SimplicialCycle& b);

struct ConeReport {
  double cone_mass = 0.0;
  double base_mass = 0.0;
  double diameter = 0.0;  // geodesic diameter of the base corner lifts
  double constant = 0.0;  // cone_mass / (diameter * base_mass)
};
ConeReport cone_inequality(const SphereVector& apex, const SimplicialCycle& b, int q = 8);

void write_cycle(std::ostream& os, const SimplicialCycle& c);
SimplicialCycle read_cycle(std::istream& is, const GroupPtr& group);

// ---- fixtures -------------------------------------------------------------

/// The spherical triangle spanned by three orthonormal Diracs.
SimplicialCycle octant_triangle(const GroupPtr& group, Element a, Element b, Element c);
/// Square torus for Z^2: one vertex, two triangles glued by the generators.
SimplicialCycle torus_cycle(const GroupPtr& z2, const SphereVector& vertex);
/// Closed polygon through the given lifts (all twists trivial).
SimplicialCycle polygon_loop(const GroupPtr& group, const std::vector<SphereVector>& points);

}  // namespace plateau
