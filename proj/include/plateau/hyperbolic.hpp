#pragma once

// Hyperboloid-model geometry of H^n, the regular 4g-gon with its side pairings,
// polygon meshes and quadrature clouds, and orbit-growth estimates.

#include "plateau/group.hpp"
#include "plateau/kernels.hpp"
#include "plateau/lorentz.hpp"

#include <array>
#include <iosfwd>
#include <vector>

namespace plateau {

using HPoint = Eigen::VectorXd;

double hyp_distance(const HPoint& x, const HPoint& y);
/// Point at distance t along the unit tangent v at x.
HPoint hyp_exp(const HPoint& x, const Eigen::VectorXd& v, double t = 1.0);
/// Tangent vector at x of length d(x, y) pointing to y (zero when x == y).
Eigen::VectorXd hyp_log(const HPoint& x, const HPoint& y);
/// Orthonormal basis (columns) of the tangent space at x.
Eigen::MatrixXd tangent_frame(const HPoint& x);
/// Point of H^n at distance r from the base point in the unit direction w of R^n.
HPoint polar_point(const Eigen::VectorXd& direction, double r);
/// Lorentz isometry moving the base point to x without rotation (pure boost).
Eigen::MatrixXd boost_to(const HPoint& x);
/// Midpoint of the geodesic segment.
HPoint hyp_midpoint(const HPoint& x, const HPoint& y);

struct FuchsianGroup {
  int genus = 2;
  GroupPtr group;
  double vertex_angle = 0.0;   // target angle used to build the polygon
  double circumradius = 0.0;
  double inradius = 0.0;
  std::vector<HPoint> vertices;           // 4g vertices, counterclockwise
  std::vector<Element> side_pairing;      // side i is carried onto its partner by side_pairing[i]
  std::vector<int> partner;               // partner side index
  std::vector<Eigen::Matrix3d> isometries;  // matrix of side_pairing[i]

  int sides() const { return 4 * genus; }
  /// Interior angle at vertex j measured from the polygon geometry.
  double measured_angle(int j) const;
  /// Area from the fan triangles (o, v_j, v_j+1), each by its measured angles.
  double area() const;
  double max_relation_gap() const;
};

/// Regular 4g-gon centered at the base point with the given vertex-angle perturbation (radians).
FuchsianGroup fundamental_polygon(int genus, double angle_perturbation = 0.0);

struct PolygonMesh {
  std::vector<HPoint> points;
  std::vector<std::array<int, 3>> triangles;  // counterclockwise
  /// Bit k set when the point lies on polygon side k (corners lie on two sides).
  std::vector<std::uint64_t> side_mask;
};

/// Fan of 4g triangles at the base point refined `level` times by geodesic midpoints.
PolygonMesh polygon_mesh(const FuchsianGroup& f, int level);
void write_mesh(std::ostream& os, const PolygonMesh& m);
PolygonMesh read_mesh(std::istream& is);

/// Area quadrature over the mesh: straight triangles in the Klein model with a
/// conical rule of order q per triangle.
PointCloud mesh_quadrature(const PolygonMesh& m, int q);

struct OrbitEntropy {
  double estimate = 0.0;
  double fit_min_radius = 0.0;
  double fit_max_radius = 0.0;
  std::size_t orbit_size = 0;
};

/// Least-squares slope of log #{g in ball(R): d(o, g o) <= r} against r on [r_c / 2, r_c],
/// r_c the smallest orbit distance on the word sphere of radius R (counts are complete below it).
OrbitEntropy orbit_entropy_estimate(const FuchsianGroup& f, int radius);

}  // namespace plateau
