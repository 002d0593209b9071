#pragma once

// Distance-based Poisson embeddings x -> normalized exp(-c d(x, .) / 2) and the
// equivariant cycles they induce on the genus-g surface.

#include "plateau/cycle.hpp"
#include "plateau/hyperbolic.hpp"

#include <vector>

namespace plateau {

/// |alpha_{c,x}|^2 = integral of exp(-c d(x, y)) over H^n (n = 2, 3); needs c > n - 1.
double alpha_norm2(double c, int n);

/// |d Poisson_c(v)|^2 at x by radial-angular quadrature (n = 2, 3).
double poisson_pullback(double c, const HPoint& x, const Eigen::VectorXd& v, int n, int angular_nodes = 64);

enum class Truncation {
  WordBall,  // every tile of ball(radius), weight 1
  Tapered,   // tiles within the cutoff, weight cos(pi d / (2 cutoff)) with d = d(x, g.o)
};

struct PoissonParams {
  double c = 1.5;
  Truncation truncation = Truncation::Tapered;
  int radius = 4;          // word radius of the tile set
  int mesh_level = 3;      // cycle triangulation
  int fine_level = 3;      // near-tile quadrature mesh
  int fine_order = 4;
  int coarse_level = 1;    // far-tile quadrature mesh
  int coarse_order = 4;
  double far_distance = 6.0;
  /// Tiles enter the vector when their center is within this distance of x; -1 picks the
  /// largest radius for which the selection stays inside ball(radius) for every x in the polygon.
  double cutoff = -1.0;
  double max_tail = 0.9;
  ExecutionPolicy policy = ExecutionPolicy::Parallel;

  void validate() const;
};

/// Tiles, their inverse isometries, and quadrature clouds shared by all evaluations.
struct PoissonTiles {
  std::vector<Element> elements;
  std::vector<Eigen::MatrixXd> inverse;
  std::vector<Eigen::VectorXd> centers;
  double cutoff = 0.0;
  PointCloud fine;
  PointCloud coarse;

  PoissonTiles(const FuchsianGroup& f, const PoissonParams& p);
};

/// Largest cutoff with {g : d(x, g.o) <= cutoff} inside ball(radius) for all x in the polygon.
double automatic_cutoff(const FuchsianGroup& f, int radius);

/// The tapered selection depends only on d(x, g.o), so v(g.x) = g.v(x) exactly.
struct PoissonVector {
  L2Function raw;     // taper * sqrt(tile integral / |alpha|^2) on the selected tiles, before renormalization
  SphereVector unit;  // renormalized
  double tail = 0.0;  // 1 - captured share of |alpha|^2 over the selected tiles (before any taper)
};

PoissonVector poisson_vector(const FuchsianGroup& f, const HPoint& x, const PoissonParams& p, const PoissonTiles& tiles);

struct PoissonCycle {
  SimplicialCycle cycle;
  PolygonMesh mesh;
  std::vector<int> vertex_class;   // mesh point -> cycle vertex
  std::vector<Element> twist;      // mesh point = twist . representative
  std::vector<double> tails;       // per cycle vertex
  double max_tail = 0.0;
};

/// Mesh vertices identified by the side pairings; one Poisson vector per class.
PoissonCycle poisson_cycle(const FuchsianGroup& f, const PoissonParams& p);
PoissonCycle poisson_cycle(const FuchsianGroup& f, const PoissonParams& p, const PolygonMesh& mesh);

}  // namespace plateau
