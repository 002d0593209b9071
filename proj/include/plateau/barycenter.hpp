#pragma once

// Barycenter map for groups acting on H^n (n = 2, 3): the functional
// B_f(x) = sum_g f(g)^2 sum_g' w(g') d(g g'.o, x), its minimizer, and the
// moment matrices H_f, K_f behind the Jacobian bounds.

#include "plateau/hyperbolic.hpp"
#include "plateau/hilbert_sphere.hpp"

#include <iosfwd>
#include <random>
#include <stdexcept>
#include <vector>

namespace plateau {

struct AdmissibilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ReferenceMeasure {
  GroupPtr group;
  std::vector<Element> elements;
  std::vector<double> weights;  // sum 1
  std::vector<HPoint> atoms;    // g'.o
  double beta = 0.0;
  int dimension = 0;

  void validate() const;
};

/// Atoms g'.o for g' in ball(radius), weights proportional to exp(-beta d(o, g'.o)).
ReferenceMeasure reference_measure(const GroupPtr& group, int radius, double beta);
/// Single atom at o.
ReferenceMeasure dirac_measure(const GroupPtr& group);

double b_value(const SphereVector& f, const ReferenceMeasure& mu, const HPoint& x);

struct BarycenterState {
  SphereVector f;
  HPoint x_star;
  double residual = 0.0;
  Eigen::MatrixXd frame;  // orthonormal tangent basis at x_star used for H and K
  Eigen::MatrixXd H;
  Eigen::MatrixXd K;
  double min_atom_distance = 0.0;
  int iterations = 0;
};

struct BarycenterOptions {
  int max_iters = 200;
  double tolerance = 1e-12;
  double armijo = 1e-4;
};

/// Damped Newton on the convex functional; throws AdmissibilityError when the
/// weighted atoms lie on one geodesic and std::runtime_error on non-convergence.
BarycenterState solve_barycenter(const SphereVector& f, const ReferenceMeasure& mu, const BarycenterOptions& opt = {});

struct JacobianBound {
  double lhs = 0.0;  // 2^n sqrt(det H) / det K
  double rhs = 0.0;  // (4n / h^2)^(n/2)
  double min_eig_k_minus = 0.0;  // min eigenvalue of K - (I - H)
  double trace_h = 0.0;
};

JacobianBound jacobian_bound_check(const BarycenterState& state, int n, double entropy);

/// Central differences of bar along n tangent directions of the sphere at f;
/// returns |det| of the image difference quotients in the tangent frame at bar(f).
double numeric_jacobian(const SphereVector& f, const ReferenceMeasure& mu, const std::vector<L2Function>& frame,
                        double h_step = 1e-5);

/// Orthonormal tangent directions at f on its support (Gram-Schmidt of Gaussian vectors).
std::vector<L2Function> random_tangent_frame(const SphereVector& f, int count, std::mt19937_64& rng);

struct BarycenterSample {
  int id = 0;
  int n = 0;
  double residual = 0.0;
  double trace_h = 0.0;
  double min_eig = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double numeric_jacobian = 0.0;
  double equivariance_error = 0.0;
  double min_atom_distance = 0.0;
};

struct BarycenterBatch {
  int samples = 100;
  int support_radius = 2;  // f is drawn on a random subset of ball(support_radius)
  int support_size = 12;
  double min_atom_distance = 0.5;
  double h_step = 1e-5;
  double entropy = -1.0;   // -1: n - 1
  std::uint64_t seed = 1;
};

std::vector<BarycenterSample> barycenter_batch(const ReferenceMeasure& mu, const BarycenterBatch& batch);
void write_barycenter_csv(std::ostream& os, const std::vector<BarycenterSample>& rows);

}  // namespace plateau
