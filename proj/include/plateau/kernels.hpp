#pragma once

// Data-parallel numerical kernels. Each has a serial reference and an OpenMP
// variant; both produce bitwise-identical results (no cross-item reductions).

#include "plateau/quadrature.hpp"

#include <Eigen/Dense>

#include <vector>

namespace plateau {

enum class ExecutionPolicy { Serial, Parallel };

/// Number of OpenMP threads used by Parallel kernels (0 leaves the runtime default).
void set_kernel_threads(int threads);

struct SimplexVolume {
  double volume = 0.0;
  bool degenerate = false;
  /// d volume / d lift_k = sum_j lift_j * coefficients(j, k), before projection to the sphere.
  Eigen::MatrixXd coefficients;
};

/// Volume of the radial projection of the simplex whose corner lifts have Gram matrix `gram`.
SimplexVolume simplex_volume_from_gram(const Eigen::MatrixXd& gram, const SimplexRule& rule, bool with_gradient);

/// Per-node sqrt(det Gram) * weight, so that sum = volume (used for thick-mass sampling).
std::vector<double> simplex_node_masses(const Eigen::MatrixXd& gram, const SimplexRule& rule);

std::vector<SimplexVolume> simplex_volumes_serial(const std::vector<Eigen::MatrixXd>& grams, const SimplexRule& rule,
                                                  bool with_gradient);
std::vector<SimplexVolume> simplex_volumes_parallel(const std::vector<Eigen::MatrixXd>& grams,
                                                    const SimplexRule& rule, bool with_gradient);
std::vector<SimplexVolume> simplex_volumes(const std::vector<Eigen::MatrixXd>& grams, const SimplexRule& rule,
                                           bool with_gradient, ExecutionPolicy policy);

/// Weighted point cloud on H^n (hyperboloid coordinates).
struct PointCloud {
  std::vector<Eigen::VectorXd> points;
  std::vector<double> weights;
};

/// For each tile isometry g: sum_j w_j exp(-c d(x, g y_j)), evaluated as
/// exp(-c d(g^-1 x, y_j)). Tiles whose center lies farther than `far_distance`
/// from x use the coarse cloud.
struct TileProblem {
  Eigen::VectorXd x;
  std::vector<Eigen::MatrixXd> inverse_tiles;
  std::vector<Eigen::VectorXd> tile_centers;  // g.o
  double c = 1.5;
  double far_distance = 6.0;
};

std::vector<double> tile_integrals_serial(const TileProblem& p, const PointCloud& fine, const PointCloud& coarse);
std::vector<double> tile_integrals_parallel(const TileProblem& p, const PointCloud& fine, const PointCloud& coarse);
std::vector<double> tile_integrals(const TileProblem& p, const PointCloud& fine, const PointCloud& coarse,
                                   ExecutionPolicy policy);

}  // namespace plateau
