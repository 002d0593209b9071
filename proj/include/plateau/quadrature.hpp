#pragma once

// Gauss rules on intervals and conical-product rules on simplices.

#include <Eigen/Dense>

#include <vector>

namespace plateau {

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Jacobi rule on [0, 1] for the weight (1 - x)^alpha, q nodes (Golub-Welsch).
GaussRule gauss_jacobi01(int q, double alpha);
/// Gauss-Legendre on [a, b].
GaussRule gauss_legendre(int q, double a, double b);
/// Gauss-Laguerre for the weight exp(-x) on [0, inf).
GaussRule gauss_laguerre(int q);

/// Rule on the reference n-simplex {lambda_i >= 0, sum lambda_i = 1}.
/// Exact for polynomials of degree 2q - 1 in the barycentric coordinates; weights sum to 1/n!.
struct SimplexRule {
  int dim = 0;
  int order = 0;
  std::vector<Eigen::VectorXd> lambdas;  // n + 1 barycentric coordinates per node
  std::vector<double> weights;

  static SimplexRule conical(int dim, int q);
  std::size_t size() const { return weights.size(); }
};

}  // namespace plateau
