#include "plateau/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace plateau {

namespace {

// Eigen-decomposition of the symmetric Jacobi matrix; weights from first components.
GaussRule golub_welsch(const Eigen::VectorXd& diag, const Eigen::VectorXd& off, double mu0) {
  const int n = static_cast<int>(diag.size());
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) j(i, i) = diag(i);
  for (int i = 0; i + 1 < n; ++i) j(i, i + 1) = j(i + 1, i) = off(i);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
  GaussRule r;
  for (int i = 0; i < n; ++i) {
    r.nodes.push_back(es.eigenvalues()(i));
    const double v = es.eigenvectors()(0, i);
    r.weights.push_back(mu0 * v * v);
  }
  return r;
}

}  // namespace

GaussRule gauss_jacobi01(int q, double alpha) {
  if (q < 1) throw std::invalid_argument("quadrature order must be >= 1");
  // Jacobi polynomials on [-1, 1] with weight (1 - t)^a (1 + t)^b, b = 0.
  const double a = alpha, b = 0.0;
  Eigen::VectorXd diag(q), off(std::max(q - 1, 0));
  diag(0) = (b - a) / (a + b + 2.0);
  for (int k = 1; k < q; ++k) {
    const double s = 2.0 * k + a + b;
    diag(k) = (b * b - a * a) / (s * (s + 2.0));
  }
  for (int k = 1; k < q; ++k) {
    const double s = 2.0 * k + a + b;
    off(k - 1) = std::sqrt(4.0 * k * (k + a) * (k + b) * (k + a + b) / (s * s * (s + 1.0) * (s - 1.0)));
  }
  const double mu0 = std::pow(2.0, a + b + 1.0) * std::tgamma(a + 1.0) * std::tgamma(b + 1.0) / std::tgamma(a + b + 2.0);
  GaussRule r = golub_welsch(diag, off, mu0);
  // t in [-1, 1] -> x = (1 + t) / 2; (1 - t)^a dt = 2^(a+1) (1 - x)^a dx.
  const double scale = std::pow(2.0, -(a + 1.0));
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    r.nodes[i] = 0.5 * (1.0 + r.nodes[i]);
    r.weights[i] *= scale;
  }
  return r;
}

GaussRule gauss_legendre(int q, double lo, double hi) {
  GaussRule r = gauss_jacobi01(q, 0.0);
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    r.nodes[i] = lo + (hi - lo) * r.nodes[i];
    r.weights[i] *= (hi - lo);
  }
  return r;
}

GaussRule gauss_laguerre(int q) {
  if (q < 1) throw std::invalid_argument("quadrature order must be >= 1");
  Eigen::VectorXd diag(q), off(std::max(q - 1, 0));
  for (int k = 0; k < q; ++k) diag(k) = 2.0 * k + 1.0;
  for (int k = 1; k < q; ++k) off(k - 1) = k;
  return golub_welsch(diag, off, 1.0);
}

SimplexRule SimplexRule::conical(int dim, int q) {
  if (dim < 1) throw std::invalid_argument("simplex dimension must be >= 1");
  // Collapsed coordinates: lambda_1 = u_1, lambda_k = u_k prod_{j<k} (1 - u_j).
  // The Jacobian prod (1 - u_j)^(dim - j) is absorbed into Jacobi weights.
  std::vector<GaussRule> axes;
  for (int k = 1; k <= dim; ++k) axes.push_back(gauss_jacobi01(q, dim - k));
  SimplexRule rule;
  rule.dim = dim;
  rule.order = q;
  std::vector<int> idx(dim, 0);
  while (true) {
    Eigen::VectorXd lam = Eigen::VectorXd::Zero(dim + 1);
    double w = 1.0, rest = 1.0;
    for (int k = 0; k < dim; ++k) {
      const double u = axes[k].nodes[idx[k]];
      lam(k + 1) = u * rest;
      rest *= (1.0 - u);
      w *= axes[k].weights[idx[k]];
    }
    lam(0) = rest;
    rule.lambdas.push_back(lam);
    rule.weights.push_back(w);
    int k = dim - 1;
    while (k >= 0 && ++idx[k] == q) idx[k--] = 0;
    if (k < 0) break;
  }
  return rule;
}

}  // namespace plateau
