#include "plateau/kernels.hpp"

#include "plateau/lorentz.hpp"

#include <omp.h>

#include <cmath>

namespace plateau {

void set_kernel_threads(int threads) {
  if (threads > 0) omp_set_num_threads(threads);
}

namespace {

struct Frame {
  Eigen::MatrixXd coords;   // C with C^T C = gram
  Eigen::MatrixXd back;     // pseudo-inverse factor: coefficients = back * grad_C
  bool degenerate = false;
};

Frame frame_of(const Eigen::MatrixXd& gram) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
  const Eigen::VectorXd d = es.eigenvalues();
  const Eigen::MatrixXd& u = es.eigenvectors();
  const int m = static_cast<int>(gram.rows());
  Frame f;
  f.coords.resize(m, m);
  f.back = Eigen::MatrixXd::Zero(m, m);
  const double top = std::max(d.maxCoeff(), 1e-300);
  for (int i = 0; i < m; ++i) {
    const double s = std::sqrt(std::max(d(i), 0.0));
    f.coords.row(i) = s * u.col(i).transpose();
    if (d(i) > 1e-28 * top) f.back.col(i) = u.col(i) / s;
  }
  // Edge vectors: the simplex is degenerate when they are (numerically) dependent.
  const int n = m - 1;
  if (n > 0) {
    Eigen::MatrixXd e(m, n);
    for (int i = 1; i <= n; ++i) e.col(i - 1) = f.coords.col(i) - f.coords.col(0);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(e);
    const auto sv = svd.singularValues();
    f.degenerate = !(sv(n - 1) > 1e-10 * std::max(sv(0), 1e-300)) || sv(0) == 0.0;
  }
  return f;
}

}  // namespace

SimplexVolume simplex_volume_from_gram(const Eigen::MatrixXd& gram, const SimplexRule& rule, bool with_gradient) {
  const int m = static_cast<int>(gram.rows());
  const int n = m - 1;
  if (n != rule.dim) throw std::invalid_argument("simplex rule dimension mismatch");
  SimplexVolume out;
  const Frame fr = frame_of(gram);
  if (fr.degenerate) {
    out.degenerate = true;
    if (with_gradient) out.coefficients = Eigen::MatrixXd::Zero(m, m);
    return out;
  }
  const Eigen::MatrixXd& c = fr.coords;
  Eigen::MatrixXd e(m, n);
  for (int i = 1; i <= n; ++i) e.col(i - 1) = c.col(i) - c.col(0);
  Eigen::MatrixXd grad_c = Eigen::MatrixXd::Zero(m, m);
  double vol = 0.0;
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const Eigen::VectorXd& lam = rule.lambdas[q];
    const Eigen::VectorXd s = c * lam;
    const double r = s.norm();
    const Eigen::VectorXd f = s / r;
    const Eigen::VectorXd fe = e.transpose() * f;
    const Eigen::MatrixXd t = (e - f * fe.transpose()) / r;
    const Eigen::MatrixXd g = t.transpose() * t;
    Eigen::LLT<Eigen::MatrixXd> llt(g);
    double det = 1.0;
    if (llt.info() == Eigen::Success) {
      const Eigen::MatrixXd l = llt.matrixL();
      for (int i = 0; i < n; ++i) det *= l(i, i);
    } else {
      det = std::sqrt(std::max(g.determinant(), 0.0));
    }
    const double jw = det * rule.weights[q];
    vol += jw;
    if (with_gradient && llt.info() == Eigen::Success) {
      const Eigen::MatrixXd w = llt.solve(t.transpose()).transpose();  // T G^-1
      const Eigen::VectorXd wsum = w * fe;                              // sum_i (f.e_i) W_i
      Eigen::VectorXd wall = w.rowwise().sum();                         // sum_i W_i
      for (int k = 0; k < m; ++k) {
        Eigen::VectorXd gk = -lam(k) / r * wsum - n * lam(k) * f;
        if (k == 0) {
          gk -= wall;
        } else {
          gk += w.col(k - 1);
        }
        grad_c.col(k) += (jw / r) * gk;
      }
    }
  }
  out.volume = vol;
  if (with_gradient) out.coefficients = fr.back * grad_c;
  return out;
}

std::vector<double> simplex_node_masses(const Eigen::MatrixXd& gram, const SimplexRule& rule) {
  const int m = static_cast<int>(gram.rows());
  const int n = m - 1;
  std::vector<double> out(rule.size(), 0.0);
  const Frame fr = frame_of(gram);
  if (fr.degenerate) return out;
  Eigen::MatrixXd e(m, n);
  for (int i = 1; i <= n; ++i) e.col(i - 1) = fr.coords.col(i) - fr.coords.col(0);
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const Eigen::VectorXd s = fr.coords * rule.lambdas[q];
    const double r = s.norm();
    const Eigen::VectorXd f = s / r;
    const Eigen::MatrixXd t = (e - f * (e.transpose() * f).transpose()) / r;
    out[q] = std::sqrt(std::max((t.transpose() * t).determinant(), 0.0)) * rule.weights[q];
  }
  return out;
}

std::vector<SimplexVolume> simplex_volumes_serial(const std::vector<Eigen::MatrixXd>& grams, const SimplexRule& rule,
                                                  bool with_gradient) {
  std::vector<SimplexVolume> out(grams.size());
  for (std::size_t i = 0; i < grams.size(); ++i) out[i] = simplex_volume_from_gram(grams[i], rule, with_gradient);
  return out;
}

std::vector<SimplexVolume> simplex_volumes_parallel(const std::vector<Eigen::MatrixXd>& grams,
                                                    const SimplexRule& rule, bool with_gradient) {
  std::vector<SimplexVolume> out(grams.size());
  const auto count = static_cast<std::ptrdiff_t>(grams.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t i = 0; i < count; ++i) out[i] = simplex_volume_from_gram(grams[i], rule, with_gradient);
  return out;
}

std::vector<SimplexVolume> simplex_volumes(const std::vector<Eigen::MatrixXd>& grams, const SimplexRule& rule,
                                           bool with_gradient, ExecutionPolicy policy) {
  return policy == ExecutionPolicy::Parallel ? simplex_volumes_parallel(grams, rule, with_gradient)
                                             : simplex_volumes_serial(grams, rule, with_gradient);
}

namespace {

double tile_value(const TileProblem& p, std::size_t k, const PointCloud& fine, const PointCloud& coarse) {
  const Eigen::VectorXd y = p.inverse_tiles[k] * p.x;
  const PointCloud& cloud = lorentz::distance(p.x, p.tile_centers[k]) > p.far_distance ? coarse : fine;
  double s = 0.0;
  for (std::size_t j = 0; j < cloud.points.size(); ++j) {
    // exp(-c acosh t) = (t + sqrt(t^2 - 1))^-c
    const double t = std::max(1.0, -lorentz::dot(y, cloud.points[j]));
    s += cloud.weights[j] * std::pow(t + std::sqrt(t * t - 1.0), -p.c);
  }
  return s;
}

}  // namespace

std::vector<double> tile_integrals_serial(const TileProblem& p, const PointCloud& fine, const PointCloud& coarse) {
  std::vector<double> out(p.inverse_tiles.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = tile_value(p, k, fine, coarse);
  return out;
}

std::vector<double> tile_integrals_parallel(const TileProblem& p, const PointCloud& fine, const PointCloud& coarse) {
  std::vector<double> out(p.inverse_tiles.size());
  const auto count = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t k = 0; k < count; ++k) out[k] = tile_value(p, static_cast<std::size_t>(k), fine, coarse);
  return out;
}

std::vector<double> tile_integrals(const TileProblem& p, const PointCloud& fine, const PointCloud& coarse,
                                   ExecutionPolicy policy) {
  return policy == ExecutionPolicy::Parallel ? tile_integrals_parallel(p, fine, coarse)
                                             : tile_integrals_serial(p, fine, coarse);
}

}  // namespace plateau
