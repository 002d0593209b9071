#include "plateau/barycenter.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <ostream>

namespace plateau {

void ReferenceMeasure::validate() const {
  if (!group || !group->has_representation()) throw GroupError("reference measure needs a group acting on H^n");
  if (atoms.size() != weights.size() || atoms.empty()) throw std::invalid_argument("reference measure is empty");
  double s = 0.0;
  for (double w : weights) {
    if (!(w > 0.0)) throw std::invalid_argument("reference weights must be positive");
    s += w;
  }
  if (std::abs(s - 1.0) > 1e-12) throw std::invalid_argument("reference weights must sum to 1");
}

ReferenceMeasure reference_measure(const GroupPtr& group, int radius, double beta) {
  if (!group->has_representation()) throw GroupError("reference measure needs a group acting on H^n");
  ReferenceMeasure mu;
  mu.group = group;
  mu.beta = beta;
  mu.dimension = group->representation_dimension();
  const HPoint o = lorentz::origin(mu.dimension);
  double total = 0.0;
  for (Element e : group->ball(radius)) {
    const HPoint p = group->orbit_point(e);
    const double w = std::exp(-beta * hyp_distance(o, p));
    mu.elements.push_back(e);
    mu.atoms.push_back(p);
    mu.weights.push_back(w);
    total += w;
  }
  for (double& w : mu.weights) w /= total;
  return mu;
}

ReferenceMeasure dirac_measure(const GroupPtr& group) { return reference_measure(group, 0, 0.0); }

namespace {

struct Atoms {
  std::vector<HPoint> points;
  std::vector<double> weights;
};

// The measure sum_g |f(g)|^2 (g)_* mu as a weighted point set.
Atoms weighted_atoms(const SphereVector& f, const ReferenceMeasure& mu) {
  mu.validate();
  if (f.group() != mu.group) throw GroupError("f and the reference measure live on different groups");
  Atoms a;
  const L2Function& fn = f.function();
  for (std::size_t i = 0; i < fn.size(); ++i) {
    const double s = fn.entry_norm(i) * fn.entry_norm(i);
    if (s == 0.0) continue;
    const Eigen::MatrixXd L = mu.group->lorentz(fn.support()[i]);
    for (std::size_t k = 0; k < mu.atoms.size(); ++k) {
      a.points.push_back(L * mu.atoms[k]);
      a.weights.push_back(s * mu.weights[k]);
    }
  }
  return a;
}

double value_at(const Atoms& a, const HPoint& x) {
  double v = 0.0;
  for (std::size_t k = 0; k < a.points.size(); ++k) v += a.weights[k] * hyp_distance(a.points[k], x);
  return v;
}

// Distinct orbit points are far apart; products g g' reached along different pairs agree only to rounding.
constexpr double kCoincident = 1e-7;

struct LocalModel {
  Eigen::VectorXd grad;     // frame coordinates
  Eigen::MatrixXd hessian;  // K
  Eigen::MatrixXd moment;   // H
  double on_atom = 0.0;     // weight of atoms coinciding with x
  double min_distance = 0.0;
  std::size_t nearest = 0;
};

// Gradient of rho_p at x is -u/|u| with u the tangent part of p; Hessian coth(rho) (I - d rho d rho^T).
LocalModel local_model(const Atoms& a, const HPoint& x, const Eigen::MatrixXd& frame) {
  const int n = static_cast<int>(frame.cols());
  LocalModel m;
  m.grad = Eigen::VectorXd::Zero(n);
  m.hessian = Eigen::MatrixXd::Zero(n, n);
  m.moment = Eigen::MatrixXd::Zero(n, n);
  m.min_distance = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < a.points.size(); ++k) {
    const HPoint& p = a.points[k];
    const double d = hyp_distance(p, x);
    if (d < m.min_distance) {
      m.min_distance = d;
      m.nearest = k;
    }
    if (d < kCoincident) {
      m.on_atom += a.weights[k];
      continue;
    }
    Eigen::VectorXd dir(n);
    for (int i = 0; i < n; ++i) dir(i) = -lorentz::dot(p, frame.col(i));
    dir /= dir.norm();
    const double w = a.weights[k];
    m.grad += w * dir;
    m.moment += w * dir * dir.transpose();
    m.hessian += w / std::tanh(d) * (Eigen::MatrixXd::Identity(n, n) - dir * dir.transpose());
  }
  return m;
}

// Distance from 0 to the subdifferential: atoms sitting at x contribute a ball of radius equal to their weight.
double residual_of(const LocalModel& m) { return std::max(0.0, m.grad.norm() - m.on_atom); }

HPoint exp_map(const HPoint& x, const Eigen::VectorXd& v) {
  const double t = std::sqrt(std::max(0.0, lorentz::dot(v, v)));
  if (t == 0.0) return x;
  return lorentz::renormalize(std::cosh(t) * x + std::sinh(t) / t * v);
}

void check_not_aligned(const Atoms& a, const HPoint& x, const Eigen::MatrixXd& frame) {
  // All weighted atoms on one geodesic <=> the direction moments have rank <= 1 at every point off that line.
  const LocalModel m = local_model(a, x, frame);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.hessian);
  const double scale = std::max(1.0, m.hessian.trace());
  if (es.eigenvalues()(0) < 1e-13 * scale) {
    throw AdmissibilityError("weighted atoms are aligned on one geodesic; the functional is not strictly convex");
  }
}

}  // namespace

double b_value(const SphereVector& f, const ReferenceMeasure& mu, const HPoint& x) {
  return value_at(weighted_atoms(f, mu), x);
}

BarycenterState solve_barycenter(const SphereVector& f, const ReferenceMeasure& mu, const BarycenterOptions& opt) {
  const Atoms a = weighted_atoms(f, mu);
  const int n = mu.dimension;
  // Start from the normalized Minkowski mean of the atoms.
  HPoint x = HPoint::Zero(n + 1);
  for (std::size_t k = 0; k < a.points.size(); ++k) x += a.weights[k] * a.points[k];
  x = lorentz::renormalize(x / std::sqrt(-lorentz::dot(x, x)));
  {
    // A probe slightly off x avoids sitting exactly on an atom.
    Eigen::VectorXd probe = tangent_frame(x).col(0) * 1e-3;
    const HPoint y = exp_map(x, probe);
    check_not_aligned(a, y, tangent_frame(y));
  }
  BarycenterState st;
  st.f = f;
  double value = value_at(a, x);
  int it = 0;
  for (; it < opt.max_iters; ++it) {
    const Eigen::MatrixXd frame = tangent_frame(x);
    const LocalModel m = local_model(a, x, frame);
    const double res = residual_of(m);
    if (res < opt.tolerance) break;
    if (m.min_distance < 1e-2) {
      // Near an atom the functional has a kink; test the atom itself.
      const HPoint& p = a.points[m.nearest];
      if (residual_of(local_model(a, p, tangent_frame(p))) < opt.tolerance) {
        x = p;
        break;
      }
    }
    Eigen::VectorXd step = -m.hessian.ldlt().solve(m.grad);
    double slope = m.grad.dot(step);
    if (m.on_atom > 0.0) {
      // Leaving an atom costs its weight per unit length; move along -grad by the one-dimensional model minimizer.
      const Eigen::VectorXd dir = -m.grad / m.grad.norm();
      step = dir * (res / dir.dot(m.hessian * dir));
      slope = -res * step.norm();
    }
    if (res < 1e-5 && m.on_atom == 0.0) {
      // Quadratic regime: value differences drown in rounding, so judge the full step by the gradient.
      const HPoint y = exp_map(x, frame * step);
      const LocalModel my = local_model(a, y, tangent_frame(y));
      if (residual_of(my) < res) {
        x = y;
        value = value_at(a, y);
        continue;
      }
    }
    double t = 1.0;
    bool accepted = false;
    for (int b = 0; b < 60; ++b) {
      const HPoint y = exp_map(x, frame * (t * step));
      const double vy = value_at(a, y);
      if (vy <= value + opt.armijo * t * slope) {
        x = y;
        value = vy;
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted && m.on_atom == 0.0) {
      // Value comparisons can stall on rounding well above 1e-9; fall back to the gradient norm.
      t = 1.0;
      for (int b = 0; b < 30 && !accepted; ++b, t *= 0.5) {
        const HPoint y = exp_map(x, frame * (t * step));
        if (residual_of(local_model(a, y, tangent_frame(y))) < (1.0 - 1e-4 * t) * res) {
          x = y;
          value = value_at(a, y);
          accepted = true;
        }
      }
    }
    if (!accepted) {
      if (res < 1e-9) break;  // rounding floor of the functional
      char buf[128];
      std::snprintf(buf, sizeof buf, "barycenter line search failed at residual %.3g", res);
      throw std::runtime_error(buf);
    }
  }
  st.x_star = x;
  st.frame = tangent_frame(x);
  const LocalModel m = local_model(a, x, st.frame);
  st.residual = residual_of(m);
  if (st.residual > 1e-8) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "barycenter did not converge (residual %.3g after %d iterations)", st.residual, it);
    throw std::runtime_error(buf);
  }
  st.H = m.moment;
  st.K = m.hessian;
  st.min_atom_distance = m.min_distance;
  st.iterations = it;
  return st;
}

JacobianBound jacobian_bound_check(const BarycenterState& state, int n, double entropy) {
  if (state.K.rows() != n) throw std::invalid_argument("state dimension differs from n");
  JacobianBound j;
  const double det_k = state.K.determinant();
  if (!(det_k > 0.0)) throw std::invalid_argument("K is singular");
  j.lhs = std::pow(2.0, n) * std::sqrt(std::max(0.0, state.H.determinant())) / det_k;
  j.rhs = std::pow(4.0 * n / (entropy * entropy), 0.5 * n);
  const Eigen::MatrixXd diff = state.K - (Eigen::MatrixXd::Identity(n, n) - state.H);
  j.min_eig_k_minus = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(diff).eigenvalues()(0);
  j.trace_h = state.H.trace();
  return j;
}

double numeric_jacobian(const SphereVector& f, const ReferenceMeasure& mu, const std::vector<L2Function>& frame,
                        double h_step) {
  const BarycenterState base = solve_barycenter(f, mu);
  const int n = mu.dimension;
  if (static_cast<int>(frame.size()) != n) throw std::invalid_argument("numeric Jacobian needs n directions");
  Eigen::MatrixXd D(n, n);
  for (int i = 0; i < n; ++i) {
    const auto moved = [&](double t) {
      return solve_barycenter(SphereVector::normalize(f.function().combined(1.0, frame[i], t)), mu).x_star;
    };
    const HPoint plus = moved(h_step), minus = moved(-h_step);
    const Eigen::VectorXd d = (hyp_log(base.x_star, plus) - hyp_log(base.x_star, minus)) / (2.0 * h_step);
    for (int k = 0; k < n; ++k) D(k, i) = lorentz::dot(d, base.frame.col(k));
  }
  return std::abs(D.determinant());
}

std::vector<L2Function> random_tangent_frame(const SphereVector& f, int count, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<L2Function> out;
  const L2Function& fn = f.function();
  for (int attempt = 0; static_cast<int>(out.size()) < count; ++attempt) {
    if (attempt > 10 * count + 10) throw std::invalid_argument("support too small for the requested tangent frame");
    std::vector<std::pair<Element, std::vector<double>>> e;
    for (std::size_t i = 0; i < fn.size(); ++i) {
      std::vector<double> amp(f.payload());
      for (auto& x : amp) x = normal(rng);
      e.push_back({fn.support()[i], amp});
    }
    L2Function v = L2Function::from_entries(f.group(), f.payload(), e);
    v = v.combined(1.0, fn, -fn.inner(v));
    for (const auto& u : out) v = v.combined(1.0, u, -u.inner(v));
    const double norm = v.norm();
    if (norm < 1e-8) continue;
    out.push_back(v.scaled(1.0 / norm));
  }
  return out;
}

std::vector<BarycenterSample> barycenter_batch(const ReferenceMeasure& mu, const BarycenterBatch& batch) {
  mu.validate();
  const Group& G = *mu.group;
  const int n = mu.dimension;
  const double h = batch.entropy < 0.0 ? n - 1.0 : batch.entropy;
  const auto pool = G.ball(batch.support_radius);
  const auto gens = G.symmetric_generators();
  std::mt19937_64 rng(batch.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<BarycenterSample> rows;
  int attempts = 0;
  while (static_cast<int>(rows.size()) < batch.samples) {
    if (++attempts > 50 * batch.samples) throw std::runtime_error("too many rejected barycenter samples");
    std::vector<Element> support = pool;
    std::shuffle(support.begin(), support.end(), rng);
    support.resize(std::min<std::size_t>(support.size(), static_cast<std::size_t>(batch.support_size)));
    std::vector<std::pair<Element, std::vector<double>>> e;
    for (Element s : support) e.push_back({s, {normal(rng)}});
    const SphereVector f = SphereVector::normalize(L2Function::from_entries(mu.group, 1, e));
    BarycenterState st;
    try {
      st = solve_barycenter(f, mu);
    } catch (const AdmissibilityError&) {
      continue;
    }
    if (st.min_atom_distance < batch.min_atom_distance) continue;
    BarycenterSample row;
    row.id = static_cast<int>(rows.size());
    row.n = n;
    row.residual = st.residual;
    const JacobianBound jb = jacobian_bound_check(st, n, h);
    row.trace_h = jb.trace_h;
    row.min_eig = jb.min_eig_k_minus;
    row.lhs = jb.lhs;
    row.rhs = jb.rhs;
    row.min_atom_distance = st.min_atom_distance;
    row.numeric_jacobian = numeric_jacobian(f, mu, random_tangent_frame(f, n, rng), batch.h_step);
    const Element g = gens[rows.size() % gens.size()];
    const HPoint moved = solve_barycenter(act(g, f), mu).x_star;
    row.equivariance_error = hyp_distance(moved, G.lorentz(g) * st.x_star);
    rows.push_back(row);
  }
  return rows;
}

void write_barycenter_csv(std::ostream& os, const std::vector<BarycenterSample>& rows) {
  os << "sample,n,residual,trace_h,min_eig_k_minus_i_minus_h,lhs,rhs,numeric_jacobian,equivariance_error,"
        "min_atom_distance\n";
  char buf[512];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%d,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.id, r.n, r.residual,
                  r.trace_h, r.min_eig, r.lhs, r.rhs, r.numeric_jacobian, r.equivariance_error, r.min_atom_distance);
    os << buf;
  }
}

}  // namespace plateau
