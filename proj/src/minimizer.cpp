#include "plateau/minimizer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

namespace plateau {

namespace {

L2Function tangent_part(const SphereVector& v, const L2Function& g) {
  return g.combined(1.0, v.function(), -v.function().inner(g));
}

double total_norm2(const std::vector<L2Function>& g) {
  double s = 0.0;
  for (const auto& x : g) s += x.squared_norm();
  return s;
}

}  // namespace

std::vector<L2Function> mass_gradient(const SimplicialCycle& c, int q, ExecutionPolicy policy, int support_radius) {
  c.validate();
  if (c.dim < 1) throw std::invalid_argument("mass gradient needs dimension >= 1");
  if (support_radius >= 0) c.group->ball(support_radius);
  std::vector<Eigen::MatrixXd> grams;
  for (std::size_t s = 0; s < c.simplices.size(); ++s) grams.push_back(c.gram(s));
  const auto vols = simplex_volumes(grams, SimplexRule::conical(c.dim, q), true, policy);
  std::vector<L2Function> grad;
  for (const auto& v : c.vertices) grad.emplace_back(c.group, v.payload());
  for (std::size_t s = 0; s < c.simplices.size(); ++s) {
    if (vols[s].degenerate) throw std::invalid_argument("mass gradient: degenerate simplex " + std::to_string(s));
    const auto& simplex = c.simplices[s];
    const double mult = std::abs(simplex.multiplicity);
    for (std::size_t k = 0; k < simplex.corners.size(); ++k) {
      // Corner k's gradient sum_j coef(j, k) t_j v_j, pulled back by t_k^-1.
      L2Function gk(c.group, c.vertices[simplex.corners[k].vertex].payload());
      for (std::size_t j = 0; j < simplex.corners.size(); ++j) {
        const Element rel = c.relative_twist(s, k, j);
        const L2Function& vj = c.vertices[simplex.corners[j].vertex].function();
        const L2Function moved = support_radius >= 0 ? act_within(rel, vj, support_radius) : act(rel, vj);
        gk = gk.combined(1.0, moved, mult * vols[s].coefficients(j, k));
      }
      const int v = simplex.corners[k].vertex;
      grad[v] = grad[v].combined(1.0, gk, 1.0);
    }
  }
  for (std::size_t i = 0; i < grad.size(); ++i) grad[i] = tangent_part(c.vertices[i], grad[i]);
  return grad;
}

GradientCheck check_gradient(const SimplicialCycle& c, int q, double h, std::mt19937_64& rng, int support_radius) {
  const auto grad = mass_gradient(c, q, ExecutionPolicy::Serial, support_radius);
  GradientCheck out;
  std::normal_distribution<double> normal(0.0, 1.0);
  for (std::size_t i = 0; i < c.vertices.size(); ++i) {
    const SphereVector& v = c.vertices[i];
    // Random direction on the union of the vertex and gradient supports.
    std::vector<std::pair<Element, std::vector<double>>> e;
    for (const auto* f : {&v.function(), &grad[i]}) {
      for (std::size_t k = 0; k < f->size(); ++k) {
        std::vector<double> amp(v.payload());
        for (auto& a : amp) a = normal(rng);
        e.push_back({f->support()[k], amp});
      }
    }
    L2Function dir = tangent_part(v, L2Function::from_entries(c.group, v.payload(), e));
    dir = dir.scaled(1.0 / std::max(dir.norm(), 1e-300));
    const double gn = grad[i].norm();
    if (gn > 0.0) dir = dir.scaled(0.5).combined(1.0, grad[i], 1.0 / gn);
    auto moved = [&](double t) {
      SimplicialCycle m = c;
      m.vertices[i] = SphereVector::normalize(v.function().combined(1.0, dir, t));
      return mass(m, q, ExecutionPolicy::Serial).total;
    };
    const double numeric = (moved(h) - moved(-h)) / (2.0 * h);
    const double analytic = grad[i].inner(dir);
    const double scale = std::max({std::abs(analytic), std::abs(numeric), 1e-3 * gn, 1e-12});
    const double rel = std::abs(numeric - analytic) / scale;
    if (rel >= out.max_relative_error) {
      out.max_relative_error = rel;
      out.worst_analytic = analytic;
      out.worst_numeric = numeric;
    }
  }
  return out;
}

void DescentConfig::validate() const {
  if (max_iters < 0 || !(step0 > 0.0) || !(backtrack > 0.0 && backtrack < 1.0) || !(armijo > 0.0) ||
      !(grad_tol > 0.0) || quadrature_order < 1 || !(delta_min >= 0.0) || smooth_every < 0) {
    throw std::invalid_argument("invalid descent configuration");
  }
  if (smooth_every > 0) smoothing.validate();
}

double min_vertex_displacement(const SimplicialCycle& c, int radius) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& v : c.vertices) m = std::min(m, displacement(v, radius < 0 ? default_radius(v) : radius).delta);
  return m;
}

SimplicialCycle smooth_step(const SimplicialCycle& c, const Weights& eta) {
  eta.validate();
  SimplicialCycle out = c;
  for (auto& v : out.vertices) v = convolve(eta, v);
  return out;
}

namespace {

SphereVector pruned(const L2Function& f, double threshold) {
  if (threshold <= 0.0) return SphereVector::normalize(f);
  std::vector<std::pair<Element, std::vector<double>>> e;
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (f.entry_norm(k) < threshold) continue;
    auto a = f.amplitude(k);
    e.push_back({f.support()[k], {a.begin(), a.end()}});
  }
  return SphereVector::normalize(L2Function::from_entries(f.group(), f.payload(), e));
}

}  // namespace

DescentResult descend(const SimplicialCycle& start, const DescentConfig& config) {
  config.validate();
  if (boundary_check(start, config.quadrature_order) > 1e-10) {
    throw std::invalid_argument("descent needs a cycle (boundary residual is nonzero)");
  }
  DescentResult r;
  r.cycle = start;
  const int q = config.quadrature_order;
  double m = mass(r.cycle, q).total;
  r.initial_mass = m;
  double step = 0.0;
  for (int it = 0;; ++it) {
    auto grad = mass_gradient(r.cycle, q, ExecutionPolicy::Parallel, config.support_radius);
    const double g2 = total_norm2(grad);
    const double disp = min_vertex_displacement(r.cycle, config.displacement_radius);
    r.trace.push_back({it, m, std::sqrt(g2), disp, step, false});
    if (disp < config.delta_min) {
      r.collapsed = true;
      r.stop_reason = "collapse";
      break;
    }
    if (std::sqrt(g2) < config.grad_tol) {
      r.converged = true;
      r.stop_reason = "gradient";
      break;
    }
    if (it >= config.max_iters) {
      r.stop_reason = "max_iters";
      break;
    }
    // Armijo backtracking on the retraction v -> normalize(v - t g).
    double t = config.step0;
    bool accepted = false;
    SimplicialCycle trial = r.cycle;
    double trial_mass = m;
    for (int b = 0; b < config.max_backtracks; ++b) {
      for (std::size_t i = 0; i < trial.vertices.size(); ++i) {
        trial.vertices[i] = pruned(r.cycle.vertices[i].function().combined(1.0, grad[i], -t), config.prune_below);
      }
      trial_mass = mass(trial, q).total;
      if (trial_mass <= m - config.armijo * t * g2) {
        accepted = true;
        break;
      }
      t *= config.backtrack;
    }
    if (!accepted) {
      r.stop_reason = "line_search";
      break;
    }
    r.cycle = std::move(trial);
    m = trial_mass;
    step = t;
    if (config.smooth_every > 0 && (it + 1) % config.smooth_every == 0) {
      SimplicialCycle smoothed = smooth_step(r.cycle, config.smoothing);
      const double sm = mass(smoothed, q).total;
      if (sm <= m + 1e-8) {
        r.cycle = std::move(smoothed);
        m = std::min(m, sm);
        r.trace.push_back({it, sm, 0.0, min_vertex_displacement(r.cycle, config.displacement_radius), 0.0, true});
      }
    }
  }
  r.final_mass = m;
  return r;
}

void write_trace_csv(std::ostream& os, const std::vector<TraceRow>& trace) {
  os << "iteration,mass,grad_norm,min_displacement,step,smoothing\n";
  char buf[256];
  for (const auto& row : trace) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g,%d\n", row.iteration, row.mass, row.grad_norm,
                  row.min_displacement, row.step, row.smoothing ? 1 : 0);
    os << buf;
  }
}

SimplicialCycle octahedral_sphere(const GroupPtr& group, Element a, Element b, Element c) {
  SimplicialCycle s;
  s.group = group;
  s.dim = 2;
  const L2Function da = L2Function::dirac(group, a), db = L2Function::dirac(group, b), dc = L2Function::dirac(group, c);
  // 0:+a 1:-a 2:+b 3:-b 4:+c 5:-c
  s.vertices = {SphereVector(da), SphereVector(da.scaled(-1.0)), SphereVector(db),
                SphereVector(db.scaled(-1.0)), SphereVector(dc), SphereVector(dc.scaled(-1.0))};
  const Element e = group->identity();
  for (int sa : {0, 1}) {
    for (int sb : {2, 3}) {
      for (int sc : {4, 5}) {
        // Orient outward: the sign of the octant flips the order.
        const int parity = (sa == 1) + (sb == 3) + (sc == 5);
        if (parity % 2 == 0) {
          s.simplices.push_back({{{sa, e}, {sb, e}, {sc, e}}, 1});
        } else {
          s.simplices.push_back({{{sa, e}, {sc, e}, {sb, e}}, 1});
        }
      }
    }
  }
  return s;
}

}  // namespace plateau
