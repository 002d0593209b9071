#pragma once

// Mass descent over vertex lifts with frozen combinatorics and twists.

#include "plateau/cycle.hpp"

#include <iosfwd>
#include <random>
#include <string>
#include <vector>

namespace plateau {

/// Per-vertex derivative of mass, projected to the tangent space of the sphere at each lift.
/// With support_radius >= 0 the gradient is that of mass restricted to l2(ball(support_radius)).
std::vector<L2Function> mass_gradient(const SimplicialCycle& c, int q = 8,
                                      ExecutionPolicy policy = ExecutionPolicy::Parallel, int support_radius = -1);

struct GradientCheck {
  double max_relative_error = 0.0;
  double worst_analytic = 0.0;
  double worst_numeric = 0.0;
};

/// Central finite differences along the normalized gradient mixed with a random tangent direction, per vertex.
GradientCheck check_gradient(const SimplicialCycle& c, int q, double h, std::mt19937_64& rng, int support_radius = -1);

struct DescentConfig {
  int max_iters = 200;
  double step0 = 0.1;
  double backtrack = 0.5;
  double armijo = 1e-4;
  double grad_tol = 1e-8;
  int max_backtracks = 40;
  int smooth_every = 0;  // 0 disables smoothing
  Weights smoothing;
  int quadrature_order = 8;
  double delta_min = 1e-3;
  int displacement_radius = -1;  // -1: twice the largest support length plus one
  double prune_below = 0.0;      // drop entries with |amplitude| below this after each step
  int support_radius = -1;       // restrict updates to l2(ball(R)); -1: unrestricted

  void validate() const;
};

struct TraceRow {
  int iteration = 0;
  double mass = 0.0;
  double grad_norm = 0.0;
  double min_displacement = 0.0;
  double step = 0.0;
  bool smoothing = false;
};

struct DescentResult {
  SimplicialCycle cycle;
  std::vector<TraceRow> trace;
  bool converged = false;
  bool collapsed = false;
  std::string stop_reason;
  double initial_mass = 0.0;
  double final_mass = 0.0;
};

DescentResult descend(const SimplicialCycle& c, const DescentConfig& config);

/// Convolve every vertex lift with eta.
SimplicialCycle smooth_step(const SimplicialCycle& c, const Weights& eta);

double min_vertex_displacement(const SimplicialCycle& c, int radius = -1);

void write_trace_csv(std::ostream& os, const std::vector<TraceRow>& trace);

/// Great 2-sphere through +-three orthonormal Diracs, triangulated as an octahedron.
SimplicialCycle octahedral_sphere(const GroupPtr& group, Element a, Element b, Element c);

}  // namespace plateau
