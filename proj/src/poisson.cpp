#include "plateau/poisson.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace plateau {

double alpha_norm2(double c, int n) {
  if (n == 2) {
    if (!(c > 1.0)) throw std::invalid_argument("Poisson embedding needs c > 1 on H^2");
    return 2.0 * std::numbers::pi / (c * c - 1.0);
  }
  if (n == 3) {
    if (!(c > 2.0)) throw std::invalid_argument("Poisson embedding needs c > 2 on H^3");
    return 8.0 * std::numbers::pi / (c * (c * c - 4.0));
  }
  throw std::invalid_argument("Poisson embedding implemented for n = 2, 3");
}

namespace {

// Radial nodes for integral_0^inf exp(-c r) sinh^(n-1)(r) g(r) dr with g bounded:
// composite Gauss-Legendre on [0, 20] and a Gauss-Laguerre tail at the decay rate c - (n - 1).
GaussRule radial_rule(double c, int n) {
  GaussRule out;
  const double split = 20.0;
  for (int panel = 0; panel < 40; ++panel) {
    const GaussRule gl = gauss_legendre(10, 0.5 * panel, 0.5 * (panel + 1));
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      const double r = gl.nodes[i];
      out.nodes.push_back(r);
      out.weights.push_back(gl.weights[i] * std::exp(-c * r) * std::pow(std::sinh(r), n - 1));
    }
  }
  const double kappa = c - (n - 1);
  const GaussRule lag = gauss_laguerre(40);
  for (std::size_t i = 0; i < lag.nodes.size(); ++i) {
    const double r = split + lag.nodes[i] / kappa;
    // exp(-c r) sinh^(n-1) r = exp(-kappa r) * [exp(-(n-1) r) sinh^(n-1) r]
    const double h = std::pow(0.5 * (1.0 - std::exp(-2.0 * r)), n - 1);
    out.nodes.push_back(r);
    out.weights.push_back(lag.weights[i] / kappa * std::exp(-kappa * split) * h);
  }
  return out;
}

}  // namespace

double poisson_pullback(double c, const HPoint& x, const Eigen::VectorXd& v, int n, int angular_nodes) {
  const double a2 = alpha_norm2(c, n);
  if (x.size() != n + 1 || v.size() != n + 1) throw std::invalid_argument("point / vector dimension mismatch");
  // Tangent frame at x; v in frame coordinates.
  const Eigen::MatrixXd frame = tangent_frame(x);
  Eigen::VectorXd vf(n);
  for (int i = 0; i < n; ++i) vf(i) = lorentz::dot(v, frame.col(i));
  const GaussRule radial = radial_rule(c, n);
  double radial_sum = 0.0;
  for (double w : radial.weights) radial_sum += w;
  // The gradient of y -> d(x, y) at x along direction omega is -omega, so
  // |d rho_y(v)|^2 = <v, omega>^2 depends only on the direction.
  double angular = 0.0;
  if (n == 2) {
    for (int k = 0; k < angular_nodes; ++k) {
      const double th = 2.0 * std::numbers::pi * k / angular_nodes;
      const double p = vf(0) * std::cos(th) + vf(1) * std::sin(th);
      angular += p * p * (2.0 * std::numbers::pi / angular_nodes);
    }
  } else {
    const GaussRule z = gauss_legendre(angular_nodes, -1.0, 1.0);
    for (std::size_t i = 0; i < z.nodes.size(); ++i) {
      const double s = std::sqrt(1.0 - z.nodes[i] * z.nodes[i]);
      for (int k = 0; k < angular_nodes; ++k) {
        const double ph = 2.0 * std::numbers::pi * k / angular_nodes;
        const double p = vf(0) * s * std::cos(ph) + vf(1) * s * std::sin(ph) + vf(2) * z.nodes[i];
        angular += p * p * z.weights[i] * (2.0 * std::numbers::pi / angular_nodes);
      }
    }
  }
  return 0.25 * c * c * angular * radial_sum / a2;
}

void PoissonParams::validate() const {
  if (!(c > 1.0)) throw std::invalid_argument("Poisson parameter c must exceed the volume entropy 1");
  if (radius < 0 || mesh_level < 0 || fine_level < 0 || coarse_level < 0 || fine_order < 1 || coarse_order < 1) {
    throw std::invalid_argument("invalid Poisson discretization parameters");
  }
}

double automatic_cutoff(const FuchsianGroup& f, int radius) {
  const Group& g = *f.group;
  const HPoint o = lorentz::origin(2);
  double nearest = std::numeric_limits<double>::infinity();
  for (Element e : g.ball(radius + 1)) {
    if (g.word_length(e) != radius + 1) continue;
    nearest = std::min(nearest, hyp_distance(o, lorentz::so21_from_sl2(g.sl2(e)).col(0)));
  }
  return nearest - f.circumradius - 1e-9;
}

PoissonTiles::PoissonTiles(const FuchsianGroup& f, const PoissonParams& p) {
  p.validate();
  const Group& g = *f.group;
  const double safe = automatic_cutoff(f, p.radius);
  if (p.cutoff > safe) throw std::invalid_argument("Poisson cutoff reaches beyond the word ball; raise the radius");
  cutoff = p.cutoff < 0.0 ? safe : p.cutoff;
  // Polygon corners sit at the circumradius from every nearby tile center.
  if (p.truncation == Truncation::Tapered && cutoff <= f.circumradius + 1e-6) {
    throw std::invalid_argument("Poisson cutoff does not exceed the polygon circumradius; raise the radius");
  }
  elements = g.ball(p.radius);
  for (Element e : elements) {
    const Eigen::Matrix2d m = g.sl2(e);
    inverse.push_back(lorentz::so21_from_sl2(m.inverse()));
    centers.push_back(lorentz::so21_from_sl2(m).col(0));
  }
  fine = mesh_quadrature(polygon_mesh(f, p.fine_level), p.fine_order);
  coarse = mesh_quadrature(polygon_mesh(f, p.coarse_level), p.coarse_order);
}

PoissonVector poisson_vector(const FuchsianGroup& f, const HPoint& x, const PoissonParams& p, const PoissonTiles& tiles) {
  TileProblem prob;
  prob.x = x;
  prob.c = p.c;
  prob.far_distance = p.far_distance;
  std::vector<Element> chosen;
  std::vector<double> taper;
  const bool tapered = p.truncation == Truncation::Tapered;
  for (std::size_t k = 0; k < tiles.elements.size(); ++k) {
    const double d = hyp_distance(x, tiles.centers[k]);
    if (tapered && d >= tiles.cutoff) continue;
    chosen.push_back(tiles.elements[k]);
    taper.push_back(tapered ? std::cos(0.5 * std::numbers::pi * d / tiles.cutoff) : 1.0);
    prob.inverse_tiles.push_back(tiles.inverse[k]);
    prob.tile_centers.push_back(tiles.centers[k]);
  }
  const auto values = tile_integrals(prob, tiles.fine, tiles.coarse, p.policy);
  const double a2 = alpha_norm2(p.c, 2);
  std::vector<std::pair<Element, std::vector<double>>> e;
  double captured = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    const double share = values[k] / a2;
    captured += share;
    e.push_back({chosen[k], {taper[k] * std::sqrt(share)}});
  }
  PoissonVector out;
  out.raw = L2Function::from_entries(f.group, 1, e);
  out.unit = SphereVector::normalize(out.raw);
  out.tail = 1.0 - captured;
  return out;
}

PoissonCycle poisson_cycle(const FuchsianGroup& f, const PoissonParams& p) {
  return poisson_cycle(f, p, polygon_mesh(f, p.mesh_level));
}

PoissonCycle poisson_cycle(const FuchsianGroup& f, const PoissonParams& p, const PolygonMesh& mesh) {
  p.validate();
  const Group& g = *f.group;
  const int n = f.sides();
  const auto np = mesh.points.size();
  // Identification graph: point i on side s is carried to a point on the partner side.
  std::vector<std::vector<std::pair<int, Element>>> adj(np);
  for (std::size_t i = 0; i < np; ++i) {
    for (int s = 0; s < n; ++s) {
      if (!(mesh.side_mask[i] >> s & 1u)) continue;
      const HPoint image = f.isometries[s] * mesh.points[i];
      int hit = -1;
      for (std::size_t j = 0; j < np && hit < 0; ++j) {
        if ((mesh.side_mask[j] >> f.partner[s] & 1u) && hyp_distance(image, mesh.points[j]) < 1e-8) hit = static_cast<int>(j);
      }
      if (hit < 0) throw std::invalid_argument("mesh boundary points are not matched by the side pairings");
      adj[i].push_back({hit, f.side_pairing[s]});
    }
  }
  PoissonCycle out;
  out.mesh = mesh;
  out.vertex_class.assign(np, -1);
  out.twist.assign(np, g.identity());
  std::vector<int> reps;
  for (std::size_t start = 0; start < np; ++start) {
    if (out.vertex_class[start] >= 0) continue;
    const int cls = static_cast<int>(reps.size());
    reps.push_back(static_cast<int>(start));
    std::queue<int> queue;
    queue.push(static_cast<int>(start));
    out.vertex_class[start] = cls;
    while (!queue.empty()) {
      const int i = queue.front();
      queue.pop();
      for (const auto& [j, s] : adj[i]) {
        if (out.vertex_class[j] >= 0) continue;
        out.vertex_class[j] = cls;
        out.twist[j] = g.mul(s, out.twist[i]);
        queue.push(j);
      }
    }
  }
  for (std::size_t i = 0; i < np; ++i) {
    const HPoint moved = lorentz::so21_from_sl2(g.sl2(out.twist[i])) * mesh.points[reps[out.vertex_class[i]]];
    if (hyp_distance(moved, mesh.points[i]) > 1e-7) throw std::runtime_error("inconsistent vertex identification");
  }

  const PoissonTiles tiles(f, p);
  out.cycle.group = f.group;
  out.cycle.dim = 2;
  for (int r : reps) {
    const PoissonVector pv = poisson_vector(f, mesh.points[r], p, tiles);
    out.tails.push_back(pv.tail);
    out.max_tail = std::max(out.max_tail, pv.tail);
    out.cycle.vertices.push_back(pv.unit);
  }
  if (out.max_tail > p.max_tail) {
    std::ostringstream os;
    os << "Poisson tail mass " << out.max_tail << " exceeds bound " << p.max_tail << "; raise the word radius";
    throw std::runtime_error(os.str());
  }
  for (const auto& t : mesh.triangles) {
    Simplex s;
    for (int v : t) s.corners.push_back({out.vertex_class[v], out.twist[v]});
    out.cycle.simplices.push_back(std::move(s));
  }
  return out;
}

}  // namespace plateau
