#include "plateau/hyperbolic.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

namespace plateau {

double hyp_distance(const HPoint& x, const HPoint& y) { return lorentz::distance(x, y); }

HPoint hyp_exp(const HPoint& x, const Eigen::VectorXd& v, double t) {
  const double n = std::sqrt(std::max(lorentz::dot(v, v), 0.0));
  const double s = t * n;
  if (s == 0.0) return x;
  return lorentz::renormalize(std::cosh(s) * x + std::sinh(s) * (v / n));
}

Eigen::VectorXd hyp_log(const HPoint& x, const HPoint& y) {
  const double d = hyp_distance(x, y);
  if (d == 0.0) return Eigen::VectorXd::Zero(x.size());
  const Eigen::VectorXd u = y + lorentz::dot(x, y) * x;
  const double un = std::sqrt(std::max(lorentz::dot(u, u), 0.0));
  if (un == 0.0) return Eigen::VectorXd::Zero(x.size());
  return (d / un) * u;
}

Eigen::MatrixXd boost_to(const HPoint& x) {
  const int n = static_cast<int>(x.size()) - 1;
  Eigen::MatrixXd b(n + 1, n + 1);
  const Eigen::VectorXd xs = x.tail(n);
  b(0, 0) = x(0);
  b.block(0, 1, 1, n) = xs.transpose();
  b.block(1, 0, n, 1) = xs;
  b.block(1, 1, n, n) = Eigen::MatrixXd::Identity(n, n) + xs * xs.transpose() / (1.0 + x(0));
  return b;
}

Eigen::MatrixXd tangent_frame(const HPoint& x) {
  const int n = static_cast<int>(x.size()) - 1;
  return boost_to(x).rightCols(n);
}

HPoint polar_point(const Eigen::VectorXd& direction, double r) {
  HPoint x(direction.size() + 1);
  x(0) = std::cosh(r);
  x.tail(direction.size()) = std::sinh(r) * direction.normalized();
  return x;
}

HPoint hyp_midpoint(const HPoint& x, const HPoint& y) {
  // The normalized sum of two hyperboloid points is their midpoint.
  const Eigen::VectorXd s = x + y;
  return s / std::sqrt(-lorentz::dot(s, s));
}

// ---- polygon --------------------------------------------------------------

namespace {

double angle_between(const HPoint& at, const HPoint& p, const HPoint& q) {
  const Eigen::VectorXd u = hyp_log(at, p);
  const Eigen::VectorXd w = hyp_log(at, q);
  const double c = lorentz::dot(u, w) / std::sqrt(lorentz::dot(u, u) * lorentz::dot(w, w));
  return std::acos(std::clamp(c, -1.0, 1.0));
}

// Vertex angle of the regular n-gon with circumradius r: tan(a/2) = 1 / (tan(pi/n) cosh r).
double regular_angle(int n, double r) { return 2.0 * std::atan(1.0 / (std::tan(std::numbers::pi / n) * std::cosh(r))); }

}  // namespace

double FuchsianGroup::measured_angle(int j) const {
  const int n = sides();
  return angle_between(vertices[(j + n) % n], vertices[(j - 1 + n) % n], vertices[(j + 1) % n]);
}

double FuchsianGroup::area() const {
  const int n = sides();
  const HPoint o = lorentz::origin(2);
  double a = 0.0;
  for (int j = 0; j < n; ++j) {
    const HPoint& p = vertices[j];
    const HPoint& q = vertices[(j + 1) % n];
    a += std::numbers::pi - angle_between(o, p, q) - angle_between(p, o, q) - angle_between(q, o, p);
  }
  return a;
}

double FuchsianGroup::max_relation_gap() const {
  Eigen::Matrix2d prod = Eigen::Matrix2d::Identity();
  for (int k = 0; k < genus; ++k) {
    const Eigen::Matrix2d a = group->sl2(group->generator(2 * k));
    const Eigen::Matrix2d b = group->sl2(group->generator(2 * k + 1));
    prod = prod * a * b * a.inverse() * b.inverse();
  }
  return lorentz::psl2_relative_gap(prod, Eigen::Matrix2d::Identity());
}

FuchsianGroup fundamental_polygon(int genus, double angle_perturbation) {
  if (genus < 2) throw GroupError("fundamental polygon needs genus >= 2");
  FuchsianGroup f;
  f.genus = genus;
  f.group = Group::surface(genus);
  const int n = f.sides();
  const double pi = std::numbers::pi;
  f.vertex_angle = 2.0 * pi / n + angle_perturbation;
  if (!(f.vertex_angle > 0.0 && f.vertex_angle < pi * (n - 2) / n)) {
    throw std::invalid_argument("vertex angle outside the hyperbolic range");
  }
  // The angle decreases monotonically in the circumradius.
  double lo = 0.0, hi = 1.0;
  while (regular_angle(n, hi) > f.vertex_angle) hi *= 2.0;
  while (hi - lo > 1e-14 * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    if (regular_angle(n, mid) > f.vertex_angle) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (mid == lo && mid == hi) break;
  }
  f.circumradius = 0.5 * (lo + hi);
  // Right triangle (center, side midpoint, vertex): cos(pi/n) = tanh r_in / tanh R.
  f.inradius = std::atanh(std::tanh(f.circumradius) * std::cos(pi / n));
  for (int j = 0; j < n; ++j) {
    const double phi = (2.0 * j - 1.0) * pi / n;
    f.vertices.push_back(polar_point(Eigen::Vector2d(std::cos(phi), std::sin(phi)), f.circumradius));
  }
  f.side_pairing.resize(n);
  f.partner.resize(n);
  for (int k = 0; k < genus; ++k) {
    const Element a = f.group->generator(2 * k);
    const Element b = f.group->generator(2 * k + 1);
    f.side_pairing[4 * k + 2] = a;
    f.partner[4 * k + 2] = 4 * k;
    f.side_pairing[4 * k] = f.group->inverse(a);
    f.partner[4 * k] = 4 * k + 2;
    f.side_pairing[4 * k + 1] = b;
    f.partner[4 * k + 1] = 4 * k + 3;
    f.side_pairing[4 * k + 3] = f.group->inverse(b);
    f.partner[4 * k + 3] = 4 * k + 1;
  }
  for (int i = 0; i < n; ++i) f.isometries.push_back(lorentz::so21_from_sl2(f.group->sl2(f.side_pairing[i])));
  return f;
}

// ---- meshes ---------------------------------------------------------------

PolygonMesh polygon_mesh(const FuchsianGroup& f, int level) {
  if (level < 0) throw std::invalid_argument("mesh level must be non-negative");
  const int n = f.sides();
  PolygonMesh m;
  m.points.push_back(lorentz::origin(2));
  m.side_mask.push_back(0);
  for (int j = 0; j < n; ++j) {
    m.points.push_back(f.vertices[j]);
    // vertex j joins sides j - 1 and j
    m.side_mask.push_back((std::uint64_t{1} << j) | (std::uint64_t{1} << ((j - 1 + n) % n)));
  }
  for (int j = 0; j < n; ++j) m.triangles.push_back({0, 1 + j, 1 + (j + 1) % n});
  for (int l = 0; l < level; ++l) {
    std::map<std::pair<int, int>, int> mids;
    auto mid = [&](int a, int b) {
      const auto key = std::minmax(a, b);
      auto it = mids.find(key);
      if (it != mids.end()) return it->second;
      m.points.push_back(hyp_midpoint(m.points[a], m.points[b]));
      m.side_mask.push_back(m.side_mask[a] & m.side_mask[b]);
      const int id = static_cast<int>(m.points.size()) - 1;
      mids.emplace(key, id);
      return id;
    };
    std::vector<std::array<int, 3>> next;
    for (const auto& t : m.triangles) {
      const int ab = mid(t[0], t[1]), bc = mid(t[1], t[2]), ca = mid(t[2], t[0]);
      next.push_back({t[0], ab, ca});
      next.push_back({ab, t[1], bc});
      next.push_back({ca, bc, t[2]});
      next.push_back({ab, bc, ca});
    }
    m.triangles = std::move(next);
  }
  return m;
}

void write_mesh(std::ostream& os, const PolygonMesh& m) {
  os.precision(17);
  os << "mesh " << m.points.size() << ' ' << m.triangles.size() << '\n';
  for (std::size_t i = 0; i < m.points.size(); ++i) {
    os << "v " << m.points[i](0) << ' ' << m.points[i](1) << ' ' << m.points[i](2) << ' ' << m.side_mask[i] << '\n';
  }
  for (const auto& t : m.triangles) os << "t " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

PolygonMesh read_mesh(std::istream& is) {
  std::string tag;
  std::size_t nv = 0, nt = 0;
  if (!(is >> tag >> nv >> nt) || tag != "mesh") throw std::invalid_argument("malformed mesh header");
  PolygonMesh m;
  for (std::size_t i = 0; i < nv; ++i) {
    HPoint p(3);
    std::uint64_t mask = 0;
    if (!(is >> tag >> p(0) >> p(1) >> p(2) >> mask) || tag != "v") throw std::invalid_argument("malformed mesh vertex");
    if (std::abs(lorentz::dot(p, p) + 1.0) > 1e-10) throw std::invalid_argument("mesh vertex off the hyperboloid");
    m.points.push_back(p);
    m.side_mask.push_back(mask);
  }
  for (std::size_t i = 0; i < nt; ++i) {
    std::array<int, 3> t{};
    if (!(is >> tag >> t[0] >> t[1] >> t[2]) || tag != "t") throw std::invalid_argument("malformed mesh triangle");
    for (int v : t) {
      if (v < 0 || v >= static_cast<int>(nv)) throw std::invalid_argument("mesh triangle index out of range");
    }
    m.triangles.push_back(t);
  }
  return m;
}

PointCloud mesh_quadrature(const PolygonMesh& m, int q) {
  const SimplexRule rule = SimplexRule::conical(2, q);
  PointCloud cloud;
  for (const auto& t : m.triangles) {
    Eigen::Vector2d k[3];
    for (int i = 0; i < 3; ++i) k[i] = m.points[t[i]].tail(2) / m.points[t[i]](0);
    const Eigen::Vector2d e1 = k[1] - k[0], e2 = k[2] - k[0];
    const double jac = std::abs(e1.x() * e2.y() - e1.y() * e2.x());
    for (std::size_t j = 0; j < rule.size(); ++j) {
      const Eigen::VectorXd& lam = rule.lambdas[j];
      const Eigen::Vector2d p = lam(0) * k[0] + lam(1) * k[1] + lam(2) * k[2];
      const double s = 1.0 - p.squaredNorm();
      HPoint x(3);
      x(0) = 1.0;
      x.tail(2) = p;
      x /= std::sqrt(s);
      cloud.points.push_back(x);
      cloud.weights.push_back(rule.weights[j] * jac / std::pow(s, 1.5));
    }
  }
  return cloud;
}

// ---- orbit growth ---------------------------------------------------------

OrbitEntropy orbit_entropy_estimate(const FuchsianGroup& f, int radius) {
  if (radius < 3) throw std::invalid_argument("orbit entropy needs radius >= 3");
  const Group& g = *f.group;
  if (g.kind() != GroupKind::Surface) throw GroupError("orbit entropy needs a surface group");
  const auto ball = g.ball(radius);
  std::vector<double> dist;
  dist.reserve(ball.size());
  double rc = std::numeric_limits<double>::infinity();
  for (Element e : ball) {
    const Eigen::Matrix2d s = g.sl2(e);
    const double d = std::acosh(std::max(1.0, 0.5 * s.squaredNorm()));
    dist.push_back(d);
    if (g.word_length(e) == radius) rc = std::min(rc, d);
  }
  std::sort(dist.begin(), dist.end());
  const int samples = 64;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < samples; ++i) {
    const double r = rc * (0.5 + 0.5 * i / (samples - 1.0));
    const double count = static_cast<double>(std::upper_bound(dist.begin(), dist.end(), r) - dist.begin());
    const double y = std::log(count);
    sx += r;
    sy += y;
    sxx += r * r;
    sxy += r * y;
  }
  OrbitEntropy out;
  out.estimate = (samples * sxy - sx * sy) / (samples * sxx - sx * sx);
  out.fit_min_radius = 0.5 * rc;
  out.fit_max_radius = rc;
  out.orbit_size = ball.size();
  return out;
}

}  // namespace plateau
