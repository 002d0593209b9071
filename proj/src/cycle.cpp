#include "plateau/cycle.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace plateau {

SphereVector SimplicialCycle::corner_lift(std::size_t s, std::size_t k) const {
  const Corner& c = simplices.at(s).corners.at(k);
  return act(c.twist, vertices.at(c.vertex));
}

std::vector<SphereVector> SimplicialCycle::lifts(std::size_t s) const {
  std::vector<SphereVector> out;
  for (std::size_t k = 0; k < simplices.at(s).corners.size(); ++k) out.push_back(corner_lift(s, k));
  return out;
}

Element SimplicialCycle::relative_twist(std::size_t s, std::size_t i, std::size_t j) const {
  const auto& c = simplices.at(s).corners;
  return group->mul(group->inverse(c.at(i).twist), c.at(j).twist);
}

Eigen::MatrixXd SimplicialCycle::gram(std::size_t s) const { return corner_gram(*this, simplices.at(s).corners); }

Eigen::MatrixXd corner_gram(const SimplicialCycle& cyc, const std::vector<Corner>& c) {
  // <t_i v_i, t_j v_j> = <v_i, (t_i^-1 t_j) v_j>: no lift is materialized.
  const Group& G = *cyc.group;
  const auto m = static_cast<Eigen::Index>(c.size());
  Eigen::MatrixXd g(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const L2Function& vi = cyc.vertices.at(c[i].vertex).function();
    g(i, i) = vi.squared_norm();
    const Element back = G.inverse(c[i].twist);
    for (Eigen::Index j = 0; j < i; ++j) {
      g(i, j) = g(j, i) = twisted_inner(vi, G.mul(back, c[j].twist), cyc.vertices.at(c[j].vertex).function());
    }
  }
  return g;
}

void SimplicialCycle::validate() const {
  if (!group) throw std::invalid_argument("cycle has no group");
  for (const auto& v : vertices) {
    if (v.group() != group) throw GroupError("cycle vertex lives on a different group");
  }
  for (const auto& s : simplices) {
    if (static_cast<int>(s.corners.size()) != dim + 1) throw std::invalid_argument("simplex has wrong corner count");
    for (const auto& c : s.corners) {
      if (c.vertex < 0 || c.vertex >= static_cast<int>(vertices.size())) {
        throw std::invalid_argument("simplex references a missing vertex");
      }
    }
  }
}

Eigen::MatrixXd gram_matrix(const std::vector<SphereVector>& lifts) {
  const auto m = static_cast<Eigen::Index>(lifts.size());
  Eigen::MatrixXd g(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    g(i, i) = lifts[i].function().squared_norm();
    for (Eigen::Index j = 0; j < i; ++j) g(i, j) = g(j, i) = lifts[i].inner(lifts[j]);
  }
  return g;
}

SimplexVolume simplex_volume(const std::vector<SphereVector>& lifts, int q) {
  const int n = static_cast<int>(lifts.size()) - 1;
  if (n == 0) return SimplexVolume{1.0, false, {}};
  for (std::size_t i = 0; i < lifts.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (chordal_distance(lifts[i], lifts[j]) >= 2.0 - 1e-12) {
        throw std::invalid_argument("simplex corners are not in an open half-sphere");
      }
    }
  }
  return simplex_volume_from_gram(gram_matrix(lifts), SimplexRule::conical(n, q), false);
}

MassBreakdown mass(const SimplicialCycle& c, int q, ExecutionPolicy policy) {
  MassBreakdown out;
  if (c.simplices.empty()) return out;
  if (c.dim == 0) {
    for (const auto& s : c.simplices) out.per_simplex.push_back(std::abs(s.multiplicity));
  } else {
    std::vector<Eigen::MatrixXd> grams;
    grams.reserve(c.simplices.size());
    for (std::size_t s = 0; s < c.simplices.size(); ++s) grams.push_back(c.gram(s));
    const auto vols = simplex_volumes(grams, SimplexRule::conical(c.dim, q), false, policy);
    for (std::size_t s = 0; s < vols.size(); ++s) {
      out.any_degenerate = out.any_degenerate || vols[s].degenerate;
      out.per_simplex.push_back(std::abs(c.simplices[s].multiplicity) * vols[s].volume);
    }
  }
  for (double v : out.per_simplex) out.total += v;
  return out;
}

// ---- boundary -------------------------------------------------------------

namespace {

using FaceKey = std::vector<std::pair<int, std::uint32_t>>;

struct Canonical {
  FaceKey key;
  int sign = 1;
  std::size_t anchor = 0;  // position (in the input) of the corner whose twist was factored out
};

bool corner_less(const Group& g, const Corner& a, const Corner& b) {
  if (a.vertex != b.vertex) return a.vertex < b.vertex;
  return g.less(a.twist, b.twist);
}

int permutation_sign(std::vector<std::size_t> p) {
  int sign = 1;
  for (std::size_t i = 0; i < p.size(); ++i) {
    while (p[i] != i) {
      std::swap(p[i], p[p[i]]);
      sign = -sign;
    }
  }
  return sign;
}

// Canonical representative of a corner list modulo left translation and reordering.
Canonical canonicalize(const Group& g, const std::vector<Corner>& corners) {
  Canonical best;
  std::vector<Corner> best_sorted;
  for (std::size_t a = 0; a < corners.size(); ++a) {
    const Element shift = g.inverse(corners[a].twist);
    std::vector<Corner> moved;
    for (const auto& c : corners) moved.push_back({c.vertex, g.mul(shift, c.twist)});
    std::vector<std::size_t> perm(moved.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(),
                     [&](std::size_t x, std::size_t y) { return corner_less(g, moved[x], moved[y]); });
    std::vector<Corner> sorted;
    for (std::size_t i : perm) sorted.push_back(moved[i]);
    const bool better =
        best_sorted.empty() ||
        std::lexicographical_compare(sorted.begin(), sorted.end(), best_sorted.begin(), best_sorted.end(),
                                     [&](const Corner& x, const Corner& y) { return corner_less(g, x, y); });
    if (better) {
      best_sorted = sorted;
      best.sign = permutation_sign(perm);
      best.anchor = a;
    }
  }
  for (const auto& c : best_sorted) best.key.push_back({c.vertex, c.twist.id});
  return best;
}

struct FaceEntry {
  long coefficient = 0;
  std::vector<Corner> corners;  // first occurrence
};

void accumulate_boundary(const SimplicialCycle& c, int sign, std::map<FaceKey, FaceEntry>& faces) {
  const Group& g = *c.group;
  for (std::size_t s = 0; s < c.simplices.size(); ++s) {
    const auto& simplex = c.simplices[s];
    for (std::size_t i = 0; i < simplex.corners.size(); ++i) {
      std::vector<Corner> face;
      for (std::size_t j = 0; j < simplex.corners.size(); ++j) {
        if (j != i) face.push_back(simplex.corners[j]);
      }
      const Canonical can = canonicalize(g, face);
      const int face_sign = (i % 2 == 0 ? 1 : -1) * can.sign * sign;
      auto [it, fresh] = faces.try_emplace(can.key);
      it->second.coefficient += static_cast<long>(face_sign) * simplex.multiplicity;
      if (fresh) it->second.corners = std::move(face);
    }
  }
}

// Only faces that fail to cancel are measured.
double residual_of(const SimplicialCycle& c, const std::map<FaceKey, FaceEntry>& faces, int q) {
  double r = 0.0;
  for (const auto& [k, e] : faces) {
    if (e.coefficient == 0) continue;
    double measure = 1.0;
    if (e.corners.size() > 1) {
      measure = simplex_volume_from_gram(corner_gram(c, e.corners),
                                         SimplexRule::conical(static_cast<int>(e.corners.size()) - 1, q), false)
                    .volume;
    }
    r += std::abs(e.coefficient) * measure;
  }
  return r;
}

}  // namespace

double boundary_check(const SimplicialCycle& c, int q) {
  c.validate();
  if (c.dim == 0) return 0.0;
  std::map<FaceKey, FaceEntry> faces;
  accumulate_boundary(c, 1, faces);
  return residual_of(c, faces, q);
}

double boundary_residual_against(const SimplicialCycle& c, const SimplicialCycle& b, int q) {
  if (c.group != b.group || c.dim != b.dim + 1) throw std::invalid_argument("incompatible chains");
  // Re-express b over c's vertex list so keys are comparable.
  SimplicialCycle merged = c;
  merged.simplices.clear();
  std::vector<int> remap(b.vertices.size(), -1);
  for (std::size_t i = 0; i < b.vertices.size(); ++i) {
    for (std::size_t j = 0; j < c.vertices.size() && remap[i] < 0; ++j) {
      if (b.vertices[i] == c.vertices[j]) remap[i] = static_cast<int>(j);
    }
    if (remap[i] < 0) {
      remap[i] = static_cast<int>(merged.vertices.size());
      merged.vertices.push_back(b.vertices[i]);
    }
  }
  SimplicialCycle bb = b;
  bb.vertices = merged.vertices;
  for (auto& s : bb.simplices)
    for (auto& corner : s.corners) corner.vertex = remap[corner.vertex];
  SimplicialCycle cc = c;
  cc.vertices = merged.vertices;

  std::map<FaceKey, FaceEntry> faces;
  accumulate_boundary(cc, 1, faces);
  const Group& g = *b.group;
  for (const auto& s : bb.simplices) {
    const Canonical can = canonicalize(g, s.corners);
    auto [it, fresh] = faces.try_emplace(can.key);
    it->second.coefficient -= static_cast<long>(can.sign) * s.multiplicity;
    if (fresh) it->second.corners = s.corners;
  }
  return residual_of(cc, faces, q);
}

std::map<double, double> thick_mass_profile(const SimplicialCycle& c, const std::vector<double>& deltas, int radius,
                                            int q) {
  if (radius < 1) throw std::invalid_argument("thick mass radius must be >= 1");
  std::map<double, double> out;
  for (double d : deltas) out[d] = 0.0;
  if (c.dim == 0) return out;
  const SimplexRule rule = SimplexRule::conical(c.dim, q);
  for (std::size_t s = 0; s < c.simplices.size(); ++s) {
    // Displacement is invariant under the action, so work in the frame of corner 0.
    std::vector<L2Function> local;
    for (std::size_t i = 0; i < c.simplices[s].corners.size(); ++i) {
      local.push_back(act(c.relative_twist(s, 0, i), c.vertices[c.simplices[s].corners[i].vertex].function()));
    }
    const auto node_mass = simplex_node_masses(c.gram(s), rule);
    const double mult = std::abs(c.simplices[s].multiplicity);
    for (std::size_t k = 0; k < rule.size(); ++k) {
      L2Function p(c.group, local[0].payload());
      for (std::size_t i = 0; i < local.size(); ++i) p = p.combined(1.0, local[i], rule.lambdas[k](i));
      const double disp = displacement(SphereVector::normalize(p), radius).delta;
      for (double d : deltas) {
        if (disp > d) out[d] += mult * node_mass[k];
      }
    }
  }
  return out;
}

// ---- push-forward ---------------------------------------------------------

VertexMap VertexMap::abs() { return VertexMap{}; }

VertexMap VertexMap::homomorphism(Homomorphism h) {
  VertexMap m;
  m.kind = Kind::Homomorphism;
  m.theta = std::move(h);
  return m;
}

VertexMap VertexMap::convolution(Weights w) {
  w.validate();
  VertexMap m;
  m.kind = Kind::Convolve;
  m.eta = std::move(w);
  return m;
}

VertexMap VertexMap::user(std::function<SphereVector(const SphereVector&)> f) {
  VertexMap m;
  m.kind = Kind::Custom;
  m.custom = std::move(f);
  return m;
}

PushResult pushforward(const SimplicialCycle& c, const VertexMap& map, int q, double tolerance) {
  c.validate();
  PushResult r;
  r.image = c;
  r.image.vertices.clear();
  for (const auto& v : c.vertices) {
    switch (map.kind) {
      case VertexMap::Kind::Abs: r.image.vertices.push_back(abs_map(v)); break;
      case VertexMap::Kind::Homomorphism: r.image.vertices.push_back(push_homomorphism(*map.theta, v)); break;
      case VertexMap::Kind::Convolve: r.image.vertices.push_back(convolve(map.eta, v)); break;
      case VertexMap::Kind::Custom: r.image.vertices.push_back(map.custom(v)); break;
    }
  }
  if (map.kind == VertexMap::Kind::Homomorphism) {
    r.image.group = map.theta->target;
    for (auto& s : r.image.simplices)
      for (auto& corner : s.corners) corner.twist = map.theta->apply(corner.twist);
  } else if (!r.image.vertices.empty()) {
    r.image.group = r.image.vertices.front().group();
  }
  r.mass_before = mass(c, q).total;
  r.mass_after = mass(r.image, q).total;
  if (r.mass_after > r.mass_before + tolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "push-forward increased mass from " << r.mass_before << " to " << r.mass_after;
    throw InvariantViolation(os.str());
  }
  return r;
}

// ---- subdivision ----------------------------------------------------------

namespace {

struct MidpointTable {
  std::map<FaceKey, int> index;
};

}  // namespace

SimplicialCycle subdivide(const SimplicialCycle& c) {
  c.validate();
  if (c.dim < 1 || c.dim > 3) throw std::invalid_argument("subdivide supports dimensions 1..3");
  const Group& g = *c.group;
  SimplicialCycle out;
  out.group = c.group;
  out.dim = c.dim;
  out.vertices = c.vertices;
  std::map<FaceKey, int> midpoint;

  // Corner for the midpoint of an edge given by two corners.
  auto mid = [&](const Corner& a, const Corner& b) -> Corner {
    const Canonical can = canonicalize(g, {a, b});
    const Corner& anchor = can.anchor == 0 ? a : b;
    auto it = midpoint.find(can.key);
    if (it == midpoint.end()) {
      const Element back = g.inverse(anchor.twist);
      const L2Function la = act(g.mul(back, a.twist), c.vertices[a.vertex]).function();
      const L2Function lb = act(g.mul(back, b.twist), c.vertices[b.vertex]).function();
      out.vertices.push_back(SphereVector::normalize(la.combined(1.0, lb, 1.0)));
      it = midpoint.emplace(can.key, static_cast<int>(out.vertices.size()) - 1).first;
    }
    return Corner{it->second, anchor.twist};
  };

  const int n = c.dim;
  // Sub-simplices as lists of barycentric labels: label i < n+1 is corner i,
  // otherwise an edge midpoint (i, j).
  using Label = std::pair<int, int>;
  std::vector<std::vector<Label>> pattern;
  auto P = [](int i) { return Label{i, i}; };
  auto M = [](int i, int j) { return Label{i, j}; };
  if (n == 1) {
    pattern = {{P(0), M(0, 1)}, {M(0, 1), P(1)}};
  } else if (n == 2) {
    pattern = {{P(0), M(0, 1), M(0, 2)}, {M(0, 1), P(1), M(1, 2)}, {M(0, 2), M(1, 2), P(2)}, {M(0, 1), M(1, 2), M(0, 2)}};
  } else {
    pattern = {{P(0), M(0, 1), M(0, 2), M(0, 3)},       {M(0, 1), P(1), M(1, 2), M(1, 3)},
               {M(0, 2), M(1, 2), P(2), M(2, 3)},       {M(0, 3), M(1, 3), M(2, 3), P(3)},
               {M(0, 1), M(0, 2), M(0, 3), M(1, 3)},    {M(0, 1), M(0, 2), M(1, 2), M(1, 3)},
               {M(0, 2), M(0, 3), M(1, 3), M(2, 3)},    {M(0, 2), M(1, 2), M(1, 3), M(2, 3)}};
  }
  for (const auto& s : c.simplices) {
    for (auto labels : pattern) {
      // Orientation: sign of the barycentric determinant of the child.
      Eigen::MatrixXd bary = Eigen::MatrixXd::Zero(n + 1, n + 1);
      for (int k = 0; k <= n; ++k) {
        bary(labels[k].first, k) += 0.5;
        bary(labels[k].second, k) += 0.5;
      }
      if (bary.determinant() < 0.0) std::swap(labels[0], labels[1]);
      Simplex child;
      child.multiplicity = s.multiplicity;
      for (const auto& [i, j] : labels) {
        child.corners.push_back(i == j ? s.corners[i] : mid(s.corners[i], s.corners[j]));
      }
      out.simplices.push_back(std::move(child));
    }
  }
  return out;
}

// ---- cone -----------------------------------------------------------------

SimplicialCycle cone_fill(const SphereVector& apex, const SimplicialCycle& b) {
  b.validate();
  if (apex.group() != b.group) throw GroupError("apex lives on a different group");
  for (const auto& s : b.simplices) {
    for (const auto& c : s.corners) {
      const double ip = twisted_inner(apex.function(), c.twist, b.vertices[c.vertex].function());
      if (ip <= -1.0 + 1e-12) throw std::invalid_argument("cone apex is antipodal to the base");
    }
  }
  SimplicialCycle out;
  out.group = b.group;
  out.dim = b.dim + 1;
  out.vertices = b.vertices;
  out.vertices.push_back(apex);
  const int a = static_cast<int>(out.vertices.size()) - 1;
  for (const auto& s : b.simplices) {
    Simplex child;
    child.multiplicity = s.multiplicity;
    child.corners.push_back({a, b.group->identity()});
    child.corners.insert(child.corners.end(), s.corners.begin(), s.corners.end());
    out.simplices.push_back(std::move(child));
  }
  return out;
}

ConeReport cone_inequality(const SphereVector& apex, const SimplicialCycle& b, int q) {
  ConeReport r;
  r.cone_mass = mass(cone_fill(apex, b), q).total;
  r.base_mass = mass(b, q).total;
  std::vector<Corner> pts;
  for (const auto& s : b.simplices) pts.insert(pts.end(), s.corners.begin(), s.corners.end());
  const Group& G = *b.group;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const Element rel = G.mul(G.inverse(pts[i].twist), pts[j].twist);
      const double ip = twisted_inner(b.vertices[pts[i].vertex].function(), rel, b.vertices[pts[j].vertex].function());
      r.diameter = std::max(r.diameter, std::acos(std::clamp(ip, -1.0, 1.0)));
    }
  }
  r.constant = r.cone_mass / (r.diameter * r.base_mass);
  return r;
}

// ---- text format ----------------------------------------------------------

void write_cycle(std::ostream& os, const SimplicialCycle& c) {
  os << "cycle " << c.group->description() << ' ' << c.dim << ' ' << c.vertices.size() << ' ' << c.simplices.size()
     << '\n';
  for (const auto& v : c.vertices) write_sphere_vector(os, v);
  for (const auto& s : c.simplices) {
    os << s.multiplicity;
    for (const auto& corner : s.corners) os << ' ' << corner.vertex << ' ' << c.group->to_string(corner.twist);
    os << '\n';
  }
}

SimplicialCycle read_cycle(std::istream& is, const GroupPtr& group) {
  std::string tag, desc;
  std::size_t nv = 0, ns = 0;
  SimplicialCycle c;
  c.group = group;
  if (!(is >> tag >> desc >> c.dim >> nv >> ns) || tag != "cycle") throw std::invalid_argument("malformed cycle header");
  if (desc != group->description()) throw std::invalid_argument("cycle group mismatch: " + desc);
  for (std::size_t i = 0; i < nv; ++i) c.vertices.push_back(read_sphere_vector(is, group));
  for (std::size_t i = 0; i < ns; ++i) {
    Simplex s;
    is >> s.multiplicity;
    for (int k = 0; k <= c.dim; ++k) {
      Corner corner;
      std::string w;
      is >> corner.vertex >> w;
      corner.twist = group->parse_element(w);
      s.corners.push_back(corner);
    }
    if (!is) throw std::invalid_argument("truncated cycle file");
    c.simplices.push_back(std::move(s));
  }
  c.validate();
  return c;
}

// ---- fixtures -------------------------------------------------------------

SimplicialCycle octant_triangle(const GroupPtr& group, Element a, Element b, Element c) {
  SimplicialCycle t;
  t.group = group;
  t.dim = 2;
  t.vertices = {SphereVector::dirac(group, a), SphereVector::dirac(group, b), SphereVector::dirac(group, c)};
  t.simplices.push_back({{{0, group->identity()}, {1, group->identity()}, {2, group->identity()}}, 1});
  return t;
}

SimplicialCycle torus_cycle(const GroupPtr& z2, const SphereVector& vertex) {
  if (z2->kind() != GroupKind::FreeAbelian || z2->rank() != 2) throw GroupError("torus cycle needs Z^2");
  const Element e = z2->identity();
  const Element a = z2->generator(0);
  const Element b = z2->generator(1);
  const Element ab = z2->mul(a, b);
  SimplicialCycle t;
  t.group = z2;
  t.dim = 2;
  t.vertices = {vertex};
  t.simplices.push_back({{{0, e}, {0, a}, {0, ab}}, 1});
  t.simplices.push_back({{{0, e}, {0, ab}, {0, b}}, 1});
  return t;
}

SimplicialCycle polygon_loop(const GroupPtr& group, const std::vector<SphereVector>& points) {
  SimplicialCycle c;
  c.group = group;
  c.dim = 1;
  c.vertices = points;
  const int k = static_cast<int>(points.size());
  for (int i = 0; i < k; ++i) c.simplices.push_back({{{i, group->identity()}, {(i + 1) % k, group->identity()}}, 1});
  return c;
}

}  // namespace plateau
