#include "plateau/cycle.hpp"
#include "plateau/minimizer.hpp"
#include "plateau/spectral.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

using namespace plateau;

namespace {

constexpr double kPi = std::numbers::pi;

// Spherical excess from the three side lengths (l'Huilier).
double lhuilier(double a, double b, double c) {
  const double s = 0.5 * (a + b + c);
  const double t = std::tan(s / 2) * std::tan((s - a) / 2) * std::tan((s - b) / 2) * std::tan((s - c) / 2);
  return 4.0 * std::atan(std::sqrt(std::max(0.0, t)));
}

// Flat triangle area from chordal side lengths (Heron, i.e. the 2-simplex Cayley-Menger determinant).
double heron(double a, double b, double c) {
  const double s = 0.5 * (a + b + c);
  return std::sqrt(std::max(0.0, s * (s - a) * (s - b) * (s - c)));
}

SphereVector mix(const GroupPtr& g, std::vector<std::pair<Element, double>> terms) {
  std::vector<std::pair<Element, std::vector<double>>> e;
  for (auto [x, w] : terms) e.push_back({x, {w}});
  return SphereVector::normalize(L2Function::from_entries(g, 1, e));
}

SimplicialCycle triangle(const GroupPtr& g, std::vector<SphereVector> pts) {
  SimplicialCycle c;
  c.group = g;
  c.dim = 2;
  c.vertices = std::move(pts);
  c.simplices.push_back({{{0, g->identity()}, {1, g->identity()}, {2, g->identity()}}, 1});
  return c;
}

struct Free3 {
  GroupPtr g = Group::free(3);
  Element a = g->generator(0), b = g->generator(1), c = g->generator(2);
};

}  // namespace

TEST(Cycles, BoundaryResiduals) {
  Free3 f;
  const SphereVector da = SphereVector::dirac(f.g, f.a), db = SphereVector::dirac(f.g, f.b),
                     dc = SphereVector::dirac(f.g, f.c);
  EXPECT_EQ(boundary_check(polygon_loop(f.g, {da, db, dc})), 0.0);
  // A lone triangle: the full perimeter is unmatched, three quarter circles.
  EXPECT_NEAR(boundary_check(octant_triangle(f.g, f.a, f.b, f.c), 16), 3 * kPi / 2, 1e-8);
  const GroupPtr z2 = Group::free_abelian(2);
  EXPECT_EQ(boundary_check(amenable_cycle(z2, 4)), 0.0);
  EXPECT_EQ(boundary_check(octahedral_sphere(f.g, f.a, f.b, f.c)), 0.0);
}

TEST(Cycles, OctantArea) {
  Free3 f;
  for (int q : {8, 10}) EXPECT_NEAR(mass(octant_triangle(f.g, f.a, f.b, f.c), q).total, kPi / 2, 1e-6);
  EXPECT_NEAR(mass(octahedral_sphere(f.g, f.a, f.b, f.c), 10).total, 4 * kPi, 1e-5);
}

TEST(Cycles, GeneralTriangleMatchesSphericalExcess) {
  Free3 f;
  std::mt19937_64 rng(1);
  const auto pool = std::vector<Element>{f.a, f.b, f.c};
  for (int t = 0; t < 10; ++t) {
    std::vector<SphereVector> p;
    for (int k = 0; k < 3; ++k) p.push_back(random_sphere_vector(f.g, pool, 1, rng, true));
    const double area = mass(triangle(f.g, p), 12).total;
    const double exact = lhuilier(geodesic_distance(p[0], p[1]), geodesic_distance(p[1], p[2]),
                                  geodesic_distance(p[2], p[0]));
    EXPECT_NEAR(area, exact, 1e-8 * std::max(1.0, exact));
  }
}

TEST(Cycles, TinySimplexApproachesFlatVolume) {
  Free3 f;
  double previous = 0.0;
  for (double d : {1e-2, 1e-3}) {
    const SphereVector p0 = SphereVector::dirac(f.g, f.a);
    const SphereVector p1 = mix(f.g, {{f.a, 1.0}, {f.b, d}});
    const SphereVector p2 = mix(f.g, {{f.a, 1.0}, {f.c, d}});
    const double area = mass(triangle(f.g, {p0, p1, p2})).total;
    const double flat = heron(chordal_distance(p0, p1), chordal_distance(p1, p2), chordal_distance(p2, p0));
    const double rel = std::abs(area - flat) / flat;
    EXPECT_LT(rel, d * d) << "d=" << d;
    if (previous > 0.0) EXPECT_NEAR(rel / previous, 1e-2, 2e-3);  // O(d^2)
    previous = rel;
  }
}

TEST(Cycles, RepeatedVertexIsDegenerate) {
  Free3 f;
  const SphereVector p = SphereVector::dirac(f.g, f.a);
  const MassBreakdown m = mass(triangle(f.g, {p, p, SphereVector::dirac(f.g, f.b)}));
  EXPECT_EQ(m.total, 0.0);
  EXPECT_TRUE(m.any_degenerate);
}

TEST(Cycles, MassLinearAndInvariant) {
  Free3 f;
  SimplicialCycle c = octant_triangle(f.g, f.a, f.b, f.c);
  const double single = mass(c).total;
  c.simplices[0].multiplicity = 2;
  EXPECT_NEAR(mass(c).total, 2 * single, 1e-14);

  std::mt19937_64 rng(2);
  const auto pool = f.g->ball(1);
  std::vector<SphereVector> p;
  for (int k = 0; k < 3; ++k) p.push_back(random_sphere_vector(f.g, pool, 1, rng));
  const double m0 = mass(triangle(f.g, p)).total;
  // Relabeling moves the quadrature nodes, so agreement is to quadrature accuracy.
  EXPECT_NEAR(mass(triangle(f.g, {p[1], p[2], p[0]})).total, m0, 1e-8);
  const Element gamma = f.g->parse_element("abC");
  EXPECT_NEAR(mass(triangle(f.g, {act(gamma, p[0]), act(gamma, p[1]), act(gamma, p[2])})).total, m0, 1e-13);
}

TEST(Cycles, SmallTorusApproachesFlatArea) {
  // Folner tori: edges have chord sqrt(2/L); the flat oracle is the Heron area of the two triangles.
  const GroupPtr z2 = Group::free_abelian(2);
  std::vector<double> errors;
  for (int L : {16, 64}) {
    const SimplicialCycle c = amenable_cycle(z2, L);
    double flat = 0.0;
    for (std::size_t s = 0; s < c.simplices.size(); ++s) {
      const auto l = c.lifts(s);
      flat += heron(chordal_distance(l[0], l[1]), chordal_distance(l[1], l[2]), chordal_distance(l[2], l[0]));
    }
    errors.push_back(std::abs(mass(c).total - flat) / flat);
  }
  EXPECT_LT(errors[1], errors[0]);
  EXPECT_NEAR(errors[0] / errors[1], 4.0, 1.0);  // O(chord^2) = O(1/L)
}

TEST(Cycles, PushForward) {
  Free3 f;
  const SimplicialCycle oct = octant_triangle(f.g, f.a, f.b, f.c);
  const PushResult id = pushforward(oct, VertexMap::user([](const SphereVector& v) { return v; }));
  EXPECT_EQ(id.mass_after, id.mass_before);

  const PushResult conv = pushforward(oct, VertexMap::convolution(Weights::exponential(*f.g, 1, 1.0)));
  EXPECT_GT(conv.mass_before - conv.mass_after, 1e-6);

  const GroupPtr f2 = Group::free(2), z = Group::free_abelian(1);
  const Homomorphism theta(f2, z, {z->generator(0), z->identity()});
  std::mt19937_64 rng(3);
  const auto pool = f2->ball(2);
  for (int t = 0; t < 10; ++t) {
    std::vector<SphereVector> pts;
    for (int k = 0; k < 4; ++k) pts.push_back(random_sphere_vector(f2, pool, 1, rng));
    const PushResult r = pushforward(polygon_loop(f2, pts), VertexMap::homomorphism(theta));
    EXPECT_LE(r.mass_after, r.mass_before + 1e-12);
    EXPECT_EQ(r.image.group, z);
  }
}

TEST(Cycles, PushForwardRejectsExpandingMaps) {
  Free3 f;
  const SimplicialCycle small = triangle(f.g, {SphereVector::dirac(f.g, f.a), mix(f.g, {{f.a, 1.0}, {f.b, 0.1}}),
                                               mix(f.g, {{f.a, 1.0}, {f.c, 0.1}})});
  const VertexMap spread = VertexMap::user([&](const SphereVector& v) {
    // Stretches the b and c directions: not 1-Lipschitz.
    std::vector<std::pair<Element, std::vector<double>>> e;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double s = v.support()[i] == f.a ? 1.0 : 5.0;
      e.push_back({v.support()[i], {s * v.amplitude(i)[0]}});
    }
    return SphereVector::normalize(L2Function::from_entries(f.g, 1, e));
  });
  EXPECT_THROW(pushforward(small, spread), InvariantViolation);
}

TEST(Cycles, Subdivision) {
  Free3 f;
  const SimplicialCycle oct = octant_triangle(f.g, f.a, f.b, f.c);
  const SimplicialCycle once = subdivide(oct);
  EXPECT_EQ(once.simplices.size(), 4u);
  EXPECT_NEAR(mass(once).total, kPi / 2, 1e-6);
  const SimplicialCycle twice = subdivide(once);
  EXPECT_EQ(twice.simplices.size(), 16u);
  EXPECT_NEAR(mass(twice).total, kPi / 2, 1e-6);
  EXPECT_EQ(subdivide(polygon_loop(f.g, {oct.vertices[0], oct.vertices[1], oct.vertices[2]})).simplices.size(), 6u);
  const SimplicialCycle torus = subdivide(amenable_cycle(Group::free_abelian(2), 4));
  EXPECT_EQ(boundary_check(torus), 0.0);
  EXPECT_EQ(boundary_check(subdivide(torus)), 0.0);
}

TEST(Cycles, ConeOverSmallCircle) {
  Free3 f;
  const SphereVector apex = SphereVector::dirac(f.g, f.a);
  const double r = 0.1;
  std::vector<SphereVector> ring;
  for (int k = 0; k < 12; ++k) {
    const double th = 2 * kPi * k / 12;
    ring.push_back(mix(f.g, {{f.a, std::cos(r)}, {f.b, std::sin(r) * std::cos(th)}, {f.c, std::sin(r) * std::sin(th)}}));
  }
  const SimplicialCycle base = polygon_loop(f.g, ring);
  const SimplicialCycle cone = cone_fill(apex, base);
  double exact = 0.0;
  for (int k = 0; k < 12; ++k) {
    exact += lhuilier(geodesic_distance(apex, ring[k]), geodesic_distance(ring[k], ring[(k + 1) % 12]),
                      geodesic_distance(ring[(k + 1) % 12], apex));
  }
  EXPECT_NEAR(mass(cone).total, exact, 1e-10);
  // The inscribed 12-gon covers the cap up to the polygon defect sin(2 pi/12) 12 / (2 pi).
  const double cap = 2 * kPi * (1 - std::cos(r));
  EXPECT_NEAR(mass(cone).total / cap, 12 * std::sin(2 * kPi / 12) / (2 * kPi), 1e-3);
  EXPECT_NEAR(boundary_residual_against(cone, base), 0.0, 1e-12);

  std::mt19937_64 rng(4);
  std::normal_distribution<double> n01;
  for (int t = 0; t < 10; ++t) {
    std::vector<SphereVector> pts;
    for (int k = 0; k < 5; ++k) pts.push_back(mix(f.g, {{f.a, 1.0}, {f.b, 0.05 * n01(rng)}, {f.c, 0.05 * n01(rng)}}));
    const ConeReport rep = cone_inequality(apex, polygon_loop(f.g, pts));
    EXPECT_LE(rep.constant, 1.1);
  }
}

TEST(Cycles, ThickMassProfile) {
  const GroupPtr z2 = Group::free_abelian(2);
  std::vector<double> at_half;
  for (int L : {2, 4, 8}) {
    const SimplicialCycle c = amenable_cycle(z2, L);
    const auto prof = thick_mass_profile(c, {0.0, 0.5, 2.0}, 2 * L + 1, 6);
    EXPECT_NEAR(prof.at(0.0), mass(c, 6).total, 1e-12);
    EXPECT_EQ(prof.at(2.0), 0.0);
    at_half.push_back(prof.at(0.5));
  }
  EXPECT_GT(at_half[0], at_half[1]);
  EXPECT_GE(at_half[1], at_half[2]);
}

TEST(Cycles, TextRoundTrip) {
  const GroupPtr z2 = Group::free_abelian(2);
  const SimplicialCycle c = amenable_cycle(z2, 3);
  std::stringstream ss;
  write_cycle(ss, c);
  const SimplicialCycle d = read_cycle(ss, z2);
  EXPECT_EQ(d.vertices, c.vertices);
  EXPECT_EQ(d.simplices.size(), c.simplices.size());
  EXPECT_EQ(mass(d).total, mass(c).total);
}
