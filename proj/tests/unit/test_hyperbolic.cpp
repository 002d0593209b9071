#include "plateau/hyperbolic.hpp"
#include "plateau/poisson.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

using namespace plateau;

namespace {

constexpr double kPi = std::numbers::pi;

HPoint base(int n) {
  HPoint o = HPoint::Zero(n + 1);
  o(0) = 1.0;
  return o;
}

HPoint random_point(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> n01;
  Eigen::VectorXd w(n);
  for (int i = 0; i < n; ++i) w(i) = n01(rng);
  return polar_point(w.normalized(), std::abs(n01(rng)) * 2.0);
}

}  // namespace

TEST(Hyperbolic, ExpLogRoundTrip) {
  std::mt19937_64 rng(1);
  for (int n : {2, 3}) {
    for (int t = 0; t < 20; ++t) {
      const HPoint x = random_point(n, rng), y = random_point(n, rng);
      const Eigen::VectorXd v = hyp_log(x, y);
      EXPECT_NEAR(std::sqrt(lorentz::dot(v, v)), hyp_distance(x, y), 1e-10);
      EXPECT_NEAR(lorentz::dot(v, x), 0.0, 1e-10);
      EXPECT_LT(hyp_distance(hyp_exp(x, v), y), 1e-8);
      const HPoint z = random_point(n, rng);
      EXPECT_LE(hyp_distance(x, z), hyp_distance(x, y) + hyp_distance(y, z) + 1e-12);
      const HPoint m = hyp_midpoint(x, y);
      EXPECT_NEAR(hyp_distance(x, m), hyp_distance(m, y), 1e-9);
    }
  }
}

TEST(Hyperbolic, TangentFrameIsOrthonormal) {
  std::mt19937_64 rng(2);
  const HPoint x = random_point(3, rng);
  const Eigen::MatrixXd e = tangent_frame(x);
  ASSERT_EQ(e.cols(), 3);
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(lorentz::dot(e.col(i), x), 0.0, 1e-12);
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(lorentz::dot(e.col(i), e.col(j)), i == j ? 1.0 : 0.0, 1e-12);
  }
}

TEST(Hyperbolic, RegularOctagon) {
  const FuchsianGroup f = fundamental_polygon(2);
  ASSERT_EQ(f.sides(), 8);
  // Gauss-Bonnet: area 4 pi (g - 1); eight vertices glued to one point give angle 2 pi / 8.
  EXPECT_NEAR(f.area(), 4 * kPi, 1e-9);
  for (int j = 0; j < 8; ++j) EXPECT_NEAR(f.measured_angle(j), kPi / 4, 1e-9);
  EXPECT_LT(f.max_relation_gap(), 1e-9);
  for (int i = 0; i < 8; ++i) {
    EXPECT_EQ(f.partner[f.partner[i]], i);
    // The pairing carries side i onto its partner.
    const HPoint m = hyp_midpoint(f.vertices[i], f.vertices[(i + 1) % 8]);
    const int k = f.partner[i];
    const HPoint target = hyp_midpoint(f.vertices[k], f.vertices[(k + 1) % 8]);
    EXPECT_LT(hyp_distance(f.isometries[i] * m, target), 1e-9) << i;
  }
}

TEST(Hyperbolic, PerturbedAngleChangesArea) {
  const FuchsianGroup f = fundamental_polygon(2, 0.01);
  EXPECT_NEAR(f.area(), 6 * kPi - 8 * (kPi / 4 + 0.01), 1e-9);
  EXPECT_THROW(fundamental_polygon(1), GroupError);
}

TEST(Hyperbolic, OrbitPointsAreDistinct) {
  const FuchsianGroup f = fundamental_polygon(2);
  const auto b = f.group->ball(2);
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) EXPECT_GT(hyp_distance(f.group->orbit_point(b[i]), f.group->orbit_point(b[j])), 1e-3);
}

TEST(Hyperbolic, MeshRoundTripAndArea) {
  const FuchsianGroup f = fundamental_polygon(2);
  const PolygonMesh m = polygon_mesh(f, 2);
  EXPECT_EQ(m.triangles.size(), 8u * 16u);
  std::stringstream ss;
  write_mesh(ss, m);
  const PolygonMesh back = read_mesh(ss);
  EXPECT_EQ(back.triangles, m.triangles);
  EXPECT_EQ(back.side_mask, m.side_mask);
  // Weights of the area quadrature sum to the polygon area up to quadrature error.
  const PointCloud c = mesh_quadrature(polygon_mesh(f, 4), 4);
  double area = 0.0;
  for (double w : c.weights) area += w;
  EXPECT_NEAR(area, 4 * kPi, 1e-7);
}

TEST(Hyperbolic, OrbitEntropyNearOne) {
  const FuchsianGroup f = fundamental_polygon(2);
  const OrbitEntropy e = orbit_entropy_estimate(f, 6);
  EXPECT_GE(e.estimate, 0.8);
  EXPECT_LE(e.estimate, 1.2);
  const GroupPtr f2 = Group::free(2);
  FuchsianGroup fake = f;
  fake.group = f2;
  EXPECT_THROW(orbit_entropy_estimate(fake, 6), GroupError);
}

TEST(Poisson, PullbackEqualsClosedForm) {
  // |d alpha|^2 = (c / 2)^2 times the mean of <grad d, v>^2 = 1 / n.
  std::mt19937_64 rng(3);
  for (int n : {2, 3}) {
    for (double c : n == 2 ? std::vector<double>{1.01, 1.5, 3.0} : std::vector<double>{2.2, 3.0}) {
      const HPoint x = random_point(n, rng);
      const Eigen::MatrixXd e = tangent_frame(x);
      for (int i = 0; i < n; ++i) {
        EXPECT_NEAR(poisson_pullback(c, x, e.col(i), n), c * c / (4.0 * n), 1e-6) << "n=" << n << " c=" << c;
      }
    }
  }
  EXPECT_NEAR(poisson_pullback(1.5, base(2), tangent_frame(base(2)).col(0), 2), 0.28125, 1e-6);
  EXPECT_THROW(poisson_pullback(1.0, base(2), tangent_frame(base(2)).col(0), 2), std::invalid_argument);
}

TEST(Poisson, AlphaNormClosedForm) {
  // integral of exp(-c r) 2 pi sinh r dr = 2 pi / (c^2 - 1).
  EXPECT_NEAR(alpha_norm2(1.5, 2), 2 * kPi / (1.5 * 1.5 - 1.0), 1e-10);
}

TEST(Poisson, VectorConcentratesAndIsEquivariant) {
  const FuchsianGroup f = fundamental_polygon(2);
  PoissonParams p;
  p.c = 3.0;
  p.radius = 3;
  p.fine_level = 2;
  p.coarse_level = 1;
  // Radius 3 leaves the polygon corners outside every tapered tile.
  EXPECT_THROW(PoissonTiles(f, p), std::invalid_argument);
  p.radius = 4;
  const PoissonTiles tiles(f, p);
  const PoissonVector at_o = poisson_vector(f, base(2), p, tiles);
  const Element e = f.group->identity();
  const double ve = std::abs(at_o.unit.function().at(e)[0]);
  for (Element g : at_o.unit.support())
    if (g != e) EXPECT_GT(ve, std::abs(at_o.unit.function().at(g)[0]));
  EXPECT_NEAR(at_o.unit.function().norm(), 1.0, 1e-14);

  for (int i = 0; i < f.sides(); ++i) {
    const HPoint x = hyp_midpoint(f.vertices[i], f.vertices[(i + 1) % f.sides()]);
    const HPoint y = f.isometries[i] * x;
    const PoissonVector vx = poisson_vector(f, x, p, tiles), vy = poisson_vector(f, y, p, tiles);
    EXPECT_LT(chordal_distance(vy.unit, act(f.side_pairing[i], vx.unit)), 1e-9) << "side " << i;
  }
}
