#include "plateau/minimizer.hpp"
#include "plateau/spectral.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace plateau;

namespace {

SimplicialCycle random_loop(const GroupPtr& g, int points, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<SphereVector> v;
  for (int k = 0; k < points; ++k) v.push_back(random_sphere_vector(g, g->ball(1), 1, rng));
  return polygon_loop(g, v);
}

double mass_after_step(const SimplicialCycle& c, const std::vector<L2Function>& grad, double t) {
  SimplicialCycle moved = c;
  for (std::size_t i = 0; i < c.vertices.size(); ++i)
    moved.vertices[i] = SphereVector::normalize(c.vertices[i].function().combined(1.0, grad[i], -t));
  return mass(moved).total;
}

}  // namespace

TEST(Minimizer, GradientMatchesFiniteDifferences) {
  const GroupPtr f2 = Group::free(2);
  std::mt19937_64 rng(1);
  const GradientCheck loop = check_gradient(random_loop(f2, 5, 2), 8, 1e-5, rng);
  EXPECT_LT(loop.max_relative_error, 1e-5);
  const GroupPtr f3 = Group::free(3);
  const SimplicialCycle s = octahedral_sphere(f3, f3->generator(0), f3->generator(1), f3->generator(2));
  SimplicialCycle bumped = s;
  for (auto& v : bumped.vertices) v = geodesic_point(v, random_sphere_vector(f3, f3->ball(1), 1, rng), 0.2);
  EXPECT_LT(check_gradient(bumped, 8, 1e-5, rng).max_relative_error, 1e-5);
}

TEST(Minimizer, DoubledMultiplicityDoublesGradient) {
  const GroupPtr f2 = Group::free(2);
  const SimplicialCycle c = random_loop(f2, 4, 3);
  SimplicialCycle d = c;
  for (auto& s : d.simplices) s.multiplicity *= 2;
  const auto g1 = mass_gradient(c), g2 = mass_gradient(d);
  ASSERT_EQ(g1.size(), g2.size());
  for (std::size_t i = 0; i < g1.size(); ++i) {
    EXPECT_LT(g2[i].combined(1.0, g1[i], -2.0).norm(), 1e-13 * std::max(1.0, g1[i].norm()));
  }
}

TEST(Minimizer, GradientIsTangent) {
  const GroupPtr f2 = Group::free(2);
  const SimplicialCycle c = random_loop(f2, 6, 4);
  const auto g = mass_gradient(c);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(g[i].inner(c.vertices[i].function()), 0.0, 1e-13);
}

TEST(Minimizer, SmallStepAlongGradientLowersMass) {
  const GroupPtr f2 = Group::free(2);
  const SimplicialCycle c = random_loop(f2, 5, 5);
  const auto g = mass_gradient(c);
  double g2 = 0.0;
  for (const auto& x : g) g2 += x.squared_norm();
  const double m0 = mass(c).total, t = 1e-4;
  EXPECT_NEAR((m0 - mass_after_step(c, g, t)) / t, g2, 1e-3 * g2);
}

TEST(Minimizer, DescentIsMonotone) {
  const GroupPtr f2 = Group::free(2);
  DescentConfig dc;
  dc.max_iters = 15;
  dc.support_radius = 2;
  const DescentResult r = descend(random_loop(f2, 5, 6), dc);
  ASSERT_GE(r.trace.size(), 2u);
  for (std::size_t k = 1; k < r.trace.size(); ++k) EXPECT_LE(r.trace[k].mass, r.trace[k - 1].mass + 1e-14);
  EXPECT_LT(r.final_mass, r.initial_mass);
  EXPECT_EQ(r.final_mass, mass(r.cycle).total);
}

TEST(Minimizer, CollapseGuardStopsOnThinTorus) {
  const GroupPtr z2 = Group::free_abelian(2);
  DescentConfig dc;
  dc.delta_min = 0.5;
  // Folner box of side 16: displacement sqrt(2 / 16) < 0.5.
  const DescentResult thin = descend(amenable_cycle(z2, 16), dc);
  EXPECT_TRUE(thin.collapsed);
  EXPECT_EQ(thin.stop_reason, "collapse");
  EXPECT_EQ(thin.trace.size(), 1u);
  dc.max_iters = 0;
  const DescentResult thick = descend(torus_cycle(z2, SphereVector::dirac(z2, z2->identity())), dc);
  EXPECT_FALSE(thick.collapsed);
  EXPECT_NEAR(thick.trace[0].min_displacement, std::sqrt(2.0), 1e-14);
}

TEST(Minimizer, DescentRejectsChainsWithBoundary) {
  const GroupPtr f3 = Group::free(3);
  EXPECT_THROW(descend(octant_triangle(f3, f3->generator(0), f3->generator(1), f3->generator(2)), DescentConfig{}),
               std::invalid_argument);
}

TEST(Minimizer, SmoothingSemigroup) {
  const GroupPtr f2 = Group::free(2);
  const SimplicialCycle c = random_loop(f2, 5, 7);
  const Weights e1 = Weights::exponential(*f2, 1, 1.0), e2 = Weights::uniform(f2->ball(1));
  const double twice = mass(smooth_step(smooth_step(c, e1), e2)).total;
  const double once = mass(smooth_step(c, compose_weights(*f2, e1, e2))).total;
  EXPECT_NEAR(twice, once, 1e-8);
  EXPECT_LE(mass(smooth_step(c, e1)).total, mass(c).total + 1e-12);
}

TEST(Minimizer, DiracSmoothingKeepsMass) {
  const GroupPtr f2 = Group::free(2);
  const SimplicialCycle c = random_loop(f2, 5, 8);
  // Nonnegative lifts are fixed by the Dirac smoothing.
  SimplicialCycle positive = c;
  for (auto& v : positive.vertices) v = abs_map(v);
  EXPECT_NEAR(mass(smooth_step(positive, Weights::dirac(f2->identity()))).total, mass(positive).total, 1e-14);
}
