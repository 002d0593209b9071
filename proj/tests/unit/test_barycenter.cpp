#include "plateau/barycenter.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace plateau;

namespace {

HPoint origin(int n) {
  HPoint o = HPoint::Zero(n + 1);
  o(0) = 1.0;
  return o;
}

SphereVector random_f(const GroupPtr& g, int payload, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_sphere_vector(g, g->ball(1), payload, rng);
}

}  // namespace

TEST(Barycenter, DiracValuesAreDistances) {
  const GroupPtr s = Group::surface(2);
  const ReferenceMeasure mu = dirac_measure(s);
  const SphereVector de = SphereVector::dirac(s, s->identity());
  for (Element g : s->ball(1)) {
    const HPoint x = s->orbit_point(g);
    EXPECT_NEAR(b_value(de, mu, x), hyp_distance(origin(2), x), 1e-12);
  }
  // One atom lies on every geodesic through it.
  EXPECT_THROW(solve_barycenter(de, mu), AdmissibilityError);
}

TEST(Barycenter, SymmetricMeasureCentersAtOrigin) {
  const GroupPtr s = Group::surface(2);
  const ReferenceMeasure mu = reference_measure(s, 1, 1.0);
  const BarycenterState st = solve_barycenter(SphereVector::dirac(s, s->identity()), mu);
  EXPECT_LT(hyp_distance(st.x_star, origin(2)), 1e-9);
  EXPECT_LT(st.residual, 1e-10);
}

TEST(Barycenter, MinimizerBeatsNeighbours) {
  const GroupPtr s = Group::surface(2);
  const ReferenceMeasure mu = reference_measure(s, 1, 1.0);
  const SphereVector f = random_f(s, 1, 2);
  const BarycenterState st = solve_barycenter(f, mu);
  const double b0 = b_value(f, mu, st.x_star);
  const Eigen::MatrixXd e = tangent_frame(st.x_star);
  for (int i = 0; i < 2; ++i)
    for (double t : {-1e-3, 1e-3, -0.1, 0.1}) EXPECT_GE(b_value(f, mu, hyp_exp(st.x_star, e.col(i), t)), b0);
  // Convexity along a geodesic through the minimizer.
  const HPoint a = hyp_exp(st.x_star, e.col(0), -0.5), b = hyp_exp(st.x_star, e.col(0), 0.7);
  const HPoint m = hyp_midpoint(a, b);
  EXPECT_LE(b_value(f, mu, m), 0.5 * (b_value(f, mu, a) + b_value(f, mu, b)) + 1e-12);
}

TEST(Barycenter, Equivariance) {
  const GroupPtr s = Group::surface(2);
  const ReferenceMeasure mu = reference_measure(s, 1, 1.0);
  const SphereVector f = random_f(s, 1, 3);
  const BarycenterState st = solve_barycenter(f, mu);
  for (Element g : s->symmetric_generators()) {
    const BarycenterState moved = solve_barycenter(act(g, f), mu);
    EXPECT_LT(hyp_distance(moved.x_star, s->lorentz(g) * st.x_star), 1e-7);
  }
}

TEST(Barycenter, MomentMatrices) {
  for (const GroupPtr& g : {Group::surface(2), Group::free_loxodromic(2, 3, 2.5)}) {
    const ReferenceMeasure mu = reference_measure(g, 1, 1.0);
    const int n = mu.dimension;
    int checked = 0;
    for (std::uint64_t seed = 10; seed < 30 && checked < 5; ++seed) {
      const BarycenterState st = solve_barycenter(random_f(g, 1, seed), mu);
      // On an atom the distance is not differentiable and H, K are not defined.
      if (st.min_atom_distance < 1e-6) continue;
      ++checked;
      const JacobianBound j = jacobian_bound_check(st, n, n - 1.0);
      EXPECT_NEAR(j.trace_h, 1.0, 1e-12);
      EXPECT_GE(j.min_eig_k_minus, -1e-10);
      EXPECT_TRUE((st.H - st.H.transpose()).cwiseAbs().maxCoeff() < 1e-14);
    }
    EXPECT_EQ(checked, 5);
  }
}

TEST(Barycenter, RightHandSides) {
  const GroupPtr s = Group::surface(2);
  const BarycenterState st = solve_barycenter(random_f(s, 1, 4), reference_measure(s, 1, 1.0));
  EXPECT_NEAR(jacobian_bound_check(st, 2, 1.0).rhs, 8.0, 1e-14);
  const GroupPtr l = Group::free_loxodromic(2, 3, 2.5);
  const BarycenterState s3 = solve_barycenter(random_f(l, 1, 4), reference_measure(l, 1, 1.0));
  EXPECT_NEAR(jacobian_bound_check(s3, 3, 2.0).rhs, std::pow(3.0, 1.5), 1e-12);
}

TEST(Barycenter, PayloadRotationDoesNotMoveTheBarycenter) {
  const GroupPtr s = Group::surface(2);
  const ReferenceMeasure mu = reference_measure(s, 1, 1.0);
  const SphereVector f = random_f(s, 2, 5);
  // (a, b) -> (-b, a) on every entry: tangent, and every |f(g)| is unchanged to first order.
  std::vector<L2Function> frame;
  for (int k = 0; k < 2; ++k) {
    std::vector<std::pair<Element, std::vector<double>>> e;
    for (std::size_t i = 0; i < f.size(); ++i) {
      const auto a = f.amplitude(i);
      const double w = (i % 2 == static_cast<std::size_t>(k)) ? 1.0 : 0.0;
      e.push_back({f.support()[i], {-w * a[1], w * a[0]}});
    }
    frame.push_back(L2Function::from_entries(s, 2, e));
  }
  EXPECT_LT(numeric_jacobian(f, mu, frame), 1e-8);
}

TEST(Barycenter, NumericJacobianWithinBound) {
  const GroupPtr s = Group::surface(2);
  const ReferenceMeasure mu = reference_measure(s, 1, 1.0);
  std::mt19937_64 rng(6);
  const SphereVector f = random_f(s, 1, 6);
  const double jac = numeric_jacobian(f, mu, random_tangent_frame(f, 2, rng));
  EXPECT_TRUE(std::isfinite(jac));
  EXPECT_LE(jac, 8.0);
}

TEST(Barycenter, NeedsAGeometricAction) {
  EXPECT_THROW(reference_measure(Group::free(2), 1, 1.0), GroupError);
}
