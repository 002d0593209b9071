#include "plateau/spectral.hpp"

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <sstream>

using namespace plateau;

namespace {

constexpr double kPi = std::numbers::pi;

// Largest eigenvalue of the adjacency of ball(R) in F_k restricted to radial functions,
// symmetrized with the sphere sizes: off-diagonal sqrt(2k) at level 0, sqrt(2k - 1) beyond.
double radial_adjacency_norm(int k, int R) {
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(R + 1, R + 1);
  for (int r = 0; r < R; ++r) t(r, r + 1) = t(r + 1, r) = std::sqrt(r == 0 ? 2.0 * k : 2.0 * k - 1.0);
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(t).eigenvalues().maxCoeff();
}

SphereVector box(const GroupPtr& g, Element step, int length) {
  std::vector<Element> line;
  Element x = g->identity();
  for (int i = 0; i < length; ++i) {
    line.push_back(x);
    x = g->mul(x, step);
  }
  return SphereVector::uniform(g, line);
}

}  // namespace

TEST(Spectral, CyclicGroupsMatchCharacters) {
  // Nontrivial characters of Z/n: |chi(s) - 1| is smallest at the first one, 2 sin(pi / n).
  for (int n = 3; n <= 8; ++n) {
    const GroupPtr z = Group::cyclic(n);
    const KazhdanEstimate k = kazhdan_exact(z, {z->generator(0)});
    EXPECT_NEAR(k.value, 2.0 * std::sin(kPi / n), 1e-6) << n;
    EXPECT_LE(k.dual_bound, k.value + 1e-12);
    EXPECT_TRUE(sandwich_check(z, {z->generator(0)}).holds(1e-6)) << n;
  }
}

TEST(Spectral, OrderTwo) {
  const GroupPtr z = Group::cyclic(2);
  const Element s = z->generator(0);
  EXPECT_NEAR(kazhdan_exact(z, {s}, Subspace::Full).value, 0.0, 1e-6);
  EXPECT_NEAR(kazhdan_exact(z, {s}, Subspace::NonInvariant).value, 2.0, 1e-6);
  EXPECT_NEAR(kazhdan_exact(z, {z->identity()}, Subspace::Full).value, 0.0, 1e-12);
}

TEST(Spectral, Lambda1GrowsWithS) {
  const GroupPtr z = Group::cyclic(6);
  const Element g = z->generator(0);
  const double small = lambda1(z, {g}, Subspace::Full);
  const double large = lambda1(z, {g, z->pow(g, 2)}, Subspace::Full);
  EXPECT_LE(small, large + 1e-9);
  const GroupPtr d4 = Group::dihedral(4);
  EXPECT_TRUE(sandwich_check(d4, d4->symmetric_generators()).holds(1e-6));
}

TEST(Spectral, TruncatedIntegersMatchPathLaplacian) {
  // Unit vectors on 2R + 1 consecutive integers: the Dirichlet path Laplacian on N = 2R + 1 nodes
  // has smallest eigenvalue 4 sin^2(pi / (2 (N + 1))).
  const GroupPtr z = Group::free_abelian(1);
  double previous = 1e300;
  for (int R = 1; R <= 5; ++R) {
    const KazhdanEstimate k = kazhdan_truncated(z, {z->generator(0)}, R);
    EXPECT_EQ(k.kind, EstimateKind::Upper);
    EXPECT_NEAR(k.value, 2.0 * std::sin(kPi / (2.0 * (2 * R + 2))), 1e-6) << R;
    EXPECT_LT(k.value, previous);
    previous = k.value;
  }
}

TEST(Spectral, FolnerDisplacement) {
  for (int n : {1, 2}) {
    const GroupPtr z = Group::free_abelian(n);
    for (int L : {2, 5, 9}) {
      const SphereVector u = folner_vector(z, L);
      EXPECT_EQ(static_cast<int>(u.size()), n == 1 ? L : L * L);
      for (int i = 0; i < n; ++i) EXPECT_NEAR(chordal_distance(act(z->generator(i), u), u), std::sqrt(2.0 / L), 1e-14);
    }
  }
  const PowerLawFit fit = fit_power_law({1, 2, 4, 8}, {3.0, 1.5, 0.75, 0.375});
  EXPECT_NEAR(fit.exponent, 1.0, 1e-12);
  EXPECT_NEAR(fit.prefactor, 3.0, 1e-12);
}

TEST(Spectral, KestenRadialOracle) {
  for (int R : {3, 8}) {
    const KestenCertificate c = kesten_lower_bound(2, R);
    EXPECT_TRUE(c.converged);
    EXPECT_NEAR(c.norm_estimate, radial_adjacency_norm(2, R), 1e-8) << R;
    EXPECT_LT(c.norm_estimate, c.analytic_norm);
  }
  EXPECT_NEAR(radial_adjacency_norm(2, 8), 3.320060, 1e-6);
  EXPECT_NEAR(kesten_floor(2), std::sqrt(2.0 - std::sqrt(3.0)), 1e-15);
  for (int k = 2; k < 6; ++k) EXPECT_LT(kesten_floor(k), kesten_floor(k + 1));
}

TEST(Spectral, FreeGroupTruncationsStayAboveFloor) {
  const GroupPtr f2 = Group::free(2);
  for (int R = 1; R <= 3; ++R) {
    const KazhdanEstimate k = kazhdan_truncated(f2, {f2->generator(0), f2->generator(1)}, R);
    EXPECT_GE(k.value, kesten_floor(2) - 1e-3) << R;
  }
}

TEST(Spectral, RestrictionToIndexTwoSubgroup) {
  const GroupPtr z6 = Group::cyclic(6);
  const Element g2 = z6->pow(z6->generator(0), 2);
  const RestrictionReport r = restriction_check(z6, {g2}, {g2});
  EXPECT_NEAR(r.k_subgroup, r.k_group, 1e-6);
  EXPECT_NEAR(r.k_group, 2.0 * std::sin(kPi / 3), 1e-6);
  EXPECT_LT(r.max_norm_error, 1e-12);
  EXPECT_LE(r.max_displacement_excess, 1e-12);
  EXPECT_EQ(right_coset_representatives(*z6, {z6->identity(), g2, z6->pow(g2, 2)}).size(), 2u);
}

TEST(Spectral, MargulisChains) {
  const GroupPtr f2 = Group::free(2);
  const Element a = f2->generator(0), b = f2->generator(1);
  // Uniform on L points of the a-axis: |a^k u - u|^2 = 2 |k| / L.
  const SphereVector w = box(f2, a, 64);
  EXPECT_NEAR(chordal_distance(act(f2->pow(a, -3), w), w), std::sqrt(6.0 / 64), 1e-14);
  const MargulisVerdict v = margulis_chain_check(f2, {{a, f2->pow(a, 2), f2->pow(a, -3)}, {w, w}}, 0.5);
  EXPECT_TRUE(v.common_cyclic);
  ASSERT_TRUE(v.root.has_value());
  EXPECT_EQ(*v.root, a);
  EXPECT_THROW(margulis_chain_check(f2, {{a, b}, {w}}, 0.3), InvalidWitness);
  const Element conj = f2->mul(f2->mul(b, a), f2->inverse(b));
  EXPECT_FALSE(margulis_chain_check(f2, {{a, conj}, {w}}, 1.5).common_cyclic);
}

TEST(Spectral, EstimatesCsv) {
  const GroupPtr z = Group::cyclic(6);
  std::ostringstream os;
  write_estimates_csv(os, *z, {kazhdan_exact(z, {z->generator(0)})});
  EXPECT_EQ(os.str().substr(0, os.str().find('\n')), "group,S,kind,radius,value,gap");
}
