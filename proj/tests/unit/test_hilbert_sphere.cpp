#include "plateau/hilbert_sphere.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

using namespace plateau;

namespace {

constexpr double kPi = std::numbers::pi;

// Dense evaluation of |u - v| from amplitudes, independent of the library's inner products.
double dense_distance(const L2Function& u, const L2Function& v) {
  double s = 0.0;
  std::vector<Element> keys = u.support();
  keys.insert(keys.end(), v.support().begin(), v.support().end());
  std::sort(keys.begin(), keys.end(), [](Element a, Element b) { return a.id < b.id; });
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  for (Element g : keys) {
    const auto a = u.at(g), b = v.at(g);
    for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  }
  return std::sqrt(s);
}

}  // namespace

TEST(HilbertSphere, ActionBasics) {
  const GroupPtr f2 = Group::free(2);
  std::mt19937_64 rng(1);
  const SphereVector u = random_sphere_vector(f2, f2->ball(2), 2, rng);
  EXPECT_EQ(act(f2->identity(), u), u);
  const Element a = f2->generator(0);
  EXPECT_EQ(act(a, SphereVector::dirac(f2, f2->identity())), SphereVector::dirac(f2, a));
  for (int t = 0; t < 20; ++t) {
    const SphereVector x = random_sphere_vector(f2, f2->ball(2), 1, rng);
    const SphereVector y = random_sphere_vector(f2, f2->ball(2), 1, rng);
    const auto pool = f2->ball(2);
    const Element g = pool[rng() % pool.size()];
    EXPECT_NEAR(act(g, x).inner(act(g, y)), x.inner(y), 1e-14);
    EXPECT_NEAR(twisted_inner(x.function(), g, y.function()), x.inner(act(g, y)), 1e-14);
  }
}

TEST(HilbertSphere, Distances) {
  const GroupPtr f2 = Group::free(2);
  const SphereVector e = SphereVector::dirac(f2, f2->identity());
  const SphereVector a = SphereVector::dirac(f2, f2->generator(0));
  EXPECT_EQ(chordal_distance(e, e), 0.0);
  EXPECT_EQ(geodesic_distance(e, e), 0.0);
  EXPECT_NEAR(chordal_distance(e, a), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(geodesic_distance(e, a), kPi / 2, 1e-15);
  const SphereVector minus_e(e.function().scaled(-1.0));
  EXPECT_NEAR(chordal_distance(e, minus_e), 2.0, 1e-15);
  EXPECT_NEAR(geodesic_distance(e, minus_e), kPi, 1e-15);
}

TEST(HilbertSphere, DisplacementMatchesOverlapCount) {
  const GroupPtr f2 = Group::free(2);
  EXPECT_NEAR(displacement(SphereVector::dirac(f2, f2->identity())).delta, std::sqrt(2.0), 1e-15);
  // Uniform on ball(1): a.ball(1) meets ball(1) in {e, a}, so the best overlap is 2/5.
  const auto ball1 = f2->ball(1);
  const SphereVector u = SphereVector::uniform(f2, ball1);
  std::size_t best = 0;
  for (Element g : f2->ball(2)) {
    if (g == f2->identity()) continue;
    std::size_t common = 0;
    for (Element x : ball1) common += std::count(ball1.begin(), ball1.end(), f2->mul(g, x));
    best = std::max(best, common);
  }
  EXPECT_EQ(best, 2u);
  EXPECT_NEAR(displacement(u).delta, std::sqrt(2.0 * (1.0 - best / 5.0)), 1e-14);
}

TEST(HilbertSphere, ProperFloorOnRandomSamples) {
  const GroupPtr f2 = Group::free(2);
  std::mt19937_64 rng(4);
  std::normal_distribution<double> n01;
  for (int t = 0; t < 20; ++t) {
    std::vector<std::pair<Element, std::vector<double>>> e1, e2;
    for (Element x : f2->ball(2)) {
      e1.push_back({x, {n01(rng) * std::exp(-2.0 * f2->word_length(x))}});
      e2.push_back({x, {n01(rng) * std::exp(-2.0 * f2->word_length(x))}});
    }
    const SphereVector f1 = SphereVector::normalize(L2Function::from_entries(f2, 1, e1));
    const SphereVector g1 = SphereVector::normalize(L2Function::from_entries(f2, 1, e2));
    const double eps = 1e-3;
    const auto z1 = essential_support(f1, eps), z2 = essential_support(g1, eps);
    double tail1 = 1.0;
    for (Element x : z1) {
      const auto v = f1.function().at(x);
      tail1 -= v[0] * v[0];
    }
    EXPECT_LT(tail1, eps);
    const auto prod = support_product(*f2, z1, z2);
    for (Element gamma : f2->ball(4)) {
      if (std::find(prod.begin(), prod.end(), gamma) != prod.end()) continue;
      const double d = chordal_distance(act(gamma, f1), g1);
      EXPECT_GE(d * d, properness_floor(eps) - 1e-10);
    }
  }
}

TEST(HilbertSphere, AbsMap) {
  const GroupPtr z = Group::free_abelian(1);
  std::mt19937_64 rng(2);
  const SphereVector u = random_sphere_vector(z, z->ball(3), 1, rng, true);
  EXPECT_LT(chordal_distance(abs_map(u), u), 1e-15);
  const double c[] = {0.5, -0.5, std::sqrt(0.5)};
  std::vector<std::pair<Element, std::vector<double>>> entries;
  const auto b = z->ball(1);
  for (int i = 0; i < 3; ++i) entries.push_back({b[i], {0.6 * c[i], 0.8 * c[i]}});
  const SphereVector w = abs_map(SphereVector(L2Function::from_entries(z, 2, entries)));
  EXPECT_EQ(w.payload(), 1);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(w.function().at(b[i])[0], std::abs(c[i]), 1e-15);
  for (int t = 0; t < 50; ++t) {
    const SphereVector x = random_sphere_vector(z, z->ball(3), 2, rng);
    const SphereVector y = random_sphere_vector(z, z->ball(3), 2, rng);
    EXPECT_LE(dense_distance(abs_map(x).function(), abs_map(y).function()),
              dense_distance(x.function(), y.function()) + 1e-14);
  }
}

TEST(HilbertSphere, HomomorphismPushForward) {
  const GroupPtr f2 = Group::free(2);
  const GroupPtr z = Group::free_abelian(1);
  const Homomorphism id(f2, f2, {f2->generator(0), f2->generator(1)});
  const Homomorphism theta(f2, z, {z->generator(0), z->identity()});
  std::mt19937_64 rng(3);
  const SphereVector u = random_sphere_vector(f2, f2->ball(2), 1, rng);
  EXPECT_EQ(push_homomorphism(id, u), abs_map(u));
  const Element b = f2->generator(1);
  const SphereVector v = SphereVector::uniform(f2, {f2->identity(), b, f2->inverse(b)});
  const SphereVector image = push_homomorphism(theta, v);
  ASSERT_EQ(image.size(), 1u);
  EXPECT_EQ(image.support()[0], z->identity());
  EXPECT_NEAR(image.function().at(z->identity())[0], 1.0, 1e-15);
  for (int t = 0; t < 50; ++t) {
    const SphereVector x = random_sphere_vector(f2, f2->ball(2), 1, rng);
    const SphereVector y = random_sphere_vector(f2, f2->ball(2), 1, rng);
    EXPECT_LE(dense_distance(push_homomorphism(theta, x).function(), push_homomorphism(theta, y).function()),
              dense_distance(x.function(), y.function()) + 1e-14);
  }
}

TEST(HilbertSphere, Convolution) {
  const GroupPtr f2 = Group::free(2);
  std::mt19937_64 rng(5);
  const SphereVector u = random_sphere_vector(f2, f2->ball(2), 1, rng);
  EXPECT_EQ(convolve(Weights::dirac(f2->identity()), u), abs_map(u));
  const auto ball1 = f2->ball(1);
  const SphereVector spread = convolve(Weights::uniform(ball1), SphereVector::dirac(f2, f2->identity()));
  ASSERT_EQ(spread.size(), 5u);
  for (Element x : ball1) EXPECT_NEAR(spread.function().at(x)[0], std::sqrt(0.2), 1e-15);

  const Weights eta = Weights::exponential(*f2, 1, 1.0);
  double min_margin = 1e300;
  for (int t = 0; t < 50; ++t) {
    const SphereVector x = random_sphere_vector(f2, f2->ball(1), 1, rng, true);
    const SphereVector y = random_sphere_vector(f2, f2->ball(1), 1, rng, true);
    const double before = dense_distance(x.function(), y.function());
    const double after = dense_distance(convolve(eta, x).function(), convolve(eta, y).function());
    EXPECT_LE(after, before + 1e-14);
    min_margin = std::min(min_margin, before - after);
  }
  EXPECT_GT(min_margin, 1e-6);
}

TEST(HilbertSphere, ComposedWeightsMatchTwoConvolutions) {
  const GroupPtr f2 = Group::free(2);
  std::mt19937_64 rng(6);
  const Weights e1 = Weights::exponential(*f2, 1, 1.0), e2 = Weights::uniform(f2->ball(1));
  const SphereVector u = random_sphere_vector(f2, f2->ball(2), 1, rng);
  const SphereVector twice = convolve(e2, convolve(e1, u));
  const SphereVector once = convolve(compose_weights(*f2, e1, e2), u);
  EXPECT_LT(chordal_distance(twice, once), 1e-12);
}

TEST(HilbertSphere, GeodesicPoint) {
  const GroupPtr f2 = Group::free(2);
  const SphereVector u = SphereVector::dirac(f2, f2->identity());
  const SphereVector v = SphereVector::dirac(f2, f2->generator(1));
  EXPECT_EQ(geodesic_point(u, v, 0.0), u);
  EXPECT_EQ(geodesic_point(u, v, 1.0), v);
  const SphereVector mid = geodesic_point(u, v, 0.5);
  EXPECT_NEAR(mid.function().at(f2->identity())[0], std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(mid.function().at(f2->generator(1))[0], std::sqrt(0.5), 1e-15);
  // Arc length of t -> geodesic_point(u, v, t): the chord parametrization traces the quarter circle.
  double len = 0.0;
  SphereVector prev = u;
  for (int k = 1; k <= 1000; ++k) {
    const SphereVector p = geodesic_point(u, v, k / 1000.0);
    len += chordal_distance(prev, p);
    prev = p;
  }
  EXPECT_NEAR(len, kPi / 2, 1e-6);
}

TEST(HilbertSphere, QuotientDistance) {
  const GroupPtr f2 = Group::free(2);
  std::mt19937_64 rng(7);
  const auto pool = f2->ball(2);
  for (int t = 0; t < 10; ++t) {
    const SphereVector u = random_sphere_vector(f2, f2->ball(1), 1, rng);
    const Element gamma = pool[rng() % pool.size()];
    const QuotientDistance q = quotient_distance(u, act(gamma, u), 4);
    EXPECT_NEAR(q.distance, 0.0, 1e-7);
    EXPECT_LT(chordal_distance(act(q.gamma, u), act(gamma, u)), 1e-12);
  }
  EXPECT_NEAR(quotient_distance(SphereVector::dirac(f2, f2->identity()), SphereVector::dirac(f2, f2->generator(0)))
                  .distance,
              0.0, 1e-15);
  for (int t = 0; t < 50; ++t) {
    const SphereVector u = random_sphere_vector(f2, f2->ball(1), 1, rng);
    const SphereVector v = random_sphere_vector(f2, f2->ball(1), 1, rng);
    EXPECT_LE(quotient_distance(u, v).distance, chordal_distance(u, v) + 1e-15);
  }
}

TEST(HilbertSphere, TextRoundTrip) {
  const GroupPtr f2 = Group::free(2);
  std::mt19937_64 rng(8);
  const SphereVector u = random_sphere_vector(f2, f2->ball(2), 3, rng);
  EXPECT_EQ(from_text(to_text(u), f2), u);
  EXPECT_THROW(SphereVector(L2Function::from_entries(f2, 1, {{f2->identity(), {0.5}}})), std::exception);
}
