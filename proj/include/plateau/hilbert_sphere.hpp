#pragma once

// The regular representation on the unit sphere of l2(Gamma, R^m), distances,
// displacement, and the three distance non-increasing maps (modulus,
// homomorphism push-forward, spherical convolution).

#include "plateau/l2_function.hpp"

#include <vector>

namespace plateau {

/// (g.u)(x) = u(g^-1 x).
SphereVector act(Element g, const SphereVector& u);
L2Function act(Element g, const L2Function& u);

/// <u, g.v> without materializing g.v; products outside the interned set cannot meet supp u.
double twisted_inner(const L2Function& u, Element g, const L2Function& v);
/// Entries of g.u whose element lies in ball(radius); ball(radius) must already be enumerated.
L2Function act_within(Element g, const L2Function& u, int radius);

double chordal_distance(const SphereVector& u, const SphereVector& v);
/// 2 asin(chordal / 2), argument clamped to [0, 1].
double geodesic_distance(const SphereVector& u, const SphereVector& v);

struct ThicknessReport {
  double delta = 0.0;
  Element gamma;  // realizing element
  bool is_thick(double d) const { return delta > d; }
};

/// Default search radius 2 * max support length + 1.
int default_radius(const SphereVector& u);

/// min over nontrivial g in ball(R) of |g.u - u|.
ThicknessReport displacement(const SphereVector& u, int radius = -1);

struct QuotientDistance {
  double distance = 0.0;
  Element gamma;
};
/// min over g in ball(R) of |g.u - v|.
QuotientDistance quotient_distance(const SphereVector& u, const SphereVector& v, int radius = -1);

/// {a b, b a : a^+-1 in z1, b^+-1 in z2}; gamma outside it has gamma.z1 disjoint from z2.
std::vector<Element> support_product(const Group& g, const std::vector<Element>& z1, const std::vector<Element>& z2);
/// Lower bound 2(1 - eps - 2 sqrt(eps)) on |gamma.f1 - f2|^2 when both tails are below eps.
double properness_floor(double eps);
/// Smallest prefix of the support (by decreasing amplitude) whose complement carries mass < eps.
std::vector<Element> essential_support(const SphereVector& u, double eps);

/// u -> |u| entrywise (scalar payload).
SphereVector abs_map(const SphereVector& u);

struct Homomorphism {
  GroupPtr source;
  GroupPtr target;
  std::vector<Element> images;  // image of each generator of source

  Homomorphism(GroupPtr source, GroupPtr target, std::vector<Element> images);
  Element apply(Element x) const;
};

/// Theta(u)(y) = (sum over the fiber of y of |u(x)|^2)^(1/2).
SphereVector push_homomorphism(const Homomorphism& theta, const SphereVector& u);

/// Positive weights summing to one.
struct Weights {
  std::vector<Element> elements;
  std::vector<double> values;

  static Weights dirac(Element e);
  static Weights uniform(const std::vector<Element>& set);
  /// w(g) proportional to exp(-decay * |g|) on ball(radius).
  static Weights exponential(const Group& group, int radius, double decay);
  void validate() const;
};

/// Squared-amplitude convolution of u with eta: the weights act on the right.
SphereVector convolve(const Weights& eta, const SphereVector& u);
/// Weights of eta1 * eta2 (so that convolve(eta2, convolve(eta1, u)) = convolve(combine(eta1, eta2), u)).
Weights compose_weights(const Group& group, const Weights& first, const Weights& second);

/// normalize((1 - t) u + t v).
SphereVector geodesic_point(const SphereVector& u, const SphereVector& v, double t);

}  // namespace plateau
