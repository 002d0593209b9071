#include "plateau/hilbert_sphere.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

namespace plateau {

L2Function act(Element g, const L2Function& u) {
  if (g == u.group()->identity()) return u;
  std::vector<std::pair<Element, std::vector<double>>> e;
  e.reserve(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    auto a = u.amplitude(i);
    e.push_back({u.group()->mul(g, u.support()[i]), {a.begin(), a.end()}});
  }
  return L2Function::from_entries(u.group(), u.payload(), e);
}

SphereVector act(Element g, const SphereVector& u) {
  if (g == u.group()->identity()) return u;
  return SphereVector(act(g, u.function()));
}

double twisted_inner(const L2Function& u, Element g, const L2Function& v) {
  if (u.group() != v.group()) throw GroupError("inner product across different groups");
  if (u.payload() != v.payload()) throw std::invalid_argument("payload dimension mismatch");
  const Group& G = *u.group();
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto y = G.find_mul(g, v.support()[i]);
    if (!y) continue;
    const std::ptrdiff_t k = u.find(*y);
    if (k < 0) continue;
    const auto a = u.amplitude(static_cast<std::size_t>(k));
    const auto b = v.amplitude(i);
    for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
  }
  return s;
}

L2Function act_within(Element g, const L2Function& u, int radius) {
  const Group& G = *u.group();
  std::vector<std::pair<Element, std::vector<double>>> e;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const auto y = G.find_mul(g, u.support()[i]);
    if (!y || G.word_length(*y) > radius) continue;
    auto a = u.amplitude(i);
    e.push_back({*y, {a.begin(), a.end()}});
  }
  return L2Function::from_entries(u.group(), u.payload(), e);
}

double chordal_distance(const SphereVector& u, const SphereVector& v) {
  const L2Function d = u.function().combined(1.0, v.function(), -1.0);
  return d.norm();
}

double geodesic_distance(const SphereVector& u, const SphereVector& v) {
  const double c = chordal_distance(u, v);
  return 2.0 * std::asin(std::clamp(0.5 * c, 0.0, 1.0));
}

int default_radius(const SphereVector& u) { return 2 * u.max_word_length() + 1; }

namespace {

struct Correlation {
  double best = -1e300;
  Element gamma;
  bool found = false;
};

// Max over g in ball(R) (optionally excluding e) of <g.u, v>. Only g = x y^-1
// with x in spt v, y in spt u can give a nonzero overlap; every other element of
// the ball contributes exactly zero.
Correlation max_overlap(const SphereVector& u, const SphereVector& v, int radius, bool exclude_identity) {
  const Group& G = *u.group();
  if (u.group() != v.group()) throw GroupError("vectors live on different groups");
  if (radius < 0) throw std::invalid_argument("radius must be non-negative");
  std::unordered_map<std::uint32_t, double> overlap;
  std::vector<Element> inv_u;
  inv_u.reserve(u.size());
  for (Element y : u.support()) inv_u.push_back(G.inverse(y));
  const int m = u.payload();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Element x = v.support()[i];
    auto vx = v.amplitude(i);
    for (std::size_t j = 0; j < u.size(); ++j) {
      if (G.word_length(x) > radius + G.word_length(u.support()[j])) continue;
      const Element g = G.mul(x, inv_u[j]);
      if (G.word_length(g) > radius) continue;
      if (exclude_identity && g == G.identity()) continue;
      auto uy = u.amplitude(j);
      double s = 0.0;
      for (int k = 0; k < m; ++k) s += vx[k] * uy[k];
      overlap[g.id] += s;
    }
  }
  Correlation c;
  std::vector<Element> keys;
  keys.reserve(overlap.size());
  for (const auto& kv : overlap) keys.push_back(Element{kv.first});
  std::sort(keys.begin(), keys.end(), [&](Element a, Element b) { return G.less(a, b); });
  for (Element g : keys) {
    const double val = overlap[g.id];
    if (!c.found || val > c.best) {
      c.best = val;
      c.gamma = g;
      c.found = true;
    }
  }
  // Ball elements outside the overlap set give zero correlation.
  const double ball_count = G.predicted_ball_size(radius);
  const double candidates = static_cast<double>(keys.size()) + (exclude_identity ? 1.0 : 0.0);
  bool zero_available = false;
  Element zero_gamma;
  if (!c.found || c.best < 0.0) {
    const bool small = G.kind() == GroupKind::Finite || ball_count <= candidates + 64 || ball_count < 5000;
    if (small) {
      for (Element g : G.ball(radius)) {
        if (exclude_identity && g == G.identity()) continue;
        if (overlap.count(g.id)) continue;
        zero_available = true;
        zero_gamma = g;
        break;
      }
    } else {
      // The ball is much larger than the overlap set; the first generator power
      // outside it is a witness.
      for (int k = 1; k <= radius && !zero_available; ++k) {
        for (Element s : G.symmetric_generators()) {
          const Element g = G.pow(s, k);
          if (g == G.identity() || overlap.count(g.id)) continue;
          if (G.word_length(g) > radius) continue;
          zero_available = true;
          zero_gamma = g;
          break;
        }
      }
    }
  }
  if (zero_available && (!c.found || c.best < 0.0)) {
    c.best = 0.0;
    c.gamma = zero_gamma;
    c.found = true;
  }
  return c;
}

}  // namespace

ThicknessReport displacement(const SphereVector& u, int radius) {
  if (radius < 0) radius = default_radius(u);
  if (radius < 1) throw std::invalid_argument("displacement radius must be >= 1");
  const Correlation c = max_overlap(u, u, radius, true);
  ThicknessReport r;
  if (!c.found) {
    // Trivial group: nothing moves.
    r.delta = 0.0;
    r.gamma = u.group()->identity();
    return r;
  }
  r.delta = std::sqrt(std::max(0.0, 2.0 - 2.0 * c.best));
  r.gamma = c.gamma;
  return r;
}

QuotientDistance quotient_distance(const SphereVector& u, const SphereVector& v, int radius) {
  if (radius < 0) radius = std::max(default_radius(u), default_radius(v));
  const Correlation c = max_overlap(u, v, radius, false);
  QuotientDistance q;
  q.distance = std::sqrt(std::max(0.0, 2.0 - 2.0 * c.best));
  q.gamma = c.gamma;
  return q;
}

std::vector<Element> support_product(const Group& g, const std::vector<Element>& z1, const std::vector<Element>& z2) {
  auto symmetric = [&](const std::vector<Element>& z) {
    std::vector<Element> out = z;
    for (Element x : z) out.push_back(g.inverse(x));
    return out;
  };
  const auto a = symmetric(z1), b = symmetric(z2);
  std::vector<Element> out;
  std::unordered_set<std::uint32_t> seen;
  for (Element x : a) {
    for (Element y : b) {
      for (Element p : {g.mul(x, y), g.mul(y, x)}) {
        if (seen.insert(p.id).second) out.push_back(p);
      }
    }
  }
  std::sort(out.begin(), out.end(), [&](Element x, Element y) { return g.less(x, y); });
  return out;
}

double properness_floor(double eps) {
  if (!(eps >= 0.0)) throw std::invalid_argument("tail mass must be non-negative");
  return 2.0 * (1.0 - eps - 2.0 * std::sqrt(eps));
}

std::vector<Element> essential_support(const SphereVector& u, double eps) {
  std::vector<std::size_t> order(u.size());
  std::iota(order.begin(), order.end(), 0);
  const L2Function& f = u.function();
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return f.entry_norm(i) > f.entry_norm(j); });
  double tail = 1.0;
  std::vector<Element> out;
  for (std::size_t i : order) {
    if (tail < eps) break;
    out.push_back(u.support()[i]);
    tail -= f.entry_norm(i) * f.entry_norm(i);
  }
  return out;
}

SphereVector abs_map(const SphereVector& u) {
  std::vector<std::pair<Element, std::vector<double>>> e;
  e.reserve(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) e.push_back({u.support()[i], {u.function().entry_norm(i)}});
  return SphereVector::normalize(L2Function::from_entries(u.group(), 1, e));
}

Homomorphism::Homomorphism(GroupPtr s, GroupPtr t, std::vector<Element> imgs)
    : source(std::move(s)), target(std::move(t)), images(std::move(imgs)) {
  if (static_cast<int>(images.size()) != source->rank()) {
    throw std::invalid_argument("homomorphism needs one image per generator of " + source->description());
  }
}

Element Homomorphism::apply(Element x) const {
  Element y = target->identity();
  for (Letter l : source->word(x)) {
    const Element img = images[std::abs(l) - 1];
    y = target->mul(y, l > 0 ? img : target->inverse(img));
  }
  return y;
}

SphereVector push_homomorphism(const Homomorphism& theta, const SphereVector& u) {
  if (u.group() != theta.source) throw GroupError("vector does not live on the homomorphism source");
  std::vector<std::pair<Element, std::vector<double>>> e;
  e.reserve(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double n = u.function().entry_norm(i);
    e.push_back({theta.apply(u.support()[i]), {n * n}});
  }
  L2Function sq = L2Function::from_entries(theta.target, 1, e);
  std::vector<std::pair<Element, std::vector<double>>> r;
  for (std::size_t i = 0; i < sq.size(); ++i) r.push_back({sq.support()[i], {std::sqrt(sq.amplitude(i)[0])}});
  return SphereVector::normalize(L2Function::from_entries(theta.target, 1, r));
}

Weights Weights::dirac(Element e) { return Weights{{e}, {1.0}}; }

Weights Weights::uniform(const std::vector<Element>& set) {
  Weights w;
  w.elements = set;
  w.values.assign(set.size(), 1.0 / static_cast<double>(set.size()));
  return w;
}

Weights Weights::exponential(const Group& group, int radius, double decay) {
  Weights w;
  w.elements = group.ball(radius);
  double total = 0.0;
  for (Element g : w.elements) {
    w.values.push_back(std::exp(-decay * group.word_length(g)));
    total += w.values.back();
  }
  for (double& v : w.values) v /= total;
  return w;
}

void Weights::validate() const {
  if (elements.empty() || elements.size() != values.size()) throw std::invalid_argument("malformed weights");
  double total = 0.0;
  for (double v : values) {
    if (!(v > 0.0)) throw std::invalid_argument("weights must be strictly positive");
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("weights must sum to one");
}

SphereVector convolve(const Weights& eta, const SphereVector& u) {
  eta.validate();
  const Group& G = *u.group();
  std::vector<std::pair<Element, std::vector<double>>> e;
  e.reserve(u.size() * eta.elements.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double n = u.function().entry_norm(i);
    const double p = n * n;
    for (std::size_t k = 0; k < eta.elements.size(); ++k) {
      e.push_back({G.mul(u.support()[i], eta.elements[k]), {p * eta.values[k]}});
    }
  }
  L2Function sq = L2Function::from_entries(u.group(), 1, e);
  std::vector<std::pair<Element, std::vector<double>>> r;
  r.reserve(sq.size());
  for (std::size_t i = 0; i < sq.size(); ++i) r.push_back({sq.support()[i], {std::sqrt(sq.amplitude(i)[0])}});
  return SphereVector::normalize(L2Function::from_entries(u.group(), 1, r));
}

Weights compose_weights(const Group& group, const Weights& first, const Weights& second) {
  std::unordered_map<std::uint32_t, double> acc;
  std::vector<Element> order;
  for (std::size_t i = 0; i < first.elements.size(); ++i) {
    for (std::size_t j = 0; j < second.elements.size(); ++j) {
      const Element h = group.mul(first.elements[i], second.elements[j]);
      auto [it, fresh] = acc.emplace(h.id, 0.0);
      if (fresh) order.push_back(h);
      it->second += first.values[i] * second.values[j];
    }
  }
  std::sort(order.begin(), order.end(), [&](Element a, Element b) { return group.less(a, b); });
  Weights w;
  for (Element h : order) {
    w.elements.push_back(h);
    w.values.push_back(acc[h.id]);
  }
  return w;
}

SphereVector geodesic_point(const SphereVector& u, const SphereVector& v, double t) {
  if (t == 0.0) return u;
  if (t == 1.0) return v;
  const L2Function f = u.function().combined(1.0 - t, v.function(), t);
  if (f.norm() < 1e-14) throw std::invalid_argument("geodesic_point: antipodal pair");
  return SphereVector::normalize(f);
}

}  // namespace plateau
