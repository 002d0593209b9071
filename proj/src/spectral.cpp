#include "plateau/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <unordered_map>

namespace plateau {

const char* to_string(EstimateKind k) {
  switch (k) {
    case EstimateKind::Exact: return "exact";
    case EstimateKind::Upper: return "upper";
    case EstimateKind::Lower: return "lower";
  }
  return "?";
}

namespace {

using Vec = Eigen::VectorXd;

// Quadratic forms q_s(u) = |s.u - u|^2 = 2|u|^2 - 2 sum_i u_i u_{s x_i} for u supported on a finite set.
struct Form {
  std::vector<int> fwd;  // index of s x_i in the support, -1 outside
  std::vector<int> bwd;  // index of s^-1 x_i
  int weight = 1;        // copies of s in S (sum objective)
};

struct FormSet {
  int n = 0;
  std::vector<Form> forms;
  // S-orbit classes; the S-invariant vectors are the functions constant on each class.
  std::vector<int> klass;
  int classes = 0;
  bool project = false;

  double q(std::size_t s, const Vec& u) const {
    const Form& f = forms[s];
    double cross = 0.0;
    for (int i = 0; i < n; ++i) {
      if (f.fwd[i] >= 0) cross += u(i) * u(f.fwd[i]);
    }
    return 2.0 * u.squaredNorm() - 2.0 * cross;
  }
  Vec grad_q(std::size_t s, const Vec& u) const {
    const Form& f = forms[s];
    Vec g = 4.0 * u;
    for (int i = 0; i < n; ++i) {
      if (f.fwd[i] >= 0) g(i) -= 2.0 * u(f.fwd[i]);
      if (f.bwd[i] >= 0) g(i) -= 2.0 * u(f.bwd[i]);
    }
    return g;
  }
  void project_out(Vec& u) const {
    if (!project) return;
    std::vector<double> sum(classes, 0.0);
    std::vector<int> count(classes, 0);
    for (int i = 0; i < n; ++i) {
      sum[klass[i]] += u(i);
      ++count[klass[i]];
    }
    for (int i = 0; i < n; ++i) u(i) -= sum[klass[i]] / count[klass[i]];
  }
  Eigen::MatrixXd dense(std::size_t s) const {
    Eigen::MatrixXd m = 2.0 * Eigen::MatrixXd::Identity(n, n);
    for (int i = 0; i < n; ++i) {
      const int j = forms[s].fwd[i];
      if (j < 0) continue;
      m(i, j) -= 1.0;
      m(j, i) -= 1.0;
    }
    return m;
  }
  // sum lambda_s Q_s with the invariant directions lifted above the spectrum.
  Eigen::MatrixXd combined(const std::vector<double>& lambda) const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t s = 0; s < forms.size(); ++s) {
      if (lambda[s] != 0.0) m += lambda[s] * dense(s);
    }
    if (project) {
      std::vector<int> count(classes, 0);
      for (int i = 0; i < n; ++i) ++count[klass[i]];
      const double shift = 8.0;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          if (klass[i] == klass[j]) m(i, j) += shift / count[klass[i]];
        }
      }
    }
    return m;
  }
};

FormSet build_forms(const Group& g, const std::vector<Element>& support, const std::vector<Element>& S,
                    bool merge_inverses, bool project) {
  if (support.size() > kMaxSpectralDimension) {
    throw SpectralError("spectral problem has dimension " + std::to_string(support.size()) + " > " +
                        std::to_string(kMaxSpectralDimension));
  }
  FormSet fs;
  fs.n = static_cast<int>(support.size());
  std::unordered_map<std::uint32_t, int> index;
  for (int i = 0; i < fs.n; ++i) index[support[i].id] = i;
  auto lookup = [&](Element e) {
    auto it = index.find(e.id);
    return it == index.end() ? -1 : it->second;
  };
  std::vector<Element> used;
  for (Element s : S) {
    if (s == g.identity()) continue;
    if (merge_inverses) {
      bool dup = false;
      for (Element t : used) dup = dup || t == s || t == g.inverse(s);
      if (dup) continue;
    } else {
      bool found = false;
      for (std::size_t k = 0; k < used.size(); ++k) {
        if (used[k] == s) {
          ++fs.forms[k].weight;
          found = true;
        }
      }
      if (found) continue;
    }
    used.push_back(s);
    Form f;
    f.fwd.resize(fs.n);
    f.bwd.resize(fs.n);
    const Element si = g.inverse(s);
    for (int i = 0; i < fs.n; ++i) {
      f.fwd[i] = lookup(g.mul(s, support[i]));
      f.bwd[i] = lookup(g.mul(si, support[i]));
    }
    fs.forms.push_back(std::move(f));
  }
  fs.project = project;
  if (project) {
    std::vector<int> parent(fs.n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const Form& f : fs.forms) {
      for (int i = 0; i < fs.n; ++i) {
        if (f.fwd[i] >= 0) parent[find(i)] = find(f.fwd[i]);
      }
    }
    fs.klass.assign(fs.n, -1);
    std::unordered_map<int, int> ids;
    for (int i = 0; i < fs.n; ++i) {
      auto [it, fresh] = ids.try_emplace(find(i), static_cast<int>(ids.size()));
      fs.klass[i] = it->second;
    }
    fs.classes = static_cast<int>(ids.size());
    if (fs.classes == fs.n) throw SpectralError("the non-invariant subspace is empty (S acts trivially)");
  }
  return fs;
}

double min_eigenvalue(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

struct Dual {
  std::vector<double> lambda;
  double value = 0.0;
};

// max over the simplex of lambda_min(sum lambda_s Q_s); any lambda certifies a lower bound.
Dual solve_dual(const FormSet& fs) {
  const std::size_t m = fs.forms.size();
  Dual best;
  auto eval = [&](const std::vector<double>& l) { return min_eigenvalue(fs.combined(l)); };
  if (m == 1) {
    best.lambda = {1.0};
    best.value = eval(best.lambda);
    return best;
  }
  if (m == 2) {
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = 0.0, b = 1.0;
    double c = b - phi * (b - a), d = a + phi * (b - a);
    double fc = eval({1.0 - c, c}), fd = eval({1.0 - d, d});
    for (int it = 0; it < 60; ++it) {
      if (fc < fd) {
        a = c;
        c = d;
        fc = fd;
        d = a + phi * (b - a);
        fd = eval({1.0 - d, d});
      } else {
        b = d;
        d = c;
        fd = fc;
        c = b - phi * (b - a);
        fc = eval({1.0 - c, c});
      }
    }
    best.lambda = fc > fd ? std::vector<double>{1.0 - c, c} : std::vector<double>{1.0 - d, d};
    best.value = std::max(fc, fd);
    for (double t : {0.0, 1.0}) {
      const double v = eval({1.0 - t, t});
      if (v > best.value) best = {{1.0 - t, t}, v};
    }
    return best;
  }
  // Exponentiated supergradient ascent; the supergradient is (q_s(u)) at a bottom eigenvector u.
  std::vector<double> l(m, 1.0 / m);
  best.value = -std::numeric_limits<double>::infinity();
  for (int it = 0; it < 300; ++it) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(fs.combined(l));
    const double v = es.eigenvalues()(0);
    if (v > best.value) best = {l, v};
    const Vec u = es.eigenvectors().col(0);
    const double eta = 2.0 / std::sqrt(it + 1.0);
    double z = 0.0;
    for (std::size_t s = 0; s < m; ++s) {
      l[s] *= std::exp(eta * fs.q(s, u));
      z += l[s];
    }
    for (double& x : l) x /= z;
  }
  return best;
}

enum class Objective { Max, Sum };

double true_objective(const FormSet& fs, Objective kind, const Vec& u) {
  double out = 0.0;
  for (std::size_t s = 0; s < fs.forms.size(); ++s) {
    const double r = std::sqrt(std::max(0.0, fs.q(s, u)));
    if (kind == Objective::Max) {
      out = std::max(out, r);
    } else {
      out += fs.forms[s].weight * r;
    }
  }
  return out;
}

// Smoothed objective and Euclidean gradient: log-sum-exp of q_s at temperature tau (Max),
// or sum of sqrt(q_s + tau) (Sum).
double smoothed(const FormSet& fs, Objective kind, double tau, const Vec& u, Vec* grad) {
  const std::size_t m = fs.forms.size();
  std::vector<double> q(m);
  for (std::size_t s = 0; s < m; ++s) q[s] = fs.q(s, u);
  std::vector<double> w(m);
  double value = 0.0;
  if (kind == Objective::Max) {
    const double top = *std::max_element(q.begin(), q.end());
    double z = 0.0;
    for (std::size_t s = 0; s < m; ++s) z += w[s] = std::exp((q[s] - top) / tau);
    for (double& x : w) x /= z;
    value = top + tau * std::log(z);
  } else {
    for (std::size_t s = 0; s < m; ++s) {
      const double r = std::sqrt(std::max(0.0, q[s]) + tau);
      value += fs.forms[s].weight * r;
      w[s] = fs.forms[s].weight * 0.5 / r;
    }
  }
  if (grad) {
    grad->setZero(u.size());
    for (std::size_t s = 0; s < m; ++s) {
      if (w[s] != 0.0) *grad += w[s] * fs.grad_q(s, u);
    }
  }
  return value;
}

Vec polish(const FormSet& fs, Objective kind, Vec u) {
  const std::vector<double> schedule = kind == Objective::Max
                                           ? std::vector<double>{1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8, 1e-9, 1e-10}
                                           : std::vector<double>{1e-4, 1e-6, 1e-8, 1e-10, 1e-12, 1e-14};
  for (double tau : schedule) {
    double step = 0.1;
    Vec prev_u, prev_r;
    for (int it = 0; it < 400; ++it) {
      Vec g;
      const double f = smoothed(fs, kind, tau, u, &g);
      fs.project_out(g);
      Vec r = g - g.dot(u) * u;
      const double rn2 = r.squaredNorm();
      if (rn2 < 1e-28) break;
      if (prev_u.size()) {
        const Vec du = u - prev_u, dr = r - prev_r;
        const double den = du.dot(dr);
        if (den > 0.0) step = std::clamp(du.squaredNorm() / den, 1e-8, 10.0);
      }
      bool accepted = false;
      for (int bt = 0; bt < 50; ++bt) {
        Vec cand = u - step * r;
        fs.project_out(cand);
        cand.normalize();
        if (smoothed(fs, kind, tau, cand, nullptr) <= f - 1e-4 * step * rn2) {
          prev_u = u;
          prev_r = r;
          u = cand;
          accepted = true;
          break;
        }
        step *= 0.5;
      }
      if (!accepted) break;
    }
  }
  return u;
}

struct Minimum {
  double value = std::numeric_limits<double>::infinity();
  double dual = 0.0;
};

Minimum minimize(const FormSet& fs, Objective kind, const SpectralOptions& opt) {
  Minimum out;
  const std::size_t m = fs.forms.size();
  if (m == 0) {
    out.value = 0.0;
    return out;
  }
  const Dual dual = solve_dual(fs);
  out.dual = std::sqrt(std::max(0.0, dual.value));
  if (kind == Objective::Sum) {
    // sum_s sqrt(q_s) >= sqrt(sum_s q_s) >= sqrt(lambda_min(sum_s Q_s)).
    std::vector<double> ones(m);
    for (std::size_t s = 0; s < m; ++s) ones[s] = fs.forms[s].weight;
    out.dual = std::sqrt(std::max(0.0, min_eigenvalue(fs.combined(ones))));
  }

  if (m == 1 && kind == Objective::Max) {
    // A single form: the bottom eigenvector attains the minimum.
    out.value = out.dual;
    return out;
  }
  // Spectral seeds: bottom eigenvectors of sum mu_s Q_s over a grid of mu and at the dual optimum.
  std::vector<std::vector<double>> mus{dual.lambda};
  for (std::size_t s = 0; s < m; ++s) {
    std::vector<double> e(m, 0.0);
    e[s] = 1.0;
    mus.push_back(e);
  }
  mus.push_back(std::vector<double>(m, 1.0 / m));
  if (m == 2) {
    for (int k = 1; k < 20; ++k) mus.push_back({1.0 - k / 20.0, k / 20.0});
  }
  std::vector<Vec> seeds;
  for (const auto& mu : mus) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(fs.combined(mu));
    const Eigen::VectorXd& ev = es.eigenvalues();
    for (int k = 0; k < std::min(fs.n, 4); ++k) {
      if (k > 0 && ev(k) - ev(0) > 1e-6) break;
      seeds.push_back(es.eigenvectors().col(k));
    }
  }
  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> normal;
  for (int r = 0; r < opt.restarts; ++r) {
    Vec v(fs.n);
    for (int i = 0; i < fs.n; ++i) v(i) = normal(rng);
    seeds.push_back(v);
  }
  for (Vec& s : seeds) {
    fs.project_out(s);
    s.normalize();
  }
  std::vector<double> values(seeds.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t k = 0; k < seeds.size(); ++k) {
    const double raw = true_objective(fs, kind, seeds[k]);
    const double pol = true_objective(fs, kind, polish(fs, kind, seeds[k]));
    values[k] = std::min(raw, pol);
  }
  for (double v : values) out.value = std::min(out.value, v);
  return out;
}

std::vector<Element> all_elements(const Group& g) {
  const int n = g.order();
  if (n <= 0) throw SpectralError(g.description() + " is not a finite group");
  if (static_cast<std::size_t>(n) > kMaxSpectralDimension) {
    throw SpectralError(g.description() + " has order " + std::to_string(n) + " > " +
                        std::to_string(kMaxSpectralDimension));
  }
  std::vector<Element> out;
  for (int i = 0; i < n; ++i) out.push_back(g.from_table_index(i));
  return out;
}

}  // namespace

KazhdanEstimate kazhdan_exact(const GroupPtr& group, const std::vector<Element>& S, Subspace subspace,
                              const SpectralOptions& opt) {
  const auto support = all_elements(*group);
  const FormSet fs = build_forms(*group, support, S, true, subspace == Subspace::NonInvariant);
  const Minimum m = minimize(fs, Objective::Max, opt);
  KazhdanEstimate e;
  e.value = m.value;
  e.kind = EstimateKind::Exact;
  e.S = S;
  e.dual_bound = m.dual;
  e.gap = std::max(0.0, m.value - m.dual);
  return e;
}

double lambda1(const GroupPtr& group, const std::vector<Element>& S, Subspace subspace, const SpectralOptions& opt) {
  const auto support = all_elements(*group);
  const FormSet fs = build_forms(*group, support, S, false, subspace == Subspace::NonInvariant);
  return 0.5 * minimize(fs, Objective::Sum, opt).value;
}

KazhdanEstimate kazhdan_on_support(const GroupPtr& group, const std::vector<Element>& S,
                                   const std::vector<Element>& support, const SpectralOptions& opt) {
  const FormSet fs = build_forms(*group, support, S, true, false);
  const Minimum m = minimize(fs, Objective::Max, opt);
  KazhdanEstimate e;
  e.value = m.value;
  e.kind = EstimateKind::Upper;
  e.S = S;
  e.dual_bound = m.dual;
  e.gap = std::max(0.0, m.value - m.dual);
  return e;
}

KazhdanEstimate kazhdan_truncated(const GroupPtr& group, const std::vector<Element>& S, int radius,
                                  const SpectralOptions& opt) {
  if (radius < 0) throw SpectralError("truncation radius must be non-negative");
  KazhdanEstimate e = kazhdan_on_support(group, S, group->ball(radius), opt);
  e.radius = radius;
  return e;
}

SandwichReport sandwich_check(const GroupPtr& group, const std::vector<Element>& S, Subspace subspace,
                              const SpectralOptions& opt) {
  SandwichReport r;
  r.lambda1 = lambda1(group, S, subspace, opt);
  r.kazhdan = kazhdan_exact(group, S, subspace, opt).value;
  r.lower = 2.0 / static_cast<double>(S.size()) * r.lambda1;
  r.upper = 2.0 * r.lambda1;
  return r;
}

double kesten_floor(int rank) {
  if (rank < 2) throw SpectralError("Kesten floor needs free rank >= 2");
  return std::sqrt(2.0 - 2.0 * std::sqrt(2.0 * rank - 1.0) / rank);
}

KazhdanEstimate KestenCertificate::estimate() const {
  KazhdanEstimate e;
  e.value = floor;
  e.kind = EstimateKind::Lower;
  e.radius = radius;
  e.dual_bound = floor;
  e.gap = gap;
  return e;
}

KestenCertificate kesten_lower_bound(int rank, int radius, int max_iters, double tol) {
  if (rank < 2) throw SpectralError("Kesten bound needs free rank >= 2");
  if (radius < 1) throw SpectralError("Kesten bound needs radius >= 1");
  const GroupPtr g = Group::free(rank);
  const auto ball = g->ball(radius);
  const int n = static_cast<int>(ball.size());
  std::unordered_map<std::uint32_t, int> index;
  for (int i = 0; i < n; ++i) index[ball[i].id] = i;
  // Neighbours inside the ball under every symmetric generator.
  std::vector<std::vector<int>> nb(n);
  for (Element t : g->symmetric_generators()) {
    for (int i = 0; i < n; ++i) {
      auto it = index.find(g->mul(t, ball[i]).id);
      if (it != index.end()) nb[i].push_back(it->second);
    }
  }
  auto apply = [&](const Vec& v) {
    Vec out = Vec::Zero(n);
    for (int i = 0; i < n; ++i) {
      for (int j : nb[i]) out(i) += v(j);
    }
    return out;
  };
  KestenCertificate c;
  c.rank = rank;
  c.radius = radius;
  c.analytic_norm = 2.0 * std::sqrt(2.0 * rank - 1.0);
  c.floor = kesten_floor(rank);
  // Shifted power iteration (the graph is bipartite, so +-rho would otherwise alternate).
  const double shift = 2.0 * rank;
  Vec v = Vec::Ones(n).normalized();
  double rho = 0.0;
  for (c.iterations = 1; c.iterations <= max_iters; ++c.iterations) {
    const Vec av = apply(v);
    const double next = v.dot(av);
    const Vec w = (av + shift * v).normalized();
    const bool done = std::abs(next - rho) <= tol * std::max(1.0, next);
    rho = next;
    v = w;
    if (done) {
      c.converged = true;
      break;
    }
  }
  c.norm_estimate = rho;
  c.residual = (apply(v) - v.dot(apply(v)) * v).norm();
  c.gap = c.analytic_norm - rho;
  return c;
}

std::vector<Element> right_coset_representatives(const Group& g, const std::vector<Element>& subgroup) {
  const auto all = all_elements(g);
  std::vector<char> seen(all.size(), 0);
  std::vector<Element> reps;
  for (Element x : all) {
    if (seen[g.table_index(x)]) continue;
    reps.push_back(x);
    for (Element f : subgroup) seen[g.table_index(g.mul(f, x))] = 1;
  }
  return reps;
}

L2Function coset_collapse(const L2Function& u, const GroupPtr& subgroup, const std::vector<Element>& embedding,
                          const std::vector<Element>& representatives) {
  const Group& g = *u.group();
  std::vector<std::pair<Element, std::vector<double>>> e;
  for (std::size_t i = 0; i < embedding.size(); ++i) {
    double s = 0.0;
    for (Element gm : representatives) {
      for (double a : u.at(g.mul(embedding[i], gm))) s += a * a;
    }
    e.push_back({subgroup->from_table_index(static_cast<int>(i)), {std::sqrt(s)}});
  }
  return L2Function::from_entries(subgroup, 1, e);
}

RestrictionReport restriction_check(const GroupPtr& group, const std::vector<Element>& subgroup_generators,
                                    const std::vector<Element>& S, Subspace subspace, const SpectralOptions& opt,
                                    int trials) {
  const auto [sub, embed] = group->finite_subgroup(subgroup_generators);
  std::vector<Element> s_sub;
  for (Element s : S) {
    auto it = std::find(embed.begin(), embed.end(), s);
    if (it == embed.end()) throw SpectralError("S is not contained in the subgroup");
    s_sub.push_back(sub->from_table_index(static_cast<int>(it - embed.begin())));
  }
  RestrictionReport r;
  r.k_subgroup = kazhdan_exact(sub, s_sub, subspace, opt).value;
  r.k_group = kazhdan_exact(group, S, subspace, opt).value;
  r.difference = std::abs(r.k_subgroup - r.k_group);
  const auto reps = right_coset_representatives(*group, embed);
  const auto all = all_elements(*group);
  std::mt19937_64 rng(opt.seed);
  r.trials = trials;
  for (int t = 0; t < trials; ++t) {
    const SphereVector u = random_sphere_vector(group, all, 1, rng);
    const SphereVector v(coset_collapse(u.function(), sub, embed, reps));
    r.max_norm_error = std::max(r.max_norm_error, std::abs(v.function().norm() - u.function().norm()));
    for (std::size_t k = 0; k < S.size(); ++k) {
      const double du = chordal_distance(act(S[k], u), u);
      const double dv = chordal_distance(act(s_sub[k], v), v);
      r.max_displacement_excess = std::max(r.max_displacement_excess, dv - du);
    }
  }
  return r;
}

SphereVector folner_vector(const GroupPtr& zn, int side) {
  if (zn->kind() != GroupKind::FreeAbelian) throw SpectralError("Folner vectors need a free abelian group");
  if (side < 2) throw SpectralError("Folner box side must be >= 2");
  const int n = zn->rank();
  std::vector<Element> box{zn->identity()};
  for (int k = 0; k < n; ++k) {
    std::vector<Element> next;
    for (Element b : box) {
      Element x = b;
      for (int i = 0; i < side; ++i) {
        next.push_back(x);
        x = zn->mul(x, zn->generator(k));
      }
    }
    box = std::move(next);
  }
  return SphereVector::uniform(zn, box);
}

SimplicialCycle amenable_cycle(const GroupPtr& z2, int side) {
  if (z2->kind() != GroupKind::FreeAbelian || z2->rank() != 2) throw SpectralError("amenable_cycle needs abelian(2)");
  return torus_cycle(z2, folner_vector(z2, side));
}

PowerLawFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw SpectralError("power-law fit needs two or more points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  PowerLawFit f;
  f.exponent = -slope;
  f.prefactor = std::exp((sy - slope * sx) / n);
  return f;
}

MargulisVerdict margulis_chain_check(const GroupPtr& group, const MargulisChain& chain, double alpha) {
  const Group& g = *group;
  if (chain.elements.empty()) throw SpectralError("empty chain");
  if (g.kind() != GroupKind::Free) throw SpectralError("chain checks need a free group");
  if (chain.witnesses.size() + 1 != chain.elements.size()) {
    throw SpectralError("a chain of " + std::to_string(chain.elements.size()) + " elements needs " +
                        std::to_string(chain.elements.size() - 1) + " witnesses");
  }
  MargulisVerdict v;
  for (Element x : chain.elements) v.roots.push_back(primitive_root(g, x).root);
  for (std::size_t j = 0; j + 1 < chain.elements.size(); ++j) {
    const SphereVector& u = chain.witnesses[j];
    const double d = std::max(chordal_distance(act(chain.elements[j], u), u),
                              chordal_distance(act(chain.elements[j + 1], u), u));
    v.witness_displacement.push_back(d);
    if (d >= alpha) {
      char buf[256];
      std::snprintf(buf, sizeof buf, "witness %zu has displacement %.6g >= alpha = %.6g", j, d, alpha);
      std::string msg = buf;
      if (!same_maximal_cyclic(g, chain.elements[j], chain.elements[j + 1]) && alpha <= kesten_floor(2)) {
        std::snprintf(buf, sizeof buf, "; the pair generates a free group of rank 2, so no witness exists below %.6g",
                      kesten_floor(2));
        msg += buf;
      }
      throw InvalidWitness(msg);
    }
  }
  v.common_cyclic = true;
  for (Element r : v.roots) {
    v.common_cyclic = v.common_cyclic && (r == v.roots[0] || r == g.inverse(v.roots[0]));
  }
  if (v.common_cyclic) v.root = v.roots[0];
  return v;
}

void write_estimates_csv(std::ostream& os, const Group& g, const std::vector<KazhdanEstimate>& rows) {
  os << "group,S,kind,radius,value,gap\n";
  char buf[64];
  for (const auto& r : rows) {
    os << '"' << g.description() << "\",";
    for (std::size_t k = 0; k < r.S.size(); ++k) os << (k ? " " : "") << g.to_string(r.S[k]);
    os << ',' << to_string(r.kind) << ',' << r.radius << ',';
    std::snprintf(buf, sizeof buf, "%.17g,%.17g", r.value, r.gap);
    os << buf << '\n';
  }
}

}  // namespace plateau
