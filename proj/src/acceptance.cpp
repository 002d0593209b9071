#include "plateau/acceptance.hpp"

#include "plateau/barycenter.hpp"
#include "plateau/minimizer.hpp"
#include "plateau/poisson.hpp"
#include "plateau/spectral.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <ostream>
#include <random>

namespace plateau {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

struct Report {
  CriterionResult r;
  explicit Report(bool start = true) { r.passed = start; }
  void check(bool ok, const std::string& line) {
    r.passed = r.passed && ok;
    r.lines.push_back(std::string(ok ? "ok   " : "FAIL ") + line);
  }
  void note(const std::string& line) { r.lines.push_back("     " + line); }
};

// ---- 1 ---------------------------------------------------------------------

CriterionResult poisson_identity(const ParamSet& p) {
  Report rep;
  const int nodes = static_cast<int>(p.integer("angular_nodes", 64));
  const double tol = p.real("relative_tolerance", 1e-3);
  const HPoint o = lorentz::origin(2);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(3);
  v(1) = 1.0;
  // A second base point and direction, to exercise the frame.
  const HPoint x = hyp_exp(o, (Eigen::VectorXd(3) << 0.0, 0.6, 0.8).finished(), 1.3);
  const Eigen::MatrixXd fr = tangent_frame(x);
  const Eigen::VectorXd w = (std::cos(0.4) * fr.col(0) + std::sin(0.4) * fr.col(1)).eval();
  for (double c : p.reals("c", {1.2, 1.5, 2.0})) {
    const double exact = c * c / 8.0;
    for (const auto& [pt, dir, label] : {std::tuple{o, v, "o"}, std::tuple{x, w, "x"}}) {
      const double num = poisson_pullback(c, pt, dir, 2, nodes);
      const double rel = std::abs(num - exact) / exact;
      rep.check(rel < tol, fmt("c=%.3g at %s: |dP(v)|^2 = %.12g, c^2/8 = %.12g, rel err %.2e < %.0e", c, label, num,
                               exact, rel, tol));
    }
  }
  const double c = p.real("limit_c", 1.01);
  const double limit_tol = p.real("limit_tolerance", 1e-2);
  const double num = poisson_pullback(c, o, v, 2, nodes);
  rep.check(std::abs(num - 0.125) < limit_tol,
            fmt("c=%.4g: |dP(v)|^2 = %.8g, limit (n-1)^2/4n = 1/8, diff %.2e < %.0e", c, num, std::abs(num - 0.125),
                limit_tol));
  return rep.r;
}

// ---- 2 ---------------------------------------------------------------------

CriterionResult genus_two_bracket(const ParamSet& p) {
  Report rep;
  const int genus = static_cast<int>(p.integer("genus", 2));
  const FuchsianGroup f = fundamental_polygon(genus);
  PoissonParams pp;
  pp.radius = static_cast<int>(p.integer("radius", 4));
  pp.mesh_level = static_cast<int>(p.integer("mesh_level", 3));
  pp.truncation = p.str("truncation", "tapered") == "word-ball" ? Truncation::WordBall : Truncation::Tapered;
  const int q = static_cast<int>(p.integer("quadrature_order", 4));
  const double c0 = p.real("c", 1.2);
  const double margin = p.real("margin", 0.15);
  const PolygonMesh mesh = polygon_mesh(f, pp.mesh_level);
  const double area = 4.0 * kPi * (genus - 1);
  const double target = area / 8.0;
  const double lo = target - margin;
  const double hi = c0 * c0 / 8.0 * area + margin;

  auto cycle_mass = [&](double c) {
    pp.c = c;
    const PoissonCycle pc = poisson_cycle(f, pp, mesh);
    return std::pair{mass(pc.cycle, q).total, pc};
  };
  const auto [m0, pc0] = cycle_mass(c0);
  rep.check(m0 >= lo && m0 <= hi,
            fmt("mass(c=%.3g, R=%d, level %d) = %.6f, bracket [pi/2 - %.2f, (c^2/8) 4pi + %.2f] = [%.4f, %.4f]", c0,
                pp.radius, pp.mesh_level, m0, margin, margin, lo, hi));
  rep.note(fmt("target spherical volume (1/8) 4pi = pi/2 = %.6f; boundary residual %.2e; max tail %.3f", target,
               boundary_check(pc0.cycle, q), pc0.max_tail));
  auto cs = p.reals("monotone_c", {2.0, 1.5, 1.2, 1.1, 1.05});
  std::sort(cs.begin(), cs.end(), std::greater<>());
  double prev = 0.0;
  bool monotone = true;
  std::string series;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const double m = cs[i] == c0 ? m0 : cycle_mass(cs[i]).first;
    if (i > 0) monotone = monotone && m < prev;
    series += fmt("%s%.3g:%.5f", i ? ", " : "", cs[i], m);
    prev = m;
  }
  rep.check(monotone, "masses decrease as c decreases toward " + fmt("%.3g", cs.back()) + " (" + series + ")");
  return rep.r;
}

// ---- 3 ---------------------------------------------------------------------

void barycenter_family(Report& rep, const std::string& group, int radius, double beta, const BarycenterBatch& b) {
  const GroupPtr g = Group::parse(group);
  const ReferenceMeasure mu = reference_measure(g, radius, beta);
  const auto rows = barycenter_batch(mu, b);
  const int n = mu.dimension;
  double tr = 0, mineig = 1e300, lhs = 0, jac = 0, eq = 0, res = 0;
  int over = 0;
  for (const auto& r : rows) {
    tr = std::max(tr, std::abs(r.trace_h - 1.0));
    mineig = std::min(mineig, r.min_eig);
    lhs = std::max(lhs, r.lhs);
    jac = std::max(jac, r.numeric_jacobian);
    eq = std::max(eq, r.equivariance_error);
    res = std::max(res, r.residual);
    over += r.lhs > r.rhs;
  }
  const double rhs = rows.front().rhs;
  const std::string tag = fmt("n=%d %s (%zu atoms, %zu samples):", n, group.c_str(), mu.atoms.size(), rows.size());
  rep.check(tr <= 1e-10, fmt("%s max |trace H - 1| = %.2e <= 1e-10", tag.c_str(), tr));
  rep.check(mineig >= -1e-9, fmt("%s min eig(K - (I - H)) = %.3e >= -1e-9", tag.c_str(), mineig));
  rep.check(over == 0, fmt("%s max 2^n sqrt(det H)/det K = %.4f <= (4n/h^2)^(n/2) = %.4f (%d of %zu samples over)",
                           tag.c_str(), lhs, rhs, over, rows.size()));
  rep.check(jac <= 1.01 * rhs, fmt("%s max numeric Jacobian = %.4f <= 1.01 * %.4f", tag.c_str(), jac, rhs));
  rep.check(eq < 1e-7, fmt("%s max equivariance error = %.2e < 1e-7", tag.c_str(), eq));
  rep.note(fmt("%s max stationarity residual %.2e", tag.c_str(), res));
}

CriterionResult barycenter_invariants(const ParamSet& p) {
  Report rep;
  BarycenterBatch b;
  b.samples = static_cast<int>(p.integer("samples", 100));
  b.support_radius = static_cast<int>(p.integer("support_radius", 2));
  b.support_size = static_cast<int>(p.integer("support_size", 12));
  b.min_atom_distance = p.real("min_atom_distance", 0.5);
  b.h_step = p.real("h_step", 1e-5);
  b.seed = static_cast<std::uint64_t>(p.integer("seed", 1));
  barycenter_family(rep, p.str("group_n2", "surface(2)"), static_cast<int>(p.integer("radius_n2", 4)),
                    p.real("beta_n2", 3.0), b);
  barycenter_family(rep, p.str("group_n3", "free_lox(2,3,2.5)"), static_cast<int>(p.integer("radius_n3", 4)),
                    p.real("beta_n3", 4.0), b);
  rep.note("expected constants: bound 8 for n=2, 3^(3/2) = 5.196 for n=3; spherical-volume factor h^2/4n = 1/8 (n=2), 1/3 (n=3)");
  return rep.r;
}

// ---- 4 ---------------------------------------------------------------------

CriterionResult mass_monotone_maps(const ParamSet& p) {
  Report rep;
  const int cycles = static_cast<int>(p.integer("cycles", 50));
  const int q = static_cast<int>(p.integer("quadrature_order", 8));
  const double grow_tol = p.real("growth_tolerance", 1e-8);
  const double strict = p.real("strict_margin", 1e-6);
  std::mt19937_64 rng(static_cast<std::uint64_t>(p.integer("seed", 7)));

  const GroupPtr f2 = Group::free(2);
  const GroupPtr z1 = Group::free_abelian(1);
  const GroupPtr z2 = Group::free_abelian(2);
  const Homomorphism f2_to_z(f2, z1, {z1->generator(0), z1->identity()});
  const Homomorphism z2_to_z(z2, z1, {z1->generator(0), z1->generator(0)});
  const Weights eta_f2 = Weights::exponential(*f2, 1, 1.0);
  const Weights eta_z2 = Weights::exponential(*z2, 1, 1.0);
  const auto f2_pool = f2->ball(2);
  std::vector<Element> box;
  for (Element x : z2->ball(4)) {
    const auto cd = z2->coordinates(x);
    if (cd[0] >= 0 && cd[1] >= 0 && cd[0] < 3 && cd[1] < 3) box.push_back(x);
  }

  double worst_growth = -1e300, worst_strict = 1e300;
  int failures = 0;
  for (int k = 0; k < cycles; ++k) {
    SimplicialCycle c;
    const bool loop = k % 2 == 0;
    if (loop) {
      std::vector<SphereVector> pts;
      for (int i = 0; i < 5; ++i) pts.push_back(random_sphere_vector(f2, f2_pool, 1, rng));
      c = polygon_loop(f2, pts);
    } else {
      c = torus_cycle(z2, random_sphere_vector(z2, box, 1, rng, true));
    }
    const VertexMap maps[] = {VertexMap::abs(), VertexMap::homomorphism(loop ? f2_to_z : z2_to_z),
                              VertexMap::convolution(loop ? eta_f2 : eta_z2)};
    for (int m = 0; m < 3; ++m) {
      const PushResult r = pushforward(c, maps[m], q, 1e300);
      const double growth = r.mass_after - r.mass_before;
      worst_growth = std::max(worst_growth, growth);
      if (growth > grow_tol) ++failures;
      if (m == 2) {
        const double drop = r.mass_before - r.mass_after;
        worst_strict = std::min(worst_strict, drop);
        if (!(drop > strict)) ++failures;
      }
    }
  }
  rep.check(worst_growth <= grow_tol,
            fmt("%d cycles (loops in free(2), tori in abelian(2)) x {abs, homomorphism, convolution}: max mass change "
                "%.3e <= %.0e",
                cycles, worst_growth, grow_tol));
  rep.check(worst_strict > strict,
            fmt("positive-weight convolution: min mass decrease %.3e > %.0e", worst_strict, strict));
  rep.note(fmt("%d violations", failures));
  return rep.r;
}

// ---- 5 ---------------------------------------------------------------------

CriterionResult properness_floor_check(const ParamSet& p) {
  Report rep;
  const int samples = static_cast<int>(p.integer("samples", 100));
  const double decay = p.real("decay", 1.5);
  std::mt19937_64 rng(static_cast<std::uint64_t>(p.integer("seed", 11)));
  std::uniform_real_distribution<double> eps_dist(p.real("eps_min", 1e-4), p.real("eps_max", 1e-3));
  std::normal_distribution<double> normal;
  double worst = 1e300;
  int bad = 0;
  const GroupPtr groups[] = {Group::free(2), Group::free_abelian(2)};
  for (int k = 0; k < samples; ++k) {
    const GroupPtr g = groups[k % 2];
    auto random_vec = [&] {
      std::vector<std::pair<Element, std::vector<double>>> e;
      for (Element x : g->ball(3)) e.push_back({x, {normal(rng) * std::exp(-decay * g->word_length(x))}});
      return SphereVector::normalize(L2Function::from_entries(g, 1, e));
    };
    const SphereVector f1 = random_vec(), f2 = random_vec();
    const double eps = eps_dist(rng);
    const auto z1 = essential_support(f1, eps), z2 = essential_support(f2, eps);
    const auto prod = support_product(*g, z1, z2);
    int reach = 0;
    for (Element x : prod) reach = std::max(reach, g->word_length(x));
    // gamma just outside the support product, where the floor is tightest.
    std::vector<Element> outside;
    for (Element x : g->ball(reach + 1)) {
      if (std::find(prod.begin(), prod.end(), x) == prod.end()) outside.push_back(x);
    }
    const Element gamma = outside[std::uniform_int_distribution<std::size_t>(0, outside.size() - 1)(rng)];
    const double d = chordal_distance(act(gamma, f1), f2);
    const double margin = d * d - properness_floor(eps);
    worst = std::min(worst, margin);
    bad += margin < -1e-10;
  }
  rep.check(bad == 0, fmt("%d samples (free(2), abelian(2)), eps in [1e-4, 1e-3): min |g.f1 - f2|^2 - 2(1 - eps - "
                          "2 sqrt(eps)) = %.4e >= -1e-10",
                          samples, worst));
  return rep.r;
}

// ---- 6 ---------------------------------------------------------------------

CriterionResult amenable_collapse(const ParamSet& p) {
  Report rep;
  const GroupPtr z2 = Group::free_abelian(2);
  const int q = static_cast<int>(p.integer("quadrature_order", 8));
  const double max_ratio = p.real("max_ratio", 0.75);
  const double min_exponent = p.real("min_exponent", 0.5);
  std::vector<double> xs, ys;
  for (long L : p.integers("sides", {4, 8, 16})) {
    const SimplicialCycle c = amenable_cycle(z2, static_cast<int>(L));
    const double m = mass(c, q).total;
    const double b = boundary_check(c, q);
    rep.check(b == 0.0, fmt("L=%ld: mass %.8f, boundary residual %.1e", L, m, b));
    if (!ys.empty()) {
      const double ratio = m / ys.back();
      rep.check(m < ys.back() && ratio <= max_ratio, fmt("L=%ld: ratio to L/2 = %.4f <= %.2f", L, ratio, max_ratio));
    }
    xs.push_back(static_cast<double>(L));
    ys.push_back(m);
  }
  const PowerLawFit fit = fit_power_law(xs, ys);
  rep.check(fit.exponent > min_exponent, fmt("power-law fit mass ~ L^-p: p = %.4f > %.2f", fit.exponent, min_exponent));
  return rep.r;
}

// ---- 7 ---------------------------------------------------------------------

CriterionResult spectral_identities(const ParamSet& p) {
  Report rep;
  SpectralOptions opt;
  opt.seed = static_cast<std::uint64_t>(p.integer("seed", 1));
  const double tol = p.real("tolerance", 1e-6);
  for (long n : p.integers("cyclic_orders", {3, 4, 5, 6, 7, 8})) {
    const GroupPtr g = Group::cyclic(static_cast<int>(n));
    const Element a = g->generator(0);
    const SandwichReport s = sandwich_check(g, {a, g->inverse(a)}, Subspace::NonInvariant, opt);
    rep.check(s.holds(tol), fmt("Z/%ld, S={1,-1}: (2/|S|) l1 = %.8f <= K = %.8f <= 2 l1 = %.8f", n, s.lower,
                                s.kazhdan, s.upper));
  }
  {
    const GroupPtr g = Group::dihedral(static_cast<int>(p.integer("dihedral_n", 4)));
    const auto S = g->symmetric_generators();
    const SandwichReport s = sandwich_check(g, S, Subspace::NonInvariant, opt);
    rep.check(s.holds(tol), fmt("%s, |S|=%zu: (2/|S|) l1 = %.8f <= K = %.8f <= 2 l1 = %.8f",
                                g->description().c_str(), S.size(), s.lower, s.kazhdan, s.upper));
  }
  const double rtol = p.real("restriction_tolerance", 2e-5);
  struct Fixture {
    GroupPtr g;
    std::vector<Element> sub;
    std::vector<Element> S;
  };
  const GroupPtr z6 = Group::cyclic(6), z8 = Group::cyclic(8), d4 = Group::dihedral(4);
  const Element z6_2 = z6->pow(z6->generator(0), 2);
  const Element z8_2 = z8->pow(z8->generator(0), 2), z8_4 = z8->pow(z8->generator(0), 4);
  const std::vector<Fixture> fixtures = {
      {z6, {z6_2}, {z6_2}}, {z8, {z8_2}, {z8_2, z8_4}}, {d4, {d4->generator(0)}, {d4->generator(0)}}};
  for (const auto& fx : fixtures) {
    for (Subspace sub : {Subspace::NonInvariant, Subspace::Full}) {
      const RestrictionReport r = restriction_check(fx.g, fx.sub, fx.S, sub, opt);
      std::string s;
      for (Element x : fx.S) s += (s.empty() ? "" : ",") + fx.g->to_string(x);
      rep.check(r.difference <= rtol && r.max_norm_error <= 1e-12 && r.max_displacement_excess <= 1e-12,
                fmt("%s, F=<%s>, S={%s}, %s: K_F = %.10f, K_G = %.10f, |diff| %.1e <= %.0e; coset map norm err %.1e, "
                    "displacement excess %.1e",
                    fx.g->description().c_str(), fx.g->to_string(fx.sub[0]).c_str(), s.c_str(),
                    sub == Subspace::Full ? "full" : "non-invariant", r.k_subgroup, r.k_group, r.difference, rtol,
                    r.max_norm_error, r.max_displacement_excess));
    }
  }
  const KestenCertificate kc = kesten_lower_bound(2, static_cast<int>(p.integer("kesten_radius", 8)));
  rep.note(fmt("Kesten: ||A|| on ball(%d) of F2 = %.6f (analytic 2 sqrt 3 = %.6f, gap %.4f, residual %.1e, %s); "
               "floor sqrt(2 - sqrt 3) = %.6f",
               kc.radius, kc.norm_estimate, kc.analytic_norm, kc.gap, kc.residual,
               kc.converged ? "converged" : "not converged", kc.floor));
  const GroupPtr f2 = Group::free(2);
  for (long R = 1; R <= p.integer("free_max_radius", 5); ++R) {
    const KazhdanEstimate k = kazhdan_truncated(f2, {f2->generator(0), f2->generator(1)}, static_cast<int>(R), opt);
    rep.check(k.value >= kc.floor - 1e-3,
              fmt("F2, S={a,b}, R=%ld: truncated upper bound %.6f >= floor - 1e-3 = %.6f", R, k.value, kc.floor - 1e-3));
  }
  const GroupPtr z = Group::free_abelian(1);
  double prev = 1e300;
  for (long R : p.integers("z_radii", {50, 100, 200, 400, 800})) {
    const KazhdanEstimate k = kazhdan_truncated(z, {z->generator(0)}, static_cast<int>(R), opt);
    rep.check(k.value < prev, fmt("Z, S={1}, R=%ld: truncated upper bound %.6f (decreasing)", R, k.value));
    prev = k.value;
  }
  const double zt = p.real("z_threshold", 0.05);
  rep.check(prev < zt, fmt("Z upper bound at the largest radius %.6f < %.2f", prev, zt));
  return rep.r;
}

// ---- 8 ---------------------------------------------------------------------

CriterionResult geometry_oracles(const ParamSet& p) {
  Report rep;
  const int q = static_cast<int>(p.integer("quadrature_order", 8));
  const GroupPtr f3 = Group::free(3);
  const SimplicialCycle oct = octant_triangle(f3, f3->generator(0), f3->generator(1), f3->generator(2));
  const double area = mass(oct, q).total;
  rep.check(std::abs(area - kPi / 2.0) < 1e-6,
            fmt("octant triangle area %.12f, pi/2 = %.12f, diff %.1e < 1e-6", area, kPi / 2.0, std::abs(area - kPi / 2)));
  const FuchsianGroup f = fundamental_polygon(2, p.real("angle_perturbation", 0.0));
  const double pa = f.area();
  rep.check(std::abs(pa - 4.0 * kPi) < 1e-8,
            fmt("genus-2 polygon area %.12f, Gauss-Bonnet 4pi = %.12f, diff %.2e < 1e-8", pa, 4.0 * kPi,
                std::abs(pa - 4.0 * kPi)));

  const double h = p.real("h", 1e-5);
  const double gtol = p.real("gradient_tolerance", 1e-4);
  std::mt19937_64 rng(static_cast<std::uint64_t>(p.integer("seed", 3)));
  const GroupPtr z2 = Group::free_abelian(2);
  const GroupPtr f2 = Group::free(2);
  std::vector<std::pair<std::string, SimplicialCycle>> fixtures;
  fixtures.push_back({"octant triangle", oct});
  fixtures.push_back({"random triangle on ball(1) of free(3)",
                      [&] {
                        SimplicialCycle t = oct;
                        for (auto& v : t.vertices) v = random_sphere_vector(f3, f3->ball(1), 1, rng, true);
                        return t;
                      }()});
  fixtures.push_back({"Z^2 torus, L=4", amenable_cycle(z2, 4)});
  fixtures.push_back({"Z^2 torus, random vertex", torus_cycle(z2, random_sphere_vector(z2, z2->ball(2), 1, rng, true))});
  fixtures.push_back({"loop in free(2)", [&] {
                        std::vector<SphereVector> pts;
                        for (int i = 0; i < 5; ++i) pts.push_back(random_sphere_vector(f2, f2->ball(2), 1, rng));
                        return polygon_loop(f2, pts);
                      }()});
  for (const auto& [name, c] : fixtures) {
    const GradientCheck g = check_gradient(c, q, h, rng);
    rep.check(g.max_relative_error < gtol,
              fmt("mass gradient vs central differences (h=%.0e), %s: max rel err %.2e < %.0e", h, name.c_str(),
                  g.max_relative_error, gtol));
  }
  return rep.r;
}

// ---- 9 ---------------------------------------------------------------------

SphereVector axis_vector(const GroupPtr& g, Element r, int length) {
  std::vector<Element> line;
  Element x = g->identity();
  for (int i = 0; i < length; ++i) {
    line.push_back(x);
    x = g->mul(x, r);
  }
  return SphereVector::uniform(g, line);
}

CriterionResult margulis_logic(const ParamSet& p) {
  Report rep;
  const GroupPtr g = Group::free(2);
  const Element a = g->generator(0), b = g->generator(1);
  const int L = static_cast<int>(p.integer("witness_length", 64));
  const SphereVector along_a = axis_vector(g, a, L);
  {
    MargulisChain ch{{a, g->pow(a, 2), g->pow(a, -3)}, {along_a, along_a}};
    const MargulisVerdict v = margulis_chain_check(g, ch, p.real("alpha_powers", 0.5));
    rep.check(v.common_cyclic && v.root && *v.root == a,
              fmt("chain a, a^2, a^-3: verdict %s, root %s (expected common-cyclic, root a)",
                  v.common_cyclic ? "common-cyclic" : "violation", v.root ? g->to_string(*v.root).c_str() : "-"));
  }
  {
    const double alpha = p.real("alpha_small", 0.3);
    MargulisChain ch{{a, b}, {along_a}};
    bool rejected = false;
    std::string why;
    try {
      margulis_chain_check(g, ch, alpha);
    } catch (const InvalidWitness& e) {
      rejected = true;
      why = e.what();
    }
    rep.check(rejected && alpha < kesten_floor(2),
              fmt("chain a, b with alpha = %.2f < floor %.4f: witness %s", alpha, kesten_floor(2),
                  rejected ? "rejected" : "accepted"));
    if (rejected) rep.note(why);
  }
  {
    const Element conj = g->mul(g->mul(b, a), g->inverse(b));
    MargulisChain ch{{a, conj}, {along_a}};
    const MargulisVerdict v = margulis_chain_check(g, ch, p.real("alpha_conjugate", 1.5));
    rep.check(!v.common_cyclic, fmt("chain a, bab^-1: verdict %s (roots %s, %s; expected violation)",
                                    v.common_cyclic ? "common-cyclic" : "violation", g->to_string(v.roots[0]).c_str(),
                                    g->to_string(v.roots[1]).c_str()));
  }
  // Sub-floor witnesses for non-commuting pairs must all be rejected.
  std::mt19937_64 rng(static_cast<std::uint64_t>(p.integer("seed", 5)));
  const auto pool = g->ball(2);
  const int trials = static_cast<int>(p.integer("random_witnesses", 50));
  int rejected = 0, attempted = 0;
  double min_disp = 1e300;
  while (attempted < trials) {
    const Element x = pool[std::uniform_int_distribution<std::size_t>(1, pool.size() - 1)(rng)];
    const Element y = pool[std::uniform_int_distribution<std::size_t>(1, pool.size() - 1)(rng)];
    if (same_maximal_cyclic(*g, x, y)) continue;
    ++attempted;
    const SphereVector w = attempted % 2 ? axis_vector(g, primitive_root(*g, x).root, L)
                                         : random_sphere_vector(g, g->ball(3), 1, rng, true);
    min_disp = std::min(min_disp, std::max(chordal_distance(act(x, w), w), chordal_distance(act(y, w), w)));
    try {
      margulis_chain_check(g, MargulisChain{{x, y}, {w}}, kesten_floor(2));
    } catch (const InvalidWitness&) {
      ++rejected;
    }
  }
  rep.check(rejected == trials, fmt("%d random witnesses for non-commuting pairs at alpha = floor %.4f: %d rejected "
                                    "(min joint displacement %.4f)",
                                    trials, kesten_floor(2), rejected, min_disp));
  return rep.r;
}

}  // namespace

const std::vector<CriterionSpec>& acceptance_criteria() {
  static const std::vector<CriterionSpec> specs = {
      {1, "Poisson pull-back identity", "c1_poisson_pullback.ini", 30, poisson_identity},
      {2, "Genus-2 spherical-volume bracket", "c2_genus_two_bracket.ini", 600, genus_two_bracket},
      {3, "Barycenter invariants", "c3_barycenter.ini", 300, barycenter_invariants},
      {4, "Mass-monotone maps", "c4_mass_monotone.ini", 120, mass_monotone_maps},
      {5, "Properness floor", "c5_properness.ini", 60, properness_floor_check},
      {6, "Amenable collapse", "c6_amenable_collapse.ini", 120, amenable_collapse},
      {7, "Spectral identities", "c7_spectral.ini", 300, spectral_identities},
      {8, "Geometry oracles", "c8_geometry.ini", 60, geometry_oracles},
      {9, "Margulis-chain logic", "c9_margulis.ini", 30, margulis_logic},
  };
  return specs;
}

std::vector<CriterionResult> run_acceptance(const std::string& config_dir, const std::vector<int>& only,
                                            std::ostream& log) {
  std::vector<CriterionResult> out;
  for (const auto& spec : acceptance_criteria()) {
    if (!only.empty() && std::find(only.begin(), only.end(), spec.id) == only.end()) continue;
    const std::string path = (std::filesystem::path(config_dir) / spec.fixture).string();
    log << "== " << spec.id << ". " << spec.name << " (" << path << ")\n" << std::flush;
    const auto t0 = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
      const auto sections = read_ini(path);
      auto it = sections.find("criterion");
      r = spec.run(it == sections.end() ? ParamSet("criterion", {}) : it->second);
    } catch (const std::exception& e) {
      r.passed = false;
      r.lines.push_back(std::string("FAIL error: ") + e.what());
    }
    r.id = spec.id;
    r.name = spec.name;
    r.time_limit = spec.time_limit;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (r.seconds > r.time_limit) {
      r.passed = false;
      r.lines.push_back(fmt("FAIL runtime %.1f s exceeds %.0f s", r.seconds, r.time_limit));
    }
    for (const auto& line : r.lines) log << "   " << line << '\n';
    log << std::flush;
    out.push_back(std::move(r));
  }
  return out;
}

void print_summary(std::ostream& os, const std::vector<CriterionResult>& results) {
  for (const auto& r : results) {
    os << (r.passed ? "PASS" : "FAIL") << "  criterion " << r.id << ": " << r.name
       << fmt("  (%.1f s, limit %.0f s)", r.seconds, r.time_limit) << '\n';
  }
}

}  // namespace plateau
