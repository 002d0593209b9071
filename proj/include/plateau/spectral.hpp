#pragma once

// Kazhdan constants of the regular representation, lambda_1 of finite Cayley
// graphs, Kesten-type floors for free groups, Folner vectors and the
// free-group chain checker.

#include "plateau/cycle.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace plateau {

class SpectralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Full: all of l2(G). NonInvariant: the orthogonal complement of the vectors fixed by every s in S
/// (functions constant on the right cosets <S>x). For infinite groups the two agree.
enum class Subspace { Full, NonInvariant };

enum class EstimateKind { Exact, Upper, Lower };
const char* to_string(EstimateKind k);

struct KazhdanEstimate {
  double value = 0.0;
  EstimateKind kind = EstimateKind::Exact;
  std::vector<Element> S;
  int radius = -1;           // -1 when not a truncation
  double dual_bound = 0.0;   // certified lower bound from max_lambda lambda_min(sum lambda_s Q_s)
  double gap = 0.0;          // value - dual_bound (optimizer tolerance for exact, convergence gap for Kesten)
};

struct SpectralOptions {
  int restarts = 32;
  double tolerance = 1e-6;
  std::uint64_t seed = 1;
};

inline constexpr std::size_t kMaxSpectralDimension = 4096;

/// inf over unit u in the subspace of max_s |s.u - u| on a finite group.
KazhdanEstimate kazhdan_exact(const GroupPtr& group, const std::vector<Element>& S,
                              Subspace subspace = Subspace::NonInvariant, const SpectralOptions& opt = {});

/// (1/2) inf over unit u in the subspace of sum_s |s.u - u| (norms, not squares).
double lambda1(const GroupPtr& group, const std::vector<Element>& S, Subspace subspace = Subspace::NonInvariant,
               const SpectralOptions& opt = {});

/// Upper bound on the Kazhdan constant from unit vectors supported in ball(radius).
KazhdanEstimate kazhdan_truncated(const GroupPtr& group, const std::vector<Element>& S, int radius,
                                  const SpectralOptions& opt = {});
/// Same with an explicit finite support.
KazhdanEstimate kazhdan_on_support(const GroupPtr& group, const std::vector<Element>& S,
                                   const std::vector<Element>& support, const SpectralOptions& opt = {});

struct SandwichReport {
  double lambda1 = 0.0;
  double kazhdan = 0.0;
  double lower = 0.0;  // (2/|S|) lambda1
  double upper = 0.0;  // 2 lambda1
  bool holds(double tol) const { return lower <= kazhdan + tol && kazhdan <= upper + tol; }
};
SandwichReport sandwich_check(const GroupPtr& group, const std::vector<Element>& S,
                              Subspace subspace = Subspace::NonInvariant, const SpectralOptions& opt = {});

struct KestenCertificate {
  int rank = 0;
  int radius = 0;
  double norm_estimate = 0.0;  // Rayleigh quotient of the truncated adjacency (a lower bound on its norm)
  double residual = 0.0;       // |A v - rho v| at the final iterate
  double analytic_norm = 0.0;  // 2 sqrt(2k - 1)
  double gap = 0.0;            // analytic_norm - norm_estimate
  double floor = 0.0;          // lower bound on max over the generators of |s.u - u|
  bool converged = false;
  int iterations = 0;

  KazhdanEstimate estimate() const;
};

/// Floor sqrt(2 - 2 sqrt(2k - 1) / k) on the Kazhdan constant of F_k, with the power-iteration
/// estimate of the adjacency norm on ball(radius) reported alongside.
KestenCertificate kesten_lower_bound(int rank, int radius, int max_iters = 20000, double tol = 1e-12);
double kesten_floor(int rank);

/// Right coset representatives gamma_m with G = disjoint union of F gamma_m, and
/// v(f) = (sum_m |u(f gamma_m)|^2)^(1/2) for f in F (F given by its embedding).
std::vector<Element> right_coset_representatives(const Group& g, const std::vector<Element>& subgroup);
L2Function coset_collapse(const L2Function& u, const GroupPtr& subgroup, const std::vector<Element>& embedding,
                          const std::vector<Element>& representatives);

struct RestrictionReport {
  double k_subgroup = 0.0;
  double k_group = 0.0;
  double difference = 0.0;
  double max_norm_error = 0.0;            // over random u: | |v| - |u| |
  double max_displacement_excess = 0.0;   // over random u and s: |s.v - v| - |s.u - u|
  int trials = 0;
};

/// S must lie in the subgroup generated by subgroup_generators.
RestrictionReport restriction_check(const GroupPtr& group, const std::vector<Element>& subgroup_generators,
                                    const std::vector<Element>& S, Subspace subspace = Subspace::NonInvariant,
                                    const SpectralOptions& opt = {}, int trials = 20);

/// Normalized indicator of the box [0, L)^n in abelian(n).
SphereVector folner_vector(const GroupPtr& zn, int side);
/// Square torus for Z^2 with its vertex lifted to folner_vector(2, L).
SimplicialCycle amenable_cycle(const GroupPtr& z2, int side);

struct PowerLawFit {
  double exponent = 0.0;  // mass ~ C L^-exponent
  double prefactor = 0.0;
};
PowerLawFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y);

// ---- free-group chains ------------------------------------------------------

struct MargulisChain {
  std::vector<Element> elements;
  std::vector<SphereVector> witnesses;  // witnesses[j] certifies the pair (j, j + 1)
};

class InvalidWitness : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MargulisVerdict {
  bool common_cyclic = false;
  std::optional<Element> root;
  std::vector<Element> roots;
  std::vector<double> witness_displacement;  // re-evaluated max over each pair
};

/// Throws InvalidWitness when a re-evaluated witness displacement is >= alpha.
MargulisVerdict margulis_chain_check(const GroupPtr& group, const MargulisChain& chain, double alpha);

/// CSV: group,S,kind,radius,value,gap.
void write_estimates_csv(std::ostream& os, const Group& g, const std::vector<KazhdanEstimate>& rows);

}  // namespace plateau
