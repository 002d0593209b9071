#pragma once

// Finitely supported functions Gamma -> R^m and unit vectors of l2(Gamma, R^m).

#include "plateau/group.hpp"

#include <Eigen/Dense>

#include <iosfwd>
#include <map>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace plateau {

class L2Function {
 public:
  L2Function() = default;
  L2Function(GroupPtr group, int payload);

  /// Builds from (element, amplitude-vector) pairs; repeated elements add up, zeros are dropped.
  static L2Function from_entries(GroupPtr group, int payload,
                                 const std::vector<std::pair<Element, std::vector<double>>>& entries);
  static L2Function dirac(GroupPtr group, Element g, int payload = 1);

  const GroupPtr& group() const { return group_; }
  int payload() const { return payload_; }
  std::size_t size() const { return support_.size(); }
  bool empty() const { return support_.empty(); }

  /// Support sorted by element id.
  const std::vector<Element>& support() const { return support_; }
  std::span<const double> amplitude(std::size_t i) const {
    return {values_.data() + i * payload_, static_cast<std::size_t>(payload_)};
  }
  /// Amplitude at g (zero vector if g is not in the support).
  std::vector<double> at(Element g) const;
  /// Index of g in the support, or -1.
  std::ptrdiff_t find(Element g) const;
  /// Euclidean payload norm of entry i.
  double entry_norm(std::size_t i) const;

  double squared_norm() const;
  double norm() const { return std::sqrt(squared_norm()); }
  double inner(const L2Function& other) const;
  int max_word_length() const;

  L2Function scaled(double s) const;
  /// a*this + b*other.
  L2Function combined(double a, const L2Function& other, double b) const;

  friend bool operator==(const L2Function& x, const L2Function& y);

 private:
  friend class SphereVector;
  void check_same(const L2Function& other) const;
  void drop_zeros();

  GroupPtr group_;
  int payload_ = 1;
  std::vector<Element> support_;
  std::vector<double> values_;  // row-major, payload_ per support element
};

class SphereVector {
 public:
  SphereVector() = default;
  /// Checks the unit-norm invariant (1e-12).
  explicit SphereVector(L2Function f);
  /// Rescales f to unit norm; f must be nonzero.
  static SphereVector normalize(const L2Function& f);
  static SphereVector dirac(GroupPtr group, Element g, int payload = 1);
  /// Normalized indicator of a finite set.
  static SphereVector uniform(GroupPtr group, const std::vector<Element>& set);

  const L2Function& function() const { return f_; }
  const GroupPtr& group() const { return f_.group(); }
  int payload() const { return f_.payload(); }
  std::size_t size() const { return f_.size(); }
  const std::vector<Element>& support() const { return f_.support(); }
  std::span<const double> amplitude(std::size_t i) const { return f_.amplitude(i); }
  double inner(const SphereVector& v) const { return f_.inner(v.f_); }
  int max_word_length() const { return f_.max_word_length(); }

  friend bool operator==(const SphereVector& a, const SphereVector& b) { return a.f_ == b.f_; }

 private:
  L2Function f_;
};

/// Text format: "sphere <group description> <payload>" then "word amp..." lines, %.17g.
void write_sphere_vector(std::ostream& os, const SphereVector& u);
SphereVector read_sphere_vector(std::istream& is, const GroupPtr& group);
std::string to_text(const SphereVector& u);
SphereVector from_text(const std::string& text, const GroupPtr& group);

/// Random unit vector supported on `support` (Gaussian amplitudes, optionally absolute values).
SphereVector random_sphere_vector(const GroupPtr& group, const std::vector<Element>& support, int payload,
                                  std::mt19937_64& rng, bool nonnegative = false);

}  // namespace plateau
