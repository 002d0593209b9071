#pragma once

// Finitely generated groups with exact (or tolerance-controlled) arithmetic.
//
// Elements are interned handles owned by their Group. Every realization keeps a
// canonical word for each element, so equality is handle equality and the
// deterministic order (word length, then shortlex on the canonical word) is
// available everywhere.

#include <Eigen/Dense>

#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace plateau {

class GroupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Letters are +-(generator index + 1).
using Letter = int;
using Word = std::vector<Letter>;

struct Element {
  std::uint32_t id = 0;
  friend bool operator==(Element, Element) = default;
};

struct ElementHash {
  std::size_t operator()(Element e) const noexcept { return std::hash<std::uint32_t>{}(e.id); }
};

enum class GroupKind { Free, FreeAbelian, Finite, Surface };

/// Default cap on ball enumeration.
inline constexpr double kBallCap = 2.0e6;

class Group {
 public:
  // Factories. Groups are shared immutable values (internal caches are synchronized).
  static std::shared_ptr<const Group> free(int rank);
  /// Free group with a faithful discrete action on H^n by Lorentz matrices.
  static std::shared_ptr<const Group> free_loxodromic(int rank, int n, double translation);
  static std::shared_ptr<const Group> free_abelian(int rank);
  /// table[i][j] = index of i*j; generators are indices into the table.
  static std::shared_ptr<const Group> finite(std::string name, std::vector<std::vector<int>> table,
                                             std::vector<int> generators);
  static std::shared_ptr<const Group> cyclic(int n);
  /// Dihedral group of order 2n generated by a rotation and a reflection.
  static std::shared_ptr<const Group> dihedral(int n);
  /// Genus-g surface group realized by the side pairings of the regular 4g-gon.
  static std::shared_ptr<const Group> surface(int genus);
  /// Parse "free(2)", "abelian(2)", "cyclic(6)", "dihedral(4)", "surface(2)", "free_lox(2,3,2.5)".
  static std::shared_ptr<const Group> parse(const std::string& description);

  GroupKind kind() const { return kind_; }
  int rank() const { return rank_; }
  const std::string& description() const { return description_; }
  double equality_tolerance() const { return tolerance_; }

  Element identity() const { return Element{0}; }
  Element generator(int i) const;
  /// a, a^-1, b, b^-1, ... (identity excluded, duplicates removed for finite groups).
  std::vector<Element> symmetric_generators() const;

  Element mul(Element g, Element h) const;
  /// Product if it is already interned (never grows the group); other kinds always succeed.
  std::optional<Element> find_mul(Element g, Element h) const;
  Element inverse(Element g) const;
  Element pow(Element g, int k) const;
  Element from_word(const Word& w) const;

  const Word& word(Element g) const;
  int word_length(Element g) const;
  /// Deterministic total order: word length, then shortlex on canonical words.
  bool less(Element g, Element h) const;

  std::string to_string(Element g) const;
  Element parse_element(const std::string& text) const;

  /// Elements of word length <= radius in deterministic order.
  std::vector<Element> ball(int radius, double cap = kBallCap) const;
  double predicted_ball_size(int radius) const;

  // Realization-specific access.
  std::vector<std::int64_t> coordinates(Element g) const;  // free abelian
  int order() const;                                        // finite, 0 for infinite groups
  int table_index(Element g) const;                         // finite
  Element from_table_index(int index) const;                // finite
  Eigen::Matrix2d sl2(Element g) const;                     // surface

  bool has_representation() const { return rep_dim_ > 0; }
  int representation_dimension() const { return rep_dim_; }
  /// Isometry of H^n realizing g (surface: SO(2,1); free_loxodromic: SO(n,1)).
  Eigen::MatrixXd lorentz(Element g) const;
  Eigen::VectorXd orbit_point(Element g) const;

  /// Finite groups only: the subgroup generated by `gens` as its own group, and
  /// the embedding of its elements (by new table index) into this group.
  std::pair<std::shared_ptr<const Group>, std::vector<Element>> finite_subgroup(
      const std::vector<Element>& gens) const;

  std::size_t interned_count() const;

  Group(const Group&) = delete;
  Group& operator=(const Group&) = delete;

 private:
  Group() = default;

  struct Node {
    Word word;
    int length = 0;
    std::vector<std::int64_t> key;
    Eigen::Matrix2d sl2 = Eigen::Matrix2d::Identity();
    std::vector<std::int32_t> right;  // right multiplication by symmetric letters, -1 unknown
    mutable std::optional<Eigen::MatrixXd> lorentz;
  };

  struct KeyHash {
    std::size_t operator()(const std::vector<std::int64_t>& k) const noexcept;
  };

  static int letter_slot(Letter l) { return 2 * (std::abs(l) - 1) + (l < 0 ? 1 : 0); }
  static Letter slot_letter(int s) { return (s % 2 == 0) ? (s / 2 + 1) : -(s / 2 + 1); }

  // All helpers below expect the caller to hold the appropriate lock.
  std::uint32_t intern_locked(std::vector<std::int64_t> key, Word word, int length) const;
  std::uint32_t find_or_intern(std::vector<std::int64_t> key, Word word, int length) const;
  const Node& node(Element g) const;
  void ensure_surface_radius(int radius) const;
  std::optional<std::uint32_t> surface_lookup_locked(const Eigen::Matrix2d& m) const;
  Element surface_walk(Element start, const Word& w) const;
  Element finite_mul(Element g, Element h) const;

  GroupKind kind_ = GroupKind::Free;
  int rank_ = 0;
  std::string description_;
  double tolerance_ = 0.0;

  // finite
  std::vector<std::vector<int>> table_;
  std::vector<int> id_of_index_;
  std::vector<int> index_of_id_;
  std::vector<int> finite_generators_;
  std::vector<int> inverse_index_;

  // representation
  int rep_dim_ = 0;
  std::vector<Eigen::MatrixXd> rep_generators_;  // one per generator
  std::vector<Eigen::Matrix2d> sl2_generators_;

  mutable std::shared_mutex mutex_;
  mutable std::deque<Node> nodes_;
  mutable std::unordered_map<std::vector<std::int64_t>, std::uint32_t, KeyHash> index_;
  // surface registry: BFS layers and a geometric index on |m00|
  mutable int radius_ = -1;
  mutable std::vector<std::uint32_t> layer_end_;
  mutable std::multimap<double, std::uint32_t> geo_index_;
};

using GroupPtr = std::shared_ptr<const Group>;

struct PrimitiveRoot {
  Element root;
  int exponent = 1;
};

/// w = root^exponent with root not a proper power (free groups, w != e).
PrimitiveRoot primitive_root(const Group& g, Element w);
/// Primitive roots agree up to inversion (free groups, x, y != e).
bool same_maximal_cyclic(const Group& g, Element x, Element y);

}  // namespace plateau
