#include "plateau/group.hpp"

#include "plateau/lorentz.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <mutex>
#include <numbers>
#include <regex>
#include <sstream>

namespace plateau {

namespace {

Word reduce_free(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (Letter l : w) {
    if (!out.empty() && out.back() == -l) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

Word invert_word(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (auto& l : out) l = -l;
  return out;
}

std::vector<std::int64_t> key_of_word(const Word& w) { return {w.begin(), w.end()}; }

// Generator letters skip 'e', which is reserved for the identity.
char generator_char(int index) {
  char c = static_cast<char>('a' + index);
  if (c >= 'e') ++c;
  return c;
}

int generator_of_char(char c) {
  const char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower < 'a' || lower > 'z' || lower == 'e') return -1;
  return lower > 'e' ? lower - 'a' - 1 : lower - 'a';
}

}  // namespace

std::size_t Group::KeyHash::operator()(const std::vector<std::int64_t>& k) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (auto v : k) {
    h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

// ---- construction ---------------------------------------------------------

std::shared_ptr<const Group> Group::free(int rank) {
  if (rank < 1 || rank > 25) throw GroupError("free group rank must be in [1, 25]");
  std::shared_ptr<Group> g(new Group());
  g->kind_ = GroupKind::Free;
  g->rank_ = rank;
  g->description_ = "free(" + std::to_string(rank) + ")";
  g->intern_locked({}, {}, 0);
  return g;
}

namespace {
constexpr double kScrewAngle = 1.0;
}

std::shared_ptr<const Group> Group::free_loxodromic(int rank, int n, double translation) {
  if (n < 2 || rank < 1 || rank > n) throw GroupError("free_lox needs 1 <= rank <= n");
  // Orthogonal axes through the base point; ping-pong needs sinh^2(t/2) >= 1.
  if (std::sinh(0.5 * translation) < 1.0) throw GroupError("free_lox translation too short to be discrete and free");
  std::shared_ptr<Group> g(new Group());
  g->kind_ = GroupKind::Free;
  g->rank_ = rank;
  std::ostringstream os;
  os << "free_lox(" << rank << "," << n << "," << translation << ")";
  g->description_ = os.str();
  g->rep_dim_ = n;
  // For n >= 3 each generator also rotates about its axis; pure boosts along axes
  // through o would keep the whole orbit inside a totally geodesic H^2.
  for (int i = 0; i < rank; ++i) {
    Eigen::MatrixXd gen = lorentz::boost(n, i + 1, translation);
    if (n >= 3) {
      const int a = (i + 1) % n + 1;
      const int b = (i + 2) % n + 1;
      gen = gen * lorentz::rotation(n, a, b, kScrewAngle);
    }
    g->rep_generators_.push_back(gen);
  }
  g->intern_locked({}, {}, 0);
  return g;
}

std::shared_ptr<const Group> Group::free_abelian(int rank) {
  if (rank < 1 || rank > 25) throw GroupError("free abelian rank must be in [1, 25]");
  std::shared_ptr<Group> g(new Group());
  g->kind_ = GroupKind::FreeAbelian;
  g->rank_ = rank;
  g->description_ = "abelian(" + std::to_string(rank) + ")";
  g->intern_locked(std::vector<std::int64_t>(rank, 0), {}, 0);
  return g;
}

std::shared_ptr<const Group> Group::finite(std::string name, std::vector<std::vector<int>> table,
                                           std::vector<int> generators) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw GroupError("empty multiplication table");
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != n) throw GroupError("multiplication table is not square");
    for (int v : row) {
      if (v < 0 || v >= n) throw GroupError("multiplication table entry out of range");
    }
  }
  // Locate the identity and inverses.
  int unit = -1;
  for (int i = 0; i < n && unit < 0; ++i) {
    bool ok = true;
    for (int j = 0; j < n && ok; ++j) ok = table[i][j] == j && table[j][i] == j;
    if (ok) unit = i;
  }
  if (unit < 0) throw GroupError("multiplication table has no identity");
  if (generators.empty() || generators.size() > 25) throw GroupError("finite group needs 1..25 generators");

  std::shared_ptr<Group> g(new Group());
  g->kind_ = GroupKind::Finite;
  g->rank_ = static_cast<int>(generators.size());
  g->description_ = std::move(name);
  g->table_ = std::move(table);

  g->finite_generators_ = generators;
  std::vector<int>& inverse_index = g->inverse_index_;
  inverse_index.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (g->table_[i][j] == unit) inverse_index[i] = j;
    }
    if (inverse_index[i] < 0) throw GroupError("multiplication table is not a group");
  }

  // Breadth-first search over symmetric letters gives shortlex-minimal words.
  g->index_of_id_.clear();
  g->id_of_index_.assign(n, -1);
  g->intern_locked({unit}, {}, 0);
  g->id_of_index_[unit] = 0;
  g->index_of_id_.push_back(unit);
  for (std::size_t head = 0; head < g->nodes_.size(); ++head) {
    const int idx = g->index_of_id_[head];
    const Word base = g->nodes_[head].word;
    const int len = g->nodes_[head].length;
    for (int slot = 0; slot < 2 * g->rank_; ++slot) {
      const Letter l = slot_letter(slot);
      const int gi = generators[std::abs(l) - 1];
      if (gi < 0 || gi >= n) throw GroupError("generator index out of range");
      const int step = l > 0 ? gi : inverse_index[gi];
      const int next = g->table_[idx][step];
      if (g->id_of_index_[next] >= 0) continue;
      Word w = base;
      w.push_back(l);
      const auto id = g->intern_locked({next}, std::move(w), len + 1);
      g->id_of_index_[next] = static_cast<int>(id);
      g->index_of_id_.push_back(next);
    }
  }
  if (static_cast<int>(g->nodes_.size()) != n) throw GroupError("generators do not generate the finite group");
  // Verify associativity on the full table (cheap at the supported sizes).
  if (n <= 64) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (g->table_[g->table_[a][b]][c] != g->table_[a][g->table_[b][c]])
            throw GroupError("multiplication table is not associative");
  }
  return g;
}

std::shared_ptr<const Group> Group::cyclic(int n) {
  if (n < 1) throw GroupError("cyclic order must be positive");
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[i][j] = (i + j) % n;
  return finite("cyclic(" + std::to_string(n) + ")", std::move(t), {n > 1 ? 1 : 0});
}

std::shared_ptr<const Group> Group::dihedral(int n) {
  if (n < 2) throw GroupError("dihedral needs n >= 2");
  // r^i s^f has index i + n f.
  const int m = 2 * n;
  std::vector<std::vector<int>> t(m, std::vector<int>(m));
  for (int x = 0; x < m; ++x) {
    for (int y = 0; y < m; ++y) {
      const int i = x % n, f = x / n, j = y % n, h = y / n;
      const int k = ((i + (f ? -j : j)) % n + n) % n;
      t[x][y] = k + n * ((f + h) % 2);
    }
  }
  return finite("dihedral(" + std::to_string(n) + ")", std::move(t), {1, n});
}

std::shared_ptr<const Group> Group::surface(int genus) {
  if (genus < 2) throw GroupError("surface group needs genus >= 2");
  std::shared_ptr<Group> g(new Group());
  g->kind_ = GroupKind::Surface;
  g->rank_ = 2 * genus;
  g->description_ = "surface(" + std::to_string(genus) + ")";
  g->tolerance_ = 1e-8;
  g->rep_dim_ = 2;

  const int sides = 4 * genus;
  const double pi = std::numbers::pi;
  const double inradius = std::acosh(1.0 / std::tan(pi / sides));
  auto theta = [&](int k) { return 2.0 * pi * k / sides; };
  // Pairing carrying side i onto side j.
  auto pairing = [&](int i, int j) {
    return Eigen::Matrix2d(lorentz::sl2_half_turn(theta(j), inradius) * lorentz::sl2_rotation(theta(j) - theta(i)));
  };
  for (int k = 0; k < genus; ++k) {
    g->sl2_generators_.push_back(pairing(4 * k + 2, 4 * k));
    g->sl2_generators_.push_back(pairing(4 * k + 1, 4 * k + 3));
  }
  const auto id = g->intern_locked({0}, {}, 0);
  g->nodes_[id].sl2 = Eigen::Matrix2d::Identity();
  g->geo_index_.emplace(2.0, id);
  g->radius_ = 0;
  g->layer_end_ = {1};
  return g;
}

std::shared_ptr<const Group> Group::parse(const std::string& description) {
  static const std::regex re(R"(\s*([a-z_]+)\s*\(\s*([^)]*)\)\s*)");
  std::smatch m;
  if (!std::regex_match(description, m, re)) throw GroupError("cannot parse group description '" + description + "'");
  const std::string kind = m[1];
  std::vector<double> args;
  std::stringstream ss(m[2].str());
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      args.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw GroupError("bad numeric argument '" + tok + "' in '" + description + "'");
    }
  }
  auto need = [&](std::size_t k) {
    if (args.size() != k) throw GroupError("'" + kind + "' expects " + std::to_string(k) + " argument(s)");
  };
  if (kind == "free") { need(1); return free(static_cast<int>(args[0])); }
  if (kind == "abelian") { need(1); return free_abelian(static_cast<int>(args[0])); }
  if (kind == "cyclic") { need(1); return cyclic(static_cast<int>(args[0])); }
  if (kind == "dihedral") { need(1); return dihedral(static_cast<int>(args[0])); }
  if (kind == "surface") { need(1); return surface(static_cast<int>(args[0])); }
  if (kind == "free_lox") {
    need(3);
    return free_loxodromic(static_cast<int>(args[0]), static_cast<int>(args[1]), args[2]);
  }
  throw GroupError("unknown group kind '" + kind + "'");
}

// ---- registry -------------------------------------------------------------

std::uint32_t Group::intern_locked(std::vector<std::int64_t> key, Word word, int length) const {
  const auto id = static_cast<std::uint32_t>(nodes_.size());
  Node n;
  n.word = std::move(word);
  n.length = length;
  n.key = key;
  nodes_.push_back(std::move(n));
  index_.emplace(std::move(key), id);
  return id;
}

std::uint32_t Group::find_or_intern(std::vector<std::int64_t> key, Word word, int length) const {
  {
    std::shared_lock lock(mutex_);
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
  }
  std::unique_lock lock(mutex_);
  auto it = index_.find(key);
  if (it != index_.end()) return it->second;
  return intern_locked(std::move(key), std::move(word), length);
}

const Group::Node& Group::node(Element g) const {
  std::shared_lock lock(mutex_);
  if (g.id >= nodes_.size()) throw GroupError("element does not belong to " + description_);
  return nodes_[g.id];
}

std::size_t Group::interned_count() const {
  std::shared_lock lock(mutex_);
  return nodes_.size();
}

std::optional<std::uint32_t> Group::surface_lookup_locked(const Eigen::Matrix2d& m) const {
  const double k = m.cwiseAbs().sum();
  const double w = 4.0 * tolerance_ * std::max(1.0, k);
  for (auto it = geo_index_.lower_bound(k - w); it != geo_index_.end() && it->first <= k + w; ++it) {
    if (lorentz::psl2_relative_gap(nodes_[it->second].sl2, m) < tolerance_) return it->second;
  }
  return std::nullopt;
}

void Group::ensure_surface_radius(int radius) const {
  {
    std::shared_lock lock(mutex_);
    if (radius_ >= radius) return;
  }
  std::unique_lock lock(mutex_);
  const int slots = 2 * rank_;
  while (radius_ < radius) {
    const std::uint32_t begin = radius_ == 0 ? 0 : layer_end_[radius_ - 1];
    const std::uint32_t end = layer_end_[radius_];
    for (std::uint32_t id = begin; id < end; ++id) {
      nodes_[id].right.assign(slots, -1);
      for (int s = 0; s < slots; ++s) {
        const Letter l = slot_letter(s);
        const Eigen::Matrix2d& gen = sl2_generators_[std::abs(l) - 1];
        const Eigen::Matrix2d m = nodes_[id].sl2 * (l > 0 ? gen : Eigen::Matrix2d(gen.inverse()));
        auto found = surface_lookup_locked(m);
        if (!found) {
          Word w = nodes_[id].word;
          w.push_back(l);
          const auto nid = static_cast<std::uint32_t>(nodes_.size());
          const int length = nodes_[id].length + 1;
          intern_locked({static_cast<std::int64_t>(nid)}, std::move(w), length);
          nodes_[nid].sl2 = m;
          geo_index_.emplace(m.cwiseAbs().sum(), nid);
          found = nid;
        }
        nodes_[id].right[s] = static_cast<std::int32_t>(*found);
      }
    }
    layer_end_.push_back(static_cast<std::uint32_t>(nodes_.size()));
    ++radius_;
  }
}

Element Group::surface_walk(Element start, const Word& w) const {
  ensure_surface_radius(word_length(start) + static_cast<int>(w.size()));
  std::shared_lock lock(mutex_);
  std::uint32_t cur = start.id;
  for (Letter l : w) cur = static_cast<std::uint32_t>(nodes_[cur].right[letter_slot(l)]);
  return Element{cur};
}

Element Group::finite_mul(Element g, Element h) const {
  const int i = index_of_id_.at(g.id);
  const int j = index_of_id_.at(h.id);
  return Element{static_cast<std::uint32_t>(id_of_index_[table_[i][j]])};
}

// ---- arithmetic -----------------------------------------------------------

Element Group::generator(int i) const {
  if (i < 0 || i >= rank_) throw GroupError("generator index out of range");
  return from_word({i + 1});
}

std::vector<Element> Group::symmetric_generators() const {
  std::vector<Element> out;
  for (int s = 0; s < 2 * rank_; ++s) {
    const Element e = from_word({slot_letter(s)});
    if (e == identity()) continue;
    if (std::find(out.begin(), out.end(), e) == out.end()) out.push_back(e);
  }
  return out;
}

Element Group::from_word(const Word& w) const {
  for (Letter l : w) {
    if (l == 0 || std::abs(l) > rank_) throw GroupError("letter out of range for " + description_);
  }
  switch (kind_) {
    case GroupKind::Free: {
      Word r = reduce_free(w);
      auto key = key_of_word(r);
      const int len = static_cast<int>(r.size());
      return Element{find_or_intern(std::move(key), std::move(r), len)};
    }
    case GroupKind::FreeAbelian: {
      std::vector<std::int64_t> c(rank_, 0);
      for (Letter l : w) c[std::abs(l) - 1] += l > 0 ? 1 : -1;
      Word canon;
      int len = 0;
      for (int i = 0; i < rank_; ++i) {
        for (std::int64_t k = 0; k < std::abs(c[i]); ++k) canon.push_back(c[i] > 0 ? i + 1 : -(i + 1));
        len += static_cast<int>(std::abs(c[i]));
      }
      return Element{find_or_intern(std::move(c), std::move(canon), len)};
    }
    case GroupKind::Finite: {
      int idx = index_of_id_[0];
      for (Letter l : w) {
        const int gi = finite_generators_[std::abs(l) - 1];
        idx = table_[idx][l > 0 ? gi : inverse_index_[gi]];
      }
      return Element{static_cast<std::uint32_t>(id_of_index_[idx])};
    }
    case GroupKind::Surface:
      return surface_walk(identity(), w);
  }
  throw GroupError("unreachable group kind");
}

Element Group::mul(Element g, Element h) const {
  if (kind_ == GroupKind::Finite) return finite_mul(g, h);
  if (kind_ == GroupKind::Surface) {
    // Look the product up first; grow the ball one layer at a time only when needed.
    const int bound = word_length(g) + word_length(h);
    for (;;) {
      if (auto found = find_mul(g, h)) return *found;
      int r;
      {
        std::shared_lock lock(mutex_);
        r = radius_;
      }
      if (r >= bound) return surface_walk(g, node(h).word);
      ensure_surface_radius(r + 1);
    }
  }
  Word w = node(g).word;
  const Word& b = node(h).word;
  w.insert(w.end(), b.begin(), b.end());
  return from_word(w);
}

std::optional<Element> Group::find_mul(Element g, Element h) const {
  if (kind_ != GroupKind::Surface) return mul(g, h);
  std::shared_lock lock(mutex_);
  if (g.id >= nodes_.size() || h.id >= nodes_.size()) throw GroupError("element does not belong to " + description_);
  if (auto id = surface_lookup_locked(nodes_[g.id].sl2 * nodes_[h.id].sl2)) return Element{*id};
  return std::nullopt;
}

Element Group::inverse(Element g) const {
  if (kind_ == GroupKind::Finite) {
    return Element{static_cast<std::uint32_t>(id_of_index_[inverse_index_[table_index(g)]])};
  }
  return from_word(invert_word(node(g).word));
}

Element Group::pow(Element g, int k) const {
  Element base = k < 0 ? inverse(g) : g;
  Element out = identity();
  for (int i = 0; i < std::abs(k); ++i) out = mul(out, base);
  return out;
}

const Word& Group::word(Element g) const { return node(g).word; }

int Group::word_length(Element g) const { return node(g).length; }

bool Group::less(Element g, Element h) const {
  const Node& a = node(g);
  const Node& b = node(h);
  if (a.length != b.length) return a.length < b.length;
  return std::lexicographical_compare(a.word.begin(), a.word.end(), b.word.begin(), b.word.end(),
                                      [](Letter x, Letter y) { return letter_slot(x) < letter_slot(y); });
}

std::string Group::to_string(Element g) const {
  const Word& w = word(g);
  if (w.empty()) return "e";
  std::string s;
  for (Letter l : w) {
    const char c = generator_char(std::abs(l) - 1);
    s.push_back(l > 0 ? c : static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  }
  return s;
}

Element Group::parse_element(const std::string& text) const {
  if (text == "e") return identity();
  Word w;
  for (char c : text) {
    const int gi = generator_of_char(c);
    if (gi < 0 || gi >= rank_) throw GroupError("bad letter '" + std::string(1, c) + "' for " + description_);
    w.push_back(std::isupper(static_cast<unsigned char>(c)) ? -(gi + 1) : gi + 1);
  }
  return from_word(w);
}

// ---- balls ----------------------------------------------------------------

double Group::predicted_ball_size(int radius) const {
  if (radius < 0) return 0.0;
  switch (kind_) {
    case GroupKind::Finite:
      return static_cast<double>(nodes_.size());
    case GroupKind::FreeAbelian: {
      // Lattice points with |x|_1 <= radius, by dynamic programming over coordinates.
      std::vector<double> ways(radius + 1, 0.0);
      ways[0] = 1.0;
      for (int i = 0; i < rank_; ++i) {
        std::vector<double> next(radius + 1, 0.0);
        for (int used = 0; used <= radius; ++used) {
          if (ways[used] == 0.0) continue;
          for (int k = 0; used + k <= radius; ++k) next[used + k] += ways[used] * (k == 0 ? 1.0 : 2.0);
        }
        ways = next;
      }
      double s = 0.0;
      for (double v : ways) s += v;
      return s;
    }
    case GroupKind::Free:
    case GroupKind::Surface: {
      const double k = rank_;
      if (k == 1) return 2.0 * radius + 1.0;
      return 1.0 + 2.0 * k * (std::pow(2.0 * k - 1.0, radius) - 1.0) / (2.0 * k - 2.0);
    }
  }
  return 0.0;
}

std::vector<Element> Group::ball(int radius, double cap) const {
  if (radius < 0) throw GroupError("ball radius must be non-negative");
  if (predicted_ball_size(radius) > cap) {
    std::ostringstream os;
    os << "ball(" << radius << ") of " << description_ << " predicted size " << predicted_ball_size(radius)
       << " exceeds cap " << cap;
    throw GroupError(os.str());
  }
  std::vector<Element> out;
  switch (kind_) {
    case GroupKind::Finite: {
      for (std::uint32_t i = 0; i < nodes_.size(); ++i) {
        if (nodes_[i].length <= radius) out.push_back(Element{i});
      }
      break;
    }
    case GroupKind::Surface: {
      ensure_surface_radius(radius);
      std::shared_lock lock(mutex_);
      for (std::uint32_t i = 0; i < layer_end_[radius]; ++i) out.push_back(Element{i});
      return out;
    }
    case GroupKind::Free: {
      // Layer-by-layer extension in letter order yields shortlex order directly.
      std::vector<Word> layer{Word{}};
      out.push_back(identity());
      for (int r = 1; r <= radius; ++r) {
        std::vector<Word> next;
        for (const Word& w : layer) {
          for (int s = 0; s < 2 * rank_; ++s) {
            const Letter l = slot_letter(s);
            if (!w.empty() && w.back() == -l) continue;
            Word x = w;
            x.push_back(l);
            next.push_back(std::move(x));
          }
        }
        for (const Word& w : next) out.push_back(from_word(w));
        layer = std::move(next);
      }
      return out;
    }
    case GroupKind::FreeAbelian: {
      std::vector<std::int64_t> c(rank_, 0);
      std::function<void(int, int)> rec = [&](int i, int budget) {
        if (i == rank_) {
          Word w;
          for (int j = 0; j < rank_; ++j)
            for (std::int64_t k = 0; k < std::abs(c[j]); ++k) w.push_back(c[j] > 0 ? j + 1 : -(j + 1));
          out.push_back(from_word(w));
          return;
        }
        for (int v = -budget; v <= budget; ++v) {
          c[i] = v;
          rec(i + 1, budget - std::abs(v));
        }
        c[i] = 0;
      };
      rec(0, radius);
      break;
    }
  }
  std::sort(out.begin(), out.end(), [this](Element a, Element b) { return less(a, b); });
  return out;
}

// ---- realization access ---------------------------------------------------

std::vector<std::int64_t> Group::coordinates(Element g) const {
  if (kind_ != GroupKind::FreeAbelian) throw GroupError("coordinates need a free abelian group");
  return node(g).key;
}

int Group::order() const { return kind_ == GroupKind::Finite ? static_cast<int>(table_.size()) : 0; }

int Group::table_index(Element g) const {
  if (kind_ != GroupKind::Finite) throw GroupError("table_index needs a finite group");
  return index_of_id_.at(g.id);
}

Element Group::from_table_index(int index) const {
  if (kind_ != GroupKind::Finite) throw GroupError("from_table_index needs a finite group");
  return Element{static_cast<std::uint32_t>(id_of_index_.at(index))};
}

Eigen::Matrix2d Group::sl2(Element g) const {
  if (kind_ != GroupKind::Surface) throw GroupError("sl2 needs a surface group");
  return node(g).sl2;
}

Eigen::MatrixXd Group::lorentz(Element g) const {
  if (!has_representation()) throw GroupError(description_ + " has no isometric representation");
  if (kind_ == GroupKind::Surface) return lorentz::so21_from_sl2(sl2(g));
  const Node& n = node(g);
  {
    std::shared_lock lock(mutex_);
    if (n.lorentz) return *n.lorentz;
  }
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(rep_dim_ + 1, rep_dim_ + 1);
  for (Letter l : n.word) {
    const Eigen::MatrixXd& gen = rep_generators_[std::abs(l) - 1];
    if (l > 0) {
      m = m * gen;
    } else {
      // Inverse of a Lorentz matrix is J M^T J.
      Eigen::MatrixXd j = Eigen::MatrixXd::Identity(rep_dim_ + 1, rep_dim_ + 1);
      j(0, 0) = -1.0;
      m = m * (j * gen.transpose() * j);
    }
  }
  std::unique_lock lock(mutex_);
  n.lorentz = m;
  return m;
}

Eigen::VectorXd Group::orbit_point(Element g) const { return lorentz(g).col(0); }

std::pair<std::shared_ptr<const Group>, std::vector<Element>> Group::finite_subgroup(
    const std::vector<Element>& gens) const {
  if (kind_ != GroupKind::Finite) throw GroupError("finite_subgroup needs a finite group");
  if (gens.empty()) throw GroupError("finite_subgroup needs generators");
  std::vector<Element> members{identity()};
  std::unordered_map<std::uint32_t, int> pos{{0u, 0}};
  for (std::size_t head = 0; head < members.size(); ++head) {
    for (Element s : gens) {
      const Element x = mul(members[head], s);
      if (pos.emplace(x.id, static_cast<int>(members.size())).second) members.push_back(x);
    }
  }
  const int m = static_cast<int>(members.size());
  std::vector<std::vector<int>> t(m, std::vector<int>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) t[i][j] = pos.at(mul(members[i], members[j]).id);
  std::vector<int> gi;
  for (Element s : gens) gi.push_back(pos.at(s.id));
  std::ostringstream name;
  name << "subgroup of " << description_ << " <";
  for (std::size_t i = 0; i < gens.size(); ++i) name << (i ? "," : "") << to_string(gens[i]);
  name << ">";
  auto sub = finite(name.str(), std::move(t), gi);
  std::vector<Element> embed(m);
  for (int i = 0; i < m; ++i) embed[i] = members[i];
  return {sub, embed};
}

PrimitiveRoot primitive_root(const Group& g, Element w) {
  if (g.kind() != GroupKind::Free) throw GroupError("primitive roots are implemented for free groups");
  if (w == g.identity()) throw GroupError("the identity has no primitive root");
  const Word& x = g.word(w);
  // x = c y c^-1 with y cyclically reduced, then y = p^m for the shortest period p.
  std::size_t i = 0, j = x.size() - 1;
  while (i < j && x[i] == -x[j]) {
    ++i;
    --j;
  }
  const std::size_t len = j - i + 1;
  std::size_t period = len;
  for (std::size_t d = 1; d < len; ++d) {
    if (len % d) continue;
    bool ok = true;
    for (std::size_t k = d; k < len && ok; ++k) ok = x[i + k] == x[i + k - d];
    if (ok) {
      period = d;
      break;
    }
  }
  Word root(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(i + period));
  root.insert(root.end(), x.begin() + static_cast<std::ptrdiff_t>(j + 1), x.end());
  return {g.from_word(root), static_cast<int>(len / period)};
}

bool same_maximal_cyclic(const Group& g, Element x, Element y) {
  const Element a = primitive_root(g, x).root, b = primitive_root(g, y).root;
  return a == b || a == g.inverse(b);
}

}  // namespace plateau
