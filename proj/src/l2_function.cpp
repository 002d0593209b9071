#include "plateau/l2_function.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace plateau {

L2Function::L2Function(GroupPtr group, int payload) : group_(std::move(group)), payload_(payload) {
  if (payload_ < 1 || payload_ > 8) throw std::invalid_argument("payload dimension must be in [1, 8]");
}

L2Function L2Function::from_entries(GroupPtr group, int payload,
                                    const std::vector<std::pair<Element, std::vector<double>>>& entries) {
  L2Function f(std::move(group), payload);
  std::unordered_map<std::uint32_t, std::size_t> slot;
  std::vector<Element> order;
  std::vector<std::vector<double>> acc;
  for (const auto& [g, amp] : entries) {
    if (static_cast<int>(amp.size()) != payload) throw std::invalid_argument("amplitude has wrong payload size");
    auto [it, fresh] = slot.emplace(g.id, acc.size());
    if (fresh) {
      order.push_back(g);
      acc.push_back(amp);
    } else {
      for (int k = 0; k < payload; ++k) acc[it->second][k] += amp[k];
    }
  }
  std::vector<std::size_t> perm(order.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return order[a].id < order[b].id; });
  for (std::size_t p : perm) {
    f.support_.push_back(order[p]);
    f.values_.insert(f.values_.end(), acc[p].begin(), acc[p].end());
  }
  f.drop_zeros();
  return f;
}

L2Function L2Function::dirac(GroupPtr group, Element g, int payload) {
  std::vector<double> amp(payload, 0.0);
  amp[0] = 1.0;
  return from_entries(std::move(group), payload, {{g, amp}});
}

void L2Function::drop_zeros() {
  std::size_t w = 0;
  for (std::size_t i = 0; i < support_.size(); ++i) {
    bool zero = true;
    for (int k = 0; k < payload_; ++k) zero = zero && values_[i * payload_ + k] == 0.0;
    if (zero) continue;
    support_[w] = support_[i];
    for (int k = 0; k < payload_; ++k) values_[w * payload_ + k] = values_[i * payload_ + k];
    ++w;
  }
  support_.resize(w);
  values_.resize(w * payload_);
}

std::ptrdiff_t L2Function::find(Element g) const {
  auto it = std::lower_bound(support_.begin(), support_.end(), g,
                             [](Element a, Element b) { return a.id < b.id; });
  if (it == support_.end() || it->id != g.id) return -1;
  return it - support_.begin();
}

std::vector<double> L2Function::at(Element g) const {
  const auto i = find(g);
  if (i < 0) return std::vector<double>(payload_, 0.0);
  auto a = amplitude(static_cast<std::size_t>(i));
  return {a.begin(), a.end()};
}

double L2Function::entry_norm(std::size_t i) const {
  double s = 0.0;
  for (double v : amplitude(i)) s += v * v;
  return std::sqrt(s);
}

double L2Function::squared_norm() const {
  double s = 0.0;
  for (double v : values_) s += v * v;
  return s;
}

void L2Function::check_same(const L2Function& other) const {
  if (group_ != other.group_) throw GroupError("functions live on different groups");
  if (payload_ != other.payload_) throw std::invalid_argument("payload dimensions differ");
}

double L2Function::inner(const L2Function& other) const {
  check_same(other);
  double s = 0.0;
  std::size_t i = 0, j = 0;
  while (i < support_.size() && j < other.support_.size()) {
    if (support_[i].id < other.support_[j].id) {
      ++i;
    } else if (support_[i].id > other.support_[j].id) {
      ++j;
    } else {
      for (int k = 0; k < payload_; ++k) s += values_[i * payload_ + k] * other.values_[j * payload_ + k];
      ++i;
      ++j;
    }
  }
  return s;
}

int L2Function::max_word_length() const {
  int m = 0;
  for (Element g : support_) m = std::max(m, group_->word_length(g));
  return m;
}

L2Function L2Function::scaled(double s) const {
  L2Function f = *this;
  for (double& v : f.values_) v *= s;
  f.drop_zeros();
  return f;
}

L2Function L2Function::combined(double a, const L2Function& other, double b) const {
  check_same(other);
  L2Function f(group_, payload_);
  std::size_t i = 0, j = 0;
  auto push = [&](Element g, const double* x, double cx, const double* y, double cy) {
    f.support_.push_back(g);
    for (int k = 0; k < payload_; ++k) f.values_.push_back((x ? cx * x[k] : 0.0) + (y ? cy * y[k] : 0.0));
  };
  while (i < support_.size() || j < other.support_.size()) {
    if (j == other.support_.size() || (i < support_.size() && support_[i].id < other.support_[j].id)) {
      push(support_[i], &values_[i * payload_], a, nullptr, 0.0);
      ++i;
    } else if (i == support_.size() || support_[i].id > other.support_[j].id) {
      push(other.support_[j], nullptr, 0.0, &other.values_[j * payload_], b);
      ++j;
    } else {
      push(support_[i], &values_[i * payload_], a, &other.values_[j * payload_], b);
      ++i;
      ++j;
    }
  }
  f.drop_zeros();
  return f;
}

bool operator==(const L2Function& x, const L2Function& y) {
  return x.group_ == y.group_ && x.payload_ == y.payload_ && x.support_ == y.support_ && x.values_ == y.values_;
}

// ---- SphereVector ---------------------------------------------------------

SphereVector::SphereVector(L2Function f) : f_(std::move(f)) {
  if (std::abs(f_.squared_norm() - 1.0) > 1e-12) {
    std::ostringstream os;
    os.precision(17);
    os << "sphere vector has squared norm " << f_.squared_norm();
    throw std::invalid_argument(os.str());
  }
}

SphereVector SphereVector::normalize(const L2Function& f) {
  const double n = f.norm();
  if (!(n > 0.0)) throw std::invalid_argument("cannot normalize the zero function");
  SphereVector u;
  u.f_ = f.scaled(1.0 / n);
  return u;
}

SphereVector SphereVector::dirac(GroupPtr group, Element g, int payload) {
  return SphereVector(L2Function::dirac(std::move(group), g, payload));
}

SphereVector SphereVector::uniform(GroupPtr group, const std::vector<Element>& set) {
  std::vector<std::pair<Element, std::vector<double>>> e;
  for (Element g : set) e.push_back({g, {1.0}});
  return normalize(L2Function::from_entries(std::move(group), 1, e));
}

// ---- text format ----------------------------------------------------------

void write_sphere_vector(std::ostream& os, const SphereVector& u) {
  const auto& g = *u.group();
  os << "sphere " << g.description() << ' ' << u.payload() << ' ' << u.size() << '\n';
  std::vector<std::size_t> order(u.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return g.less(u.support()[a], u.support()[b]); });
  char buf[40];
  for (std::size_t i : order) {
    os << g.to_string(u.support()[i]);
    for (double v : u.amplitude(i)) {
      std::snprintf(buf, sizeof buf, " %.17g", v);
      os << buf;
    }
    os << '\n';
  }
}

SphereVector read_sphere_vector(std::istream& is, const GroupPtr& group) {
  std::string tag, desc;
  int payload = 0;
  std::size_t count = 0;
  if (!(is >> tag >> desc >> payload >> count) || tag != "sphere") {
    throw std::invalid_argument("malformed sphere vector header");
  }
  if (desc != group->description()) throw std::invalid_argument("sphere vector group mismatch: " + desc);
  std::vector<std::pair<Element, std::vector<double>>> e;
  for (std::size_t i = 0; i < count; ++i) {
    std::string w;
    is >> w;
    std::vector<double> amp(payload);
    for (auto& v : amp) {
      std::string tok;
      is >> tok;
      v = std::strtod(tok.c_str(), nullptr);
    }
    if (!is) throw std::invalid_argument("truncated sphere vector");
    e.push_back({group->parse_element(w), amp});
  }
  return SphereVector(L2Function::from_entries(group, payload, e));
}

std::string to_text(const SphereVector& u) {
  std::ostringstream os;
  write_sphere_vector(os, u);
  return os.str();
}

SphereVector from_text(const std::string& text, const GroupPtr& group) {
  std::istringstream is(text);
  return read_sphere_vector(is, group);
}

SphereVector random_sphere_vector(const GroupPtr& group, const std::vector<Element>& support, int payload,
                                  std::mt19937_64& rng, bool nonnegative) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<std::pair<Element, std::vector<double>>> e;
  for (Element g : support) {
    std::vector<double> amp(payload);
    for (auto& v : amp) v = nonnegative ? std::abs(normal(rng)) : normal(rng);
    e.push_back({g, amp});
  }
  return SphereVector::normalize(L2Function::from_entries(group, payload, e));
}

}  // namespace plateau
