#include "plateau/group.hpp"
#include "plateau/lorentz.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace plateau;

namespace {

// Free reduction of a word over letters +-1..+-k.
Word reduce(const Word& w) {
  Word out;
  for (Letter l : w) {
    if (!out.empty() && out.back() == -l) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

// All reduced words of length <= radius, by brute-force enumeration of every word.
std::size_t brute_force_free_ball(int rank, int radius) {
  std::set<Word> seen;
  std::vector<Word> layer{{}};
  seen.insert(Word{});
  for (int r = 0; r < radius; ++r) {
    std::vector<Word> next;
    for (const Word& w : layer) {
      for (int g = 1; g <= rank; ++g) {
        for (int s : {1, -1}) {
          Word v = w;
          v.push_back(s * g);
          next.push_back(v);
          seen.insert(reduce(v));
        }
      }
    }
    layer = std::move(next);
  }
  return seen.size();
}

}  // namespace

TEST(Group, FreeMultiplicationReduces) {
  const GroupPtr f2 = Group::free(2);
  const Element a = f2->generator(0);
  EXPECT_EQ(f2->mul(a, f2->inverse(a)), f2->identity());
  EXPECT_EQ(f2->mul(f2->parse_element("ab"), f2->parse_element("Ba")), f2->parse_element("aa"));
  EXPECT_EQ(f2->word_length(f2->parse_element("aa")), 2);
}

TEST(Group, AbelianAddsCoordinates) {
  const GroupPtr z2 = Group::free_abelian(2);
  const Element x = z2->mul(z2->pow(z2->generator(0), 1), z2->pow(z2->generator(1), 2));
  const Element y = z2->mul(z2->pow(z2->generator(0), 3), z2->pow(z2->generator(1), -1));
  EXPECT_EQ(z2->coordinates(z2->mul(x, y)), (std::vector<std::int64_t>{4, 1}));
}

TEST(Group, BallSizesMatchBruteForce) {
  const GroupPtr f2 = Group::free(2);
  EXPECT_EQ(f2->ball(1).size(), 5u);
  for (int r = 1; r <= 4; ++r) EXPECT_EQ(f2->ball(r).size(), brute_force_free_ball(2, r)) << "R=" << r;
  EXPECT_EQ(f2->ball(2).size(), 17u);

  const GroupPtr z2 = Group::free_abelian(2);
  for (int r = 0; r <= 4; ++r) {
    std::size_t lattice = 0;
    for (int x = -r; x <= r; ++x)
      for (int y = -r; y <= r; ++y) lattice += std::abs(x) + std::abs(y) <= r;
    EXPECT_EQ(z2->ball(r).size(), lattice) << "R=" << r;
  }
}

TEST(Group, BallOrderIsDeterministic) {
  const GroupPtr f2 = Group::free(2);
  const auto b = f2->ball(3);
  for (std::size_t i = 1; i < b.size(); ++i) EXPECT_TRUE(f2->less(b[i - 1], b[i]));
  EXPECT_EQ(b.front(), f2->identity());
}

TEST(Group, FiniteTablesAreGroups) {
  for (const GroupPtr& g : {Group::cyclic(6), Group::dihedral(4)}) {
    const auto all = g->ball(g->order());
    ASSERT_EQ(static_cast<int>(all.size()), g->order());
    for (Element x : all) {
      EXPECT_EQ(g->mul(x, g->inverse(x)), g->identity());
      for (Element y : all)
        for (Element z : all) EXPECT_EQ(g->mul(g->mul(x, y), z), g->mul(x, g->mul(y, z)));
    }
  }
}

TEST(Group, ParseRejectsUnknownGroups) {
  EXPECT_THROW(Group::parse("lattice(3)"), GroupError);
  EXPECT_THROW(Group::parse("free("), GroupError);
}

TEST(PrimitiveRoot, Examples) {
  const GroupPtr f2 = Group::free(2);
  auto check = [&](const char* w, const char* root, int k) {
    const PrimitiveRoot r = primitive_root(*f2, f2->parse_element(w));
    EXPECT_EQ(f2->to_string(r.root), root) << w;
    EXPECT_EQ(r.exponent, k) << w;
    // Multiplying out recovers the word.
    EXPECT_EQ(f2->pow(r.root, r.exponent), f2->parse_element(w)) << w;
  };
  check("aaa", "a", 3);
  check("abab", "ab", 2);
  check("baaB", "baB", 2);
  check("ab", "ab", 1);
  EXPECT_THROW(primitive_root(*f2, f2->identity()), GroupError);
}

TEST(PrimitiveRoot, RootIsNotAProperPowerByBruteForce) {
  const GroupPtr f2 = Group::free(2);
  const auto small = f2->ball(3);
  for (const char* w : {"abab", "baaB", "aBaBaB", "abbabb"}) {
    const PrimitiveRoot r = primitive_root(*f2, f2->parse_element(w));
    for (Element x : small) {
      if (x == f2->identity()) continue;
      for (int k = 2; k <= 4; ++k) EXPECT_NE(f2->pow(x, k), r.root) << w;
    }
  }
}

TEST(PrimitiveRoot, SameMaximalCyclic) {
  const GroupPtr f2 = Group::free(2);
  const Element a = f2->generator(0), b = f2->generator(1);
  EXPECT_TRUE(same_maximal_cyclic(*f2, f2->pow(a, 2), f2->pow(a, 5)));
  EXPECT_TRUE(same_maximal_cyclic(*f2, f2->pow(a, 2), f2->pow(a, -3)));
  EXPECT_FALSE(same_maximal_cyclic(*f2, a, b));

  // abab against a^-1 (ab)^3 a = (ba)^3: brute force over common roots in ball(4).
  const Element x = f2->parse_element("abab");
  const Element y = f2->mul(f2->mul(f2->inverse(a), f2->pow(f2->parse_element("ab"), 3)), a);
  bool common = false;
  for (Element r : f2->ball(4)) {
    if (r == f2->identity()) continue;
    bool hx = false, hy = false;
    for (int k = -6; k <= 6; ++k) {
      if (k == 0) continue;
      hx = hx || f2->pow(r, k) == x;
      hy = hy || f2->pow(r, k) == y;
    }
    common = common || (hx && hy);
  }
  EXPECT_EQ(same_maximal_cyclic(*f2, x, y), common);
  EXPECT_FALSE(common);
}

TEST(SurfaceGroup, RelationAndRegularity) {
  const GroupPtr s = Group::surface(2);
  ASSERT_EQ(s->rank(), 4);
  Eigen::Matrix2d prod = Eigen::Matrix2d::Identity();
  for (int k = 0; k < 2; ++k) {
    const Eigen::Matrix2d a = s->sl2(s->generator(2 * k)), b = s->sl2(s->generator(2 * k + 1));
    prod = prod * a * b * a.inverse() * b.inverse();
  }
  EXPECT_LT(lorentz::psl2_relative_gap(prod, Eigen::Matrix2d::Identity()), 1e-9);
  // Equal translation lengths: equal |trace|.
  const double t0 = std::abs(s->sl2(s->generator(0)).trace());
  EXPECT_GT(t0, 2.0);
  for (int i = 1; i < 4; ++i) EXPECT_NEAR(std::abs(s->sl2(s->generator(i)).trace()), t0, 1e-9);
}

TEST(SurfaceGroup, BallOneHasNineDistinctMatrices) {
  const GroupPtr s = Group::surface(2);
  const auto b = s->ball(1);
  ASSERT_EQ(b.size(), 9u);
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = i + 1; j < b.size(); ++j) EXPECT_GT(lorentz::psl2_relative_gap(s->sl2(b[i]), s->sl2(b[j])), 1e-6);
}

TEST(FreeLoxodromic, OrbitIsFreeAndDiscrete) {
  const GroupPtr g = Group::free_loxodromic(2, 3, 2.5);
  const auto b = g->ball(3);
  for (std::size_t i = 0; i < b.size(); ++i) {
    const Eigen::VectorXd p = g->orbit_point(b[i]);
    EXPECT_NEAR(lorentz::dot(p, p), -1.0, 1e-9);
    for (std::size_t j = 0; j < i; ++j) EXPECT_GT(lorentz::distance(p, g->orbit_point(b[j])), 1e-3);
  }
}
