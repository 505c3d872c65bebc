#include <gtest/gtest.h>

#include <array>
#include <complex>
#include <set>

#include "modrep2/tring.hpp"

using namespace modrep2;

namespace {

struct Case {
  Backend backend;
  unsigned q;
  unsigned level;
};

std::vector<Case> grid() {
  std::vector<Case> out;
  for (unsigned l = 1; l <= 4; ++l) {
    out.push_back({Backend::padic, 2, l});
    out.push_back({Backend::padic, 3, l});
    out.push_back({Backend::tpoly, 2, l});
    out.push_back({Backend::tpoly, 3, l});
  }
  for (unsigned l = 1; l <= 2; ++l) {
    out.push_back({Backend::tpoly, 4, l});
    out.push_back({Backend::padic, 5, l});
  }
  return out;
}

}  // namespace

TEST(FiniteField, AxiomsForSmallOrders) {
  for (unsigned q : {2u, 3u, 4u, 5u, 8u, 9u}) {
    FiniteField f(q);
    for (unsigned x = 0; x < q; ++x) {
      EXPECT_EQ(f.add(x, f.neg(x)), 0u);
      if (x) EXPECT_EQ(f.mul(x, f.inv(x)), 1u);
      for (unsigned y = 0; y < q; ++y)
        for (unsigned z = 0; z < q; ++z)
          EXPECT_EQ(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
    }
    // The multiplicative group is cyclic of order q-1.
    bool cyclic = false;
    for (unsigned g = 1; g < q && !cyclic; ++g) {
      std::set<unsigned> seen;
      unsigned y = 1;
      for (unsigned k = 0; k + 1 < q; ++k) { seen.insert(y); y = f.mul(y, g); }
      cyclic = seen.size() == q - 1;
    }
    EXPECT_TRUE(cyclic) << q;
  }
}

TEST(FiniteField, F4UsesXSquaredPlusXPlusOne) {
  FiniteField f(4);
  EXPECT_EQ(f.modulus(), (std::vector<unsigned>{1, 1}));
  // alpha = 2, alpha^2 = alpha + 1 = 3.
  EXPECT_EQ(f.mul(2, 2), 3u);
}

TEST(Ring, SizesAndUnitCounts) {
  for (const auto& c : grid()) {
    auto r = make_ring({c.backend, c.q, c.level});
    EXPECT_EQ(r->size(), ipow(c.q, c.level));
    EXPECT_EQ(r->units().size(), ipow(c.q, c.level - 1) * (c.q - 1));
    EXPECT_EQ(r->unit_count(), r->units().size());
  }
}

TEST(Ring, CommutativeRingAxioms) {
  for (const auto& c : grid()) {
    auto r = make_ring({c.backend, c.q, c.level});
    if (r->size() > 81) continue;
    for (Code x = 0; x < r->size(); ++x) {
      EXPECT_EQ(r->add(x, r->neg(x)), 0u);
      EXPECT_EQ(r->mul(x, r->one()), x);
      for (Code y = 0; y < r->size(); ++y) {
        EXPECT_EQ(r->mul(x, y), r->mul(y, x));
        for (Code z = 0; z < r->size(); z += 3) {
          EXPECT_EQ(r->mul(x, r->add(y, z)), r->add(r->mul(x, y), r->mul(x, z)));
          EXPECT_EQ(r->mul(r->mul(x, y), z), r->mul(x, r->mul(y, z)));
        }
      }
    }
  }
}

TEST(Ring, ValuationAndUnitsAgree) {
  for (const auto& c : grid()) {
    auto r = make_ring({c.backend, c.q, c.level});
    EXPECT_EQ(r->valuation(0), c.level);
    for (Code x = 0; x < r->size(); ++x) {
      EXPECT_EQ(r->is_unit(x), r->valuation(x) == 0);
      if (r->is_unit(x)) EXPECT_EQ(r->mul(x, r->inv(x)), r->one());
      // x = pi^v * unit.
      const unsigned v = r->valuation(x);
      if (x != 0) {
        EXPECT_EQ(r->mul_pi(r->div_pi(x, v), v), x);
        EXPECT_TRUE(make_ring({c.backend, c.q, c.level - v})->is_unit(r->div_pi(x, v)));
      }
    }
  }
}

TEST(Ring, ReductionIsARingMap) {
  for (const auto& c : grid()) {
    auto r = make_ring({c.backend, c.q, c.level});
    for (unsigned m = 0; m <= c.level; ++m) {
      auto s = make_ring({c.backend, c.q, m});
      for (Code x = 0; x < r->size(); x += 1 + r->size() / 40)
        for (Code y = 0; y < r->size(); y += 1 + r->size() / 40) {
          EXPECT_EQ(r->reduce(r->add(x, y), m), s->add(r->reduce(x, m), r->reduce(y, m)));
          EXPECT_EQ(r->reduce(r->mul(x, y), m), s->mul(r->reduce(x, m), r->reduce(y, m)));
        }
      // Lift is a section of reduce.
      for (Code x = 0; x < s->size(); ++x) EXPECT_EQ(r->reduce(x, m), x);
    }
  }
}

TEST(Ring, UniformizerMultiplicationShifts) {
  for (const auto& c : grid()) {
    auto r = make_ring({c.backend, c.q, c.level});
    if (c.level < 2) continue;
    for (Code x = 0; x < r->size(); ++x) EXPECT_EQ(r->mul(r->uniformizer(), x), r->mul_pi(x, 1));
  }
}

TEST(Ring, PsiIsAPrimitiveAdditiveCharacter) {
  for (const auto& c : grid()) {
    auto r = make_ring({c.backend, c.q, c.level});
    for (Code x = 0; x < r->size(); ++x)
      for (Code y = 0; y < r->size(); y += 1 + r->size() / 30)
        EXPECT_LT(std::abs(r->psi(r->add(x, y)) - r->psi(x) * r->psi(y)), 1e-9);
    // Nontrivial on the socle pi^(l-1) o, so x -> psi(x .) is injective.
    bool nontrivial = false;
    for (Code x = 0; x < c.q; ++x) nontrivial |= std::abs(r->psi(r->mul_pi(x, c.level - 1)) - 1.0) > 1e-6;
    EXPECT_TRUE(nontrivial);
    // psi_l(pi^(l-1) x) = psi_1(x).
    auto r1 = make_ring({c.backend, c.q, 1});
    for (Code x = 0; x < c.q; ++x) EXPECT_LT(std::abs(r->psi(r->mul_pi(x, c.level - 1)) - r1->psi(x)), 1e-9);
  }
}

TEST(Ring, PadicRejectsPrimePowers) {
  EXPECT_THROW(make_ring({Backend::padic, 4, 2}), std::invalid_argument);
  EXPECT_THROW(make_ring({Backend::tpoly, 6, 1}), std::invalid_argument);
}

TEST(RingElem, ArithmeticAndLevels) {
  auto r = make_ring({Backend::padic, 3, 2});
  RingElem x(r, 4), y(r, 7);
  EXPECT_EQ((x + y).code(), 2u);
  EXPECT_EQ((x * y).code(), 1u);
  EXPECT_EQ(x.inv().code(), 7u);
  EXPECT_EQ(RingElem(r, 6).valuation(), 1u);
  EXPECT_EQ(x.reduce(1).code(), 1u);
  EXPECT_EQ(x.reduce(1).lift(2).code(), 1u);
  EXPECT_THROW(RingElem(r, 3).inv(), std::domain_error);
  auto other = make_ring({Backend::tpoly, 3, 2});
  EXPECT_THROW(x + RingElem(other, 1), std::invalid_argument);
}

TEST(Characters, OrthonormalAndMultiplicative) {
  for (const auto& c : grid()) {
    UnitGroup units(make_ring({c.backend, c.q, c.level}));
    const auto chars = units.characters();
    const std::size_t n = units.order();
    ASSERT_EQ(chars.size(), n);
    EXPECT_TRUE(chars.front().is_trivial());
    const auto a = units.as_abelian();
    for (const auto& chi : chars)
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; y += 1 + n / 10)
          EXPECT_LT(std::abs(chi(a.op(x, y)) - chi(x) * chi(y)), 1e-9);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Complex s = 0;
        for (std::size_t x = 0; x < n; ++x) s += chars[i](x) * std::conj(chars[j](x));
        EXPECT_LT(std::abs(s / static_cast<double>(n) - (i == j ? 1.0 : 0.0)), 1e-6);
      }
  }
}

TEST(Characters, RejectsNonAbelian) {
  // S3 as permutations of {0,1,2} encoded by index into this list.
  const std::vector<std::array<int, 3>> perms{{0, 1, 2}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}, {1, 2, 0}, {2, 0, 1}};
  AbelianGroup s3{6, 0, [&](std::size_t x, std::size_t y) {
                    std::array<int, 3> r{};
                    for (int k = 0; k < 3; ++k) r[k] = perms[x][perms[y][k]];
                    for (std::size_t i = 0; i < 6; ++i)
                      if (perms[i] == r) return i;
                    return std::size_t{0};
                  }};
  EXPECT_THROW(character_group(s3), std::invalid_argument);
}

TEST(Characters, TwistingCharactersRestrictToPsi) {
  for (const auto& c : grid()) {
    if (c.level < 2) continue;
    auto r = make_ring({c.backend, c.q, c.level});
    auto r1 = make_ring({c.backend, c.q, 1});
    UnitGroup units(r);
    const auto tw = twisting_characters(r);
    ASSERT_EQ(tw.size(), c.q);
    EXPECT_TRUE(tw[0].is_trivial());
    for (Code z = 0; z < c.q; ++z)
      for (Code x = 0; x < c.q; ++x) {
        const Code u = r->add(r->one(), r->mul_pi(x, c.level - 1));
        EXPECT_LT(std::abs(tw[z](units.index(u)) - r1->psi(r1->mul(z, x))), 1e-9);
      }
  }
  EXPECT_THROW(twisting_characters(make_ring({Backend::padic, 2, 1})), std::invalid_argument);
}
