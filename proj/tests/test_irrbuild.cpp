#include <gtest/gtest.h>

#include "modrep2/irrbuild.hpp"

using namespace modrep2;

namespace {

using Pair = std::pair<std::uint64_t, std::uint64_t>;

ZetaPolynomial zp(std::initializer_list<std::pair<const std::uint64_t, std::uint64_t>> l) { return ZetaPolynomial(l); }

// Gram matrix of the explicit characters is the identity.
void expect_orthonormal(const std::vector<ClassFunction>& chars) {
  for (std::size_t i = 0; i < chars.size(); ++i)
    for (std::size_t j = i; j < chars.size(); ++j) ASSERT_EQ(inner_int(chars[i], chars[j]), i == j ? 1 : 0) << i << "," << j;
}

}  // namespace

TEST(ClosedForm, KnownPolynomials) {
  EXPECT_EQ(zeta_closed_form({3, 2}, 2), zp({{1, 8}, {2, 14}, {4, 4}}));
  EXPECT_EQ(zeta_closed_form({2, 2}, 2), zp({{1, 4}, {2, 5}, {3, 4}, {6, 1}}));
  EXPECT_EQ(zeta_closed_form({2, 2}, 3), zp({{1, 6}, {2, 9}, {3, 6}, {4, 3}, {6, 24}, {8, 18}, {12, 12}}));
  EXPECT_EQ(zeta_closed_form({2, 1}, 2), zp({{1, 4}, {2, 1}}));
  EXPECT_EQ(zeta_closed_form({3, 0}, 3), zp({{1, 18}}));
  EXPECT_EQ(zeta_str(zeta_closed_form({3, 2}, 2)), "8D + 14D^2 + 4D^4");
}

TEST(ClosedForm, RectangularCuspidalCounts) {
  EXPECT_EQ(cuspidal_rect_count(2, 2), (Pair{3, 2}));
  EXPECT_EQ(cuspidal_rect_count(2, 3), (Pair{24, 6}));
  EXPECT_EQ(cuspidal_rect_count(3, 2), (Pair{12, 4}));
  EXPECT_THROW(cuspidal_rect_count(1, 2), std::invalid_argument);
}

TEST(ClosedForm, SquareSumIsOrderAndCountIsClassNumber) {
  for (unsigned q : {2u, 3u, 4u, 5u, 7u})
    for (unsigned l1 = 1; l1 <= 6; ++l1)
      for (unsigned l2 = 0; l2 <= l1; ++l2) {
        const Lambda l{l1, l2};
        const auto z = zeta_closed_form(l, q);
        EXPECT_EQ(multiset_square_sum(z), group_order_formula(l, q)) << l.str() << " q=" << q;
        EXPECT_EQ(multiset_total(z), class_count_formula(l, q)) << l.str() << " q=" << q;
        std::uint64_t fam = 0;
        for (const auto& f : expected_families(l, q)) fam += f.count;
        EXPECT_EQ(fam, multiset_total(z)) << l.str() << " q=" << q;
      }
}

TEST(ClosedForm, GreenAgreesWithDixon) {
  for (unsigned q : {2u, 3u, 4u, 5u}) EXPECT_EQ(gl2_residue_zeta(q), green_gl2(q));
}

TEST(Dedupe, DropsRepeatsAndRejectsReducibles) {
  auto g = make_group(Backend::padic, 2, {2, 1});
  IrrFamily f{FamilyLabel::one_dim, {}, {}, {}};
  const auto& lin = linear_class_functions(g);
  f.add(lin[0], "a");
  f.add(lin[1], "b");
  f.add(lin[0], "c");
  EXPECT_EQ(dedupe(f), 1u);
  EXPECT_EQ(f.provenance, (std::vector<std::string>{"a", "b"}));
  f.add(lin[0] + lin[0], "d");
  f.add(lin[0] + lin[0], "e");
  EXPECT_THROW(dedupe(f), BuildError);
}

TEST(CuspidalStabiliser, MatchesBruteForceStabiliser) {
  for (Lambda l : {Lambda{3, 2}, Lambda{4, 3}}) {
    auto g = make_group(Backend::padic, 2, l);
    const auto h = half_level(l);
    auto rl = make_ring({Backend::padic, 2, h.level});
    auto rle = make_ring({Backend::padic, 2, h.level - h.eps});
    for (Code u = 0; u < rl->size(); ++u) {
      if (rl->valuation(u) < 1) continue;
      for (Code w : rle->units()) {
        const DualChar eta{h.level, h.eps, u, 1, w, 0};
        auto n = cuspidal_stabiliser(g, u, w);
        for (Index x = 0; x < g->order(); ++x)
          EXPECT_EQ(n->contains(x), dual_action(*g, g->element(x), eta) == eta) << l.str() << " u=" << u << " w=" << w;
      }
    }
  }
}

TEST(Assembly, FamiliesMatchClosedForms) {
  struct Case { Backend b; unsigned q; Lambda l; };
  for (const Case& c : {Case{Backend::padic, 2, {2, 1}}, Case{Backend::padic, 3, {2, 1}}, Case{Backend::padic, 2, {3, 1}},
                        Case{Backend::padic, 2, {3, 2}}, Case{Backend::tpoly, 2, {3, 2}}, Case{Backend::padic, 2, {2, 2}},
                        Case{Backend::padic, 3, {2, 2}}, Case{Backend::padic, 2, {3, 3}}, Case{Backend::padic, 2, {4, 3}},
                        Case{Backend::padic, 2, {4, 2}}, Case{Backend::padic, 3, {3, 2}}, Case{Backend::padic, 2, {3, 0}}}) {
    SCOPED_TRACE(c.l.str() + " q=" + std::to_string(c.q) + " " + to_string(c.b));
    const auto a = assemble(c.b, c.q, c.l);
    EXPECT_EQ(a->zeta(), zeta_closed_form(c.l, c.q));
    for (const auto& e : expected_families(c.l, c.q)) {
      const auto& f = a->family(e.label);
      EXPECT_EQ(f.count(), e.count) << to_string(e.label);
      if (e.degree != 0) {
        ASSERT_EQ(f.zeta().size(), 1u) << to_string(e.label);
        EXPECT_EQ(f.zeta().begin()->first, e.degree) << to_string(e.label);
      }
    }
    if (a->explicit_characters()) expect_orthonormal(a->characters());
  }
}

TEST(Assembly, AgreesWithDixon) {
  for (Lambda l : {Lambda{2, 1}, Lambda{3, 1}, Lambda{3, 2}, Lambda{2, 2}, Lambda{3, 3}}) {
    const auto a = assemble(Backend::padic, 2, l);
    EXPECT_EQ(a->zeta(), dixon_degrees(a->group)) << l.str();
  }
  const auto a = assemble(Backend::padic, 3, {2, 1});
  EXPECT_EQ(a->zeta(), dixon_degrees(a->group));
}

TEST(Assembly, RectangularCuspidalRemainder) {
  for (unsigned q : {2u, 3u}) {
    const auto a = assemble(Backend::padic, q, {2, 2});
    const auto [count, degree] = cuspidal_rect_count(2, q);
    EXPECT_EQ(a->family(FamilyLabel::cuspidal_rect_count).counted, zp({{degree, count}}));
    EXPECT_FALSE(a->explicit_characters());
  }
}

TEST(Families, KTypes) {
  auto check = [](const Assembly& a, FamilyLabel label, std::set<std::string> allowed) {
    const auto& g = a.group;
    for (const auto& chi : a.family(label).members) EXPECT_TRUE(allowed.count(k_type(g, chi))) << a.lambda.str() << " " << to_string(label);
  };
  for (Lambda l : {Lambda{3, 2}, Lambda{4, 3}}) {
    const auto a = assemble(Backend::padic, 2, l);
    check(*a, FamilyLabel::cuspidal_nonrect, {"v"});
    check(*a, FamilyLabel::inf_embed, {"iii"});
    check(*a, FamilyLabel::inf_quot, {"iv"});
    check(*a, FamilyLabel::geo_irred, {"ii"});
    check(*a, FamilyLabel::geo_split, {"iii", "iv"});
    check(*a, FamilyLabel::pullback_twist, {"i"});
  }
  const auto a = assemble(Backend::padic, 2, {3, 3});
  check(*a, FamilyLabel::geo_irred, {"ii"});
  check(*a, FamilyLabel::geo_split, {"iii"});
  check(*a, FamilyLabel::inf_embed, {"iii"});
}

TEST(Families, CuspidalsAreCuspidal) {
  const auto a = assemble(Backend::padic, 2, {3, 2});
  for (const auto& chi : a->family(FamilyLabel::cuspidal_nonrect).members) EXPECT_TRUE(is_cuspidal(a->group, chi));
  for (const auto& chi : a->family(FamilyLabel::geo_irred).members) EXPECT_FALSE(is_cuspidal(a->group, chi));
  const auto b = assemble(Backend::padic, 3, {2, 1});
  for (const auto& chi : b->family(FamilyLabel::orbitC).members) EXPECT_TRUE(is_cuspidal(b->group, chi));
  // At q = 2 the orbit C characters are linear: some linear twist makes them
  // imprimitive, while determinant twists do not.
  const auto c = assemble(Backend::padic, 2, {3, 1});
  for (const auto& chi : c->family(FamilyLabel::orbitC).members) {
    EXPECT_FALSE(is_cuspidal(c->group, chi, TwistScope::all_linear));
    EXPECT_TRUE(is_cuspidal(c->group, chi, TwistScope::determinant));
  }
}

TEST(Families, WorkerCountDoesNotChangeResults) {
  auto g = make_group(Backend::padic, 2, {3, 2});
  set_worker_count(1);
  const auto one = build_cuspidal_nonrect(g);
  set_worker_count(3);
  const auto three = build_cuspidal_nonrect(g);
  set_worker_count(0);
  ASSERT_EQ(one.members.size(), three.members.size());
  for (std::size_t i = 0; i < one.members.size(); ++i) EXPECT_TRUE(one.members[i].approx_equal(three.members[i]));
  EXPECT_EQ(one.provenance, three.provenance);
}
