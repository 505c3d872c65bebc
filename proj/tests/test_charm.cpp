#include <gtest/gtest.h>

#include <random>

#include "modrep2/charm.hpp"

using namespace modrep2;

namespace {

// Random complex class function on g.
ClassFunction random_cf(const GroupPtr& g, std::mt19937& rng) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<Complex> v(g->class_count());
  for (auto& x : v) x = {d(rng), d(rng)};
  return {g, v};
}

// Indicator of class c.
ClassFunction indicator(const GroupPtr& g, std::size_t c) {
  std::vector<Complex> v(g->class_count(), 0.0);
  v[c] = 1.0;
  return {g, v};
}

// Induction straight from the definition: |H|^-1 sum over x in G of phi(x g x^-1).
std::vector<Complex> induce_by_definition(const SubgroupPtr& h, const ClassFunction& phi) {
  const auto& g = h->parent();
  std::vector<Complex> out(g->class_count(), 0.0);
  for (std::size_t c = 0; c < g->class_count(); ++c) {
    const Index rep = g->classes().classes[c].rep;
    Complex s = 0;
    for (Index x = 0; x < g->order(); ++x) {
      const Index y = g->conj(x, rep);
      if (h->contains(y)) s += phi.at(h->from_parent(y));
    }
    out[c] = s / static_cast<double>(h->order());
  }
  return out;
}

}  // namespace

TEST(ClassFunction, TrivialAndRegular) {
  auto g = make_group(Backend::padic, 2, {2, 1});
  const auto one = ClassFunction::trivial(g);
  EXPECT_EQ(inner_int(one, one), 1);
  EXPECT_TRUE(is_irreducible(one));
  const auto reg = ClassFunction::regular(g);
  EXPECT_EQ(inner_int(reg, one), 1);
  EXPECT_EQ(reg.int_degree(), static_cast<long>(g->order()));
  for (const auto& lin : linear_class_functions(g)) EXPECT_EQ(inner_int(reg, lin), 1);
}

TEST(ClassFunction, RejectsNonClassFunctions) {
  auto g = make_group(Backend::padic, 2, {2, 1});
  std::vector<Complex> v(g->order(), 0.0);
  v[1] = 1.0;
  bool constant = true;
  for (Index x : g->classes().classes[g->class_of(1)].members) constant &= x == 1;
  if (!constant) EXPECT_THROW(ClassFunction::from_elements(g, v), NumericError);
  EXPECT_THROW(inner_int(ClassFunction::trivial(g).scaled(1.0 / 3.0), ClassFunction::trivial(g)), NumericError);
}

TEST(Induction, MatchesDefinitionAndFrobenius) {
  std::mt19937 rng(7);
  for (Lambda l : {Lambda{2, 1}, Lambda{2, 2}, Lambda{3, 1}}) {
    auto g = make_group(Backend::padic, 2, l);
    for (const auto& h : {geometric_parabolic(g, Summand::first), diagonal_subgroup(g), u_plus(g), kernel_k(g)}) {
      const auto phi = random_cf(h, rng);
      const auto ind = induce(h, phi);
      const auto ref = induce_by_definition(h, phi);
      for (std::size_t c = 0; c < ref.size(); ++c) EXPECT_LT(std::abs(ind[c] - ref[c]), 1e-9) << l.str() << " " << h->tag();
      const auto chi = random_cf(g, rng);
      EXPECT_LT(std::abs(inner(ind, chi) - inner(phi, restrict_to(chi, h))), 1e-9);
    }
  }
}

TEST(Functors, AreAdjointOnClassIndicators) {
  std::mt19937 rng(11);
  for (Backend b : {Backend::padic, Backend::tpoly})
    for (Lambda l : {Lambda{2, 1}, Lambda{3, 2}, Lambda{2, 2}, Lambda{3, 3}}) {
      auto g = make_group(b, 2, l);
      std::vector<FunctorSpec> specs{{FunctorKind::geo_ind, l, 0, Summand::first}, {FunctorKind::geo_ind, l, 0, Summand::second}};
      for (const auto& mu : infinitesimal_set(l)) {
        specs.push_back({FunctorKind::inf_ind_embed, l, mu.l2});
        specs.push_back({FunctorKind::inf_ind_quot, l, mu.l2});
      }
      for (auto spec : specs) {
        const auto& e = parabolic_epimorphism(g, spec.parabolic(), spec.m, spec.summand);
        const auto eta = random_cf(g, rng);
        auto rspec = spec;
        rspec.kind = spec.kind == FunctorKind::geo_ind       ? FunctorKind::geo_res
                     : spec.kind == FunctorKind::inf_ind_embed ? FunctorKind::inf_res_embed
                                                               : FunctorKind::inf_res_quot;
        const auto r_eta = functor_apply(g, rspec, eta);
        for (std::size_t c = 0; c < e.target->class_count(); ++c) {
          const auto xi = indicator(e.target, c);
          EXPECT_LT(std::abs(inner(functor_apply(g, spec, xi), eta) - inner(xi, r_eta)), 1e-9) << to_string(spec.kind);
        }
        // i(1) is the permutation character on G/P.
        const auto i1 = functor_apply(g, spec, ClassFunction::trivial(e.target));
        EXPECT_NEAR(i1.degree(), static_cast<double>(g->order()) / static_cast<double>(e.source->order()), 1e-9);
        EXPECT_EQ(inner_int(i1, ClassFunction::trivial(g)), 1);
      }
    }
}

TEST(Functors, RestrictionOfTrivialIsTrivial) {
  auto g = make_group(Backend::padic, 3, {2, 1});
  const auto& e = parabolic_epimorphism(g, ParabolicKind::geometric, 0, Summand::first);
  EXPECT_TRUE(parabolic_restrict(e, ClassFunction::trivial(g)).approx_equal(ClassFunction::trivial(e.target)));
  EXPECT_THROW(parabolic_induce(e, ClassFunction::trivial(g)), std::invalid_argument);
}

TEST(Functors, InflationAndPushforwardAreInverse) {
  std::mt19937 rng(3);
  auto g = make_group(Backend::padic, 2, {3, 2});
  const auto e = reduction_epimorphism(g);
  const auto xi = random_cf(e.target, rng);
  EXPECT_TRUE(pushforward(e, inflate(e, xi)).approx_equal(xi, 1e-9));
}

TEST(Twist, DeterminantCharactersAreLinear) {
  for (unsigned q : {2u, 3u}) {
    auto g = make_group(Backend::padic, q, {3, 2});
    const auto& lin = linear_class_functions(g);
    for (Code z = 0; z < q; ++z) {
      const auto t = twist_character(g, z);
      bool found = false;
      for (const auto& x : lin) found |= x.approx_equal(t);
      EXPECT_TRUE(found);
      // Twisting is an isometry.
      const auto chi = ClassFunction::regular(g) + ClassFunction::trivial(g);
      EXPECT_EQ(inner_int(twist(g, chi, z), twist(g, chi, z)), inner_int(chi, chi));
    }
    EXPECT_TRUE(twist(g, ClassFunction::regular(g), 0).approx_equal(ClassFunction::regular(g)));
    EXPECT_EQ(determinant_characters(g).size(), g->ring2()->unit_count());
  }
}

TEST(KSpectrum, TotalsMatchDegree) {
  for (unsigned q : {2u, 3u}) {
    auto g = make_group(Backend::padic, q, {2, 2});
    const auto one = k_spectrum(g, ClassFunction::trivial(g));
    ASSERT_EQ(one.size(), 1u);
    EXPECT_EQ(one[0].label.type, "i");
    EXPECT_EQ(one[0].multiplicity, 1);
    EXPECT_FALSE(is_primitive(g, ClassFunction::trivial(g)));
    for (const auto& h : {u_plus(g), diagonal_subgroup(g)}) {
      const auto ind = induce(h, ClassFunction::trivial(h));
      long total = 0;
      for (const auto& e : k_spectrum(g, ind)) total += e.multiplicity;
      EXPECT_EQ(total, ind.int_degree());
    }
  }
  auto g = make_group(Backend::padic, 2, {3, 1});
  EXPECT_THROW(k_spectrum(g, ClassFunction::trivial(g)), std::invalid_argument);
}

TEST(KSpectrum, RegularCharacterSeesEveryOrbitEvenly) {
  auto g = make_group(Backend::padic, 2, {3, 2});
  const auto spec = k_spectrum(g, ClassFunction::regular(g));
  const long index = static_cast<long>(g->order() / kernel_k(g)->order());
  std::map<OrbitLabel, std::size_t> sizes;
  for (const auto& o : dual_orbits(*g)) sizes[o.label] += o.size;
  ASSERT_EQ(spec.size(), sizes.size());
  for (const auto& e : spec) EXPECT_EQ(e.multiplicity, index * static_cast<long>(sizes.at(e.label)));
}

TEST(Cuspidality, TrivialAndInducedAreNotCuspidal) {
  for (Lambda l : {Lambda{2, 1}, Lambda{2, 2}, Lambda{3, 2}}) {
    auto g = make_group(Backend::padic, 2, l);
    EXPECT_FALSE(is_cuspidal(g, ClassFunction::trivial(g)));
    EXPECT_FALSE(is_cuspidal(g, ClassFunction::trivial(g), TwistScope::determinant));
    const auto& e = parabolic_epimorphism(g, ParabolicKind::geometric, 0, Summand::first);
    EXPECT_FALSE(is_cuspidal(g, parabolic_induce(e, ClassFunction::regular(e.target))));
  }
}
