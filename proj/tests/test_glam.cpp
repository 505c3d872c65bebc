#include <gtest/gtest.h>

#include <random>
#include <set>

#include "modrep2/glam.hpp"

using namespace modrep2;

namespace {

// Independent model of M_lambda = o_l1 e1 + o_l2 e2 with p-adic integers, and
// the composite of two module maps given by the images of e1 and e2.
struct PadicModule {
  unsigned p, l1, l2;
  std::uint64_t n1() const { return ipow(p, l1); }
  std::uint64_t n2() const { return ipow(p, l2); }
  // Endomorphism as images of e1 = (x1, y1) and e2 = (x2, y2).
  struct End {
    std::uint64_t x1, y1, x2, y2;
  };
  std::pair<std::uint64_t, std::uint64_t> apply(const End& f, std::uint64_t x, std::uint64_t y) const {
    return {(f.x1 * x + f.x2 * y) % n1(), (f.y1 * (x % n2()) + f.y2 * y) % n2()};
  }
  bool valid(const End& f) const {
    // e2 has order p^l2, so its image must be killed by p^l2.
    return (f.x2 * n2()) % n1() == 0;
  }
  bool bijective(const End& f) const {
    std::set<std::pair<std::uint64_t, std::uint64_t>> img;
    for (std::uint64_t x = 0; x < n1(); ++x)
      for (std::uint64_t y = 0; y < n2(); ++y) img.insert(apply(f, x, y));
    return img.size() == n1() * n2();
  }
};

std::size_t brute_force_aut_count(unsigned p, Lambda l) {
  PadicModule m{p, l.l1, l.l2};
  std::size_t count = 0;
  for (std::uint64_t x1 = 0; x1 < m.n1(); ++x1)
    for (std::uint64_t y1 = 0; y1 < m.n2(); ++y1)
      for (std::uint64_t x2 = 0; x2 < m.n1(); ++x2)
        for (std::uint64_t y2 = 0; y2 < m.n2(); ++y2) {
          PadicModule::End f{x1, y1, x2, y2};
          if (m.valid(f) && m.bijective(f)) ++count;
        }
  return count;
}

const std::vector<Lambda> kSmall{{1, 0}, {2, 0}, {3, 0}, {1, 1}, {2, 1}, {3, 1}, {2, 2}, {3, 2}};

}  // namespace

TEST(Glam, OrderMatchesFormulaAndBruteForce) {
  for (unsigned q : {2u, 3u})
    for (const auto& l : kSmall) {
      auto g = make_group(Backend::padic, q, l);
      EXPECT_EQ(g->order(), group_order_formula(l, q)) << l.str();
      if (ipow(q, 2 * (l.l1 + l.l2)) <= 20000) EXPECT_EQ(g->order(), brute_force_aut_count(q, l)) << l.str();
      EXPECT_EQ(make_group(Backend::tpoly, q, l)->order(), g->order());
    }
  EXPECT_EQ(make_group(Backend::padic, 2, {2, 1})->order(), 8u);
  EXPECT_EQ(make_group(Backend::padic, 2, {2, 2})->order(), 96u);
  EXPECT_EQ(make_group(Backend::padic, 2, {3, 2})->order(), 128u);
  EXPECT_EQ(make_group(Backend::tpoly, 4, {2, 1})->order(), group_order_formula({2, 1}, 4));
}

TEST(Glam, MultiplicationIsCompositionOfModuleMaps) {
  for (unsigned p : {2u, 3u})
    for (const auto& l : std::vector<Lambda>{{2, 1}, {3, 1}, {2, 2}, {3, 2}}) {
      auto g = make_group(Backend::padic, p, l);
      PadicModule m{p, l.l1, l.l2};
      const std::uint64_t delta = ipow(p, l.l1 - l.l2);
      auto as_end = [&](const GElem& e) { return PadicModule::End{e.a, e.c, delta * e.b, e.d}; };
      std::mt19937 rng(7);
      for (int t = 0; t < 200; ++t) {
        const Index x = rng() % g->order(), y = rng() % g->order();
        const auto fx = as_end(g->element(x)), fy = as_end(g->element(y)), fxy = as_end(g->element(g->mul(x, y)));
        for (std::uint64_t u = 0; u < m.n1(); ++u)
          for (std::uint64_t v = 0; v < m.n2(); ++v) {
            const auto [a, b] = m.apply(fy, u, v);
            EXPECT_EQ(m.apply(fx, a, b), m.apply(fxy, u, v));
          }
      }
    }
}

TEST(Glam, GroupAxiomsAndDeterminant) {
  for (auto backend : {Backend::padic, Backend::tpoly})
    for (const auto& l : kSmall) {
      auto g = make_group(backend, 3, l);
      std::mt19937 rng(11);
      const Index e = g->identity();
      for (int t = 0; t < 300; ++t) {
        const Index x = rng() % g->order(), y = rng() % g->order(), z = rng() % g->order();
        EXPECT_EQ(g->mul(g->mul(x, y), z), g->mul(x, g->mul(y, z)));
        EXPECT_EQ(g->mul(x, e), x);
        EXPECT_EQ(g->mul(x, g->inv(x)), e);
        const Ring& r2 = *g->ring2();
        EXPECT_EQ(g->det(g->mul(x, y)), r2.mul(g->det(x), g->det(y)));
      }
    }
}

TEST(Glam, Subgroups) {
  for (unsigned q : {2u, 3u}) {
    auto g = make_group(Backend::padic, q, {3, 2});
    EXPECT_EQ(kernel_k(g)->order(), ipow(q, 4));
    EXPECT_TRUE(kernel_k(g)->is_abelian());
    EXPECT_EQ(g->order() / geometric_parabolic(g, Summand::first)->order(), ipow(q, 2));
    EXPECT_EQ(g->order() / embed_parabolic(g, 1)->order(), q);
    EXPECT_EQ(g->order() / quot_parabolic(g, 1)->order(), q);
    EXPECT_EQ(v1_subgroup(g)->order(), q);
    EXPECT_EQ(v2_subgroup(g)->order(), q);
    EXPECT_EQ(v_plus(g)->order(), q);
    EXPECT_EQ(u_plus(g)->order(), q * q);
    EXPECT_EQ(scalar_subgroup(g)->order(), ipow(q, 2) * (q - 1));
    auto r = make_group(Backend::padic, q, {2, 2});
    EXPECT_EQ(r->order() / geometric_parabolic(r, Summand::first)->order(), q * (q + 1));
    EXPECT_EQ(r->order() / embed_parabolic(r, 1)->order(), q + 1);
    auto h = make_group(Backend::padic, q, {3, 1});
    EXPECT_EQ(heisenberg_subgroup(h)->order(), ipow(q, 3));
    EXPECT_EQ(heisenberg_centre(h)->order(), q);
  }
}

TEST(Glam, AbelianCongruenceSubgroups) {
  auto g = make_group(Backend::padic, 2, {4, 3});
  // K^{i,sigma} is abelian when i <= (l2 + sigma) / 2.
  EXPECT_TRUE(k_subgroup(g, 1, 0)->is_abelian());
  EXPECT_TRUE(k_subgroup(g, 2, 1)->is_abelian());
  EXPECT_FALSE(k_subgroup(g, 2, 0)->is_abelian());
  EXPECT_EQ(k_subgroup(g, 2, 1)->order(), ipow(2, 2 + 2 + 1 + 1));
}

TEST(Glam, EpimorphismsAreHomomorphisms) {
  for (const auto& l : std::vector<Lambda>{{3, 2}, {2, 2}, {4, 3}}) {
    auto g = make_group(Backend::padic, 2, l);
    std::vector<Epimorphism> epis{geometric_epimorphism(g, Summand::first), geometric_epimorphism(g, Summand::second),
                                  reduction_epimorphism(g)};
    for (unsigned m = 0; m < l.l2; ++m) {
      epis.push_back(embed_epimorphism(g, m));
      epis.push_back(quot_epimorphism(g, m));
    }
    for (const auto& e : epis) {
      const auto& p = *e.source;
      std::mt19937 rng(3);
      for (int t = 0; t < 500; ++t) {
        const Index x = rng() % p.order(), y = rng() % p.order();
        EXPECT_EQ(e.image[p.mul(x, y)], e.target->mul(e.image[x], e.image[y])) << p.tag();
      }
    }
    EXPECT_EQ(reduction_epimorphism(g).kernel.size(), 16u);
  }
}

TEST(Glam, SymmetricPairsMatchBruteForceEmbeddings) {
  for (unsigned q : {2u, 3u})
    for (const auto& l : std::vector<Lambda>{{1, 1}, {2, 1}, {3, 1}, {2, 2}, {3, 2}}) {
      if (q == 3 && l.l1 + l.l2 > 4) continue;
      for (unsigned m1 = 1; m1 <= l.l1; ++m1)
        for (unsigned m2 = 0; m2 <= std::min(m1, l.l2); ++m2) {
          const Lambda mu{m1, m2};
          EXPECT_EQ(grassmannian_transitive(mu, l, Backend::padic, q), symmetric_in(mu, l))
              << mu.str() << " in " << l.str() << " q=" << q;
        }
    }
  EXPECT_TRUE(grassmannian_transitive({2, 1}, {2, 2}, Backend::padic, 2));
  EXPECT_FALSE(grassmannian_transitive({1, 1}, {2, 1}, Backend::padic, 2));
  EXPECT_TRUE(grassmannian_transitive({2, 0}, {2, 1}, Backend::padic, 2));
}

TEST(Glam, InfinitesimalSet) {
  EXPECT_TRUE(infinitesimal_set({3, 1}).empty());
  EXPECT_EQ(infinitesimal_set({4, 3}), (std::vector<Lambda>{{4, 1}, {4, 2}}));
  EXPECT_EQ(floor_of({3, 2}), (Lambda{2, 1}));
  EXPECT_THROW(floor_of({3, 0}), std::invalid_argument);
}

TEST(Glam, RejectsBadInput) {
  EXPECT_THROW(make_group(Backend::padic, 2, {1, 2}), std::invalid_argument);
  EXPECT_THROW(make_group(Backend::padic, 4, {2, 1}), std::invalid_argument);
  auto g = make_group(Backend::padic, 2, {2, 1});
  EXPECT_THROW(g->index_of({0, 0, 0, 1}), std::invalid_argument);
}
