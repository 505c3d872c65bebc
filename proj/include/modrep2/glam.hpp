#pragma once
// The groups G_lambda = Aut(o_l1 + o_l2) for lambda = (l1, l2), their
// congruence subgroups and the epimorphisms between parabolic pieces.
//
// An element is stored as (a, b, c, d) with a in o_l1 and b, c, d in o_l2,
// standing for the matrix (a, delta b; c, d) with delta = pi^(l1-l2).
// Rank one groups G_(l) are the case l2 = 0.

#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "modrep2/finite_group.hpp"
#include "modrep2/tring.hpp"

namespace modrep2 {

struct Lambda {
  unsigned l1 = 1;
  unsigned l2 = 0;
  auto operator<=>(const Lambda&) const = default;
  bool rectangular() const { return l1 == l2; }
  unsigned rank() const { return l2 == 0 ? 1 : 2; }
  std::string str() const { return "(" + std::to_string(l1) + "," + std::to_string(l2) + ")"; }
};

inline void validate(const Lambda& l) {
  if (l.l1 < 1 || l.l2 > l.l1) throw std::invalid_argument("invalid lambda " + l.str());
}

/// Largest proper lambda below: (l1-1, l2-1).
inline Lambda floor_of(const Lambda& l) {
  if (l.l2 < 1) throw std::invalid_argument("floor needs l2 >= 1");
  return {l.l1 - 1, l.l2 - 1};
}

/// Infinitesimal neighbours: (l1, m) with 0 < m < l2.
inline std::vector<Lambda> infinitesimal_set(const Lambda& l) {
  std::vector<Lambda> out;
  for (unsigned m = 1; m < l.l2; ++m) out.push_back({l.l1, m});
  return out;
}

/// Every isomorphism between submodules of type mu extends to M_lambda.
inline bool symmetric_in(const Lambda& mu, const Lambda& lambda) {
  if (mu.l1 > lambda.l1 || mu.l2 > lambda.l2) throw std::invalid_argument("mu is not below lambda");
  if (lambda.rectangular()) return true;
  return mu.l1 == lambda.l1;
}

inline std::uint64_t group_order_formula(const Lambda& l, unsigned q) {
  if (l.l2 == 0) return ipow(q, l.l1 - 1) * (q - 1);
  if (l.rectangular()) return ipow(q, 4 * l.l1 - 3) * (q - 1) * (q * q - 1);
  return ipow(q, l.l1 + 3 * l.l2 - 2) * (q - 1) * (q - 1);
}

struct GElem {
  Code a = 0, b = 0, c = 0, d = 0;
  auto operator<=>(const GElem&) const = default;
};

class MatrixGroup : public FiniteGroup {
 public:
  MatrixGroup(Backend backend, unsigned q, Lambda lambda) : lambda_(lambda) {
    validate(lambda);
    r1_ = make_ring({backend, q, lambda.l1});
    r2_ = make_ring({backend, q, lambda.l2});
    k_ = lambda.l1 - lambda.l2;
    s1_ = r1_->size();
    s2_ = r2_->size();
    const std::uint64_t keys = static_cast<std::uint64_t>(s1_) * s2_ * s2_ * s2_;
    if (keys > (1ull << 27)) throw std::invalid_argument("group too large to enumerate");
    lookup_.assign(keys, kNoIndex);
    for (Code a = 0; a < s1_; ++a)
      for (Code b = 0; b < s2_; ++b)
        for (Code c = 0; c < s2_; ++c)
          for (Code d = 0; d < s2_; ++d) {
            const GElem g{a, b, c, d};
            const bool invertible = lambda.l2 == 0 ? r1_->is_unit(a) : r2_->is_unit(det(g));
            if (!invertible) continue;
            lookup_[key(g)] = static_cast<Index>(elems_.size());
            elems_.push_back(g);
          }
    identity_ = index_of({r1_->one(), 0, 0, r2_->one()});
  }

  std::size_t order() const override { return elems_.size(); }
  Index identity() const override { return identity_; }
  Index mul(Index x, Index y) const override { return lookup_[key(product(elems_[x], elems_[y]))]; }
  std::string name() const override {
    return "G" + lambda_.str() + "[" + to_string(r1_->backend()) + ",q=" + std::to_string(r1_->q()) + "]";
  }

  const Lambda& lambda() const { return lambda_; }
  Backend backend() const { return r1_->backend(); }
  unsigned q() const { return r1_->q(); }
  const RingPtr& ring1() const { return r1_; }
  const RingPtr& ring2() const { return r2_; }
  /// Exponent of delta = pi^(l1 - l2).
  unsigned delta_exponent() const { return k_; }

  const GElem& element(Index i) const { return elems_[i]; }
  Index index_of(const GElem& g) const {
    if (g.a >= s1_ || g.b >= s2_ || g.c >= s2_ || g.d >= s2_) throw std::out_of_range("entry out of range");
    const Index i = lookup_[key(g)];
    if (i == kNoIndex) throw std::invalid_argument("not an element of " + name());
    return i;
  }
  bool contains(const GElem& g) const {
    return g.a < s1_ && g.b < s2_ && g.c < s2_ && g.d < s2_ && lookup_[key(g)] != kNoIndex;
  }

  GElem product(const GElem& x, const GElem& y) const {
    const Ring& r1 = *r1_;
    const Ring& r2 = *r2_;
    const Code bc = r2.mul(x.b, y.c);
    GElem z;
    z.a = r1.add(r1.mul(x.a, y.a), r1.mul_pi(bc, k_));
    z.b = r2.add(r2.mul(r1.reduce(x.a, lambda_.l2), y.b), r2.mul(x.b, y.d));
    z.c = r2.add(r2.mul(x.c, r1.reduce(y.a, lambda_.l2)), r2.mul(x.d, y.c));
    z.d = r2.add(r2.mul(x.d, y.d), r2.mul_pi(r2.mul(x.c, y.b), k_));
    return z;
  }

  /// ad - delta bc in o_l2.
  Code det(const GElem& g) const {
    const Ring& r2 = *r2_;
    return r2.sub(r2.mul(r1_->reduce(g.a, lambda_.l2), g.d), r2.mul_pi(r2.mul(g.b, g.c), k_));
  }
  Code det(Index i) const { return det(elems_[i]); }

  GElem inverse(const GElem& g) const { return elems_[inv(index_of(g))]; }

  /// Cached subgroup built from a predicate on elements.
  SubgroupPtr subgroup(const std::string& tag, const std::function<bool(const GElem&)>& pred) const {
    {
      std::lock_guard lock(sub_mu_);
      auto it = subgroups_.find(tag);
      if (it != subgroups_.end()) return it->second;
    }
    auto self = std::static_pointer_cast<const FiniteGroup>(shared_from_this());
    auto sub = make_subgroup(self, [&](Index i) { return pred(elems_[i]); }, tag);
    std::lock_guard lock(sub_mu_);
    return subgroups_.emplace(tag, sub).first->second;
  }

 private:
  std::size_t key(const GElem& g) const {
    return g.a + static_cast<std::size_t>(s1_) * (g.b + static_cast<std::size_t>(s2_) * (g.c + static_cast<std::size_t>(s2_) * g.d));
  }

  Lambda lambda_;
  RingPtr r1_, r2_;
  unsigned k_ = 0;
  Code s1_ = 1, s2_ = 1;
  std::vector<GElem> elems_;
  std::vector<Index> lookup_;
  Index identity_ = 0;
  mutable std::mutex sub_mu_;
  mutable std::map<std::string, SubgroupPtr> subgroups_;
};

using MatrixGroupPtr = std::shared_ptr<const MatrixGroup>;

/// Shared group for (backend, q, lambda).
inline MatrixGroupPtr make_group(Backend backend, unsigned q, const Lambda& lambda) {
  static std::mutex mu;
  static std::map<std::tuple<Backend, unsigned, Lambda>, MatrixGroupPtr> cache;
  const auto k = std::make_tuple(backend, q, lambda);
  {
    std::lock_guard lock(mu);
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;
  }
  auto g = std::make_shared<const MatrixGroup>(backend, q, lambda);
  std::lock_guard lock(mu);
  return cache.emplace(k, g).first->second;
}

// Congruence and parabolic subgroups.

namespace detail {
inline bool has_val(const Ring& r, Code x, int k) { return k <= 0 || r.valuation(x) >= static_cast<unsigned>(k); }
inline bool one_plus(const Ring& r, Code x, int k) { return has_val(r, r.sub(x, r.one()), k); }
}  // namespace detail

/// K^{i,sigma} = I + [p^(l1-i), p^(l1-i); p^(l2-i+sigma), p^(l2-i+sigma)].
inline SubgroupPtr k_subgroup(const MatrixGroupPtr& g, unsigned i, unsigned sigma) {
  const Lambda l = g->lambda();
  if (l.l2 < 1 || i < 1 || i > l.l2 || sigma > i) throw std::invalid_argument("K^{i,sigma}: bad parameters");
  const int ea = static_cast<int>(l.l1) - static_cast<int>(i);
  const int eb = static_cast<int>(l.l2) - static_cast<int>(i);
  const int ec = eb + static_cast<int>(sigma);
  return g->subgroup("K^{" + std::to_string(i) + "," + std::to_string(sigma) + "}", [&](const GElem& x) {
    const Ring& r1 = *g->ring1();
    const Ring& r2 = *g->ring2();
    return detail::one_plus(r1, x.a, ea) && detail::has_val(r2, x.b, eb) && detail::has_val(r2, x.c, ec) &&
           detail::one_plus(r2, x.d, ec);
  });
}

/// Kernel of the reduction to the floor group.
inline SubgroupPtr kernel_k(const MatrixGroupPtr& g) { return k_subgroup(g, 1, 0); }

/// Stabiliser of the summand o_l1 e1 (c = 0) or of o_l2 e2 (b = 0).
enum class Summand { first, second };

inline SubgroupPtr geometric_parabolic(const MatrixGroupPtr& g, Summand s) {
  if (g->lambda().l2 < 1) throw std::invalid_argument("geometric parabolic needs rank 2");
  if (s == Summand::first) return g->subgroup("P_geom_first", [](const GElem& x) { return x.c == 0; });
  return g->subgroup("P_geom_second", [](const GElem& x) { return x.b == 0; });
}

/// Stabiliser of M_mu = o_l1 e1 + p^(l2-m) e2 for mu = (l1, m): c in p^(l2-m).
inline SubgroupPtr embed_parabolic(const MatrixGroupPtr& g, unsigned m) {
  const Lambda l = g->lambda();
  if (m >= l.l2) throw std::invalid_argument("embed parabolic needs m < l2");
  return g->subgroup("P_embed" + std::to_string(m), [&](const GElem& x) {
    return detail::has_val(*g->ring2(), x.c, static_cast<int>(l.l2 - m));
  });
}

/// Stabiliser of M_(lambda/mu) = p^m e2 for mu = (l1, m): (1,2) entry in p^(l1-m).
inline SubgroupPtr quot_parabolic(const MatrixGroupPtr& g, unsigned m) {
  const Lambda l = g->lambda();
  if (m >= l.l2) throw std::invalid_argument("quot parabolic needs m < l2");
  return g->subgroup("P_quot" + std::to_string(m), [&](const GElem& x) {
    return detail::has_val(*g->ring2(), x.b, static_cast<int>(l.l2 - m));
  });
}

inline SubgroupPtr u_plus(const MatrixGroupPtr& g) {
  return g->subgroup("U+", [&](const GElem& x) { return x.a == g->ring1()->one() && x.c == 0 && x.d == g->ring2()->one(); });
}
inline SubgroupPtr u_minus(const MatrixGroupPtr& g) {
  return g->subgroup("U-", [&](const GElem& x) { return x.a == g->ring1()->one() && x.b == 0 && x.d == g->ring2()->one(); });
}
inline SubgroupPtr v_plus(const MatrixGroupPtr& g) {
  const auto k = kernel_k(g);
  return g->subgroup("V+", [&](const GElem& x) {
    return x.a == g->ring1()->one() && x.c == 0 && x.d == g->ring2()->one() && k->contains(g->index_of(x));
  });
}
inline SubgroupPtr v_minus(const MatrixGroupPtr& g) {
  const auto k = kernel_k(g);
  return g->subgroup("V-", [&](const GElem& x) {
    return x.a == g->ring1()->one() && x.b == 0 && x.d == g->ring2()->one() && k->contains(g->index_of(x));
  });
}
/// diag(1 + p^(l1-1), 1).
inline SubgroupPtr v1_subgroup(const MatrixGroupPtr& g) {
  const int e = static_cast<int>(g->lambda().l1) - 1;
  return g->subgroup("V1", [&](const GElem& x) {
    return detail::one_plus(*g->ring1(), x.a, e) && x.b == 0 && x.c == 0 && x.d == g->ring2()->one();
  });
}
/// diag(1, 1 + p^(l2-1)).
inline SubgroupPtr v2_subgroup(const MatrixGroupPtr& g) {
  const int e = static_cast<int>(g->lambda().l2) - 1;
  return g->subgroup("V2", [&](const GElem& x) {
    return x.a == g->ring1()->one() && x.b == 0 && x.c == 0 && detail::one_plus(*g->ring2(), x.d, e);
  });
}
inline SubgroupPtr diagonal_subgroup(const MatrixGroupPtr& g) {
  return g->subgroup("T", [](const GElem& x) { return x.b == 0 && x.c == 0; });
}
inline SubgroupPtr scalar_subgroup(const MatrixGroupPtr& g) {
  const unsigned l2 = g->lambda().l2;
  return g->subgroup("D", [&](const GElem& x) { return x.b == 0 && x.c == 0 && x.d == g->ring1()->reduce(x.a, l2); });
}
/// In G_(l,1): elements (1 + pi^(l-1) u, pi^(l-1) v; w, 1), order q^3.
inline SubgroupPtr heisenberg_subgroup(const MatrixGroupPtr& g) {
  const Lambda l = g->lambda();
  if (l.l2 != 1 || l.l1 < 2) throw std::invalid_argument("Heisenberg subgroup lives in G_(l,1), l >= 2");
  return g->subgroup("H", [&](const GElem& x) {
    return detail::one_plus(*g->ring1(), x.a, static_cast<int>(l.l1) - 1) && x.d == g->ring2()->one();
  });
}
/// Centre of the Heisenberg group: diag(1 + p^(l-1), 1).
inline SubgroupPtr heisenberg_centre(const MatrixGroupPtr& g) { return v1_subgroup(g); }

/// Half level (l, eps) of the cuspidal construction: eps = l2 mod 2, l = (l2 + eps) / 2.
struct HalfLevel {
  unsigned level = 1;
  unsigned eps = 0;
};
inline HalfLevel half_level(const Lambda& l) {
  const unsigned eps = l.l2 % 2;
  return {(l.l2 + eps) / 2, eps};
}

/// Stabiliser of eta_{u,w}: b = c w mod p^(l-eps), d = a - c u mod p^l.
inline SubgroupPtr cuspidal_stabiliser(const MatrixGroupPtr& g, Code u_hat, Code w_hat) {
  const auto h = half_level(g->lambda());
  const Ring& r2 = *g->ring2();
  const unsigned l2 = g->lambda().l2;
  return g->subgroup("N(" + std::to_string(u_hat) + "," + std::to_string(w_hat) + ")", [&](const GElem& x) {
    const Code e1 = r2.sub(x.b, r2.mul(x.c, w_hat));
    const Code e2 = r2.add(r2.sub(x.d, g->ring1()->reduce(x.a, l2)), r2.mul(x.c, u_hat));
    return r2.valuation(e1) >= h.level - h.eps && r2.valuation(e2) >= h.level;
  });
}

/// A = {(a, c w delta; c, a - c u)} with u, w lifted canonically to o_l2.
inline SubgroupPtr cuspidal_torus(const MatrixGroupPtr& g, Code u_hat, Code w_hat) {
  const Ring& r2 = *g->ring2();
  const unsigned l2 = g->lambda().l2;
  return g->subgroup("A(" + std::to_string(u_hat) + "," + std::to_string(w_hat) + ")", [&](const GElem& x) {
    return x.b == r2.mul(x.c, w_hat) && x.d == r2.sub(g->ring1()->reduce(x.a, l2), r2.mul(x.c, u_hat));
  });
}

// Epimorphisms from parabolic subgroups.

/// A surjection from a subgroup P of G onto a group Q, with its kernel U.
struct Epimorphism {
  SubgroupPtr source;
  GroupPtr target;
  std::vector<Index> image;  // per local index of source
  std::vector<Index> kernel;  // local indices of source

  static Epimorphism build(SubgroupPtr source, GroupPtr target, std::vector<Index> image) {
    Epimorphism e{std::move(source), std::move(target), std::move(image), {}};
    std::vector<char> hit(e.target->order(), 0);
    for (Index x = 0; x < e.source->order(); ++x) {
      hit[e.image[x]] = 1;
      if (e.image[x] == e.target->identity()) e.kernel.push_back(x);
    }
    for (char h : hit)
      if (!h) throw std::logic_error("epimorphism is not surjective");
    if (e.kernel.size() * e.target->order() != e.source->order()) throw std::logic_error("epimorphism fibre size mismatch");
    return e;
  }
};

/// P_{mu -> lambda} onto G_mu, mu = (l1, m): restriction to M_mu.
inline Epimorphism embed_epimorphism(const MatrixGroupPtr& g, unsigned m) {
  const Lambda l = g->lambda();
  auto p = embed_parabolic(g, m);
  auto target = make_group(g->backend(), g->q(), {l.l1, m});
  const Ring& r2 = *g->ring2();
  std::vector<Index> img(p->order());
  for (Index x = 0; x < p->order(); ++x) {
    const GElem& e = g->element(p->to_parent(x));
    img[x] = target->index_of({e.a, r2.reduce(e.b, m), r2.div_pi(e.c, l.l2 - m), r2.reduce(e.d, m)});
  }
  return Epimorphism::build(p, target, std::move(img));
}

/// P_{lambda ->> mu} onto G_mu, mu = (l1, m): action on M_lambda / p^m e2.
inline Epimorphism quot_epimorphism(const MatrixGroupPtr& g, unsigned m) {
  const Lambda l = g->lambda();
  auto p = quot_parabolic(g, m);
  auto target = make_group(g->backend(), g->q(), {l.l1, m});
  const Ring& r2 = *g->ring2();
  std::vector<Index> img(p->order());
  for (Index x = 0; x < p->order(); ++x) {
    const GElem& e = g->element(p->to_parent(x));
    img[x] = target->index_of({e.a, r2.div_pi(e.b, l.l2 - m), r2.reduce(e.c, m), r2.reduce(e.d, m)});
  }
  return Epimorphism::build(p, target, std::move(img));
}

/// The product G_(l1) x G_(l2) in the order (Aut of the submodule, Aut of the
/// quotient) for the chosen summand.
inline std::shared_ptr<const ProductGroup> levi_product(const MatrixGroupPtr& g, Summand s) {
  const Lambda l = g->lambda();
  auto g1 = make_group(g->backend(), g->q(), {l.l1, 0});
  auto g2 = make_group(g->backend(), g->q(), {l.l2, 0});
  static std::mutex mu;
  static std::map<std::tuple<const FiniteGroup*, const FiniteGroup*>, std::shared_ptr<const ProductGroup>> cache;
  const auto key = s == Summand::first ? std::make_tuple(g1.get(), g2.get()) : std::make_tuple(g2.get(), g1.get());
  std::lock_guard lock(mu);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto prod = s == Summand::first ? std::make_shared<const ProductGroup>(g1, g2) : std::make_shared<const ProductGroup>(g2, g1);
  cache.emplace(key, prod);
  return prod;
}

/// iota: P_geom -> Aut(submodule) x Aut(quotient).
inline Epimorphism geometric_epimorphism(const MatrixGroupPtr& g, Summand s) {
  const Lambda l = g->lambda();
  auto p = geometric_parabolic(g, s);
  auto prod = levi_product(g, s);
  auto g1 = make_group(g->backend(), g->q(), {l.l1, 0});
  auto g2 = make_group(g->backend(), g->q(), {l.l2, 0});
  std::vector<Index> img(p->order());
  for (Index x = 0; x < p->order(); ++x) {
    const GElem& e = g->element(p->to_parent(x));
    const Index ia = g1->index_of({e.a, 0, 0, 0});
    const Index id = g2->index_of({e.d, 0, 0, 0});
    img[x] = s == Summand::first ? prod->pair(ia, id) : prod->pair(id, ia);
  }
  return Epimorphism::build(p, prod, std::move(img));
}

/// G_lambda onto G_floor(lambda), reducing every entry; kernel K.
inline Epimorphism reduction_epimorphism(const MatrixGroupPtr& g) {
  const Lambda l = g->lambda();
  if (l.l2 < 2) throw std::invalid_argument("reduction to the floor needs l2 >= 2");
  auto target = make_group(g->backend(), g->q(), floor_of(l));
  auto whole = g->subgroup("G", [](const GElem&) { return true; });
  const Ring& r1 = *g->ring1();
  const Ring& r2 = *g->ring2();
  std::vector<Index> img(g->order());
  for (Index x = 0; x < g->order(); ++x) {
    const GElem& e = g->element(whole->to_parent(x));
    img[x] = target->index_of({r1.reduce(e.a, l.l1 - 1), r2.reduce(e.b, l.l2 - 1), r2.reduce(e.c, l.l2 - 1), r2.reduce(e.d, l.l2 - 1)});
  }
  return Epimorphism::build(whole, target, std::move(img));
}

// Embeddings of modules of type mu into M_lambda.

namespace detail {
struct ModuleM {
  RingPtr r1, r2;
  unsigned k;
  Code s1;
  Code add(Code x, Code y) const {
    return r1->add(x % s1, y % s1) + s1 * r2->add(x / s1, y / s1);
  }
  // r is a code of some o_m; its canonical lift acts.
  Code scale(Code r, Code x) const {
    return r1->mul(r1->reduce(r, r1->level()), x % s1) + s1 * r2->mul(r2->reduce(r, r2->level()), x / s1);
  }
  Code act(const GElem& g, Code x) const {
    const Code u = x % s1, v = x / s1;
    const Code nu = r1->add(r1->mul(g.a, u), r1->mul_pi(r2->mul(g.b, v), k));
    const Code nv = r2->add(r2->mul(g.c, r1->reduce(u, r2->level())), r2->mul(g.d, v));
    return nu + s1 * nv;
  }
  Code pi_pow(unsigned e, Code x) const { return r1->mul_pi(x % s1, e) + s1 * r2->mul_pi(x / s1, e); }
};
}  // namespace detail

/// Number of G_lambda-orbits on injective module maps o_m1 + o_m2 -> M_lambda.
inline std::size_t embedding_orbit_count(const Lambda& mu, const Lambda& lambda, Backend backend, unsigned q) {
  if (mu.l1 > lambda.l1 || mu.l2 > lambda.l2) throw std::invalid_argument("mu is not below lambda");
  auto g = make_group(backend, q, lambda);
  detail::ModuleM m{g->ring1(), g->ring2(), g->delta_exponent(), g->ring1()->size()};
  const Code msize = g->ring1()->size() * g->ring2()->size();
  // Elements killed by pi^e.
  auto torsion = [&](unsigned e) {
    std::vector<Code> out;
    for (Code x = 0; x < msize; ++x)
      if (m.pi_pow(e, x) == 0) out.push_back(x);
    return out;
  };
  auto socle = [&](unsigned e, Code x) { return e == 0 ? 0 : m.pi_pow(e - 1, x); };
  const auto t1 = torsion(mu.l1), t2 = torsion(mu.l2);
  std::map<std::pair<Code, Code>, std::size_t> ids;
  std::vector<std::pair<Code, Code>> emb;
  for (Code x1 : t1) {
    const Code s1 = socle(mu.l1, x1);
    if (mu.l1 > 0 && s1 == 0) continue;
    for (Code x2 : t2) {
      const Code s2 = socle(mu.l2, x2);
      if (mu.l2 > 0) {
        if (s2 == 0) continue;
        bool dependent = false;
        for (Code c = 0; c < q && !dependent; ++c) dependent = m.scale(c, s1) == s2;
        if (dependent) continue;
      }
      ids.emplace(std::make_pair(x1, x2), emb.size());
      emb.emplace_back(x1, x2);
    }
  }
  std::vector<char> seen(emb.size(), 0);
  std::size_t orbits = 0;
  for (std::size_t s = 0; s < emb.size(); ++s) {
    if (seen[s]) continue;
    ++orbits;
    std::vector<std::size_t> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      const auto [x1, x2] = emb[stack.back()];
      stack.pop_back();
      for (Index gen : g->generators()) {
        const GElem& ge = g->element(gen);
        const std::size_t t = ids.at({m.act(ge, x1), m.act(ge, x2)});
        if (!seen[t]) { seen[t] = 1; stack.push_back(t); }
      }
    }
  }
  return orbits;
}

/// Brute-force homogeneity: G_lambda is transitive on embeddings of M_mu.
inline bool grassmannian_transitive(const Lambda& mu, const Lambda& lambda, Backend backend, unsigned q) {
  return embedding_orbit_count(mu, lambda, backend, q) == 1;
}

}  // namespace modrep2
