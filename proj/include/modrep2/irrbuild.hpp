#pragma once
// Explicit families of irreducible characters of G_lambda, recursive assembly
// of the complete set and the closed-form representation zeta polynomials.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "modrep2/charm.hpp"
#include "modrep2/dixon.hpp"
#include "modrep2/parallel.hpp"

namespace modrep2 {

/// Dimension -> number of irreducibles; equal exponents are always merged.
using ZetaPolynomial = DegreeMultiset;

inline std::string zeta_str(const ZetaPolynomial& z) {
  std::string s;
  for (const auto& [d, c] : z) {
    if (!s.empty()) s += " + ";
    s += std::to_string(c) + "D";
    if (d != 1) s += "^" + std::to_string(d);
  }
  return s.empty() ? "0" : s;
}

inline ZetaPolynomial zeta_sum(ZetaPolynomial a, const ZetaPolynomial& b, std::uint64_t scale = 1) {
  for (const auto& [d, c] : b)
    if (c) a[d] += scale * c;
  return a;
}

struct BuildError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class FamilyLabel {
  rank1,
  dixon_base,
  one_dim,
  orbitB_plus,
  orbitB_minus,
  orbitC,
  heis_q,
  cuspidal_nonrect,
  cuspidal_rect_count,
  geo_irred,
  geo_split,
  inf_embed,
  inf_quot,
  pullback_twist,
};

inline std::string to_string(FamilyLabel l) {
  switch (l) {
    case FamilyLabel::rank1: return "rank1";
    case FamilyLabel::dixon_base: return "dixon_base";
    case FamilyLabel::one_dim: return "one_dim";
    case FamilyLabel::orbitB_plus: return "orbitB_plus";
    case FamilyLabel::orbitB_minus: return "orbitB_minus";
    case FamilyLabel::orbitC: return "orbitC";
    case FamilyLabel::heis_q: return "heis_q";
    case FamilyLabel::cuspidal_nonrect: return "cuspidal_nonrect";
    case FamilyLabel::cuspidal_rect_count: return "cuspidal_rect_count";
    case FamilyLabel::geo_irred: return "geo_irred";
    case FamilyLabel::geo_split: return "geo_split";
    case FamilyLabel::inf_embed: return "inf_embed";
    case FamilyLabel::inf_quot: return "inf_quot";
    case FamilyLabel::pullback_twist: return "pullback_twist";
  }
  return "?";
}

/// Irreducibles sharing a construction. Count-only families carry a degree
/// multiset instead of characters.
struct IrrFamily {
  FamilyLabel label = FamilyLabel::rank1;
  std::vector<ClassFunction> members;
  std::vector<std::string> provenance;
  ZetaPolynomial counted;

  bool count_only() const { return members.empty() && !counted.empty(); }
  void add(ClassFunction chi, std::string prov) {
    members.push_back(std::move(chi));
    provenance.push_back(std::move(prov));
  }
  ZetaPolynomial zeta() const {
    if (members.empty()) return counted;
    ZetaPolynomial z;
    for (const auto& m : members) ++z[static_cast<std::uint64_t>(m.int_degree())];
    return z;
  }
  std::uint64_t count() const { return multiset_total(zeta()); }
};

/// Drops later members equal to earlier ones. Members must be irreducible, so
/// any inner product other than 0 or 1 is an error. Returns the number dropped.
inline std::size_t dedupe(IrrFamily& f) {
  std::vector<ClassFunction> keep;
  std::vector<std::string> prov;
  for (std::size_t i = 0; i < f.members.size(); ++i) {
    bool dup = false;
    for (const auto& k : keep) {
      if (std::abs(k.degree() - f.members[i].degree()) > kTol) continue;
      const long ip = inner_int(k, f.members[i]);
      if (ip == 1) { dup = true; break; }
      if (ip != 0) throw BuildError("members of " + to_string(f.label) + " are not irreducible");
    }
    if (!dup) {
      keep.push_back(f.members[i]);
      prov.push_back(f.provenance[i]);
    }
  }
  const std::size_t dropped = f.members.size() - keep.size();
  f.members = std::move(keep);
  f.provenance = std::move(prov);
  return dropped;
}

// Closed forms.

inline ZetaPolynomial green_gl2(unsigned q) {
  ZetaPolynomial z;
  const std::uint64_t Q = q;
  z[1] += Q - 1;
  z[Q] += Q - 1;
  if (Q > 2) z[Q + 1] += (Q - 1) * (Q - 2) / 2;
  z[Q - 1] += Q * (Q - 1) / 2;
  return z;
}

/// Cached degrees of an enumerated group.
inline const DegreeMultiset& dixon_degrees(const MatrixGroupPtr& g) {
  static std::mutex mu;
  static std::map<const MatrixGroup*, DegreeMultiset> cache;
  {
    std::lock_guard lock(mu);
    auto it = cache.find(g.get());
    if (it != cache.end()) return it->second;
  }
  auto d = irr_degrees(*g);
  std::lock_guard lock(mu);
  return cache.emplace(g.get(), std::move(d)).first->second;
}

inline bool is_prime_number(unsigned q) {
  if (q < 2) return false;
  for (unsigned d = 2; d * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

/// R of GL_2(F_q) from the Dixon oracle, checked against the classical multiset.
inline ZetaPolynomial gl2_residue_zeta(unsigned q) {
  auto g = make_group(is_prime_number(q) ? Backend::padic : Backend::tpoly, q, {1, 1});
  const auto& d = dixon_degrees(g);
  if (d != green_gl2(q)) throw BuildError("Dixon degrees of GL2(F_" + std::to_string(q) + ") disagree with the classical multiset");
  return d;
}

/// Evaluates the recursive closed forms literally.
inline ZetaPolynomial zeta_closed_form(const Lambda& l, unsigned q) {
  validate(l);
  const std::uint64_t Q = q;
  ZetaPolynomial z;
  if (l.l2 == 0) {
    z[1] = ipow(Q, l.l1 - 1) * (Q - 1);
    return z;
  }
  if (l.l1 == 1) return gl2_residue_zeta(q);
  if (l.l2 == 1) {
    const std::uint64_t s = ipow(Q, l.l1 - 2);
    z[1] += s * (Q - 1) * (Q - 1);
    z[Q - 1] += s * (Q * Q - 1);
    z[Q] += s * (Q - 1) * (Q - 1) * (Q - 1);
    return z;
  }
  z = zeta_sum({}, zeta_closed_form(floor_of(l), q), Q);
  if (!l.rectangular()) {
    const std::uint64_t s = ipow(Q, l.l1 + l.l2 - 3);
    z[ipow(Q, l.l2 - 1) * (Q - 1)] += s * (Q * Q - 1);
    z[ipow(Q, l.l2)] += s * (Q - 1) * (Q - 1) * (Q - 1);
    return z;
  }
  const unsigned e = l.l1;
  z[ipow(Q, e - 1) * (Q - 1)] += (Q - 1) * (Q * Q - 1) * ipow(Q, 2 * e - 3) / 2;
  z[ipow(Q, e - 2) * (Q * Q - 1)] += ipow(Q, 2 * e - 2) * (Q - 1);
  z[ipow(Q, e - 1) * (Q + 1)] += ipow(Q, 2 * e - 3) * (Q - 1) * (Q - 1) * (Q - 1) / 2;
  return z;
}

/// (count, degree) of the rectangular cuspidals of G_(l,l).
inline std::pair<std::uint64_t, std::uint64_t> cuspidal_rect_count(unsigned l, unsigned q) {
  if (l < 2) throw std::invalid_argument("rectangular cuspidal count needs l >= 2");
  const std::uint64_t Q = q;
  return {(Q * Q - 1) * (Q - 1) * ipow(Q, 2 * l - 3) / 2, ipow(Q, l - 1) * (Q - 1)};
}

struct FamilyExpectation {
  FamilyLabel label;
  std::uint64_t degree;  // 0 when degrees vary within the family
  std::uint64_t count;
};

/// Degree and size of every family of an assembly, from the closed forms.
inline std::vector<FamilyExpectation> expected_families(const Lambda& l, unsigned q) {
  validate(l);
  const std::uint64_t Q = q;
  if (l.l2 == 0) return {{FamilyLabel::rank1, 1, ipow(Q, l.l1 - 1) * (Q - 1)}};
  if (l.l1 == 1) return {{FamilyLabel::dixon_base, 0, multiset_total(green_gl2(q))}};
  if (l.l2 == 1) {
    const std::uint64_t s = ipow(Q, l.l1 - 2);
    return {{FamilyLabel::one_dim, 1, s * (Q - 1) * (Q - 1)},
            {FamilyLabel::orbitB_plus, Q - 1, s * (Q - 1)},
            {FamilyLabel::orbitB_minus, Q - 1, s * (Q - 1)},
            {FamilyLabel::orbitC, Q - 1, s * (Q - 1) * (Q - 1)},
            {FamilyLabel::heis_q, Q, s * (Q - 1) * (Q - 1) * (Q - 1)}};
  }
  const std::uint64_t floor_classes = multiset_total(zeta_closed_form(floor_of(l), q));
  if (!l.rectangular()) {
    const std::uint64_t dim = ipow(Q, l.l2 - 1) * (Q - 1);
    std::uint64_t inf = 0;
    for (unsigned m = 1; m < l.l2; ++m) inf += ipow(Q, l.l1 + m - 3) * (Q - 1) * (Q - 1);
    return {{FamilyLabel::pullback_twist, 0, Q * floor_classes},
            {FamilyLabel::inf_embed, dim, inf},
            {FamilyLabel::inf_quot, dim, inf},
            {FamilyLabel::geo_irred, ipow(Q, l.l2), ipow(Q, l.l1 + l.l2 - 3) * (Q - 1) * (Q - 1) * (Q - 1)},
            {FamilyLabel::geo_split, dim, 2 * ipow(Q, l.l1 - 2) * (Q - 1)},
            {FamilyLabel::cuspidal_nonrect, dim, ipow(Q, l.l1 + l.l2 - 3) * (Q - 1) * (Q - 1)}};
  }
  const unsigned e = l.l1;
  const std::uint64_t nil = ipow(Q, e - 2) * (Q * Q - 1);
  std::uint64_t inf = 0;
  for (unsigned m = 1; m < e; ++m) inf += ipow(Q, e + m - 2) * (Q - 1) * (Q - 1);
  const auto [cc, cd] = cuspidal_rect_count(e, q);
  return {{FamilyLabel::pullback_twist, 0, Q * floor_classes},
          {FamilyLabel::inf_embed, nil, inf},
          {FamilyLabel::geo_irred, ipow(Q, e - 1) * (Q + 1), ipow(Q, 2 * e - 3) * (Q - 1) * (Q - 1) * (Q - 1) / 2},
          {FamilyLabel::geo_split, nil, ipow(Q, e - 1) * (Q - 1)},
          {FamilyLabel::cuspidal_rect_count, cd, cc}};
}

// Builders.

/// All linear characters of G_(l).
inline IrrFamily build_rank1(const MatrixGroupPtr& g) {
  if (g->lambda().l2 != 0) throw std::invalid_argument("build_rank1 needs a rank one type");
  IrrFamily f{FamilyLabel::rank1, {}, {}, {}};
  const auto& lin = linear_class_functions(g);
  for (std::size_t i = 0; i < lin.size(); ++i) f.add(lin[i], "linear #" + std::to_string(i));
  return f;
}

namespace detail {

/// Induces each per-element value vector on h to the parent.
inline std::vector<ClassFunction> induce_all(const SubgroupPtr& h, const std::vector<std::vector<Complex>>& values) {
  return parallel_map<ClassFunction>(values.size(), [&](std::size_t i) { return induce_values(h, values[i]); });
}

/// Linear characters of h (per local element) agreeing with target on the
/// local elements listed in `on`.
inline std::vector<std::vector<Complex>> extensions(const SubgroupPtr& h, const std::vector<Index>& on,
                                                    const std::vector<Complex>& target) {
  std::vector<std::vector<Complex>> out;
  for (auto& lin : linear_characters(*h)) {
    bool ok = true;
    for (std::size_t t = 0; t < on.size() && ok; ++t) ok = std::abs(lin[on[t]] - target[t]) < kTol;
    if (ok) out.push_back(std::move(lin));
  }
  return out;
}

}  // namespace detail

/// Complete set of irreducibles of G_(l,1), l >= 2, as five families: one_dim,
/// orbitB_plus, orbitB_minus, orbitC (the cuspidals) and heis_q.
inline std::vector<IrrFamily> build_l1(const MatrixGroupPtr& g) {
  const Lambda l = g->lambda();
  if (l.l2 != 1 || l.l1 < 2) throw std::invalid_argument("build_l1 needs lambda = (l,1), l >= 2");
  const unsigned q = g->q();
  const Ring& r1 = *g->ring1();
  auto f1 = make_ring({g->backend(), q, 1});
  std::vector<IrrFamily> out;

  // Pullbacks along G -> G_(l-1) x G_(1), (a, d) -> (a mod p^(l-1), d).
  {
    auto g1 = make_group(g->backend(), q, {l.l1 - 1, 0});
    auto g2 = make_group(g->backend(), q, {1, 0});
    auto prod = std::make_shared<const ProductGroup>(g1, g2);
    auto whole = g->subgroup("G", [](const GElem&) { return true; });
    std::vector<Index> img(whole->order());
    for (Index x = 0; x < whole->order(); ++x) {
      const GElem& e = g->element(whole->to_parent(x));
      img[x] = prod->pair(g1->index_of({r1.reduce(e.a, l.l1 - 1), 0, 0, 0}), g2->index_of({e.d, 0, 0, 0}));
    }
    const auto p = Epimorphism::build(whole, prod, std::move(img));
    IrrFamily f{FamilyLabel::one_dim, {}, {}, {}};
    const auto lin = linear_characters(*prod);
    for (std::size_t i = 0; i < lin.size(); ++i) f.add(inflate_to(g, p, ClassFunction::from_elements(prod, lin[i])), "A #" + std::to_string(i));
    out.push_back(std::move(f));
  }

  // Characters psi(v b + w c) of H, extended to DH = {a = d mod p} and induced.
  {
    auto dh = g->subgroup("DH", [&](const GElem& x) { return r1.reduce(x.a, 1) == x.d; });
    std::vector<Index> h_local;
    for (Index x = 0; x < dh->order(); ++x) {
      const GElem& e = g->element(dh->to_parent(x));
      if (detail::one_plus(r1, e.a, static_cast<int>(l.l1) - 1) && e.d == g->ring2()->one()) h_local.push_back(x);
    }
    auto orbit_family = [&](FamilyLabel label, const std::vector<std::pair<Code, Code>>& reps) {
      IrrFamily f{label, {}, {}, {}};
      for (const auto& [vh, wh] : reps) {
        std::vector<Complex> target;
        for (Index x : h_local) {
          const GElem& e = g->element(dh->to_parent(x));
          target.push_back(f1->psi(f1->add(f1->mul(vh, e.b), f1->mul(wh, e.c))));
        }
        const auto ext = detail::extensions(dh, h_local, target);
        if (ext.size() != ipow(q, l.l1 - 2) * (q - 1)) throw BuildError("unexpected number of extensions to DH");
        const auto chars = detail::induce_all(dh, ext);
        for (std::size_t j = 0; j < chars.size(); ++j)
          f.add(chars[j], "(v,w)=(" + std::to_string(vh) + "," + std::to_string(wh) + ") ext #" + std::to_string(j));
      }
      return f;
    };
    out.push_back(orbit_family(FamilyLabel::orbitB_plus, {{0, 1}}));
    out.push_back(orbit_family(FamilyLabel::orbitB_minus, {{1, 0}}));
    std::vector<std::pair<Code, Code>> c_reps;
    for (Code w : f1->units()) c_reps.emplace_back(1, w);
    out.push_back(orbit_family(FamilyLabel::orbitC, c_reps));
  }

  // Linear characters of the upper triangular subgroup nontrivial on the
  // centre Z of H, induced; each restricts to a Stone-von Neumann character.
  {
    auto b = g->subgroup("B_upper", [](const GElem& x) { return x.c == 0; });
    std::vector<Index> z_local;
    for (Index x = 0; x < b->order(); ++x) {
      const GElem& e = g->element(b->to_parent(x));
      if (detail::one_plus(r1, e.a, static_cast<int>(l.l1) - 1) && e.b == 0 && e.d == g->ring2()->one()) z_local.push_back(x);
    }
    std::vector<std::vector<Complex>> cands;
    for (auto& lin : linear_characters(*b)) {
      bool nontrivial = false;
      for (Index z : z_local) nontrivial |= std::abs(lin[z] - 1.0) > kTol;
      if (nontrivial) cands.push_back(std::move(lin));
    }
    IrrFamily f{FamilyLabel::heis_q, {}, {}, {}};
    const auto chars = detail::induce_all(b, cands);
    for (std::size_t j = 0; j < chars.size(); ++j) {
      if (!is_irreducible(chars[j])) throw BuildError("induced Heisenberg extension is reducible");
      f.add(chars[j], "B_upper linear #" + std::to_string(j));
    }
    dedupe(f);
    if (f.members.size() != ipow(q, l.l1 - 2) * (q - 1) * (q - 1) * (q - 1)) throw BuildError("wrong number of q-dimensional characters");
    out.push_back(std::move(f));
  }
  for (auto& f : out)
    for (const auto& m : f.members)
      if (!is_irreducible(m)) throw BuildError("reducible member in " + to_string(f.label));
  return out;
}

/// Cuspidals of G_lambda, l1 > l2 > 1: extensions of eta_{u,w} from the half
/// level subgroup to its stabiliser, induced.
inline IrrFamily build_cuspidal_nonrect(const MatrixGroupPtr& g) {
  const Lambda l = g->lambda();
  if (!(l.l1 > l.l2 && l.l2 > 1)) throw std::invalid_argument("non-rectangular cuspidals need l1 > l2 > 1");
  const unsigned q = g->q();
  const HalfLevel h = half_level(l);
  auto rl = make_ring({g->backend(), q, h.level});
  auto rle = make_ring({g->backend(), q, h.level - h.eps});
  auto k = k_subgroup(g, h.level, h.eps);
  std::vector<std::pair<Code, Code>> params;
  for (Code u = 0; u < rl->size(); ++u)
    if (rl->valuation(u) >= 1)
      for (Code w : rle->units()) params.emplace_back(u, w);
  const std::uint64_t degree = ipow(q, l.l2 - 1) * (q - 1);

  auto per_param = parallel_map<std::vector<std::pair<ClassFunction, std::string>>>(params.size(), [&](std::size_t i) {
    const auto [u, w] = params[i];
    const DualChar eta{h.level, h.eps, u, 1, w, 0};
    auto n = cuspidal_stabiliser(g, u, w);
    auto a = cuspidal_torus(g, u, w);
    std::size_t a_cap_k = 0;
    for (Index x : a->members()) a_cap_k += k->contains(x);
    std::vector<Index> on;
    std::vector<Complex> target;
    for (Index x : k->members()) {
      const Index loc = n->from_parent(x);
      if (loc == kNoIndex) throw BuildError("stabiliser does not contain the half level subgroup");
      on.push_back(loc);
      target.push_back(pairing(*g, eta, g->element(x)));
    }
    const auto ext = detail::extensions(n, on, target);
    if (ext.size() != a->order() / a_cap_k) throw BuildError("extension count differs from [A : K cap A]");
    std::vector<std::pair<ClassFunction, std::string>> res;
    for (std::size_t j = 0; j < ext.size(); ++j) {
      auto chi = induce_values(n, ext[j]);
      if (!is_irreducible(chi) || chi.int_degree() != static_cast<long>(degree)) throw BuildError("induced cuspidal candidate is not irreducible of the right degree");
      res.emplace_back(std::move(chi), "eta(u=" + std::to_string(u) + ",w=" + std::to_string(w) + ") ext #" + std::to_string(j));
    }
    return res;
  });
  IrrFamily f{FamilyLabel::cuspidal_nonrect, {}, {}, {}};
  for (auto& v : per_param)
    for (auto& [chi, prov] : v) f.add(std::move(chi), std::move(prov));
  if (dedupe(f) != 0) throw BuildError("distinct extensions induced to equal cuspidals");
  return f;
}

struct Assembly;
std::shared_ptr<const Assembly> assemble(Backend backend, unsigned q, const Lambda& lambda);

/// Complete description of the irreducibles of one G_lambda.
struct Assembly {
  Backend backend = Backend::padic;
  unsigned q = 2;
  Lambda lambda;
  MatrixGroupPtr group;
  std::vector<IrrFamily> families;
  std::optional<DegreeMultiset> dixon;  // set when the oracle was consulted

  ZetaPolynomial zeta() const {
    ZetaPolynomial z;
    for (const auto& f : families) z = zeta_sum(z, f.zeta());
    return z;
  }
  bool explicit_characters() const {
    for (const auto& f : families)
      if (f.count_only()) return false;
    return true;
  }
  std::vector<ClassFunction> characters() const {
    std::vector<ClassFunction> out;
    for (const auto& f : families) out.insert(out.end(), f.members.begin(), f.members.end());
    return out;
  }
  bool has_family(FamilyLabel l) const {
    for (const auto& f : families)
      if (f.label == l) return true;
    return false;
  }
  const IrrFamily& family(FamilyLabel l) const {
    for (const auto& f : families)
      if (f.label == l) return f;
    throw std::out_of_range("no family " + to_string(l) + " in " + lambda.str());
  }
};

/// The cuspidal family of G_mu for rank two mu with l1 > l2 >= 1.
inline const IrrFamily& cuspidal_family(Backend backend, unsigned q, const Lambda& mu) {
  const auto a = assemble(backend, q, mu);
  return a->family(mu.l2 == 1 ? FamilyLabel::orbitC : FamilyLabel::cuspidal_nonrect);
}

namespace detail {

inline void add_twists(const MatrixGroupPtr& g, IrrFamily& f) {
  const std::size_t n = f.members.size();
  for (Code z = 1; z < g->q(); ++z)
    for (std::size_t i = 0; i < n; ++i) f.add(twist(g, f.members[i], z), f.provenance[i] + " twist z=" + std::to_string(z));
}

inline IrrFamily induce_family(const MatrixGroupPtr& g, FamilyLabel label, ParabolicKind kind, unsigned m, const IrrFamily& src,
                               const std::string& tag) {
  const auto& e = parabolic_epimorphism(g, kind, m, Summand::first);
  auto chars = parallel_map<ClassFunction>(src.members.size(), [&](std::size_t i) { return parabolic_induce(e, src.members[i]); });
  IrrFamily f{label, {}, {}, {}};
  for (std::size_t i = 0; i < chars.size(); ++i) f.add(std::move(chars[i]), tag + "(" + src.provenance[i] + ")");
  return f;
}

}  // namespace detail

/// True when theta = (theta1, theta2) induces irreducibly: theta1 nontrivial on
/// 1 + p^(l1-1) (non-rectangular), or theta1 and theta2 differing there.
inline bool in_c_hat(const MatrixGroupPtr& g, const ClassFunction& t1, const ClassFunction& t2) {
  const Lambda l = g->lambda();
  auto g1 = std::static_pointer_cast<const MatrixGroup>(t1.group());
  const Ring& r = *g1->ring1();
  for (Index x = 0; x < g1->order(); ++x) {
    const Code a = g1->element(x).a;
    if (!detail::one_plus(r, a, static_cast<int>(l.l1) - 1)) continue;
    const Complex other = l.rectangular() ? t2.at(x) : Complex{1.0};
    if (std::abs(t1.at(x) - other) > kTol) return true;
  }
  return false;
}

/// xi_theta for theta = theta1 x theta2, induced through the summand s.
inline ClassFunction geometric_induce(const MatrixGroupPtr& g, Summand s, const ClassFunction& t1, const ClassFunction& t2) {
  const auto& e = parabolic_epimorphism(g, ParabolicKind::geometric, 0, s);
  auto prod = std::static_pointer_cast<const ProductGroup>(e.target);
  return parabolic_induce(e, s == Summand::first ? outer_product(prod, t1, t2) : outer_product(prod, t2, t1));
}

/// geo_irred and geo_split for l1 >= l2 >= 2.
inline std::pair<IrrFamily, IrrFamily> build_geometric(const MatrixGroupPtr& g) {
  const Lambda l = g->lambda();
  if (l.l2 < 2) throw std::invalid_argument("build_geometric needs l2 >= 2");
  const unsigned q = g->q();
  const auto& c1 = linear_class_functions(make_group(g->backend(), q, {l.l1, 0}));
  const auto& c2 = linear_class_functions(make_group(g->backend(), q, {l.l2, 0}));
  std::vector<std::pair<std::size_t, std::size_t>> thetas;
  for (std::size_t i = 0; i < c1.size(); ++i)
    for (std::size_t j = 0; j < c2.size(); ++j)
      if ((!l.rectangular() || i < j) && in_c_hat(g, c1[i], c2[j])) thetas.emplace_back(i, j);
  auto chars = parallel_map<ClassFunction>(thetas.size(), [&](std::size_t t) {
    const auto [i, j] = thetas[t];
    auto xi = geometric_induce(g, Summand::first, c1[i], c2[j]);
    if (l.rectangular() && !xi.approx_equal(geometric_induce(g, Summand::first, c1[j], c2[i])))
      throw BuildError("xi_theta and xi_theta^op differ");
    return xi;
  });
  IrrFamily irred{FamilyLabel::geo_irred, {}, {}, {}};
  for (std::size_t t = 0; t < thetas.size(); ++t)
    irred.add(std::move(chars[t]), "theta=(" + std::to_string(thetas[t].first) + "," + std::to_string(thetas[t].second) + ")");
  if (dedupe(irred) != 0) throw BuildError("distinct characters in C^ give equal geometric inductions");

  const auto base = assemble(g->backend(), q, {l.l1, 1});
  IrrFamily split = detail::induce_family(g, FamilyLabel::geo_split, ParabolicKind::embed, 1, base->family(FamilyLabel::orbitB_plus), "i_embed");
  IrrFamily quot = detail::induce_family(g, FamilyLabel::geo_split, ParabolicKind::quot, 1, base->family(FamilyLabel::orbitB_minus), "i_quot");
  for (std::size_t i = 0; i < quot.members.size(); ++i) split.add(quot.members[i], quot.provenance[i]);
  if (l.rectangular()) detail::add_twists(g, split);
  dedupe(split);
  return {std::move(irred), std::move(split)};
}

/// Infinitesimal inductions of the cuspidals of G_mu, mu = (l1, m), 0 < m < l2.
/// Rectangular types give one family closed under the q twists.
inline std::vector<IrrFamily> build_infinitesimal(const MatrixGroupPtr& g) {
  const Lambda l = g->lambda();
  if (l.l2 < 2) throw std::invalid_argument("build_infinitesimal needs l2 >= 2");
  IrrFamily embed{FamilyLabel::inf_embed, {}, {}, {}}, quot{FamilyLabel::inf_quot, {}, {}, {}};
  for (const auto& mu : infinitesimal_set(l)) {
    const auto& cusp = cuspidal_family(g->backend(), g->q(), mu);
    const std::string tag = "mu=" + mu.str() + " ";
    auto e = detail::induce_family(g, FamilyLabel::inf_embed, ParabolicKind::embed, mu.l2, cusp, tag + "i_embed");
    auto qq = detail::induce_family(g, FamilyLabel::inf_quot, ParabolicKind::quot, mu.l2, cusp, tag + "i_quot");
    for (std::size_t i = 0; i < e.members.size(); ++i) embed.add(e.members[i], e.provenance[i]);
    for (std::size_t i = 0; i < qq.members.size(); ++i) quot.add(qq.members[i], qq.provenance[i]);
  }
  if (!l.rectangular()) {
    if (dedupe(embed) != 0 || dedupe(quot) != 0) throw BuildError("infinitesimal induction is not injective");
    return {std::move(embed), std::move(quot)};
  }
  for (std::size_t i = 0; i < quot.members.size(); ++i) embed.add(quot.members[i], quot.provenance[i]);
  detail::add_twists(g, embed);
  dedupe(embed);
  return {std::move(embed)};
}

/// q twists of the pullbacks of the irreducibles of the floor group.
inline IrrFamily build_pullback_twists(const MatrixGroupPtr& g) {
  const Lambda l = g->lambda();
  const auto floor = assemble(g->backend(), g->q(), floor_of(l));
  IrrFamily f{FamilyLabel::pullback_twist, {}, {}, {}};
  if (!floor->explicit_characters()) {
    f.counted = zeta_sum({}, floor->zeta(), g->q());
    return f;
  }
  const auto e = reduction_epimorphism(g);
  const auto base = floor->characters();
  auto chars = parallel_map<std::vector<ClassFunction>>(base.size(), [&](std::size_t i) {
    const auto pulled = inflate_to(g, e, base[i]);
    std::vector<ClassFunction> tw;
    for (Code z = 0; z < g->q(); ++z) tw.push_back(twist(g, pulled, z));
    return tw;
  });
  for (std::size_t i = 0; i < chars.size(); ++i)
    for (Code z = 0; z < g->q(); ++z) f.add(chars[i][z], "floor #" + std::to_string(i) + " twist z=" + std::to_string(z));
  if (dedupe(f) != 0) throw BuildError("twisted pullbacks are not distinct");
  return f;
}

namespace detail {

inline std::shared_ptr<Assembly> assemble_uncached(Backend backend, unsigned q, const Lambda& l) {
  auto a = std::make_shared<Assembly>();
  a->backend = backend;
  a->q = q;
  a->lambda = l;
  a->group = make_group(backend, q, l);
  const auto& g = a->group;
  if (l.l2 == 0) {
    a->families.push_back(build_rank1(g));
  } else if (l.l1 == 1) {
    a->dixon = dixon_degrees(g);
    a->families.push_back({FamilyLabel::dixon_base, {}, {}, *a->dixon});
  } else if (l.l2 == 1) {
    a->families = build_l1(g);
  } else {
    a->families.push_back(build_pullback_twists(g));
    for (auto& f : build_infinitesimal(g)) a->families.push_back(std::move(f));
    auto [irred, split] = build_geometric(g);
    a->families.push_back(std::move(irred));
    a->families.push_back(std::move(split));
    if (!l.rectangular()) {
      a->families.push_back(build_cuspidal_nonrect(g));
    } else {
      // The remaining irreducibles are counted by subtraction from the oracle.
      a->dixon = dixon_degrees(g);
      ZetaPolynomial rest = *a->dixon;
      for (const auto& [d, c] : a->zeta()) {
        auto it = rest.find(d);
        if (it == rest.end() || it->second < c) throw BuildError("constructed irreducibles exceed the Dixon multiset");
        if ((it->second -= c) == 0) rest.erase(it);
      }
      a->families.push_back({FamilyLabel::cuspidal_rect_count, {}, {}, rest});
    }
  }
  return a;
}

}  // namespace detail

/// Cached assembly of all irreducibles of G_lambda.
inline std::shared_ptr<const Assembly> assemble(Backend backend, unsigned q, const Lambda& lambda) {
  static std::mutex mu;
  static std::map<std::tuple<Backend, unsigned, unsigned, unsigned>, std::shared_ptr<const Assembly>> cache;
  const auto key = std::make_tuple(backend, q, lambda.l1, lambda.l2);
  {
    std::lock_guard lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  std::shared_ptr<const Assembly> a = detail::assemble_uncached(backend, q, lambda);
  std::lock_guard lock(mu);
  return cache.emplace(key, a).first->second;
}

}  // namespace modrep2
