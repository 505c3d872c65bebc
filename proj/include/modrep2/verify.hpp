#pragma once
// Check batteries shared by the command line driver and the acceptance run.
// Every record compares a computed value against a closed form or against an
// independent computation, and names the statement it checks.

#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "modrep2/irrbuild.hpp"
#include "modrep2/orbit.hpp"

namespace modrep2 {

struct VerifyRecord {
  std::string name;
  std::string anchor;
  std::string expected;
  std::string computed;
  bool pass = false;
};

struct VerifyReport {
  std::string command;
  Backend backend = Backend::padic;
  unsigned q = 2;
  Lambda lambda;
  std::vector<VerifyRecord> records;

  bool pass() const {
    for (const auto& r : records)
      if (!r.pass) return false;
    return true;
  }
  void append(const VerifyReport& o) { records.insert(records.end(), o.records.begin(), o.records.end()); }
};

namespace detail {

template <class T>
std::string show(const T& v) {
  if constexpr (std::is_same_v<T, ZetaPolynomial>) {
    return zeta_str(v);
  } else if constexpr (std::is_same_v<T, bool>) {
    return v ? "true" : "false";
  } else if constexpr (std::is_same_v<T, std::string>) {
    return v;
  } else {
    std::ostringstream s;
    s << v;
    return s.str();
  }
}

/// Runs `body` and turns any exception into a failed record.
inline void guarded(VerifyReport& rep, const std::string& name, const std::string& anchor, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    rep.records.push_back({name, anchor, "no error", std::string("error: ") + e.what(), false});
  }
}

template <class T>
void record(VerifyReport& rep, const std::string& name, const std::string& anchor, const T& expected, const T& computed) {
  rep.records.push_back({name, anchor, show(expected), show(computed), expected == computed});
}

/// Records "n of n" style results: number of cases and number of failures.
inline void record_cases(VerifyReport& rep, const std::string& name, const std::string& anchor, std::size_t cases, std::size_t failures,
                         const std::string& first_failure = {}) {
  std::string computed = std::to_string(cases - failures) + " of " + std::to_string(cases) + " hold";
  if (failures) computed += "; first failure: " + first_failure;
  rep.records.push_back({name, anchor, "all " + std::to_string(cases) + " hold", computed, failures == 0 && cases > 0});
}

inline ClassFunction indicator(const GroupPtr& g, std::size_t c) {
  std::vector<Complex> v(g->class_count(), 0.0);
  v[c] = 1.0;
  return {g, std::move(v)};
}

/// Pullback of a character of G_(m) to G_(l) along reduction mod p^m.
inline ClassFunction reduce_pullback(const MatrixGroupPtr& big, const ClassFunction& small) {
  auto gs = std::static_pointer_cast<const MatrixGroup>(small.group());
  const unsigned m = gs->lambda().l1;
  const auto& cp = big->classes();
  std::vector<Complex> v(cp.count());
  for (std::size_t c = 0; c < cp.count(); ++c)
    v[c] = small.at(gs->index_of({big->ring1()->reduce(big->element(cp.classes[c].rep).a, m), 0, 0, 0}));
  return {big, std::move(v)};
}

}  // namespace detail

/// Orbit type -> (number of orbits, number of characters) on the characters of K.
inline std::map<std::string, std::pair<std::uint64_t, std::uint64_t>> expected_orbit_table(const Lambda& l, unsigned q) {
  const std::uint64_t Q = q;
  if (!l.rectangular())
    return {{"i", {Q, Q}},
            {"ii", {Q * (Q - 1), Q * Q * Q * (Q - 1)}},
            {"iii", {1, Q * (Q - 1)}},
            {"iv", {1, Q * (Q - 1)}},
            {"v", {Q - 1, Q * (Q - 1) * (Q - 1)}}};
  return {{"i", {Q, Q}},
          {"ii", {Q * (Q - 1) / 2, Q * Q * (Q * Q - 1) / 2}},
          {"iii", {Q, Q * (Q * Q - 1)}},
          {"iv", {Q * (Q - 1) / 2, Q * Q * (Q - 1) * (Q - 1) / 2}}};
}

inline std::string orbit_table_str(const std::map<std::string, std::pair<std::uint64_t, std::uint64_t>>& t) {
  std::string s;
  for (const auto& [k, v] : t) s += (s.empty() ? "" : " ") + k + ":" + std::to_string(v.first) + "/" + std::to_string(v.second);
  return s;
}

/// Dual orbits tabulated by type.
inline std::map<std::string, std::pair<std::uint64_t, std::uint64_t>> computed_orbit_table(const MatrixGroup& g) {
  std::map<std::string, std::pair<std::uint64_t, std::uint64_t>> t;
  for (const auto& o : dual_orbits(g)) {
    auto& e = t[o.label.type];
    ++e.first;
    e.second += o.size;
  }
  return t;
}

/// Each inducing functor against its restriction, on all pairs of class indicators.
inline VerifyReport check_adjointness(const MatrixGroupPtr& g) {
  VerifyReport rep;
  const Lambda l = g->lambda();
  std::vector<FunctorSpec> specs{{FunctorKind::geo_ind, l, 0, Summand::first}, {FunctorKind::geo_ind, l, 0, Summand::second}};
  for (const auto& mu : infinitesimal_set(l)) {
    specs.push_back({FunctorKind::inf_ind_embed, l, mu.l2, Summand::first});
    specs.push_back({FunctorKind::inf_ind_quot, l, mu.l2, Summand::first});
  }
  for (const auto& spec : specs) {
    FunctorSpec rs = spec;
    rs.kind = spec.kind == FunctorKind::geo_ind         ? FunctorKind::geo_res
              : spec.kind == FunctorKind::inf_ind_embed ? FunctorKind::inf_res_embed
                                                        : FunctorKind::inf_res_quot;
    std::string name = "adjoint pair " + to_string(spec.kind) + " / " + to_string(rs.kind);
    name += spec.kind == FunctorKind::geo_ind ? (spec.summand == Summand::first ? " (first summand)" : " (second summand)")
                                              : " (mu=(" + std::to_string(l.l1) + "," + std::to_string(spec.m) + "))";
    detail::guarded(rep, name, "Frobenius reciprocity for parabolic functors", [&] {
      const auto& e = parabolic_epimorphism(g, spec.parabolic(), spec.m, spec.summand);
      const std::size_t kt = e.target->class_count(), kg = g->class_count();
      auto ind = parallel_map<ClassFunction>(kt, [&](std::size_t c) { return functor_apply(g, spec, detail::indicator(e.target, c)); });
      auto res = parallel_map<ClassFunction>(kg, [&](std::size_t d) { return functor_apply(g, rs, detail::indicator(g, d)); });
      std::size_t bad = 0;
      std::string first;
      for (std::size_t c = 0; c < kt; ++c)
        for (std::size_t d = 0; d < kg; ++d) {
          const Complex lhs = inner(ind[c], detail::indicator(g, d));
          const Complex rhs = inner(detail::indicator(e.target, c), res[d]);
          if (std::abs(lhs - rhs) > 1e-9) {
            if (!bad++) first = "classes " + std::to_string(c) + "," + std::to_string(d);
          }
        }
      detail::record_cases(rep, name, "Frobenius reciprocity for parabolic functors", kt * kg, bad, first);
    });
  }
  return rep;
}

/// Composition of infinitesimal inductions (and restrictions) along
/// (l1, m') <= (l1, m) <= lambda, 0 <= m' < m < l2.
inline VerifyReport check_associativity(const MatrixGroupPtr& g) {
  VerifyReport rep;
  const Lambda l = g->lambda();
  const std::string anchor = "associativity of infinitesimal induction";
  for (unsigned m = 1; m < l.l2; ++m)
    for (unsigned mp = 0; mp < m; ++mp)
      for (ParabolicKind kind : {ParabolicKind::embed, ParabolicKind::quot}) {
        const std::string kn = kind == ParabolicKind::embed ? "embed" : "quot";
        const std::string name = "infinitesimal chain " + kn + " (" + std::to_string(l.l1) + "," + std::to_string(mp) + ") <= (" +
                                 std::to_string(l.l1) + "," + std::to_string(m) + ") <= " + l.str();
        detail::guarded(rep, name, anchor, [&] {
          auto gm = make_group(g->backend(), g->q(), {l.l1, m});
          const auto& big = parabolic_epimorphism(g, kind, m, Summand::first);
          const auto& small = parabolic_epimorphism(gm, kind, mp, Summand::first);
          const auto& direct = parabolic_epimorphism(g, kind, mp, Summand::first);
          std::size_t cases = 0, bad = 0;
          std::string first;
          const auto& gn = direct.target;
          for (std::size_t c = 0; c < gn->class_count(); ++c, ++cases) {
            const auto xi = detail::indicator(gn, c);
            if (!parabolic_induce(big, parabolic_induce(small, xi)).approx_equal(parabolic_induce(direct, xi), 1e-9))
              if (!bad++) first = "induction of class " + std::to_string(c);
          }
          for (std::size_t d = 0; d < g->class_count(); ++d, ++cases) {
            const auto eta = detail::indicator(g, d);
            if (!parabolic_restrict(small, parabolic_restrict(big, eta)).approx_equal(parabolic_restrict(direct, eta), 1e-9))
              if (!bad++) first = "restriction of class " + std::to_string(d);
          }
          detail::record_cases(rep, name, anchor, cases, bad, first);
        });
      }
  return rep;
}

/// Geometric induction of a pulled back factor equals infinitesimal induction
/// of a geometric induction at level (l1, m), for both summands.
inline VerifyReport check_mixed_identities(const MatrixGroupPtr& g) {
  VerifyReport rep;
  const Lambda l = g->lambda();
  const std::string anchor = "geometric and infinitesimal induction commute";
  const auto& c1 = linear_class_functions(make_group(g->backend(), g->q(), {l.l1, 0}));
  auto g2 = make_group(g->backend(), g->q(), {l.l2, 0});
  for (unsigned m = 1; m < l.l2; ++m)
    for (Summand s : {Summand::first, Summand::second}) {
      const std::string name = std::string("mixed identity, ") + (s == Summand::first ? "first summand / embed" : "second summand / quot") +
                               ", m=" + std::to_string(m);
      detail::guarded(rep, name, anchor, [&] {
        auto gm = make_group(g->backend(), g->q(), {l.l1, m});
        const auto& cm = linear_class_functions(make_group(g->backend(), g->q(), {m, 0}));
        const auto& inf = parabolic_epimorphism(g, s == Summand::first ? ParabolicKind::embed : ParabolicKind::quot, m, Summand::first);
        std::size_t cases = 0, bad = 0;
        std::string first;
        for (std::size_t i = 0; i < c1.size(); ++i)
          for (std::size_t j = 0; j < cm.size(); ++j, ++cases) {
            const auto lhs = geometric_induce(g, s, c1[i], detail::reduce_pullback(g2, cm[j]));
            const auto rhs = parabolic_induce(inf, geometric_induce(gm, s, c1[i], cm[j]));
            if (!lhs.approx_equal(rhs, 1e-9))
              if (!bad++) first = "theta=(" + std::to_string(i) + "," + std::to_string(j) + ")";
          }
        detail::record_cases(rep, name, anchor, cases, bad, first);
      });
    }
  return rep;
}

/// Infinitesimal induction of cuspidals: irreducible, injective, and undone
/// by the matching restriction.
inline VerifyReport check_infinitesimal_cuspidals(const MatrixGroupPtr& g) {
  VerifyReport rep;
  const Lambda l = g->lambda();
  const std::string anchor = "infinitesimal induction of cuspidals";
  for (const auto& mu : infinitesimal_set(l))
    for (ParabolicKind kind : {ParabolicKind::embed, ParabolicKind::quot}) {
      const std::string name = std::string("infinitesimal ") + (kind == ParabolicKind::embed ? "embed" : "quot") + " induction from " + mu.str();
      detail::guarded(rep, name, anchor, [&] {
        const auto& cusp = cuspidal_family(g->backend(), g->q(), mu).members;
        const auto& e = parabolic_epimorphism(g, kind, mu.l2, Summand::first);
        std::vector<ClassFunction> ind;
        std::size_t bad = 0, cases = 0;
        std::string first;
        for (std::size_t i = 0; i < cusp.size(); ++i) {
          ind.push_back(parabolic_induce(e, cusp[i]));
          ++cases;
          if (!is_irreducible(ind.back()))
            if (!bad++) first = "reducible image of cuspidal " + std::to_string(i);
          ++cases;
          if (!parabolic_restrict(e, ind.back()).approx_equal(cusp[i], 1e-9))
            if (!bad++) first = "restriction does not recover cuspidal " + std::to_string(i);
        }
        for (std::size_t i = 0; i < ind.size(); ++i)
          for (std::size_t j = i + 1; j < ind.size(); ++j, ++cases)
            if (inner_int(ind[i], ind[j]) != 0)
              if (!bad++) first = "cuspidals " + std::to_string(i) + "," + std::to_string(j) + " induce to overlapping characters";
        detail::record_cases(rep, name, anchor, cases, bad, first);
      });
    }
  return rep;
}

/// Geometric induction from characters theta of G_(l1) x G_(l2): irreducible
/// exactly on C^, where both summands agree and theta determines xi_theta
/// (up to theta^op when rectangular); xi_theta = xi^v_(theta^op) when rectangular.
inline VerifyReport check_geometric_theorem(const MatrixGroupPtr& g) {
  VerifyReport rep;
  const Lambda l = g->lambda();
  const std::string anchor = "geometric induction from characters of the Levi";
  detail::guarded(rep, "geometric induction", anchor, [&] {
    const auto& c1 = linear_class_functions(make_group(g->backend(), g->q(), {l.l1, 0}));
    const auto& c2 = linear_class_functions(make_group(g->backend(), g->q(), {l.l2, 0}));
    const std::size_t n1 = c1.size(), n2 = c2.size();
    auto xi = parallel_map<std::pair<ClassFunction, ClassFunction>>(n1 * n2, [&](std::size_t t) {
      return std::make_pair(geometric_induce(g, Summand::first, c1[t / n2], c2[t % n2]),
                            geometric_induce(g, Summand::second, c1[t / n2], c2[t % n2]));
    });
    std::vector<std::size_t> c_hat;
    std::size_t irr_bad = 0, swap_bad = 0, op_bad = 0;
    for (std::size_t t = 0; t < n1 * n2; ++t) {
      const bool c = in_c_hat(g, c1[t / n2], c2[t % n2]);
      if (c) c_hat.push_back(t);
      if (is_irreducible(xi[t].first) != c) ++irr_bad;
      if (c && !xi[t].first.approx_equal(xi[t].second, 1e-9)) ++swap_bad;
      if (l.rectangular() && !xi[t].first.approx_equal(xi[(t % n2) * n2 + t / n2].second, 1e-9)) ++op_bad;
    }
    detail::record_cases(rep, "irreducible exactly on C^", anchor, n1 * n2, irr_bad);
    detail::record_cases(rep, "both summands agree on C^", anchor, c_hat.size(), swap_bad);
    std::size_t inj_bad = 0, inj_cases = 0;
    for (std::size_t s = 0; s < c_hat.size(); ++s)
      for (std::size_t u = s; u < c_hat.size(); ++u, ++inj_cases) {
        const std::size_t t = c_hat[s], v = c_hat[u];
        const bool same = t == v || (l.rectangular() && v == (t % n2) * n2 + t / n2);
        if (inner_int(xi[t].first, xi[v].first) != (same ? 1 : 0)) ++inj_bad;
      }
    detail::record_cases(rep, l.rectangular() ? "theta determines xi_theta up to theta^op" : "theta determines xi_theta", anchor, inj_cases,
                         inj_bad);
    std::uint64_t irred = 0;
    for (const auto& f : expected_families(l, g->q()))
      if (f.label == FamilyLabel::geo_irred) irred = f.count;
    // Rectangular C^ holds theta and theta^op for each member.
    detail::record<std::uint64_t>(rep, "size of C^", anchor, l.rectangular() ? 2 * irred : irred, c_hat.size());
    if (l.rectangular()) detail::record_cases(rep, "xi_theta equals xi^v of theta^op", anchor, n1 * n2, op_bad);
  });
  return rep;
}

/// Every primitive irreducible is exactly one of: cuspidal, infinitesimally
/// induced from a unique cuspidal, or geometric (an irreducible xi_theta, or
/// an infinitesimal induction xi_rho of a character over the orbits B+ / B-
/// of G_(l1,1), which lies in a reducible xi_theta).
inline VerifyReport check_exhaustion(const Assembly& a) {
  VerifyReport rep;
  const std::string anchor = "classification of primitive irreducibles";
  const auto& g = a.group;
  const Lambda l = a.lambda;
  if (l.rectangular()) {
    detail::guarded(rep, "unaccounted irreducibles", anchor, [&] {
      const auto [count, degree] = cuspidal_rect_count(l.l1, a.q);
      detail::record(rep, "unaccounted irreducibles", anchor, ZetaPolynomial{{degree, count}}, a.family(FamilyLabel::cuspidal_rect_count).zeta());
    });
    return rep;
  }
  detail::guarded(rep, "primitive trichotomy", anchor, [&] {
    const auto chars = a.characters();
    std::vector<ClassFunction> inf_images;
    for (const auto& mu : infinitesimal_set(l))
      for (ParabolicKind kind : {ParabolicKind::embed, ParabolicKind::quot}) {
        const auto& e = parabolic_epimorphism(g, kind, mu.l2, Summand::first);
        for (const auto& sigma : cuspidal_family(a.backend, a.q, mu).members) inf_images.push_back(parabolic_induce(e, sigma));
      }
    // Geometric inductions, split by whether theta lies in C^.
    const auto& c1 = linear_class_functions(make_group(a.backend, a.q, {l.l1, 0}));
    const auto& c2 = linear_class_functions(make_group(a.backend, a.q, {l.l2, 0}));
    std::vector<ClassFunction> irreducible_xi, reducible_first, reducible_second;
    for (const auto& t1 : c1)
      for (const auto& t2 : c2) {
        if (in_c_hat(g, t1, t2)) {
          irreducible_xi.push_back(geometric_induce(g, Summand::first, t1, t2));
        } else {
          reducible_first.push_back(geometric_induce(g, Summand::first, t1, t2));
          reducible_second.push_back(geometric_induce(g, Summand::second, t1, t2));
        }
      }
    const auto base = assemble(a.backend, a.q, {l.l1, 1});
    std::vector<ClassFunction> xi_rho;
    std::size_t rho_cases = 0, rho_bad = 0;
    for (auto [label, kind] : {std::pair{FamilyLabel::orbitB_plus, ParabolicKind::embed}, std::pair{FamilyLabel::orbitB_minus, ParabolicKind::quot}}) {
      const auto& e = parabolic_epimorphism(g, kind, 1, Summand::first);
      const auto& reducible = kind == ParabolicKind::embed ? reducible_first : reducible_second;
      for (const auto& rho : base->family(label).members) {
        xi_rho.push_back(parabolic_induce(e, rho));
        bool inside = false;
        for (const auto& r : reducible) inside = inside || inner_int(xi_rho.back(), r) != 0;
        ++rho_cases;
        rho_bad += !inside || !is_irreducible(xi_rho.back());
      }
    }
    detail::record_cases(rep, "xi_rho irreducible and inside a reducible geometric induction", anchor, rho_cases, rho_bad);

    auto verdict = parallel_map<int>(chars.size(), [&](std::size_t i) {
      const auto& chi = chars[i];
      if (!is_primitive(g, chi)) return -1;
      const bool cusp = is_cuspidal(g, chi);
      std::size_t hits = 0;
      for (const auto& img : inf_images) hits += inner_int(chi, img) != 0;
      bool geometric = false;
      for (const auto& x : irreducible_xi) geometric = geometric || inner_int(chi, x) == 1;
      for (const auto& x : xi_rho) geometric = geometric || inner_int(chi, x) == 1;
      if (hits > 1) return 0;
      return (cusp + (hits == 1) + geometric) == 1 ? 1 : 0;
    });
    std::size_t primitive = 0, bad = 0;
    std::string first;
    for (std::size_t i = 0; i < verdict.size(); ++i) {
      if (verdict[i] < 0) continue;
      ++primitive;
      if (verdict[i] == 0 && !bad++) first = "character #" + std::to_string(i);
    }
    detail::record_cases(rep, "primitive trichotomy", anchor, primitive, bad, first);
    // Imprimitive members are exactly the twisted pullbacks.
    std::size_t imprimitive = 0;
    for (int v : verdict) imprimitive += v < 0;
    detail::record<std::uint64_t>(rep, "imprimitive irreducibles", anchor, a.family(FamilyLabel::pullback_twist).count(), imprimitive);
  });
  return rep;
}

/// All property suites for a rank two lambda with l2 >= 2.
inline VerifyReport property_suite(const MatrixGroupPtr& g) {
  VerifyReport rep;
  rep.append(check_adjointness(g));
  rep.append(check_associativity(g));
  rep.append(check_mixed_identities(g));
  rep.append(check_infinitesimal_cuspidals(g));
  rep.append(check_geometric_theorem(g));
  return rep;
}

/// Expected K-spectrum orbit types per family.
inline std::map<FamilyLabel, std::set<std::string>> expected_k_types(const Lambda& l) {
  if (l.rectangular())
    return {{FamilyLabel::pullback_twist, {"i"}}, {FamilyLabel::geo_irred, {"ii"}}, {FamilyLabel::geo_split, {"iii"}}, {FamilyLabel::inf_embed, {"iii"}}};
  return {{FamilyLabel::pullback_twist, {"i"}}, {FamilyLabel::geo_irred, {"ii"}},  {FamilyLabel::geo_split, {"iii", "iv"}},
          {FamilyLabel::inf_embed, {"iii"}},    {FamilyLabel::inf_quot, {"iv"}},   {FamilyLabel::cuspidal_nonrect, {"v"}}};
}

/// The complete battery for one (backend, q, lambda).
inline VerifyReport verify_all(Backend backend, unsigned q, const Lambda& l, bool properties = true) {
  VerifyReport rep;
  rep.command = "verify-all";
  rep.backend = backend;
  rep.q = q;
  rep.lambda = l;
  MatrixGroupPtr g;
  detail::guarded(rep, "group order", "order of the automorphism group", [&] {
    g = make_group(backend, q, l);
    detail::record<std::uint64_t>(rep, "group order", "order of the automorphism group", group_order_formula(l, q), g->order());
  });
  if (!g) return rep;
  detail::guarded(rep, "class count", "number of conjugacy classes", [&] {
    // Rank one groups are abelian.
    const std::uint64_t want = l.l2 == 0 ? group_order_formula(l, q) : class_count_formula(l, q);
    detail::record<std::uint64_t>(rep, "class count", "number of conjugacy classes", want, g->class_count());
  });
  std::shared_ptr<const Assembly> a;
  detail::guarded(rep, "assembly", "recursive construction of all irreducibles", [&] { a = assemble(backend, q, l); });
  if (a) {
    const auto z = a->zeta();
    detail::guarded(rep, "zeta, construction vs closed form", "representation zeta polynomial", [&] {
      detail::record(rep, "zeta, construction vs closed form", "representation zeta polynomial", zeta_closed_form(l, q), z);
    });
    detail::guarded(rep, "zeta, construction vs Dixon", "Dixon degrees", [&] {
      detail::record(rep, "zeta, construction vs Dixon", "Dixon degrees", dixon_degrees(g), z);
    });
    detail::record<std::uint64_t>(rep, "R(1) equals class count", "representation zeta polynomial at 1", g->class_count(), multiset_total(z));
    detail::record<std::uint64_t>(rep, "sum of squared degrees", "representation zeta polynomial", g->order(), multiset_square_sum(z));
    for (const auto& e : expected_families(l, q)) {
      const std::string name = "family " + to_string(e.label);
      detail::guarded(rep, name, "irreducible families by construction", [&] {
        const auto& f = a->family(e.label);
        ZetaPolynomial want;
        if (e.degree) want[e.degree] = e.count;
        const auto have = f.zeta();
        if (e.degree)
          detail::record(rep, name, "irreducible families by construction", want, have);
        else
          detail::record<std::uint64_t>(rep, name + " count", "irreducible families by construction", e.count, multiset_total(have));
      });
    }
    if (a->explicit_characters())
      detail::guarded(rep, "orthonormal characters", "irreducible families by construction", [&] {
        const auto chars = a->characters();
        std::size_t bad = 0, cases = 0;
        for (std::size_t i = 0; i < chars.size(); ++i)
          for (std::size_t j = i; j < chars.size(); ++j, ++cases) bad += inner_int(chars[i], chars[j]) != (i == j ? 1 : 0);
        detail::record_cases(rep, "orthonormal characters", "irreducible families by construction", cases, bad);
      });
    if (l.l2 >= 2) {
      for (const auto& [label, types] : expected_k_types(l)) {
        if (!a->has_family(label) || a->family(label).members.empty()) continue;
        const std::string name = "K-types of " + to_string(label);
        detail::guarded(rep, name, "orbit types of the restriction to K", [&] {
          std::size_t bad = 0;
          const auto& f = a->family(label);
          for (const auto& chi : f.members) bad += !types.count(k_type(g, chi));
          detail::record_cases(rep, name, "orbit types of the restriction to K", f.members.size(), bad);
        });
      }
    }
    // Cuspidals pass the literal battery of restriction functors.
    const FamilyLabel cl = l.l2 == 1 ? FamilyLabel::orbitC : FamilyLabel::cuspidal_nonrect;
    if (l.l1 > l.l2 && l.l2 >= 1 && l.l1 >= 2)
      detail::guarded(rep, "cuspidals pass the cuspidality battery", "cuspidal representations", [&] {
        const auto& f = a->family(cl);
        const TwistScope scope = l.l2 == 1 ? TwistScope::determinant : TwistScope::all_linear;
        auto ok = parallel_map<char>(f.members.size(), [&](std::size_t i) { return static_cast<char>(is_cuspidal(g, f.members[i], scope)); });
        std::size_t bad = 0;
        for (char c : ok) bad += !c;
        detail::record_cases(rep, "cuspidals pass the cuspidality battery", "cuspidal representations", f.members.size(), bad);
      });
    if (l.l2 >= 2) rep.append(check_exhaustion(*a));
  }
  if (l.l2 >= 2) {
    detail::guarded(rep, "dual orbit table", "orbits on the characters of K", [&] {
      detail::record(rep, "dual orbit table", "orbits on the characters of K", orbit_table_str(expected_orbit_table(l, q)),
                     orbit_table_str(computed_orbit_table(*g)));
    });
    detail::guarded(rep, "conjugacy classes inside K", "orbits of G on K", [&] {
      detail::record<std::uint64_t>(rep, "conjugacy classes inside K", "orbits of G on K", orbits_on_k_formula(l, q), orbits_on_k(g));
    });
    if (properties) rep.append(property_suite(g));
  }
  return rep;
}

/// padic against tpoly at a prime q.
inline VerifyReport ring_compare(unsigned q, const Lambda& l) {
  VerifyReport rep;
  rep.command = "ring-compare";
  rep.q = q;
  rep.lambda = l;
  const std::string anchor = "ring independence of the group algebra";
  detail::guarded(rep, "backends", anchor, [&] {
    auto gp = make_group(Backend::padic, q, l);
    auto gt = make_group(Backend::tpoly, q, l);
    detail::record<std::uint64_t>(rep, "group order", anchor, gp->order(), gt->order());
    detail::record<std::uint64_t>(rep, "class count", anchor, gp->class_count(), gt->class_count());
    detail::record(rep, "Dixon degrees", anchor, dixon_degrees(gp), dixon_degrees(gt));
    detail::record(rep, "constructed zeta", anchor, assemble(Backend::padic, q, l)->zeta(), assemble(Backend::tpoly, q, l)->zeta());
  });
  return rep;
}

}  // namespace modrep2
