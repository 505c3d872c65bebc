// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>

#include "modrep2/verify.hpp"

using namespace modrep2;

namespace {

// Collects failure notes for one criterion.
struct Criterion {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  template <class T>
  void expect_eq(const T& want, const T& got, const std::string& what) {
    if (!(want == got)) failures.push_back(what + ": expected " + detail::show(want) + ", got " + detail::show(got));
  }
  void expect_report(const VerifyReport& rep, const std::string& what) {
    for (const auto& r : rep.records)
      if (!r.pass) failures.push_back(what + " / " + r.name + ": expected " + r.expected + ", got " + r.computed);
  }
};

ZetaPolynomial zp(std::initializer_list<std::pair<const std::uint64_t, std::uint64_t>> l) { return ZetaPolynomial(l); }

std::string tag(const Lambda& l, unsigned q, Backend b = Backend::padic) {
  return l.str() + " q=" + std::to_string(q) + (b == Backend::tpoly ? " tpoly" : "");
}

void zeta_three_way(Criterion& c) {
  struct Case { Lambda l; unsigned q; ZetaPolynomial want; };
  const std::vector<Case> cases{{{2, 1}, 2, zp({{1, 4}, {2, 1}})},
                                {{3, 1}, 2, zp({{1, 8}, {2, 2}})},
                                {{2, 1}, 3, zp({{1, 4}, {2, 8}, {3, 8}})},
                                {{3, 2}, 2, zp({{1, 8}, {2, 14}, {4, 4}})},
                                {{2, 2}, 2, zp({{1, 4}, {2, 5}, {3, 4}, {6, 1}})},
                                {{2, 2}, 3, zp({{1, 6}, {2, 9}, {3, 6}, {4, 3}, {6, 24}, {8, 18}, {12, 12}})}};
  for (const auto& k : cases) {
    const auto a = assemble(Backend::padic, k.q, k.l);
    c.expect_eq(k.want, a->zeta(), "construction " + tag(k.l, k.q));
    c.expect_eq(k.want, zeta_closed_form(k.l, k.q), "closed form " + tag(k.l, k.q));
    c.expect_eq(k.want, dixon_degrees(a->group), "Dixon " + tag(k.l, k.q));
  }
}

void class_counts(Criterion& c) {
  for (unsigned q : {2u, 3u})
    for (Lambda l : {Lambda{1, 1}, Lambda{2, 1}, Lambda{3, 1}, Lambda{2, 2}, Lambda{3, 2}})
      c.expect_eq<std::uint64_t>(class_count_formula(l, q), make_group(Backend::padic, q, l)->class_count(), "classes " + tag(l, q));
  c.expect_eq<std::uint64_t>(14, make_group(Backend::padic, 2, {2, 2})->class_count(), "classes of GL2(Z/4)");
  c.expect_eq<std::uint64_t>(26, make_group(Backend::padic, 2, {3, 2})->class_count(), "classes (3,2) q=2");
}

void orbit_tables(Criterion& c) {
  for (unsigned q : {2u, 3u})
    for (Lambda l : {Lambda{3, 2}, Lambda{2, 2}}) {
      auto g = make_group(Backend::padic, q, l);
      c.expect_eq(orbit_table_str(expected_orbit_table(l, q)), orbit_table_str(computed_orbit_table(*g)), "orbit table " + tag(l, q));
      const std::uint64_t Q = q;
      c.expect_eq<std::uint64_t>(l.rectangular() ? Q * Q + Q : Q * Q + Q + 1, orbits_on_k(g), "classes inside K " + tag(l, q));
    }
}

void cuspidal_construction(Criterion& c) {
  for (auto [l, q] : {std::pair{Lambda{3, 2}, 2u}, std::pair{Lambda{4, 2}, 2u}, std::pair{Lambda{3, 2}, 3u}}) {
    auto g = make_group(Backend::padic, q, l);
    const auto f = build_cuspidal_nonrect(g);
    const std::uint64_t Q = q;
    c.expect_eq<std::uint64_t>(ipow(Q, l.l1 + l.l2 - 3) * (Q - 1) * (Q - 1), f.members.size(), "cuspidal count " + tag(l, q));
    for (std::size_t i = 0; i < f.members.size(); ++i) {
      const auto& chi = f.members[i];
      c.expect_eq<long>(static_cast<long>(ipow(Q, l.l2 - 1) * (Q - 1)), chi.int_degree(), "degree " + tag(l, q));
      c.expect_eq<long>(1, inner_int(chi, chi), "self inner product " + tag(l, q));
      for (std::size_t j = i + 1; j < f.members.size(); ++j)
        c.expect_eq<long>(0, inner_int(chi, f.members[j]), "distinct cuspidals " + tag(l, q));
      c.expect(is_cuspidal(g, chi), "cuspidality battery " + tag(l, q) + " member " + std::to_string(i));
    }
  }
}

void functor_properties(Criterion& c) {
  for (Lambda l : {Lambda{3, 2}, Lambda{2, 2}}) {
    const auto rep = property_suite(make_group(Backend::padic, 2, l));
    c.expect(!rep.records.empty(), "property suite ran at " + tag(l, 2));
    c.expect_report(rep, tag(l, 2));
  }
}

void exhaustion(Criterion& c) {
  const auto a = assemble(Backend::padic, 2, {3, 2});
  const auto chars = a->characters();
  c.expect_eq<std::size_t>(26, chars.size(), "assembled characters (3,2) q=2");
  std::uint64_t squares = 0;
  for (std::size_t i = 0; i < chars.size(); ++i) {
    squares += static_cast<std::uint64_t>(chars[i].int_degree() * chars[i].int_degree());
    for (std::size_t j = i; j < chars.size(); ++j)
      c.expect_eq<long>(i == j ? 1 : 0, inner_int(chars[i], chars[j]), "orthonormality (3,2) q=2");
  }
  c.expect_eq<std::uint64_t>(128, squares, "sum of squared degrees (3,2) q=2");
  c.expect_report(check_exhaustion(*a), "(3,2) q=2");
  const auto r = assemble(Backend::padic, 2, {2, 2});
  c.expect_eq(zp({{2, 3}}), r->family(FamilyLabel::cuspidal_rect_count).zeta(), "unaccounted irreducibles (2,2) q=2");
  c.expect_eq(zp({{2, 3}}), zp({{cuspidal_rect_count(2, 2).second, cuspidal_rect_count(2, 2).first}}), "rectangular cuspidal count (2,2) q=2");
}

void ring_independence(Criterion& c) {
  for (unsigned q : {2u, 3u})
    for (Lambda l : {Lambda{2, 1}, Lambda{3, 1}, Lambda{2, 2}, Lambda{3, 2}}) c.expect_report(ring_compare(q, l), tag(l, q));
  for (Lambda l : {Lambda{2, 1}, Lambda{2, 2}}) {
    const auto a = assemble(Backend::tpoly, 4, l);
    c.expect_eq(zeta_closed_form(l, 4), a->zeta(), "construction " + tag(l, 4, Backend::tpoly));
    c.expect_eq(zeta_closed_form(l, 4), dixon_degrees(a->group), "Dixon " + tag(l, 4, Backend::tpoly));
    c.expect_eq<std::uint64_t>(class_count_formula(l, 4), a->group->class_count(), "classes " + tag(l, 4, Backend::tpoly));
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Criterion&)>>> criteria{
      {"zeta polynomials: construction = closed form = Dixon", zeta_three_way},
      {"conjugacy class counts match the closed forms", class_counts},
      {"dual orbit tables and classes inside K", orbit_tables},
      {"non-rectangular cuspidal construction", cuspidal_construction},
      {"functor property suites at (3,2) and (2,2), q=2", functor_properties},
      {"exhaustion at (3,2) and rectangular subtraction at (2,2), q=2", exhaustion},
      {"ring independence padic vs tpoly, and tpoly q=4", ring_independence},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Criterion c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.failures.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool pass = c.failures.empty();
    all = all && pass;
    std::printf("criterion %zu: %s  %s (%.1fs)\n", i + 1, pass ? "PASS" : "FAIL", criteria[i].first.c_str(), secs);
    for (std::size_t k = 0; k < c.failures.size() && k < 20; ++k) std::printf("    %s\n", c.failures[k].c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
