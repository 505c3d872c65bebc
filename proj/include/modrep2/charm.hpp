#pragma once
// Class functions, induction and restriction, the geometric and
// infinitesimal induction/restriction functors, twisting, K-spectra,
// primitivity and cuspidality.

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "modrep2/glam.hpp"
#include "modrep2/orbit.hpp"

namespace modrep2 {

inline constexpr double kTol = 1e-6;

/// Raised when a computed quantity that must be an integer is not.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Complex value per conjugacy class of a finite group.
class ClassFunction {
 public:
  ClassFunction() = default;
  ClassFunction(GroupPtr group, std::vector<Complex> values) : group_(std::move(group)), values_(std::move(values)) {
    if (values_.size() != group_->class_count()) throw std::invalid_argument("class function size mismatch");
  }

  /// From values per element; they must be constant on classes.
  static ClassFunction from_elements(GroupPtr group, const std::vector<Complex>& per_element) {
    const auto& cp = group->classes();
    std::vector<Complex> v(cp.count());
    for (std::size_t c = 0; c < cp.count(); ++c) v[c] = per_element[cp.classes[c].rep];
    for (Index x = 0; x < group->order(); ++x)
      if (std::abs(per_element[x] - v[cp.class_of[x]]) > kTol) throw NumericError("function is not a class function");
    return {std::move(group), std::move(v)};
  }

  static ClassFunction trivial(GroupPtr group) {
    const std::size_t n = group->class_count();
    return {std::move(group), std::vector<Complex>(n, 1.0)};
  }

  /// The regular character.
  static ClassFunction regular(GroupPtr group) {
    std::vector<Complex> v(group->class_count(), 0.0);
    v[0] = static_cast<double>(group->order());
    return {std::move(group), std::move(v)};
  }

  const GroupPtr& group() const { return group_; }
  const std::vector<Complex>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  Complex operator[](std::size_t c) const { return values_[c]; }
  Complex at(Index element) const { return values_[group_->class_of(element)]; }
  double degree() const { return values_[0].real(); }
  long int_degree() const {
    const double d = degree();
    if (std::abs(d - std::round(d)) > kTol) throw NumericError("degree is not an integer");
    return std::lround(d);
  }

  ClassFunction operator+(const ClassFunction& o) const { return zip(o, [](Complex a, Complex b) { return a + b; }); }
  ClassFunction operator-(const ClassFunction& o) const { return zip(o, [](Complex a, Complex b) { return a - b; }); }
  ClassFunction operator*(const ClassFunction& o) const { return zip(o, [](Complex a, Complex b) { return a * b; }); }
  ClassFunction scaled(Complex s) const {
    auto v = values_;
    for (auto& x : v) x *= s;
    return {group_, std::move(v)};
  }
  ClassFunction conj() const {
    auto v = values_;
    for (auto& x : v) x = std::conj(x);
    return {group_, std::move(v)};
  }
  bool is_zero(double tol = kTol) const {
    for (auto x : values_)
      if (std::abs(x) > tol) return false;
    return true;
  }
  bool approx_equal(const ClassFunction& o, double tol = kTol) const {
    if (group_ != o.group_) return false;
    for (std::size_t c = 0; c < values_.size(); ++c)
      if (std::abs(values_[c] - o.values_[c]) > tol) return false;
    return true;
  }

 private:
  template <class F>
  ClassFunction zip(const ClassFunction& o, F f) const {
    if (group_ != o.group_) throw std::invalid_argument("class functions on different groups");
    std::vector<Complex> v(values_.size());
    for (std::size_t c = 0; c < v.size(); ++c) v[c] = f(values_[c], o.values_[c]);
    return {group_, std::move(v)};
  }

  GroupPtr group_;
  std::vector<Complex> values_;
};

/// <chi, psi> = |G|^-1 sum_g chi(g) conj(psi(g)).
inline Complex inner(const ClassFunction& a, const ClassFunction& b) {
  if (a.group() != b.group()) throw std::invalid_argument("inner product across groups");
  const auto& cp = a.group()->classes();
  Complex s = 0;
  for (std::size_t c = 0; c < cp.count(); ++c) s += static_cast<double>(cp.classes[c].size()) * a[c] * std::conj(b[c]);
  return s / static_cast<double>(a.group()->order());
}

/// Inner product that must be a non-negative or signed integer.
inline long inner_int(const ClassFunction& a, const ClassFunction& b) {
  const Complex s = inner(a, b);
  if (std::abs(s.imag()) > kTol || std::abs(s.real() - std::round(s.real())) > kTol)
    throw NumericError("inner product is not an integer: " + std::to_string(s.real()) + "+" + std::to_string(s.imag()) + "i");
  return std::lround(s.real());
}

inline bool is_irreducible(const ClassFunction& chi) { return chi.degree() > 0.5 && inner_int(chi, chi) == 1; }

/// Ind from per-element values on a subgroup: for each class C of G,
/// |G| / (|H| |C|) * sum over h in H meeting C.
inline ClassFunction induce_values(const SubgroupPtr& h, const std::vector<Complex>& per_element) {
  const auto& g = h->parent();
  const auto& cp = g->classes();
  std::vector<Complex> acc(cp.count(), 0.0);
  for (Index x = 0; x < h->order(); ++x) acc[cp.class_of[h->to_parent(x)]] += per_element[x];
  const double ratio = static_cast<double>(g->order()) / static_cast<double>(h->order());
  for (std::size_t c = 0; c < acc.size(); ++c) acc[c] *= ratio / static_cast<double>(cp.classes[c].size());
  return {g, std::move(acc)};
}

inline ClassFunction induce(const SubgroupPtr& h, const ClassFunction& chi) {
  if (chi.group().get() != h.get()) throw std::invalid_argument("induce: class function is not on the subgroup");
  std::vector<Complex> v(h->order());
  for (Index x = 0; x < h->order(); ++x) v[x] = chi.at(x);
  return induce_values(h, v);
}

inline ClassFunction restrict_to(const ClassFunction& chi, const SubgroupPtr& h) {
  if (chi.group() != h->parent()) throw std::invalid_argument("restrict: class function is not on the parent");
  const auto& cp = h->classes();
  std::vector<Complex> v(cp.count());
  for (std::size_t c = 0; c < cp.count(); ++c) v[c] = chi.at(h->to_parent(cp.classes[c].rep));
  return {h, std::move(v)};
}

/// Pullback along P -> Q.
inline ClassFunction inflate(const Epimorphism& e, const ClassFunction& chi) {
  if (chi.group() != e.target) throw std::invalid_argument("inflate: class function is not on the target");
  const auto& cp = e.source->classes();
  std::vector<Complex> v(cp.count());
  for (std::size_t c = 0; c < cp.count(); ++c) v[c] = chi.at(e.image[cp.classes[c].rep]);
  return {e.source, std::move(v)};
}

/// Pullback along an epimorphism defined on all of g, as a class function of g.
inline ClassFunction inflate_to(const GroupPtr& g, const Epimorphism& e, const ClassFunction& chi) {
  if (chi.group() != e.target) throw std::invalid_argument("inflate: class function is not on the target");
  if (e.source->parent() != g || e.source->order() != g->order()) throw std::invalid_argument("inflate_to: epimorphism is not defined on the whole group");
  const auto& cp = g->classes();
  std::vector<Complex> v(cp.count());
  for (std::size_t c = 0; c < cp.count(); ++c) v[c] = chi.at(e.image[e.source->from_parent(cp.classes[c].rep)]);
  return {g, std::move(v)};
}

/// Averages per-element values over the fibres of P -> Q (the U-invariants).
inline ClassFunction pushforward_values(const Epimorphism& e, const std::vector<Complex>& per_element) {
  std::vector<Complex> acc(e.target->order(), 0.0);
  for (Index x = 0; x < e.source->order(); ++x) acc[e.image[x]] += per_element[x];
  const double u = static_cast<double>(e.kernel.size());
  for (auto& a : acc) a /= u;
  return ClassFunction::from_elements(e.target, acc);
}

inline ClassFunction pushforward(const Epimorphism& e, const ClassFunction& chi) {
  if (chi.group() != e.source) throw std::invalid_argument("pushforward: class function is not on the source");
  std::vector<Complex> v(e.source->order());
  for (Index x = 0; x < e.source->order(); ++x) v[x] = chi.at(x);
  return pushforward_values(e, v);
}

// Functors.

enum class FunctorKind { geo_ind, geo_res, inf_ind_embed, inf_ind_quot, inf_res_embed, inf_res_quot };

inline std::string to_string(FunctorKind k) {
  switch (k) {
    case FunctorKind::geo_ind: return "geo_ind";
    case FunctorKind::geo_res: return "geo_res";
    case FunctorKind::inf_ind_embed: return "inf_ind_embed";
    case FunctorKind::inf_ind_quot: return "inf_ind_quot";
    case FunctorKind::inf_res_embed: return "inf_res_embed";
    case FunctorKind::inf_res_quot: return "inf_res_quot";
  }
  return "?";
}

/// The parabolic datum behind a pair of adjoint functors.
enum class ParabolicKind { geometric, embed, quot };

struct FunctorSpec {
  FunctorKind kind = FunctorKind::geo_ind;
  Lambda lambda;
  unsigned m = 0;                     // mu = (l1, m) for the infinitesimal kinds
  Summand summand = Summand::first;   // for the geometric kinds

  ParabolicKind parabolic() const {
    switch (kind) {
      case FunctorKind::geo_ind:
      case FunctorKind::geo_res: return ParabolicKind::geometric;
      case FunctorKind::inf_ind_embed:
      case FunctorKind::inf_res_embed: return ParabolicKind::embed;
      default: return ParabolicKind::quot;
    }
  }
  bool inducing() const {
    return kind == FunctorKind::geo_ind || kind == FunctorKind::inf_ind_embed || kind == FunctorKind::inf_ind_quot;
  }
};

/// Cached epimorphism for a parabolic datum on g.
inline const Epimorphism& parabolic_epimorphism(const MatrixGroupPtr& g, ParabolicKind kind, unsigned m, Summand s) {
  static std::mutex mu;
  static std::map<std::tuple<const MatrixGroup*, ParabolicKind, unsigned, Summand>, std::unique_ptr<Epimorphism>> cache;
  const auto key = std::make_tuple(g.get(), kind, kind == ParabolicKind::geometric ? 0u : m,
                                   kind == ParabolicKind::geometric ? s : Summand::first);
  {
    std::lock_guard lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;
  }
  auto e = std::make_unique<Epimorphism>(kind == ParabolicKind::geometric ? geometric_epimorphism(g, s)
                                         : kind == ParabolicKind::embed   ? embed_epimorphism(g, m)
                                                                          : quot_epimorphism(g, m));
  std::lock_guard lock(mu);
  return *cache.emplace(key, std::move(e)).first->second;
}

/// Ind_P^G Inf_{P/U}^P.
inline ClassFunction parabolic_induce(const Epimorphism& e, const ClassFunction& xi) {
  if (xi.group() != e.target) throw std::invalid_argument("parabolic induction: input lives on the wrong group");
  std::vector<Complex> v(e.source->order());
  for (Index x = 0; x < e.source->order(); ++x) v[x] = xi.at(e.image[x]);
  return induce_values(e.source, v);
}

/// (.)^U Res_P^G.
inline ClassFunction parabolic_restrict(const Epimorphism& e, const ClassFunction& eta) {
  if (eta.group() != e.source->parent()) throw std::invalid_argument("parabolic restriction: input lives on the wrong group");
  std::vector<Complex> v(e.source->order());
  for (Index x = 0; x < e.source->order(); ++x) v[x] = eta.at(e.source->to_parent(x));
  return pushforward_values(e, v);
}

inline ClassFunction functor_apply(const MatrixGroupPtr& g, const FunctorSpec& spec, const ClassFunction& input) {
  if (g->lambda() != spec.lambda) throw std::invalid_argument("functor spec does not match the group");
  const auto& e = parabolic_epimorphism(g, spec.parabolic(), spec.m, spec.summand);
  return spec.inducing() ? parabolic_induce(e, input) : parabolic_restrict(e, input);
}

/// xi (x) xi' on the product group G1 x G2.
inline ClassFunction outer_product(const std::shared_ptr<const ProductGroup>& prod, const ClassFunction& a, const ClassFunction& b) {
  if (a.group() != prod->first() || b.group() != prod->second()) throw std::invalid_argument("outer product: factor mismatch");
  std::vector<Complex> v(prod->order());
  for (Index x = 0; x < prod->order(); ++x) v[x] = a.at(prod->first_of(x)) * b.at(prod->second_of(x));
  return ClassFunction::from_elements(prod, v);
}

// Twists and linear characters.

/// All linear characters of g as class functions (cached); trivial first.
inline const std::vector<ClassFunction>& linear_class_functions(const GroupPtr& g) {
  static std::mutex mu;
  static std::map<const FiniteGroup*, std::vector<ClassFunction>> cache;
  {
    std::lock_guard lock(mu);
    auto it = cache.find(g.get());
    if (it != cache.end()) return it->second;
  }
  std::vector<ClassFunction> out;
  for (const auto& v : linear_characters(*g)) out.push_back(ClassFunction::from_elements(g, v));
  std::lock_guard lock(mu);
  return cache.emplace(g.get(), std::move(out)).first->second;
}

/// theta o det for every character theta of o_l2^x.
inline std::vector<ClassFunction> determinant_characters(const MatrixGroupPtr& g) {
  UnitGroup units(g->ring2());
  std::vector<ClassFunction> out;
  for (const auto& th : units.characters()) {
    const auto& cp = g->classes();
    std::vector<Complex> v(cp.count());
    for (std::size_t c = 0; c < cp.count(); ++c) v[c] = th(units.index(g->det(cp.classes[c].rep)));
    out.emplace_back(g, std::move(v));
  }
  return out;
}

/// chi_z o det for z in o_1.
inline ClassFunction twist_character(const MatrixGroupPtr& g, Code z) {
  const auto tw = twisting_characters(g->ring2());
  UnitGroup units(g->ring2());
  const auto& cp = g->classes();
  std::vector<Complex> v(cp.count());
  for (std::size_t c = 0; c < cp.count(); ++c) v[c] = tw.at(z)(units.index(g->det(cp.classes[c].rep)));
  return {g, std::move(v)};
}

inline ClassFunction twist(const MatrixGroupPtr& g, const ClassFunction& chi, Code z) {
  if (chi.group() != g) throw std::invalid_argument("twist: class function is not on the group");
  return chi * twist_character(g, z);
}

// K-spectrum.

struct SpectrumEntry {
  OrbitLabel label;
  long multiplicity = 0;  // summed over the characters of K in the orbit
};

/// Decomposes chi restricted to K = I + pi^(l-1) M_2(o_1) into characters of K
/// and groups them by orbit label.
inline std::vector<SpectrumEntry> k_spectrum(const MatrixGroupPtr& g, const ClassFunction& chi) {
  const Lambda l = g->lambda();
  if (l.l2 < 2) throw std::invalid_argument("K-spectrum needs l2 >= 2");
  if (chi.group() != g) throw std::invalid_argument("k_spectrum: class function is not on the group");
  const unsigned q = g->q();
  auto r1 = make_ring({g->backend(), q, 1});
  // f[u][v][w][z] = chi(k(u,v,w,z)), then a separable transform along each axis.
  const std::size_t n = static_cast<std::size_t>(q) * q * q * q;
  std::vector<Complex> f(n);
  for (Code u = 0; u < q; ++u)
    for (Code v = 0; v < q; ++v)
      for (Code w = 0; w < q; ++w)
        for (Code z = 0; z < q; ++z)
          f[((u * q + v) * q + w) * q + z] = chi.at(g->index_of(k_element(*g, {1, 0, u, v, w, z})));
  std::vector<Complex> kernel(static_cast<std::size_t>(q) * q);
  for (Code a = 0; a < q; ++a)
    for (Code x = 0; x < q; ++x) kernel[a * q + x] = std::conj(r1->psi(r1->mul(a, x)));
  std::size_t stride = 1;
  for (int axis = 0; axis < 4; ++axis) {
    std::vector<Complex> out(n, 0.0);
    for (std::size_t idx = 0; idx < n; ++idx) {
      const std::size_t coord = (idx / stride) % q;
      const std::size_t base = idx - coord * stride;
      Complex s = 0;
      for (std::size_t x = 0; x < q; ++x) s += kernel[coord * q + x] * f[base + x * stride];
      out[idx] = s;
    }
    f = std::move(out);
    stride *= q;
  }
  std::map<OrbitLabel, long> by_label;
  for (Code u = 0; u < q; ++u)
    for (Code v = 0; v < q; ++v)
      for (Code w = 0; w < q; ++w)
        for (Code z = 0; z < q; ++z) {
          const Complex m = f[((u * q + v) * q + w) * q + z] / static_cast<double>(n);
          if (std::abs(m.imag()) > kTol || std::abs(m.real() - std::round(m.real())) > kTol)
            throw NumericError("K-multiplicity is not an integer");
          const long mult = std::lround(m.real());
          if (mult < 0) throw NumericError("negative K-multiplicity");
          if (mult > 0) by_label[classify_orbit(*g, {1, 0, u, v, w, z})] += mult;
        }
  std::vector<SpectrumEntry> out;
  for (const auto& [lab, m] : by_label) out.push_back({lab, m});
  return out;
}

/// Orbit type of an irreducible character's K-spectrum ("i" .. "v").
inline std::string k_type(const MatrixGroupPtr& g, const ClassFunction& chi) {
  const auto spec = k_spectrum(g, chi);
  if (spec.empty()) throw NumericError("empty K-spectrum");
  for (const auto& e : spec)
    if (e.label.type != spec.front().label.type) throw NumericError("K-spectrum spans several orbit types");
  return spec.front().label.type;
}

/// Which one-dimensional characters twist a candidate in the primitivity and
/// cuspidality tests.
enum class TwistScope { all_linear, determinant };

/// Not a twist of a pullback from the floor group. For l2 >= 2 this is the
/// K-spectrum criterion; for l2 = 1 the floor is G_(l1-1) via a mod p^(l1-1)
/// and every twist in scope is checked for triviality on the kernel.
inline bool is_primitive(const MatrixGroupPtr& g, const ClassFunction& chi, TwistScope scope = TwistScope::all_linear) {
  const Lambda l = g->lambda();
  if (l.l2 >= 2) {
    for (const auto& e : k_spectrum(g, chi))
      if (e.label.type == "i") return false;
    return true;
  }
  if (l.l2 != 1 || l.l1 < 2) throw std::invalid_argument("primitivity is defined for l2 >= 1 and l1 >= 2");
  const Ring& r1 = *g->ring1();
  std::vector<Index> kernel;
  for (Index x = 0; x < g->order(); ++x)
    if (r1.reduce(g->element(x).a, l.l1 - 1) == r1.reduce(r1.one(), l.l1 - 1)) kernel.push_back(x);
  const double d = chi.degree();
  const std::vector<ClassFunction> twists =
      scope == TwistScope::all_linear ? linear_class_functions(g) : determinant_characters(g);
  for (const auto& t : twists) {
    bool trivial = true;
    for (Index x : kernel)
      if (std::abs(chi.at(x) * t.at(x) - d) > kTol) { trivial = false; break; }
    if (trivial) return false;
  }
  return true;
}

/// The parabolic data whose restriction functors define cuspidality: both
/// geometric summands and, for mu = (l1, m) with 0 < m < l2, both
/// infinitesimal kinds.
inline std::vector<const Epimorphism*> cuspidality_battery(const MatrixGroupPtr& g) {
  std::vector<const Epimorphism*> out{&parabolic_epimorphism(g, ParabolicKind::geometric, 0, Summand::first),
                                      &parabolic_epimorphism(g, ParabolicKind::geometric, 0, Summand::second)};
  for (const auto& mu : infinitesimal_set(g->lambda())) {
    out.push_back(&parabolic_epimorphism(g, ParabolicKind::embed, mu.l2, Summand::first));
    out.push_back(&parabolic_epimorphism(g, ParabolicKind::quot, mu.l2, Summand::first));
  }
  return out;
}

/// Primitive, and every restriction functor kills every twist.
inline bool is_cuspidal(const MatrixGroupPtr& g, const ClassFunction& chi, TwistScope scope = TwistScope::all_linear) {
  if (g->lambda().l2 < 1) throw std::invalid_argument("cuspidality needs rank 2");
  if (g->lambda().l1 >= 2 && !is_primitive(g, chi, scope)) return false;
  const std::vector<ClassFunction> twists =
      scope == TwistScope::all_linear ? linear_class_functions(g) : determinant_characters(g);
  for (const Epimorphism* e : cuspidality_battery(g)) {
    const auto& p = *e->source;
    std::vector<Complex> base(p.order());
    for (Index x = 0; x < p.order(); ++x) base[x] = chi.at(p.to_parent(x));
    std::vector<Complex> acc(e->target->order());
    for (const auto& t : twists) {
      std::fill(acc.begin(), acc.end(), Complex{0.0});
      for (Index x = 0; x < p.order(); ++x) acc[e->image[x]] += base[x] * t.at(p.to_parent(x));
      const double scale = static_cast<double>(e->kernel.size());
      for (const auto& a : acc)
        if (std::abs(a) > kTol * scale) return false;
    }
  }
  return true;
}

}  // namespace modrep2
