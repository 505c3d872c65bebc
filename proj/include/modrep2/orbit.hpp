#pragma once
// Conjugacy class counts, characters of the abelian congruence kernels
// K^{i,sigma} and the coadjoint-type action of G_lambda on them.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "modrep2/glam.hpp"

namespace modrep2 {

/// Closed form for the number of conjugacy classes of G_lambda.
inline std::uint64_t class_count_formula(const Lambda& l, unsigned q) {
  validate(l);
  const std::uint64_t Q = q;
  if (l.l2 == 0) return ipow(q, l.l1 - 1) * (Q - 1);
  if (l.rectangular()) return ipow(q, 2 * l.l1) - ipow(q, l.l1 - 1);
  if (l.l1 == 1) return Q * Q - 1;
  // Holds for l2 = 1 as well, where it equals q^(l-2) (q^3 - q^2 + q - 1).
  return ipow(q, l.l1 + l.l2 - 2) * (Q * Q - Q + 2) - ipow(q, l.l1 - 2) * (Q + 1);
}

/// Character of K^{i,sigma}: u, v in o_i and w, z in o_(i-sigma), paired with
/// I + (p^(l1-i) u, p^(l1-i) v; p^(l2-i+sigma) w, p^(l2-i+sigma) z) through
/// psi(u^ u + v^ v + pi^sigma (w^ w + z^ z)).
struct DualChar {
  unsigned i = 1;
  unsigned sigma = 0;
  Code u = 0, v = 0, w = 0, z = 0;
  auto operator<=>(const DualChar&) const = default;
  std::string str() const {
    return "(" + std::to_string(u) + "," + std::to_string(v) + ";" + std::to_string(w) + "," + std::to_string(z) + ")";
  }
};

/// Coordinates (u, v, w, z) of an element of K^{i,sigma}.
inline DualChar k_coordinates(const MatrixGroup& g, const GElem& x, unsigned i, unsigned sigma) {
  const Lambda l = g.lambda();
  const Ring& r1 = *g.ring1();
  const Ring& r2 = *g.ring2();
  const unsigned eb = l.l2 - i, ec = l.l2 - i + sigma;
  return {i, sigma, r1.div_pi(r1.sub(x.a, r1.one()), l.l1 - i), r2.div_pi(x.b, eb), r2.div_pi(x.c, ec),
          r2.div_pi(r2.sub(x.d, r2.one()), ec)};
}

inline GElem k_element(const MatrixGroup& g, const DualChar& coords) {
  const Lambda l = g.lambda();
  const Ring& r1 = *g.ring1();
  const Ring& r2 = *g.ring2();
  const unsigned i = coords.i, s = coords.sigma;
  return {r1.add(r1.one(), r1.mul_pi(coords.u, l.l1 - i)), r2.mul_pi(coords.v, l.l2 - i), r2.mul_pi(coords.w, l.l2 - i + s),
          r2.add(r2.one(), r2.mul_pi(coords.z, l.l2 - i + s))};
}

/// All characters of K^{i,sigma} in lexicographic (u, v, w, z) order.
inline std::vector<DualChar> all_dual_chars(const MatrixGroup& g, unsigned i, unsigned sigma) {
  const Code si = static_cast<Code>(ipow(g.q(), i)), sj = static_cast<Code>(ipow(g.q(), i - sigma));
  std::vector<DualChar> out;
  for (Code u = 0; u < si; ++u)
    for (Code v = 0; v < si; ++v)
      for (Code w = 0; w < sj; ++w)
        for (Code z = 0; z < sj; ++z) out.push_back({i, sigma, u, v, w, z});
  return out;
}

inline Complex pairing(const MatrixGroup& g, const DualChar& theta, const GElem& k) {
  const auto c = k_coordinates(g, k, theta.i, theta.sigma);
  auto ri = make_ring({g.backend(), g.q(), theta.i});
  auto rj = make_ring({g.backend(), g.q(), theta.i - theta.sigma});
  const Code low = rj->add(rj->mul(theta.w, c.w), rj->mul(theta.z, c.z));
  const Code s = ri->add(ri->add(ri->mul(theta.u, c.u), ri->mul(theta.v, c.v)), ri->mul_pi(low, theta.sigma));
  return ri->psi(s);
}

/// g . theta, defined by <g . theta, k> = <theta, g^-1 k g>. Non-rectangular
/// lambda uses the explicit coefficient formula on K^{i,sigma}; rectangular
/// lambda (i = 1 only) uses theta -> g'^-t theta g'^t with g' = g mod pi.
inline DualChar dual_action(const MatrixGroup& g, const GElem& x, const DualChar& th) {
  const Lambda l = g.lambda();
  if (l.l2 < 1) throw std::invalid_argument("dual action needs rank 2");
  if (2 * th.i > l.l2 + th.sigma) throw std::invalid_argument("K^{i,sigma} is not abelian for these parameters");
  const unsigned i = th.i, s = th.sigma;
  if (l.rectangular()) {
    if (i != 1 || s != 0) throw std::invalid_argument("rectangular dual action is implemented on K only");
    auto r = make_ring({g.backend(), g.q(), 1});
    const Ring& f = *r;
    const Code a = g.ring1()->reduce(x.a, 1), b = g.ring2()->reduce(x.b, 1), c = g.ring2()->reduce(x.c, 1),
               d = g.ring2()->reduce(x.d, 1);
    // h = g'^t = (a c; b d); result h^-1 theta h.
    const Code di = f.inv(f.sub(f.mul(a, d), f.mul(b, c)));
    const Code ha = a, hb = c, hc = b, hd = d;
    const Code ia = f.mul(di, hd), ib = f.mul(di, f.neg(hb)), ic = f.mul(di, f.neg(hc)), id = f.mul(di, ha);
    // t = theta h
    const Code ta = f.add(f.mul(th.u, ha), f.mul(th.v, hc)), tb = f.add(f.mul(th.u, hb), f.mul(th.v, hd));
    const Code tc = f.add(f.mul(th.w, ha), f.mul(th.z, hc)), td = f.add(f.mul(th.w, hb), f.mul(th.z, hd));
    return {1, 0, f.add(f.mul(ia, ta), f.mul(ib, tc)), f.add(f.mul(ia, tb), f.mul(ib, td)),
            f.add(f.mul(ic, ta), f.mul(id, tc)), f.add(f.mul(ic, tb), f.mul(id, td))};
  }
  auto rip = make_ring({g.backend(), g.q(), i});
  auto rjp = make_ring({g.backend(), g.q(), i - s});
  const Ring& R = *rip;   // o_i
  const Ring& S = *rjp;   // o_(i-sigma)
  const unsigned k = g.delta_exponent();
  // Entries in o_i and their images in o_(i-sigma).
  const Code a = g.ring1()->reduce(x.a, i), b = g.ring2()->reduce(x.b, i), c = g.ring2()->reduce(x.c, i),
             d = g.ring2()->reduce(x.d, i);
  const Code ai = R.inv(a), dinv = R.inv(d);
  const Code del = R.mul_pi(R.one(), k);
  const Code bc = R.mul(b, c);
  const Code ad_inv = R.mul(ai, dinv);
  const Code e_inv = R.inv(R.sub(R.one(), R.mul(R.mul(ad_inv, bc), del)));
  auto lo = [&](Code y) { return R.reduce(y, i - s); };
  auto up = [](Code y) { return y; };  // canonical lift o_(i-sigma) -> o_i
  const Code u = th.u, v = th.v, W = up(th.w), Z = up(th.z);
  const Code del2 = R.mul(del, del);
  // Row one, computed in o_i.
  Code n11 = R.add(u, R.mul(R.mul(R.mul(b, del), ai), v));
  n11 = R.sub(n11, R.mul(R.mul(R.mul(c, del), dinv), W));
  n11 = R.sub(n11, R.mul(R.mul(R.mul(bc, del2), ad_inv), Z));
  Code n12 = R.mul(R.mul(d, ai), v);
  n12 = R.sub(n12, R.mul(R.mul(R.mul(c, del), ai), Z));
  n12 = R.add(n12, R.mul(R.mul(c, ai), u));
  n12 = R.sub(n12, R.mul(R.mul(R.mul(R.mul(c, c), del), ad_inv), W));
  // Row two: the same expressions, reduced to o_(i-sigma).
  const Code ui = lo(u), vi = lo(v), wi = th.w, zi = th.z;
  const Code as = lo(a), bs = lo(b), cs = lo(c), ds = lo(d);
  const Code ais = S.inv(as), dis = S.inv(ds), dels = lo(del), bcs = S.mul(bs, cs), adis = S.mul(ais, dis);
  Code n21 = S.mul(S.mul(as, dis), wi);
  n21 = S.add(n21, S.mul(S.mul(S.mul(bs, dels), dis), zi));
  n21 = S.sub(n21, S.mul(S.mul(bs, dis), ui));
  n21 = S.sub(n21, S.mul(S.mul(S.mul(S.mul(bs, bs), dels), adis), vi));
  Code n22 = S.sub(zi, S.mul(S.mul(bs, ais), vi));
  n22 = S.add(n22, S.mul(S.mul(cs, dis), wi));
  n22 = S.sub(n22, S.mul(S.mul(bcs, adis), ui));
  const Code es = lo(e_inv);
  return {i, s, R.mul(e_inv, n11), R.mul(e_inv, n12), S.mul(es, n21), S.mul(es, n22)};
}

/// Orbit label for characters of K = K^{1,0}; constant on orbits.
struct OrbitLabel {
  int table = 1;        // 1: non-rectangular, 2: rectangular
  std::string type;     // "i" .. "v"
  std::vector<Code> params;
  auto operator<=>(const OrbitLabel&) const = default;
  std::string str() const {
    std::string s = "T" + std::to_string(table) + "(" + type;
    for (std::size_t j = 0; j < params.size(); ++j) s += (j == 0 ? ";" : ",") + std::to_string(params[j]);
    return s + ")";
  }
};

inline OrbitLabel classify_orbit(const MatrixGroup& g, const DualChar& th) {
  if (th.i != 1 || th.sigma != 0) throw std::invalid_argument("classify_orbit works on characters of K");
  auto r = make_ring({g.backend(), g.q(), 1});
  const Ring& f = *r;
  if (!g.lambda().rectangular()) {
    if (th.u != 0) {
      // Diagonal representative (u, 0; 0, (u z - v w) / u).
      const Code zd = f.mul(f.sub(f.mul(th.u, th.z), f.mul(th.v, th.w)), f.inv(th.u));
      return {1, "ii", {th.u, zd}};
    }
    if (th.v == 0 && th.w == 0) return {1, "i", {th.z}};
    if (th.v == 0) return {1, "iii", {}};
    if (th.w == 0) return {1, "iv", {}};
    return {1, "v", {f.mul(th.v, th.w)}};
  }
  // Conjugacy type of the matrix (u v; w z) over F_q from its characteristic polynomial.
  const Code tr = f.add(th.u, th.z), dt = f.sub(f.mul(th.u, th.z), f.mul(th.v, th.w));
  std::vector<Code> roots;
  for (Code x = 0; x < g.q(); ++x)
    if (f.add(f.sub(f.mul(x, x), f.mul(tr, x)), dt) == 0) roots.push_back(x);
  if (roots.size() == 2) return {2, "ii", roots};
  if (roots.size() == 1) {
    if (th.v == 0 && th.w == 0 && th.u == th.z) return {2, "i", {th.u}};
    return {2, "iii", {roots[0]}};
  }
  return {2, "iv", {tr, dt}};
}

struct OrbitReport {
  DualChar rep;  // smallest member
  std::size_t size = 0;
  OrbitLabel label;
};

/// Orbits of G_lambda on the characters of K, swept with group generators.
inline std::vector<OrbitReport> dual_orbits(const MatrixGroup& g) {
  const auto chars = all_dual_chars(g, 1, 0);
  std::map<DualChar, std::size_t> pos;
  for (std::size_t j = 0; j < chars.size(); ++j) pos.emplace(chars[j], j);
  std::vector<char> seen(chars.size(), 0);
  std::vector<OrbitReport> out;
  for (std::size_t s = 0; s < chars.size(); ++s) {
    if (seen[s]) continue;
    OrbitReport rep{chars[s], 0, classify_orbit(g, chars[s])};
    std::vector<std::size_t> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      const DualChar th = chars[stack.back()];
      stack.pop_back();
      ++rep.size;
      const auto lab = classify_orbit(g, th);
      if (lab != rep.label) throw std::logic_error("orbit label is not invariant: " + lab.str() + " vs " + rep.label.str());
      for (Index gen : g.generators()) {
        const std::size_t t = pos.at(dual_action(g, g.element(gen), th));
        if (!seen[t]) { seen[t] = 1; stack.push_back(t); }
      }
    }
    out.push_back(rep);
  }
  return out;
}

/// Conjugation orbits of G on K: the classes of G inside K.
inline std::size_t orbits_on_k(const MatrixGroupPtr& g) {
  const auto k = kernel_k(g);
  std::size_t n = 0;
  for (const auto& c : g->classes().classes)
    if (k->contains(c.rep)) ++n;
  return n;
}

inline std::size_t orbits_on_k_formula(const Lambda& l, unsigned q) {
  return l.rectangular() ? q * q + q : q * q + q + 1;
}

struct TraceDet {
  Code trace = 0;  // in o_l
  Code det = 0;    // in o_(l - eps)
  auto operator<=>(const TraceDet&) const = default;
};

/// Tr_delta = u + delta z mod p^l and Det = u z - w v mod p^(l-eps) for a
/// character of K^{l,eps} at the half level.
inline TraceDet trace_det_invariants(const MatrixGroup& g, const DualChar& th) {
  const auto h = half_level(g.lambda());
  if (th.i != h.level || th.sigma != h.eps) throw std::invalid_argument("trace/det invariants live at the half level");
  auto ri = make_ring({g.backend(), g.q(), th.i});
  auto rj = make_ring({g.backend(), g.q(), th.i - th.sigma});
  const Ring& R = *ri;
  const Ring& S = *rj;
  const Code tr = R.add(th.u, R.mul_pi(th.z, g.delta_exponent()));
  const Code dt = S.sub(S.mul(R.reduce(th.u, S.level()), th.z), S.mul(th.w, R.reduce(th.v, S.level())));
  return {tr, dt};
}

}  // namespace modrep2
