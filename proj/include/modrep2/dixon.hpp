#pragma once
// Irreducible character degrees of an enumerated finite group from its class
// multiplication coefficients, by splitting the class algebra into common
// eigenspaces over a prime field F_r with r = 1 mod exp(G) and r > |G|.

#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "modrep2/finite_group.hpp"

namespace modrep2 {

/// Degree -> number of irreducibles of that degree.
using DegreeMultiset = std::map<std::uint64_t, std::uint64_t>;

inline std::uint64_t multiset_total(const DegreeMultiset& m) {
  std::uint64_t s = 0;
  for (const auto& [d, c] : m) s += c;
  return s;
}
inline std::uint64_t multiset_square_sum(const DegreeMultiset& m) {
  std::uint64_t s = 0;
  for (const auto& [d, c] : m) s += c * d * d;
  return s;
}

/// a[i][j][m] = #{(x, y) in C_i x C_j : x y = z_m} for the representative z_m.
struct ClassAlgebra {
  std::size_t k = 0;
  std::vector<std::uint64_t> sizes;
  std::vector<std::size_t> inverse_class;
  std::vector<std::uint32_t> coeff;  // flat, (i * k + j) * k + m

  std::uint32_t operator()(std::size_t i, std::size_t j, std::size_t m) const { return coeff[(i * k + j) * k + m]; }
};

inline ClassAlgebra class_algebra(const FiniteGroup& g) {
  const auto& cp = g.classes();
  ClassAlgebra a;
  a.k = cp.count();
  const std::size_t k = a.k;
  for (const auto& c : cp.classes) a.sizes.push_back(c.size());
  for (const auto& c : cp.classes) a.inverse_class.push_back(cp.class_of[g.inv(c.rep)]);
  a.coeff.assign(k * k * k, 0);
  for (std::size_t m = 0; m < k; ++m) {
    const Index z = cp.classes[m].rep;
    for (Index x = 0; x < g.order(); ++x) {
      const std::size_t i = cp.class_of[x], j = cp.class_of[g.mul(g.inv(x), z)];
      ++a.coeff[(i * k + j) * k + m];
    }
  }
  return a;
}

/// lcm of the element orders.
inline std::uint64_t exponent(const FiniteGroup& g) {
  std::uint64_t e = 1;
  for (const auto& c : g.classes().classes) e = std::lcm(e, static_cast<std::uint64_t>(g.element_order(c.rep)));
  return e;
}

namespace detail {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

class Fp {
 public:
  explicit Fp(std::uint64_t r) : r_(r) {}
  std::uint64_t r() const { return r_; }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % r_; }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + r_ - b) % r_; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return a * b % r_; }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t x = 1;
    a %= r_;
    while (e) {
      if (e & 1) x = mul(x, a);
      a = mul(a, a);
      e >>= 1;
    }
    return x;
  }
  std::uint64_t inv(std::uint64_t a) const {
    if (a % r_ == 0) throw std::domain_error("inverse of zero mod r");
    return pow(a, r_ - 2);
  }

 private:
  std::uint64_t r_;
};

using Row = std::vector<std::uint64_t>;
using Mat = std::vector<Row>;

/// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> rref(Mat& rows, const Fp& f) {
  std::vector<std::size_t> pivots;
  if (rows.empty()) return pivots;
  const std::size_t ncol = rows[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncol && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    const std::uint64_t s = f.inv(rows[r][c]);
    for (auto& x : rows[r]) x = f.mul(x, s);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const std::uint64_t t = rows[i][c];
      for (std::size_t j = c; j < ncol; ++j) rows[i][j] = f.sub(rows[i][j], f.mul(t, rows[r][j]));
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

/// Null space of a square matrix, as row vectors.
inline Mat kernel(Mat a, const Fp& f) {
  const std::size_t n = a.size();
  const auto piv = rref(a, f);
  std::vector<char> is_piv(n, 0);
  for (auto c : piv) is_piv[c] = 1;
  Mat out;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_piv[free]) continue;
    Row v(n, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = f.sub(0, a[r][free]);
    out.push_back(std::move(v));
  }
  return out;
}

/// Characteristic polynomial via reduction to Hessenberg form; coefficients
/// low degree first, monic.
inline Row char_poly(Mat h, const Fp& f) {
  const std::size_t n = h.size();
  for (std::size_t c = 0; c + 2 < n; ++c) {
    std::size_t i = c + 1;
    while (i < n && h[i][c] == 0) ++i;
    if (i == n) continue;
    if (i != c + 1) {
      std::swap(h[i], h[c + 1]);
      for (auto& row : h) std::swap(row[i], row[c + 1]);
    }
    const std::uint64_t pinv = f.inv(h[c + 1][c]);
    for (std::size_t j = c + 2; j < n; ++j) {
      if (h[j][c] == 0) continue;
      const std::uint64_t u = f.mul(h[j][c], pinv);
      for (std::size_t t = 0; t < n; ++t) h[j][t] = f.sub(h[j][t], f.mul(u, h[c + 1][t]));
      for (std::size_t t = 0; t < n; ++t) h[t][c + 1] = f.add(h[t][c + 1], f.mul(u, h[t][j]));
    }
  }
  std::vector<Row> p(n + 1);
  p[0] = {1};
  for (std::size_t m = 1; m <= n; ++m) {
    // (x - h[m-1][m-1]) p[m-1]
    Row cur(m + 1, 0);
    for (std::size_t d = 0; d < p[m - 1].size(); ++d) {
      cur[d + 1] = f.add(cur[d + 1], p[m - 1][d]);
      cur[d] = f.sub(cur[d], f.mul(h[m - 1][m - 1], p[m - 1][d]));
    }
    std::uint64_t t = 1;
    for (std::size_t i = m - 1; i >= 1; --i) {
      t = f.mul(t, h[i][i - 1]);
      const std::uint64_t coef = f.mul(t, h[i - 1][m - 1]);
      if (coef != 0)
        for (std::size_t d = 0; d < p[i - 1].size(); ++d) cur[d] = f.sub(cur[d], f.mul(coef, p[i - 1][d]));
    }
    p[m] = std::move(cur);
  }
  return p[n];
}

inline std::vector<std::uint64_t> roots(const Row& poly, const Fp& f) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t x = 0; x < f.r(); ++x) {
    std::uint64_t v = 0;
    for (std::size_t d = poly.size(); d-- > 0;) v = f.add(f.mul(v, x), poly[d]);
    if (v == 0) out.push_back(x);
  }
  return out;
}

/// Splits the subspace spanned by the RREF rows of `basis` (invariant under m,
/// which acts on column vectors) into eigenspaces of m.
inline std::vector<Mat> split(const Mat& basis, const std::vector<std::size_t>& pivots, const Mat& m, const Fp& f) {
  const std::size_t d = basis.size(), k = m.size();
  if (d == 1) return {basis};
  // a[s][t] = coordinate s of m * basis[t].
  Mat a(d, Row(d, 0));
  for (std::size_t t = 0; t < d; ++t) {
    Row img(k, 0);
    for (std::size_t i = 0; i < k; ++i) {
      std::uint64_t s = 0;
      for (std::size_t j = 0; j < k; ++j)
        if (m[i][j] && basis[t][j]) s = f.add(s, f.mul(m[i][j], basis[t][j]));
      img[i] = s;
    }
    for (std::size_t s = 0; s < d; ++s) a[s][t] = img[pivots[s]];
  }
  std::vector<Mat> out;
  std::size_t total = 0;
  for (std::uint64_t lam : roots(char_poly(a, f), f)) {
    Mat shifted = a;
    for (std::size_t s = 0; s < d; ++s) shifted[s][s] = f.sub(shifted[s][s], lam);
    Mat sub;
    for (const auto& c : kernel(shifted, f)) {
      Row v(k, 0);
      for (std::size_t t = 0; t < d; ++t)
        if (c[t])
          for (std::size_t j = 0; j < k; ++j) v[j] = f.add(v[j], f.mul(c[t], basis[t][j]));
      sub.push_back(std::move(v));
    }
    total += sub.size();
    out.push_back(std::move(sub));
  }
  if (total != d) throw std::runtime_error("eigenspace splitting incomplete");
  return out;
}

}  // namespace detail

/// The n-th prime r (n = 0, 1, ...) with r = 1 mod e and r > bound.
inline std::uint64_t dixon_prime(std::uint64_t e, std::uint64_t bound, unsigned n = 0, std::uint64_t limit = 1ull << 31) {
  std::uint64_t start = bound / e * e + 1;
  if (start <= bound) start += e;
  for (std::uint64_t r = start; r < limit; r += e)
    if (detail::is_prime(r) && n-- == 0) return r;
  throw std::runtime_error("no suitable prime below the bound");
}

/// Degrees of the irreducible characters. `prime_choice` selects among the
/// admissible primes; results must not depend on it.
inline DegreeMultiset irr_degrees(const FiniteGroup& g, unsigned prime_choice = 0) {
  const auto& cp = g.classes();
  const std::size_t k = cp.count();
  const std::uint64_t order = g.order();
  const detail::Fp f(dixon_prime(exponent(g), order, prime_choice));
  std::vector<std::uint64_t> inv_class(k);
  for (std::size_t i = 0; i < k; ++i) inv_class[i] = cp.class_of[g.inv(cp.classes[i].rep)];

  // Class matrix for a weighting c of the classes: (sum_i c_i M_i)[j][m].
  auto class_matrix = [&](const std::vector<std::uint64_t>& c) {
    detail::Mat m(k, detail::Row(k, 0));
    for (std::size_t col = 0; col < k; ++col) {
      const Index z = cp.classes[col].rep;
      for (Index x = 0; x < order; ++x) {
        const std::uint64_t w = c[cp.class_of[x]];
        if (w == 0) continue;
        auto& cell = m[cp.class_of[g.mul(g.inv(x), z)]][col];
        cell = f.add(cell, w);
      }
    }
    return m;
  };

  detail::Mat whole(k, detail::Row(k, 0));
  for (std::size_t i = 0; i < k; ++i) whole[i][i] = 1;
  std::vector<detail::Mat> spaces{whole};
  // A fixed generic combination first, then single class matrices as needed.
  std::vector<std::uint64_t> weights(k);
  std::uint64_t seed = 0x9e3779b97f4a7c15ull;
  for (auto& w : weights) {
    seed ^= seed << 13; seed ^= seed >> 7; seed ^= seed << 17;
    w = seed % f.r();
  }
  auto refine = [&](const detail::Mat& m) {
    std::vector<detail::Mat> next;
    for (auto& s : spaces) {
      if (s.size() == 1) { next.push_back(std::move(s)); continue; }
      auto piv = detail::rref(s, f);
      for (auto& part : detail::split(s, piv, m, f)) {
        detail::rref(part, f);
        next.push_back(std::move(part));
      }
    }
    spaces = std::move(next);
  };
  refine(class_matrix(weights));
  for (std::size_t i = 1; i < k && spaces.size() < k; ++i) {
    std::vector<std::uint64_t> e(k, 0);
    e[i] = 1;
    refine(class_matrix(e));
  }
  if (spaces.size() != k) throw std::runtime_error("class algebra did not split into one-dimensional eigenspaces");

  DegreeMultiset out;
  for (const auto& s : spaces) {
    auto w = s[0];
    const std::uint64_t scale = f.inv(w[0]);
    for (auto& x : w) x = f.mul(x, scale);
    std::uint64_t sum = 0;
    for (std::size_t i = 0; i < k; ++i) sum = f.add(sum, f.mul(f.mul(w[i], w[inv_class[i]]), f.inv(cp.classes[i].size() % f.r())));
    const std::uint64_t d2 = f.mul(order % f.r(), f.inv(sum));
    auto d = static_cast<std::uint64_t>(std::llround(std::sqrt(static_cast<double>(d2))));
    if (d * d != d2) throw std::runtime_error("degree square is not a perfect square");
    ++out[d];
  }
  if (multiset_square_sum(out) != order) throw std::runtime_error("degree squares do not sum to the group order");
  return out;
}

}  // namespace modrep2
