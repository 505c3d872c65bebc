#pragma once
// Truncated local rings o_l = Z/p^l and F_q[t]/(t^l), their unit groups,
// additive characters and characters of finite abelian groups.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace modrep2 {

using Complex = std::complex<double>;
using Code = std::uint32_t;

enum class Backend { padic, tpoly };

inline std::string to_string(Backend b) { return b == Backend::padic ? "padic" : "tpoly"; }

inline Backend backend_from_string(const std::string& s) {
  if (s == "padic") return Backend::padic;
  if (s == "tpoly") return Backend::tpoly;
  throw std::invalid_argument("unknown backend: " + s);
}

inline std::uint64_t ipow(std::uint64_t base, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= base;
  return r;
}

// q = p^f, or throws.
inline std::pair<unsigned, unsigned> prime_power_split(unsigned q) {
  if (q < 2) throw std::invalid_argument("q must be a prime power >= 2");
  unsigned p = 2;
  while (q % p != 0) ++p;
  unsigned f = 0, r = q;
  while (r % p == 0) { r /= p; ++f; }
  if (r != 1) throw std::invalid_argument("q must be a prime power, got " + std::to_string(q));
  return {p, f};
}

inline Complex root_of_unity(std::int64_t k, std::int64_t n) {
  k %= n;
  if (k < 0) k += n;
  if (k == 0) return {1.0, 0.0};
  if (2 * k == n) return {-1.0, 0.0};
  if (4 * k == n) return {0.0, 1.0};
  if (4 * k == 3 * n) return {0.0, -1.0};
  const double t = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
  return {std::cos(t), std::sin(t)};
}

/// F_q with q = p^f. Elements are coded 0..q-1 as base-p digit vectors of
/// polynomials in a root of the lexicographically first monic irreducible.
class FiniteField {
 public:
  explicit FiniteField(unsigned q) : q_(q) {
    std::tie(p_, f_) = prime_power_split(q);
    modulus_ = first_irreducible();
    add_.resize(q_ * q_);
    mul_.resize(q_ * q_);
    for (unsigned x = 0; x < q_; ++x)
      for (unsigned y = 0; y < q_; ++y) {
        add_[x * q_ + y] = slow_add(x, y);
        mul_[x * q_ + y] = slow_mul(x, y);
      }
    neg_.resize(q_);
    inv_.assign(q_, 0);
    trace_.resize(q_);
    for (unsigned x = 0; x < q_; ++x) {
      for (unsigned y = 0; y < q_; ++y) {
        if (add(x, y) == 0) neg_[x] = y;
        if (mul(x, y) == 1) inv_[x] = y;
      }
      // Tr(x) = x + x^p + ... + x^(p^(f-1)), which lies in the prime field.
      unsigned t = 0, y = x;
      for (unsigned i = 0; i < f_; ++i) {
        t = add(t, y);
        y = pow(y, p_);
      }
      if (t >= p_) throw std::logic_error("field trace left the prime field");
      trace_[x] = t;
    }
  }

  unsigned order() const { return q_; }
  unsigned characteristic() const { return p_; }
  unsigned degree() const { return f_; }
  /// Coefficients c_0..c_{f-1} of the monic defining polynomial (leading 1 omitted).
  const std::vector<unsigned>& modulus() const { return modulus_; }

  unsigned add(unsigned x, unsigned y) const { return add_[x * q_ + y]; }
  unsigned mul(unsigned x, unsigned y) const { return mul_[x * q_ + y]; }
  unsigned neg(unsigned x) const { return neg_[x]; }
  unsigned inv(unsigned x) const {
    if (x == 0) throw std::domain_error("inverse of zero in F_q");
    return inv_[x];
  }
  unsigned trace(unsigned x) const { return trace_[x]; }
  unsigned pow(unsigned x, unsigned e) const {
    unsigned r = 1;
    while (e--) r = mul(r, x);
    return r;
  }

 private:
  std::vector<unsigned> digits(unsigned x) const {
    std::vector<unsigned> d(f_);
    for (unsigned i = 0; i < f_; ++i) { d[i] = x % p_; x /= p_; }
    return d;
  }
  unsigned undigits(const std::vector<unsigned>& d) const {
    unsigned x = 0;
    for (unsigned i = f_; i-- > 0;) x = x * p_ + d[i];
    return x;
  }
  unsigned slow_add(unsigned x, unsigned y) const {
    auto a = digits(x), b = digits(y);
    for (unsigned i = 0; i < f_; ++i) a[i] = (a[i] + b[i]) % p_;
    return undigits(a);
  }
  unsigned slow_mul(unsigned x, unsigned y) const {
    auto a = digits(x), b = digits(y);
    std::vector<unsigned> prod(2 * f_, 0);
    for (unsigned i = 0; i < f_; ++i)
      for (unsigned j = 0; j < f_; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p_;
    for (unsigned k = 2 * f_ - 1; k >= f_ && k > 0; --k) {
      const unsigned c = prod[k];
      if (c == 0) continue;
      prod[k] = 0;
      for (unsigned i = 0; i < f_; ++i)
        prod[k - f_ + i] = (prod[k - f_ + i] + (p_ - c) * modulus_[i]) % p_;
    }
    prod.resize(f_);
    return undigits(prod);
  }

  // Monic polynomials of degree f ordered by their lower coefficients read as a
  // base-p integer; the first one with no monic factor of degree <= f/2.
  std::vector<unsigned> first_irreducible() const {
    if (f_ == 1) return {0};
    const unsigned count = static_cast<unsigned>(ipow(p_, f_));
    for (unsigned code = 0; code < count; ++code) {
      std::vector<unsigned> poly(f_ + 1);
      unsigned c = code;
      for (unsigned i = 0; i < f_; ++i) { poly[i] = c % p_; c /= p_; }
      poly[f_] = 1;
      if (is_irreducible(poly)) return {poly.begin(), poly.end() - 1};
    }
    throw std::logic_error("no irreducible polynomial found");
  }

  bool is_irreducible(const std::vector<unsigned>& poly) const {
    for (unsigned d = 1; 2 * d <= f_; ++d) {
      const unsigned count = static_cast<unsigned>(ipow(p_, d));
      for (unsigned code = 0; code < count; ++code) {
        std::vector<unsigned> div(d + 1);
        unsigned c = code;
        for (unsigned i = 0; i < d; ++i) { div[i] = c % p_; c /= p_; }
        div[d] = 1;
        if (remainder_is_zero(poly, div)) return false;
      }
    }
    return true;
  }

  bool remainder_is_zero(std::vector<unsigned> num, const std::vector<unsigned>& div) const {
    const std::size_t d = div.size() - 1;
    for (std::size_t k = num.size() - 1; k >= d; --k) {
      const unsigned c = num[k];
      if (c != 0)
        for (std::size_t i = 0; i <= d; ++i)
          num[k - d + i] = (num[k - d + i] + (p_ - c) * div[i]) % p_;
      if (k == 0) break;
    }
    for (std::size_t i = 0; i < d; ++i)
      if (num[i] != 0) return false;
    return true;
  }

  unsigned q_, p_ = 0, f_ = 0;
  std::vector<unsigned> modulus_;
  std::vector<unsigned> add_, mul_, neg_, inv_, trace_;
};

struct RingSpec {
  Backend backend = Backend::padic;
  unsigned q = 2;
  unsigned level = 1;
  auto operator<=>(const RingSpec&) const = default;
};

/// o_l for one backend, q and level l. Elements are codes in [0, q^l): the
/// integer representative for padic, the base-q digit vector of the
/// coefficients for tpoly. In both cases reduction to level m is code % q^m,
/// multiplication by pi^k is code * q^k and exact division by pi^k is code / q^k.
class Ring {
 public:
  explicit Ring(const RingSpec& spec) : spec_(spec) {
    auto [p, f] = prime_power_split(spec.q);
    p_ = p;
    f_ = f;
    if (spec.backend == Backend::padic && f != 1)
      throw std::invalid_argument("padic backend requires prime q, got " + std::to_string(spec.q));
    if (spec.backend == Backend::tpoly) field_ = std::make_shared<FiniteField>(spec.q);
    size_ = ipow(spec.q, spec.level);
    if (size_ > (1u << 20)) throw std::invalid_argument("ring too large");
    if (size_ <= kTableLimit) {
      add_.resize(size_ * size_);
      mul_.resize(size_ * size_);
      for (Code x = 0; x < size_; ++x)
        for (Code y = 0; y < size_; ++y) {
          add_[x * size_ + y] = slow_add(x, y);
          mul_[x * size_ + y] = slow_mul(x, y);
        }
    }
    neg_.resize(size_);
    inv_.assign(size_, 0);
    for (Code x = 0; x < size_; ++x) neg_[x] = slow_neg(x);
    for (Code x = 0; x < size_; ++x) {
      if (!is_unit(x)) continue;
      for (Code y = 0; y < size_; ++y)
        if (mul(x, y) == one()) { inv_[x] = y; break; }
    }
  }

  const RingSpec& spec() const { return spec_; }
  Backend backend() const { return spec_.backend; }
  unsigned q() const { return spec_.q; }
  unsigned level() const { return spec_.level; }
  unsigned characteristic() const { return p_; }
  Code size() const { return size_; }
  Code unit_count() const { return spec_.level == 0 ? 1 : size_ / spec_.q * (spec_.q - 1); }
  const FiniteField* field() const { return field_.get(); }

  Code zero() const { return 0; }
  Code one() const { return size_ == 1 ? 0 : 1; }
  /// Code of the uniformizer pi (p or t).
  Code uniformizer() const { return size_ <= spec_.q ? 0 : spec_.q; }

  Code add(Code x, Code y) const { return add_.empty() ? slow_add(x, y) : add_[x * size_ + y]; }
  Code mul(Code x, Code y) const { return mul_.empty() ? slow_mul(x, y) : mul_[x * size_ + y]; }
  Code neg(Code x) const { return neg_[x]; }
  Code sub(Code x, Code y) const { return add(x, neg(y)); }

  bool is_unit(Code x) const { return spec_.level == 0 || x % spec_.q != 0; }
  Code inv(Code x) const {
    if (!is_unit(x)) throw std::domain_error("inverse of a non-unit");
    return spec_.level == 0 ? 0 : inv_[x];
  }

  /// Largest k with x in pi^k o_l; level() for zero.
  unsigned valuation(Code x) const {
    if (x == 0) return spec_.level;
    unsigned v = 0;
    while (x % spec_.q == 0) { x /= spec_.q; ++v; }
    return v;
  }

  /// Image in o_m, m <= level.
  Code reduce(Code x, unsigned m) const { return x % static_cast<Code>(ipow(spec_.q, m)); }
  /// pi^k * x, staying at this level.
  Code mul_pi(Code x, unsigned k) const {
    if (k >= spec_.level) return 0;
    return static_cast<Code>((static_cast<std::uint64_t>(x) * ipow(spec_.q, k)) % size_);
  }
  /// y in o_{level-k} with x = pi^k y; requires valuation(x) >= k.
  Code div_pi(Code x, unsigned k) const {
    if (valuation(x) < k) throw std::domain_error("div_pi: valuation too small");
    return x / static_cast<Code>(ipow(spec_.q, k));
  }
  /// Leading digit: the coefficient of pi^(level-1) in the canonical expansion.
  Code top_digit(Code x) const { return x / static_cast<Code>(ipow(spec_.q, spec_.level - 1)); }

  /// Fixed primitive additive character of o_l. padic: exp(2 pi i x / p^l).
  /// tpoly: exp(2 pi i Tr(c_{l-1}) / p), c_{l-1} the top coefficient.
  Complex psi(Code x) const {
    if (spec_.level == 0) return {1.0, 0.0};
    if (spec_.backend == Backend::padic) return root_of_unity(x, size_);
    return root_of_unity(field_->trace(top_digit(x)), p_);
  }

  std::vector<Code> units() const {
    std::vector<Code> u;
    for (Code x = 0; x < size_; ++x)
      if (is_unit(x)) u.push_back(x);
    return u;
  }

  std::string describe() const {
    return to_string(spec_.backend) + "(q=" + std::to_string(spec_.q) + ",l=" + std::to_string(spec_.level) + ")";
  }

 private:
  static constexpr Code kTableLimit = 1024;

  Code slow_add(Code x, Code y) const {
    if (spec_.backend == Backend::padic) return (x + y) % size_;
    Code r = 0, scale = 1;
    for (unsigned i = 0; i < spec_.level; ++i) {
      r += field_->add(x % spec_.q, y % spec_.q) * scale;
      x /= spec_.q;
      y /= spec_.q;
      scale *= spec_.q;
    }
    return r;
  }
  Code slow_neg(Code x) const {
    if (spec_.backend == Backend::padic) return (size_ - x) % size_;
    Code r = 0, scale = 1;
    for (unsigned i = 0; i < spec_.level; ++i) {
      r += field_->neg(x % spec_.q) * scale;
      x /= spec_.q;
      scale *= spec_.q;
    }
    return r;
  }
  Code slow_mul(Code x, Code y) const {
    if (spec_.backend == Backend::padic)
      return static_cast<Code>((static_cast<std::uint64_t>(x) * y) % size_);
    const unsigned l = spec_.level;
    std::vector<unsigned> a(l), b(l), c(l, 0);
    for (unsigned i = 0; i < l; ++i) {
      a[i] = x % spec_.q; x /= spec_.q;
      b[i] = y % spec_.q; y /= spec_.q;
    }
    for (unsigned i = 0; i < l; ++i)
      for (unsigned j = 0; i + j < l; ++j) c[i + j] = field_->add(c[i + j], field_->mul(a[i], b[j]));
    Code r = 0;
    for (unsigned i = l; i-- > 0;) r = r * spec_.q + c[i];
    return r;
  }

  RingSpec spec_;
  unsigned p_ = 0, f_ = 0;
  Code size_ = 1;
  std::shared_ptr<FiniteField> field_;
  std::vector<Code> add_, mul_, neg_, inv_;
};

using RingPtr = std::shared_ptr<const Ring>;

/// Shared, immutable ring for a spec.
inline RingPtr make_ring(const RingSpec& spec) {
  static std::mutex mu;
  static std::map<RingSpec, RingPtr> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(spec);
  if (it != cache.end()) return it->second;
  auto r = std::make_shared<const Ring>(spec);
  cache.emplace(spec, r);
  return r;
}

/// Value type pairing a code with its ring.
class RingElem {
 public:
  RingElem(RingPtr ring, Code code) : ring_(std::move(ring)), code_(code) {
    if (code_ >= ring_->size()) throw std::out_of_range("ring code out of range");
  }
  const RingPtr& ring() const { return ring_; }
  Code code() const { return code_; }

  RingElem operator+(const RingElem& o) const { check(o); return {ring_, ring_->add(code_, o.code_)}; }
  RingElem operator-(const RingElem& o) const { check(o); return {ring_, ring_->sub(code_, o.code_)}; }
  RingElem operator*(const RingElem& o) const { check(o); return {ring_, ring_->mul(code_, o.code_)}; }
  RingElem operator-() const { return {ring_, ring_->neg(code_)}; }
  bool operator==(const RingElem& o) const { return ring_ == o.ring_ && code_ == o.code_; }

  bool is_unit() const { return ring_->is_unit(code_); }
  RingElem inv() const { return {ring_, ring_->inv(code_)}; }
  unsigned valuation() const { return ring_->valuation(code_); }
  /// Image in o_m.
  RingElem reduce(unsigned m) const {
    if (m > ring_->level()) throw std::invalid_argument("reduce: target level above source");
    return {make_ring({ring_->backend(), ring_->q(), m}), ring_->reduce(code_, m)};
  }
  /// Canonical representative in o_m, m >= level.
  RingElem lift(unsigned m) const {
    if (m < ring_->level()) throw std::invalid_argument("lift: target level below source");
    return {make_ring({ring_->backend(), ring_->q(), m}), code_};
  }
  Complex psi() const { return ring_->psi(code_); }

 private:
  void check(const RingElem& o) const {
    if (ring_ != o.ring_) throw std::invalid_argument("ring elements from different rings");
  }
  RingPtr ring_;
  Code code_;
};

/// A finite abelian group on 0..order-1 given by its operation.
struct AbelianGroup {
  std::size_t order = 1;
  std::size_t identity = 0;
  std::function<std::size_t(std::size_t, std::size_t)> op;
};

/// Character of an AbelianGroup with values exp(2 pi i e(x) / modulus).
struct AbelianCharacter {
  std::uint32_t modulus = 1;
  std::vector<std::uint32_t> exponent;
  Complex operator()(std::size_t x) const { return root_of_unity(exponent[x], modulus); }
  bool is_trivial() const {
    for (auto e : exponent)
      if (e != 0) return false;
    return true;
  }
};

namespace detail {
inline std::size_t element_order(const AbelianGroup& a, std::size_t x) {
  std::size_t k = 1, y = x;
  while (y != a.identity) { y = a.op(y, x); ++k; }
  return k;
}
}  // namespace detail

/// All characters of A, built one cyclic generator at a time: a character of
/// H extends to <H, g> in m ways, m the order of g modulo H. The trivial
/// character comes first and the order is deterministic.
inline std::vector<AbelianCharacter> character_group(const AbelianGroup& a) {
  const std::size_t n = a.order;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y)
      if (a.op(x, y) != a.op(y, x)) throw std::invalid_argument("character_group: group is not abelian");
  std::uint32_t e = 1;
  for (std::size_t x = 0; x < n; ++x) e = std::lcm(e, static_cast<std::uint32_t>(detail::element_order(a, x)));

  // Elements of the current subgroup H and, for each, characters' exponents.
  std::vector<std::size_t> members{a.identity};
  std::vector<char> in_h(n, 0);
  in_h[a.identity] = 1;
  std::vector<std::vector<std::uint32_t>> chars{{0}};  // chars[c][i] on members[i]
  std::vector<long> pos(n, -1);
  pos[a.identity] = 0;

  for (std::size_t g = 0; g < n; ++g) {
    if (in_h[g]) continue;
    std::size_t m = 1, gm = g;
    while (!in_h[gm]) { gm = a.op(gm, g); ++m; }
    // New members h * g^k for k = 0..m-1, in that order.
    const std::size_t hsize = members.size();
    std::vector<std::size_t> next = members;
    std::size_t gk = g;
    for (std::size_t k = 1; k < m; ++k) {
      for (std::size_t i = 0; i < hsize; ++i) next.push_back(a.op(members[i], gk));
      gk = a.op(gk, g);
    }
    std::vector<std::vector<std::uint32_t>> next_chars;
    for (const auto& chi : chars) {
      const std::uint32_t target = chi[pos[gm]];  // chi(g^m) = exp(2 pi i target / e)
      if (target % m != 0) throw std::logic_error("character extension failed");
      const std::uint32_t base = target / static_cast<std::uint32_t>(m);
      for (std::uint32_t j = 0; j < m; ++j) {
        const std::uint32_t w = (base + j * (e / static_cast<std::uint32_t>(m))) % e;  // exponent of chi'(g)
        std::vector<std::uint32_t> ext(hsize * m);
        for (std::size_t k = 0; k < m; ++k)
          for (std::size_t i = 0; i < hsize; ++i)
            ext[k * hsize + i] = static_cast<std::uint32_t>((chi[i] + k * w) % e);
        next_chars.push_back(std::move(ext));
      }
    }
    members = std::move(next);
    chars = std::move(next_chars);
    for (std::size_t i = 0; i < members.size(); ++i) {
      in_h[members[i]] = 1;
      pos[members[i]] = static_cast<long>(i);
    }
  }

  std::vector<AbelianCharacter> out;
  out.reserve(chars.size());
  for (const auto& chi : chars) {
    AbelianCharacter c;
    c.modulus = e;
    c.exponent.resize(n);
    for (std::size_t x = 0; x < n; ++x) c.exponent[x] = chi[pos[x]];
    out.push_back(std::move(c));
  }
  return out;
}

/// o_l^x with an index on its unit codes.
class UnitGroup {
 public:
  explicit UnitGroup(RingPtr ring) : ring_(std::move(ring)), units_(ring_->units()) {
    index_.assign(ring_->size(), -1);
    for (std::size_t i = 0; i < units_.size(); ++i) index_[units_[i]] = static_cast<long>(i);
  }
  const RingPtr& ring() const { return ring_; }
  std::size_t order() const { return units_.size(); }
  Code unit(std::size_t i) const { return units_[i]; }
  const std::vector<Code>& units() const { return units_; }
  std::size_t index(Code u) const {
    const long i = index_.at(u);
    if (i < 0) throw std::invalid_argument("not a unit");
    return static_cast<std::size_t>(i);
  }
  AbelianGroup as_abelian() const {
    return {units_.size(), index(ring_->one()),
            [this](std::size_t x, std::size_t y) { return index(ring_->mul(units_[x], units_[y])); }};
  }
  /// Characters indexed by unit position.
  std::vector<AbelianCharacter> characters() const { return character_group(as_abelian()); }

 private:
  RingPtr ring_;
  std::vector<Code> units_;
  std::vector<long> index_;
};

/// chi_z for z in o_1 (indexed by the code of z): characters of o_l^x with
/// chi_z(1 + pi^(l-1) x) = psi_1(z x), the first such in character_group
/// order; chi_0 is trivial. Needs l >= 2.
inline std::vector<AbelianCharacter> twisting_characters(const RingPtr& ring) {
  const unsigned l = ring->level();
  if (l < 2) throw std::invalid_argument("twisting characters need level >= 2");
  UnitGroup units(ring);
  const auto chars = units.characters();
  auto r1 = make_ring({ring->backend(), ring->q(), 1});
  std::vector<AbelianCharacter> out;
  for (Code z = 0; z < ring->q(); ++z) {
    bool found = false;
    for (const auto& chi : chars) {
      bool ok = true;
      for (Code x = 0; x < ring->q() && ok; ++x) {
        const Code u = ring->add(ring->one(), ring->mul_pi(x, l - 1));
        ok = std::abs(chi(units.index(u)) - r1->psi(r1->mul(z, x))) < 1e-9;
      }
      if (ok) { out.push_back(chi); found = true; break; }
    }
    if (!found) throw std::logic_error("no twisting character found");
  }
  return out;
}

}  // namespace modrep2
