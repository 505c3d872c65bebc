#pragma once
// Explicitly enumerated finite groups: the common interface, subgroups given
// by member lists, direct products, conjugacy classes and linear characters.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "modrep2/tring.hpp"

namespace modrep2 {

using Index = std::uint32_t;
inline constexpr Index kNoIndex = static_cast<Index>(-1);

struct ConjugacyClass {
  Index rep = 0;  // smallest member index
  std::vector<Index> members;
  std::size_t size() const { return members.size(); }
};

/// Classes ordered with the identity class first, then by representative.
struct ClassPartition {
  std::vector<ConjugacyClass> classes;
  std::vector<Index> class_of;
  std::size_t count() const { return classes.size(); }
};

class FiniteGroup : public std::enable_shared_from_this<FiniteGroup> {
 public:
  virtual ~FiniteGroup() = default;
  virtual std::size_t order() const = 0;
  virtual Index mul(Index x, Index y) const = 0;
  virtual Index identity() const = 0;
  virtual std::string name() const = 0;

  Index inv(Index x) const {
    std::call_once(inv_once_, [this] { build_inverses(); });
    return inv_[x];
  }
  Index conj(Index g, Index x) const { return mul(mul(g, x), inv(g)); }
  Index pow(Index x, std::uint64_t e) const {
    Index r = identity();
    while (e--) r = mul(r, x);
    return r;
  }
  std::size_t element_order(Index x) const {
    std::size_t k = 1;
    for (Index y = x; y != identity(); y = mul(y, x)) ++k;
    return k;
  }

  /// Greedy generating set: each generator is the first element outside the
  /// subgroup generated so far.
  const std::vector<Index>& generators() const {
    std::call_once(gen_once_, [this] { build_generators(); });
    return gens_;
  }

  const ClassPartition& classes() const {
    std::call_once(class_once_, [this] { build_classes(); });
    return classes_;
  }
  std::size_t class_count() const { return classes().count(); }
  Index class_of(Index x) const { return classes().class_of[x]; }

  bool is_abelian() const {
    const auto& g = generators();
    for (Index a : g)
      for (Index b : g)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

  /// Closure of a set of elements under multiplication, as a membership mask.
  std::vector<char> closure(const std::vector<Index>& seeds) const {
    std::vector<char> in(order(), 0);
    std::vector<Index> gens;
    for (Index s : seeds)
      if (s != identity()) gens.push_back(s);
    std::vector<Index> stack{identity()};
    in[identity()] = 1;
    while (!stack.empty()) {
      const Index x = stack.back();
      stack.pop_back();
      for (Index g : gens) {
        const Index y = mul(x, g);
        if (!in[y]) { in[y] = 1; stack.push_back(y); }
      }
    }
    return in;
  }

 private:
  void build_inverses() const {
    const std::size_t n = order();
    inv_.assign(n, kNoIndex);
    for (Index x = 0; x < n; ++x) {
      if (inv_[x] != kNoIndex) continue;
      std::vector<Index> powers{x};
      while (powers.back() != identity()) powers.push_back(mul(powers.back(), x));
      const std::size_t m = powers.size();  // powers[k] = x^(k+1), powers[m-1] = e
      for (std::size_t k = 0; k < m; ++k) inv_[powers[k]] = powers[(2 * m - k - 2) % m];
    }
  }

  void build_generators() const {
    const std::size_t n = order();
    std::vector<char> in(n, 0);
    in[identity()] = 1;
    std::vector<Index> members{identity()};
    for (Index x = 0; x < n; ++x) {
      if (in[x]) continue;
      gens_.push_back(x);
      // Extend the closure: new elements are products of old members with x
      // and of everything with the generators.
      std::vector<Index> stack(members.begin(), members.end());
      while (!stack.empty()) {
        const Index y = stack.back();
        stack.pop_back();
        for (Index g : gens_) {
          const Index z = mul(y, g);
          if (!in[z]) { in[z] = 1; members.push_back(z); stack.push_back(z); }
        }
      }
    }
  }

  void build_classes() const {
    const std::size_t n = order();
    const auto& gens = generators();
    std::vector<Index> ginv;
    for (Index g : gens) ginv.push_back(inv(g));
    classes_.class_of.assign(n, kNoIndex);
    std::vector<ConjugacyClass> found;
    auto sweep = [&](Index start) {
      ConjugacyClass c;
      c.members.push_back(start);
      classes_.class_of[start] = 0;  // placeholder mark
      for (std::size_t i = 0; i < c.members.size(); ++i) {
        const Index y = c.members[i];
        for (std::size_t k = 0; k < gens.size(); ++k) {
          const Index z = mul(mul(ginv[k], y), gens[k]);
          if (classes_.class_of[z] == kNoIndex) {
            classes_.class_of[z] = 0;
            c.members.push_back(z);
          }
        }
      }
      std::sort(c.members.begin(), c.members.end());
      c.rep = c.members.front();
      found.push_back(std::move(c));
    };
    sweep(identity());
    for (Index x = 0; x < n; ++x)
      if (classes_.class_of[x] == kNoIndex) sweep(x);
    classes_.classes = std::move(found);
    for (Index c = 0; c < classes_.classes.size(); ++c)
      for (Index x : classes_.classes[c].members) classes_.class_of[x] = c;
  }

  mutable std::once_flag inv_once_, gen_once_, class_once_;
  mutable std::vector<Index> inv_;
  mutable std::vector<Index> gens_;
  mutable ClassPartition classes_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// Subgroup of a parent group, stored as sorted parent indices.
class Subgroup : public FiniteGroup {
 public:
  Subgroup(GroupPtr parent, std::vector<Index> members, std::string tag)
      : parent_(std::move(parent)), members_(std::move(members)), tag_(std::move(tag)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    local_.assign(parent_->order(), kNoIndex);
    for (Index i = 0; i < members_.size(); ++i) local_[members_[i]] = i;
    if (local_[parent_->identity()] == kNoIndex) throw std::invalid_argument("subgroup " + tag_ + " misses the identity");
    // Closed iff the closure of its own members stays inside.
    std::vector<Index> seeds;
    std::vector<char> reach(parent_->order(), 0);
    reach[parent_->identity()] = 1;
    for (Index m : members_) {
      if (reach[m]) continue;
      seeds.push_back(m);
      reach = parent_->closure(seeds);
      for (Index x = 0; x < reach.size(); ++x)
        if (reach[x] && local_[x] == kNoIndex) throw std::invalid_argument("subgroup " + tag_ + " is not closed");
    }
  }

  std::size_t order() const override { return members_.size(); }
  Index mul(Index x, Index y) const override { return local_[parent_->mul(members_[x], members_[y])]; }
  Index identity() const override { return local_[parent_->identity()]; }
  std::string name() const override { return tag_ + " < " + parent_->name(); }

  const GroupPtr& parent() const { return parent_; }
  const std::string& tag() const { return tag_; }
  Index to_parent(Index x) const { return members_[x]; }
  /// Local index or kNoIndex.
  Index from_parent(Index x) const { return local_[x]; }
  bool contains(Index parent_index) const { return local_[parent_index] != kNoIndex; }
  const std::vector<Index>& members() const { return members_; }

 private:
  GroupPtr parent_;
  std::vector<Index> members_;
  std::vector<Index> local_;
  std::string tag_;
};

using SubgroupPtr = std::shared_ptr<const Subgroup>;

inline SubgroupPtr make_subgroup(const GroupPtr& parent, const std::function<bool(Index)>& pred, const std::string& tag) {
  std::vector<Index> members;
  for (Index x = 0; x < parent->order(); ++x)
    if (pred(x)) members.push_back(x);
  return std::make_shared<const Subgroup>(parent, std::move(members), tag);
}

inline SubgroupPtr generated_subgroup(const GroupPtr& parent, const std::vector<Index>& seeds, const std::string& tag) {
  const auto in = parent->closure(seeds);
  std::vector<Index> members;
  for (Index x = 0; x < in.size(); ++x)
    if (in[x]) members.push_back(x);
  return std::make_shared<const Subgroup>(parent, std::move(members), tag);
}

/// Direct product; (x1, x2) has index x1 + |G1| x2.
class ProductGroup : public FiniteGroup {
 public:
  ProductGroup(GroupPtr g1, GroupPtr g2) : g1_(std::move(g1)), g2_(std::move(g2)) {}
  std::size_t order() const override { return g1_->order() * g2_->order(); }
  Index mul(Index x, Index y) const override {
    const auto n1 = static_cast<Index>(g1_->order());
    return g1_->mul(x % n1, y % n1) + n1 * g2_->mul(x / n1, y / n1);
  }
  Index identity() const override { return g1_->identity() + static_cast<Index>(g1_->order()) * g2_->identity(); }
  std::string name() const override { return g1_->name() + " x " + g2_->name(); }
  const GroupPtr& first() const { return g1_; }
  const GroupPtr& second() const { return g2_; }
  Index pair(Index x1, Index x2) const { return x1 + static_cast<Index>(g1_->order()) * x2; }
  Index first_of(Index x) const { return x % static_cast<Index>(g1_->order()); }
  Index second_of(Index x) const { return x / static_cast<Index>(g1_->order()); }

 private:
  GroupPtr g1_, g2_;
};

/// Derived subgroup as a membership mask: the normal closure of the
/// commutators of generators.
inline std::vector<char> derived_subgroup_mask(const FiniteGroup& g) {
  const auto& gens = g.generators();
  std::vector<Index> dgens;
  std::vector<char> in(g.order(), 0);
  in[g.identity()] = 1;
  auto add = [&](Index s) {
    if (in[s]) return false;
    dgens.push_back(s);
    in = g.closure(dgens);
    return true;
  };
  for (Index a : gens)
    for (Index b : gens) add(g.mul(g.mul(g.inv(a), g.inv(b)), g.mul(a, b)));
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < dgens.size(); ++i)
      for (Index h : gens) changed |= add(g.conj(h, dgens[i]));
  }
  return in;
}

/// All linear characters of g, as values per element; trivial first.
inline std::vector<std::vector<Complex>> linear_characters(const FiniteGroup& g) {
  const auto derived = derived_subgroup_mask(g);
  const std::size_t n = g.order();
  std::vector<Index> dlist;
  for (Index x = 0; x < n; ++x)
    if (derived[x]) dlist.push_back(x);
  // Label cosets x D in order of first appearance.
  std::vector<Index> coset(n, kNoIndex), reps;
  for (Index x = 0; x < n; ++x) {
    if (coset[x] != kNoIndex) continue;
    const auto c = static_cast<Index>(reps.size());
    reps.push_back(x);
    for (Index d : dlist) coset[g.mul(x, d)] = c;
  }
  AbelianGroup quotient{reps.size(), coset[g.identity()],
                        [&](std::size_t a, std::size_t b) { return coset[g.mul(reps[a], reps[b])]; }};
  std::vector<std::vector<Complex>> out;
  for (const auto& chi : character_group(quotient)) {
    std::vector<Complex> v(n);
    for (Index x = 0; x < n; ++x) v[x] = chi(coset[x]);
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace modrep2
