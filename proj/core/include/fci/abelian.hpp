#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fci/error.hpp"

namespace fci {

/// One cyclic summand Z/p^e.
struct Component {
  std::int64_t prime = 2;
  int exponent = 1;

  std::int64_t modulus() const;
  friend auto operator<=>(const Component&, const Component&) = default;
};

struct AbElement {
  std::vector<std::int64_t> coords;

  friend auto operator<=>(const AbElement&, const AbElement&) = default;
};

/// A finite abelian group written as a direct sum of cyclic prime-power
/// groups, components sorted ascending by (prime, exponent).
class FinAbelian {
 public:
  FinAbelian() = default;
  explicit FinAbelian(std::vector<Component> components, std::int64_t cap = kDefaultOrderCap);

  /// Z/n as a sum of its primary parts.
  static FinAbelian cyclic(std::int64_t n, std::int64_t cap = kDefaultOrderCap);

  const std::vector<Component>& components() const { return components_; }
  std::size_t num_components() const { return components_.size(); }
  std::int64_t order() const { return order_; }
  /// Least common multiple of the component moduli.
  std::int64_t exponent() const;
  std::vector<std::int64_t> primes() const;
  bool is_p_group(std::int64_t p) const;
  bool is_trivial() const { return components_.empty(); }

  AbElement zero() const;
  AbElement basis(std::size_t i) const;
  /// Builds an element from raw integers, reducing each coordinate.
  AbElement element(std::vector<std::int64_t> coords) const;
  bool contains(const AbElement& a) const;

  AbElement add(const AbElement& a, const AbElement& b) const;
  AbElement neg(const AbElement& a) const;
  AbElement sub(const AbElement& a, const AbElement& b) const { return add(a, neg(b)); }
  AbElement scale(const AbElement& a, std::int64_t n) const;
  std::int64_t order_of(const AbElement& a) const;

  /// Mixed-radix enumeration: index 0 is zero, the last component varies fastest.
  AbElement element_at(std::int64_t index) const;
  std::int64_t index_of(const AbElement& a) const;
  void for_each(const std::function<void(const AbElement&)>& fn) const;

  /// The Sylow p-subgroup as its own group, plus the component positions it came from.
  FinAbelian p_part(std::int64_t p, std::vector<std::size_t>* positions = nullptr) const;

  std::string to_string() const;

  friend bool operator==(const FinAbelian& a, const FinAbelian& b) {
    return a.components_ == b.components_;
  }

 private:
  void check(const AbElement& a) const;

  std::vector<Component> components_;
  std::int64_t order_ = 1;
};

std::string to_string(const AbElement& a);

/// A subgroup of the form (+) p_i^{s_i} Z/p_i^{e_i} inside a FinAbelian.
/// Every Omega_k of an abelian p-group, and every fixed-point group of a power
/// automorphism, has this shape.
class AbSubgroup {
 public:
  AbSubgroup(FinAbelian parent, std::vector<int> shifts);

  const FinAbelian& parent() const { return parent_; }
  const std::vector<int>& shifts() const { return shifts_; }
  std::int64_t order() const;
  bool contains(const AbElement& a) const;
  /// Isomorphism type of the subgroup itself.
  FinAbelian shape() const;
  /// Image of an element of shape() in the parent.
  AbElement embed(const AbElement& a) const;
  std::vector<AbElement> elements() const;

  friend bool operator==(const AbSubgroup&, const AbSubgroup&) = default;

 private:
  FinAbelian parent_;
  std::vector<int> shifts_;
};

/// Omega_k(A) = {a : p^k a = 0} for an abelian p-group A. Throws NotAPGroup.
AbSubgroup omega(const FinAbelian& a, int k, std::int64_t p);

/// Number of elements a with p^k a = 0, as the closed-form product of min(p^k, p^e).
std::int64_t omega_order(const FinAbelian& a, int k, std::int64_t p);

struct FgElement {
  std::vector<std::int64_t> free;
  AbElement torsion;

  friend auto operator<=>(const FgElement&, const FgElement&) = default;
};

/// Z^r (+) T with T finite.
class FgAbelian {
 public:
  FgAbelian() = default;
  FgAbelian(int free_rank, FinAbelian torsion);

  int free_rank() const { return free_rank_; }
  const FinAbelian& torsion() const { return torsion_; }
  bool is_periodic() const { return free_rank_ == 0; }

  FgElement zero() const;
  FgElement element(std::vector<std::int64_t> free, std::vector<std::int64_t> torsion) const;
  FgElement add(const FgElement& a, const FgElement& b) const;
  FgElement neg(const FgElement& a) const;
  FgElement scale(const FgElement& a, std::int64_t n) const;
  Cardinality order_of(const FgElement& a) const;
  bool contains(const FgElement& a) const;

  std::string to_string() const;

  friend bool operator==(const FgAbelian&, const FgAbelian&) = default;

 private:
  void check(const FgElement& a) const;

  int free_rank_ = 0;
  FinAbelian torsion_;
};

int rank_p(const FinAbelian& a, std::int64_t p);
int rank_p(const FgAbelian& a, std::int64_t p);
int rank_0(const FgAbelian& a);
int total_rank(const FgAbelian& a);

/// A summand of a finite-rank abelian group: Z/p^e, or the quasicyclic group
/// Z(p^inf) when `exponent` is empty.
struct QuasiComponent {
  std::int64_t prime = 2;
  std::optional<int> exponent;

  bool is_quasicyclic() const { return !exponent.has_value(); }
  friend bool operator==(const QuasiComponent&, const QuasiComponent&) = default;
};

/// Level-n truncation of a QuasiSpec. `slot[i]` is the position of spec
/// component i inside `group` (canonical sorting may reorder components).
struct Materialization {
  int level = 1;
  FinAbelian group;
  std::vector<std::size_t> slot;
};

/// Direct sum of finitely many cyclic and quasicyclic p-groups, probed
/// through finite truncations where Z(p^inf) becomes Z/p^n and level n
/// embeds in level n+1 by multiplication by p.
class QuasiSpec {
 public:
  QuasiSpec() = default;
  explicit QuasiSpec(std::vector<QuasiComponent> components);

  const std::vector<QuasiComponent>& components() const { return components_; }
  bool has_quasicyclic() const;
  bool has_quasicyclic(std::int64_t p) const;
  std::vector<std::int64_t> primes() const;
  /// Restriction to the components at one prime.
  QuasiSpec p_part(std::int64_t p) const;

  Materialization materialize(int level, std::int64_t cap = kDefaultOrderCap) const;
  /// Image of `a` (an element of the level `from` truncation) at level `to` >= from.
  AbElement embed(const AbElement& a, int from, int to) const;
  /// Largest exponent appearing at the given level.
  int max_exponent(int level) const;

  std::string to_string() const;

  friend bool operator==(const QuasiSpec&, const QuasiSpec&) = default;

 private:
  std::vector<QuasiComponent> components_;
};

/// An element of a QuasiSpec group, given by its coordinates at some level.
struct QuasiElement {
  int level = 1;
  AbElement coords;

  friend bool operator==(const QuasiElement&, const QuasiElement&) = default;
};

}  // namespace fci
