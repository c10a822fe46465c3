#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fci/abelian.hpp"
#include "fci/compiled.hpp"
#include "fci/dedekind.hpp"
#include "fci/pauto.hpp"

namespace fci {

/// Normal form g^k d.
struct GElement {
  std::int64_t k = 0;
  DElement d;

  friend auto operator<=>(const GElement&, const GElement&) = default;
};

std::string to_string(const GElement& x);

/// G = <g> D where g acts on the Dedekind group D by the power automorphism
/// phi (g^-1 d g = phi(d)). The top <g> is infinite cyclic, or finite of
/// order m with g^m = d0 in D.
class CyclicExtension {
 public:
  static CyclicExtension infinite(DedekindGroup base, PowerAut action, std::int64_t cap = kDefaultOrderCap);
  /// Throws InvalidCocycle unless phi(d0) = d0 and phi^m is conjugation by d0.
  static CyclicExtension finite(DedekindGroup base, std::int64_t m, DElement d0, PowerAut action,
                                std::int64_t cap = kDefaultOrderCap);

  const DedekindGroup& base() const { return base_; }
  const PowerAut& action() const { return action_; }
  bool has_infinite_top() const { return !m_.has_value(); }
  std::optional<std::int64_t> top_order() const { return m_; }
  const DElement& cocycle() const { return d0_; }
  bool is_finite() const { return m_.has_value() && base_.is_periodic(); }
  Cardinality order() const;
  std::int64_t cap() const { return cap_; }

  GElement identity() const;
  GElement g() const;
  /// g^k d, with k reduced modulo m (carrying d0) when the top is finite.
  GElement element(std::int64_t k, DElement d) const;
  GElement from_base(DElement d) const { return element(0, std::move(d)); }
  bool contains(const GElement& x) const;

  GElement mul(const GElement& x, const GElement& y) const;
  GElement inv(const GElement& x) const;
  GElement pow(const GElement& x, std::int64_t n) const;
  /// by^-1 x by.
  GElement conjugate(const GElement& x, const GElement& by) const;
  Cardinality order_of(const GElement& x) const;
  /// y in <x>.
  bool in_cyclic(const GElement& x, const GElement& y) const;
  /// g (when the top is nontrivial) followed by the base generators.
  std::vector<GElement> generators() const;

  /// Index arithmetic on the base; InfiniteBase when D is not finite.
  const BaseArith& arith() const;
  /// The whole group as an IndexedGroup (finite instances only).
  CompiledGroup compile() const;
  GElement decode(const CompiledGroup& c, Elem a) const;
  Elem encode(const CompiledGroup& c, const GElement& x) const;

  std::string to_string() const;

 private:
  CyclicExtension(DedekindGroup base, PowerAut action, std::optional<std::int64_t> m, DElement d0,
                  std::int64_t cap);
  void check(const GElement& x) const;

  DedekindGroup base_;
  PowerAut action_;
  std::optional<std::int64_t> m_;
  DElement d0_;
  std::int64_t cap_;
  std::shared_ptr<const BaseArith> arith_;
};

/// C_G(x) for a finite base. The projection of C_G(x) to the top is
/// generated by `projection_step` (m0); `representative` is an e0 with
/// g^m0 e0 in C_G(x).
struct CentralizerDesc {
  std::vector<DElement> torsion_part;  ///< C_G(x) cap D
  std::int64_t projection_step = 1;
  DElement representative;
  std::optional<std::int64_t> top_order;

  Cardinality order() const;
  GElement aperiodic_generator() const { return GElement{projection_step, representative}; }
};

/// Solves phi^m'(d) e = phi^k(e) d for y = g^m' e against x = g^k d.
CentralizerDesc centralizer(const CyclicExtension& g, const GElement& x);

/// |C_G(x) : <x>|. For an infinite top and x = g^k d with k != 0 this is
/// (|k| / m0) * |C_G(x) cap D|.
Cardinality centralizer_index(const CyclicExtension& g, const GElement& x);

/// Conjugates of x by every generator and its inverse lie in <x>.
bool is_cyclic_normal(const CyclicExtension& g, const GElement& x);

/// The set of finite-order elements of an infinite-top extension over a periodic base, namely D.
DedekindGroup torsion_subgroup(const CyclicExtension& g);

std::vector<GElement> center(const CyclicExtension& g);
bool is_metabelian(const CyclicExtension& g);

/// <g, A> with a^g = a^-1 and g^2 = d0 for a finitely generated abelian A.
/// Throws InvalidCocycle when 2 d0 != 0.
CyclicExtension fg_abelian_extension(const FgAbelian& a, const FgElement& d0);

/// |C_G(x)| for x outside A in an fg_abelian_extension: 2 |{a : 2a = 0}|.
std::int64_t fg_centralizer_order(const CyclicExtension& g, const GElement& x);

/// |C_G(x) : <x>| for any x of an fg_abelian_extension.
Cardinality fg_centralizer_index(const CyclicExtension& g, const GElement& x);

// ---------------------------------------------------------------------------
// Extensions over truncated quasicyclic bases.

/// A base element given at some truncation level, carried up the ladder by
/// the QuasiSpec embedding.
struct LevelElement {
  int level = 1;
  std::optional<Q8Element> q;
  AbElement torsion;

  friend bool operator==(const LevelElement&, const LevelElement&) = default;
};

/// t_p for one prime. Without a precision the value is an exact integer and
/// is reduced to whatever precision a truncation needs; with a precision it
/// is only known modulo p^precision.
struct ExponentSpec {
  std::int64_t prime = 2;
  std::int64_t value = 1;
  std::optional<int> precision;

  bool exact() const { return !precision.has_value(); }
  friend bool operator==(const ExponentSpec&, const ExponentSpec&) = default;
};

struct ActionSpec {
  int sign = 1;
  std::vector<ExponentSpec> exponents;
  Q8Element inner;

  /// Effective exponent sign * t_p (1 * sign when p has no entry).
  ExponentSpec effective(std::int64_t p) const;
  PowerAut at_level(const QuasiSpec& base, int level) const;
  void validate() const;

  friend bool operator==(const ActionSpec&, const ActionSpec&) = default;
};

struct ExtensionSpec {
  QuasiSpec base;
  bool hamiltonian = false;
  std::optional<std::int64_t> top_order;  ///< empty: infinite cyclic top
  LevelElement d0;
  ActionSpec action;

  DedekindGroup base_at(int level, std::int64_t cap = kDefaultOrderCap) const;
  DElement embed(const LevelElement& e, int level) const;
  CyclicExtension materialize(int level, std::int64_t cap = kDefaultOrderCap) const;
};

}  // namespace fci
