#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fci/abelian.hpp"
#include "fci/compiled.hpp"
#include "fci/dedekind.hpp"
#include "fci/padic.hpp"

namespace fci {

/// A power automorphism of a Dedekind group.
///
/// On a periodic base it acts on the Sylow p-part by a -> a^(t_p), with one
/// p-adic unit per prime (primes without a unit act trivially), and on the
/// Q8 factor by conjugation with `inner`. A global `sign` multiplies every
/// exponent; on a non-periodic abelian base the sign is the only freedom, so
/// the automorphism is the identity or the inversion.
class PowerAut {
 public:
  PowerAut() = default;

  static PowerAut identity() { return PowerAut(); }
  static PowerAut inversion();
  static PowerAut from_units(const std::vector<PadicUnit>& units, Q8Element inner = Q8Element());
  /// Same exponents with the global sign replaced.
  PowerAut with_sign(int sign) const;

  int sign() const { return sign_; }
  const std::map<std::int64_t, PadicUnit>& units() const { return units_; }
  /// Representative of the inner part in {1, i, j, k}.
  Q8Element inner() const { return inner_; }

  /// sign * t_p reduced modulo p^e; PrecisionTooLow when t_p is known to fewer digits.
  std::int64_t multiplier(std::int64_t p, int e) const;
  /// sign * t_p as a unit, at the precision of t_p (or `fallback_precision` when absent).
  PadicUnit exponent_unit(std::int64_t p, int fallback_precision) const;

  /// Checks that this automorphism is defined on `base` (IncompatibleBase,
  /// PrecisionTooLow).
  void validate(const DedekindGroup& base) const;
  PowerAut inverse() const;

  std::string to_string() const;

  friend bool operator==(const PowerAut&, const PowerAut&) = default;

 private:
  int sign_ = 1;
  std::map<std::int64_t, PadicUnit> units_;
  Q8Element inner_;
};

/// phi^k(x).
DElement apply(const PowerAut& phi, const DedekindGroup& base, const DElement& x, std::int64_t k = 1);

/// phi o psi. Units at the same prime must share precision.
PowerAut compose(const PowerAut& phi, const PowerAut& psi);

/// Equality as maps on a finite base.
bool equal_on(const DedekindGroup& base, const PowerAut& a, const PowerAut& b);

/// Order of phi as a permutation of a finite base.
std::int64_t order_on(const PowerAut& phi, const DedekindGroup& base);

/// Index arithmetic for the base with phi's powers precomputed.
std::shared_ptr<const BaseArith> compile_action(const PowerAut& phi, const DedekindGroup& base,
                                                std::int64_t cap = kDefaultOrderCap);

/// phi as an explicit mapping on the elements of CompiledGroup::of(base).
std::vector<Elem> as_mapping(const PowerAut& phi, const DedekindGroup& base);

/// f(x) lies in <x> for every x, for an explicit automorphism f of a finite group.
template <IndexedGroup G>
bool is_power_auto(const G& g, std::span<const Elem> f) {
  return algo::is_power_map(g, f);
}

/// The power automorphisms of a finite Dedekind group.
struct PAutGroup {
  DedekindGroup base;
  std::vector<PowerAut> elements;

  std::size_t size() const { return elements.size(); }
  bool contains(const PowerAut& phi) const;
  bool closed_under_compose() const;
  bool is_abelian() const;
};

/// Filters candidate exponent tuples (units modulo exp of each Sylow part)
/// and, for a Q8 factor, all 24 automorphisms of Q8 through is_power_auto.
PAutGroup enumerate_paut(const DedekindGroup& base, std::int64_t cap = kDefaultOrderCap);

/// All 24 automorphisms of Q8 as maps on Q8Element codes.
std::vector<std::array<Q8Element, 8>> q8_automorphisms();

/// C_A(phi^k) for an abelian p-group A, in closed form Omega_j(A) with
/// j = v_p(t^k - 1).
AbSubgroup fixed_points(const PowerAut& phi, const FinAbelian& a, std::int64_t k);

}  // namespace fci
