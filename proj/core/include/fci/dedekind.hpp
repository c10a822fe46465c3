#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fci/abelian.hpp"
#include "fci/error.hpp"
#include "fci/finite_group.hpp"

namespace fci {

/// Element of the quaternion group {±1, ±i, ±j, ±k}.
class Q8Element {
 public:
  enum Unit : std::uint8_t { One = 0, I = 1, J = 2, K = 3 };

  constexpr Q8Element() = default;
  constexpr Q8Element(Unit u, bool negative = false) : code_(static_cast<std::uint8_t>(u + (negative ? 4 : 0))) {}

  static constexpr Q8Element from_code(std::uint8_t code) {
    return Q8Element(static_cast<Unit>(code & 3U), (code & 4U) != 0);
  }
  /// Parses "1", "-1", "i", "-i", "j", "-j", "k", "-k".
  static Q8Element parse(const std::string& s);
  static std::array<Q8Element, 8> all();

  constexpr std::uint8_t code() const { return code_; }
  constexpr Unit unit() const { return static_cast<Unit>(code_ & 3U); }
  constexpr bool negative() const { return (code_ & 4U) != 0; }

  Q8Element operator*(Q8Element other) const;
  Q8Element operator-() const { return from_code(static_cast<std::uint8_t>(code_ ^ 4U)); }
  Q8Element inverse() const;
  int order() const;
  /// q^-1 x q.
  Q8Element conjugated_by(Q8Element q) const;

  std::string to_string() const;

  friend constexpr bool operator==(Q8Element, Q8Element) = default;
  friend constexpr auto operator<=>(Q8Element a, Q8Element b) { return a.code_ <=> b.code_; }

 private:
  std::uint8_t code_ = 0;
};

/// d = (q, free, torsion). `q` is present exactly when the parent is Hamiltonian.
struct DElement {
  std::optional<Q8Element> q;
  std::vector<std::int64_t> free;
  AbElement torsion;

  friend auto operator<=>(const DElement&, const DElement&) = default;
};

std::string to_string(const DElement& d);

/// Sylow p-subgroup data of a periodic Dedekind group.
struct SylowDesc {
  std::int64_t prime = 2;
  bool has_q8 = false;
  FinAbelian abelian;  ///< the abelian factor (elementary abelian when has_q8)
  std::int64_t order() const { return (has_q8 ? 8 : 1) * abelian.order(); }
  /// Pruefer rank; Q8 needs two generators.
  int rank() const { return (has_q8 ? 2 : 0) + rank_p(abelian, prime); }
};

/// A Dedekind group: abelian (finitely generated), or Hamiltonian
/// Q8 x E x A with E elementary abelian 2-group and A abelian of odd order.
class DedekindGroup {
 public:
  DedekindGroup() = default;
  static DedekindGroup abelian(FgAbelian a);
  static DedekindGroup abelian(FinAbelian a) { return abelian(FgAbelian(0, std::move(a))); }
  static DedekindGroup hamiltonian(const FinAbelian& elem2, const FinAbelian& odd);
  static DedekindGroup q8() { return hamiltonian(FinAbelian(), FinAbelian()); }

  bool is_hamiltonian() const { return q8_; }
  bool is_periodic() const { return abelian_.is_periodic(); }
  int free_rank() const { return abelian_.free_rank(); }
  /// Torsion part excluding the Q8 factor: E (+) A for Hamiltonian groups.
  const FinAbelian& torsion() const { return abelian_.torsion(); }
  const FgAbelian& abelian_part() const { return abelian_; }
  Cardinality order() const;

  DElement identity() const;
  DElement element(std::optional<Q8Element> q, std::vector<std::int64_t> free,
                   std::vector<std::int64_t> torsion) const;
  bool contains(const DElement& d) const;
  DElement mul(const DElement& x, const DElement& y) const;
  DElement inv(const DElement& x) const;
  DElement pow(const DElement& x, std::int64_t n) const;
  Cardinality order_of(const DElement& x) const;
  /// Generating set: i, j for the Q8 factor, then the free and torsion bases.
  std::vector<DElement> generators() const;

  /// Finite enumeration (NonPeriodic for groups with free rank).
  std::int64_t size() const;
  DElement element_at(std::int64_t index) const;
  std::int64_t index_of(const DElement& d) const;

  /// pi(D), the primes dividing element orders (NonPeriodic when free rank > 0).
  std::vector<std::int64_t> primes() const;
  SylowDesc sylow(std::int64_t p) const;

  std::string to_string() const;

  friend bool operator==(const DedekindGroup&, const DedekindGroup&) = default;

 private:
  void check(const DElement& d) const;

  bool q8_ = false;
  FgAbelian abelian_;
};

inline DElement d_mul(const DedekindGroup& g, const DElement& x, const DElement& y) { return g.mul(x, y); }
inline DElement d_inv(const DedekindGroup& g, const DElement& x) { return g.inv(x); }
inline Cardinality d_order(const DedekindGroup& g, const DElement& x) { return g.order_of(x); }

}  // namespace fci
