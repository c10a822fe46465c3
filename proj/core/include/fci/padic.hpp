#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace fci {

// Integer helpers shared by the modular and p-adic code.
namespace num {

bool is_prime(std::int64_t n);
/// Non-negative remainder of `a` modulo `m` (m > 0).
std::int64_t mod(std::int64_t a, std::int64_t m);
std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m);
std::int64_t powmod(std::int64_t base, std::uint64_t exp, std::int64_t m);
/// Inverse of `a` modulo `m`; nullopt when gcd(a, m) != 1.
std::optional<std::int64_t> invmod(std::int64_t a, std::int64_t m);
/// p^e, raising InvalidArgument when the result does not fit in 62 bits.
std::int64_t checked_pow(std::int64_t p, int e);
/// Largest j with p^j | n, for n != 0.
int valuation(std::int64_t n, std::int64_t p);
std::int64_t gcd(std::int64_t a, std::int64_t b);
std::int64_t lcm(std::int64_t a, std::int64_t b);
/// Multiplicative order of the unit `a` modulo `m`.
std::int64_t unit_order(std::int64_t a, std::int64_t m);

}  // namespace num

/// A unit of Z_p known modulo p^N. The residue is the canonical representative
/// in [0, p^N); -1 is held as p^N - 1.
class PadicUnit {
 public:
  /// Throws NotAUnit when v is divisible by p, InvalidArgument when p is not
  /// prime or p^N overflows.
  static PadicUnit make(std::int64_t p, int precision, std::int64_t v);
  static PadicUnit one(std::int64_t p, int precision) { return make(p, precision, 1); }

  std::int64_t prime() const { return prime_; }
  int precision() const { return precision_; }
  std::int64_t residue() const { return residue_; }
  std::int64_t modulus() const { return modulus_; }

  bool is_one() const { return residue_ == 1; }
  bool is_minus_one() const { return residue_ == modulus_ - 1; }

  /// t^k for any integer k.
  PadicUnit pow(std::int64_t k) const;
  PadicUnit inverse() const { return pow(-1); }
  /// Product of units at identical prime and precision (PrecisionMismatch otherwise).
  PadicUnit operator*(const PadicUnit& other) const;

  /// Same unit reduced to a lower precision.
  PadicUnit truncate(int precision) const;
  /// Residue modulo p^e for e <= precision (PrecisionTooLow otherwise).
  std::int64_t residue_mod(int e) const;

  std::string to_string() const;

  friend bool operator==(const PadicUnit&, const PadicUnit&) = default;

 private:
  PadicUnit(std::int64_t p, int n, std::int64_t m, std::int64_t r)
      : prime_(p), precision_(n), modulus_(m), residue_(r) {}

  std::int64_t prime_;
  int precision_;
  std::int64_t modulus_;
  std::int64_t residue_;
};

inline PadicUnit make_unit(std::int64_t p, int precision, std::int64_t v) {
  return PadicUnit::make(p, precision, v);
}

inline PadicUnit unit_pow(const PadicUnit& t, std::int64_t k) { return t.pow(k); }

/// Result of v_p(t^k - 1): either a finite valuation below the precision, or
/// the statement that t^k == 1 modulo p^N.
struct Valuation {
  bool exhausted = false;
  int value = 0;

  static Valuation finite(int j) { return {false, j}; }
  static Valuation precision_exhausted() { return {true, 0}; }
  bool is_finite() const { return !exhausted; }

  friend bool operator==(const Valuation&, const Valuation&) = default;
};

/// v_p(t^k - 1) for k >= 1 (InvalidArgument otherwise).
Valuation valuation_pow_minus_one(const PadicUnit& t, std::int64_t k);

enum class Tristate { False, True, Unknown };

std::string to_string(Tristate v);

/// Decides whether every unit congruent to t modulo p^N has infinite order.
/// False when the residue is exactly the torsion unit 1 or -1; Unknown when
/// t is congruent to a nontrivial Teichmueller root of unity at this precision.
Tristate has_infinite_order_heuristic(const PadicUnit& t);

}  // namespace fci
