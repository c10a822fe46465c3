#include "fci/padic.hpp"

#include <limits>
#include <numeric>

#include "fci/error.hpp"

namespace fci {
namespace num {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::int64_t mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

__extension__ using wide = __int128;

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) {
  return static_cast<std::int64_t>(static_cast<wide>(mod(a, m)) * mod(b, m) % m);
}

std::int64_t powmod(std::int64_t base, std::uint64_t exp, std::int64_t m) {
  std::int64_t result = 1 % m;
  std::int64_t b = mod(base, m);
  while (exp > 0) {
    if (exp & 1U) result = mulmod(result, b, m);
    b = mulmod(b, b, m);
    exp >>= 1U;
  }
  return result;
}

std::optional<std::int64_t> invmod(std::int64_t a, std::int64_t m) {
  std::int64_t old_r = mod(a, m), r = m;
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    old_r = std::exchange(r, old_r - q * r);
    old_s = std::exchange(s, old_s - q * s);
  }
  if (old_r != 1) {
    if (m == 1) return 0;
    return std::nullopt;
  }
  return mod(old_s, m);
}

std::int64_t checked_pow(std::int64_t p, int e) {
  if (e < 0) raise(ErrorCode::InvalidArgument, "negative exponent");
  constexpr std::int64_t kLimit = std::int64_t{1} << 62;
  std::int64_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (r > kLimit / p) {
      raise(ErrorCode::InvalidArgument,
            std::to_string(p) + "^" + std::to_string(e) + " overflows");
    }
    r *= p;
  }
  return r;
}

int valuation(std::int64_t n, std::int64_t p) {
  if (n == 0) raise(ErrorCode::InvalidArgument, "valuation of zero");
  int j = 0;
  while (n % p == 0) {
    n /= p;
    ++j;
  }
  return j;
}

std::int64_t gcd(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

std::int64_t lcm(std::int64_t a, std::int64_t b) { return std::lcm(a, b); }

std::int64_t unit_order(std::int64_t a, std::int64_t m) {
  if (m == 1) return 1;
  a = mod(a, m);
  std::int64_t x = a;
  std::int64_t n = 1;
  while (x != 1) {
    x = mulmod(x, a, m);
    ++n;
    if (n > m) raise(ErrorCode::NotAUnit, std::to_string(a) + " is not a unit");
  }
  return n;
}

}  // namespace num

PadicUnit PadicUnit::make(std::int64_t p, int precision, std::int64_t v) {
  if (!num::is_prime(p)) raise(ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
  if (precision < 1) raise(ErrorCode::InvalidArgument, "precision must be >= 1");
  const std::int64_t m = num::checked_pow(p, precision);
  const std::int64_t r = num::mod(v, m);
  if (r % p == 0) {
    raise(ErrorCode::NotAUnit, std::to_string(v) + " is divisible by " + std::to_string(p));
  }
  return PadicUnit(p, precision, m, r);
}

PadicUnit PadicUnit::pow(std::int64_t k) const {
  std::int64_t base = residue_;
  std::uint64_t e = static_cast<std::uint64_t>(k);
  if (k < 0) {
    base = *num::invmod(residue_, modulus_);
    e = static_cast<std::uint64_t>(-(k + 1)) + 1;
  }
  return PadicUnit(prime_, precision_, modulus_, num::powmod(base, e, modulus_));
}

PadicUnit PadicUnit::operator*(const PadicUnit& other) const {
  if (prime_ != other.prime_ || precision_ != other.precision_) {
    raise(ErrorCode::PrecisionMismatch, to_string() + " * " + other.to_string());
  }
  return PadicUnit(prime_, precision_, modulus_, num::mulmod(residue_, other.residue_, modulus_));
}

PadicUnit PadicUnit::truncate(int precision) const {
  return PadicUnit::make(prime_, precision, residue_mod(precision));
}

std::int64_t PadicUnit::residue_mod(int e) const {
  if (e > precision_) {
    raise(ErrorCode::PrecisionTooLow, "need precision " + std::to_string(e) + ", have " +
                                          std::to_string(precision_) + " for " + to_string());
  }
  return residue_ % num::checked_pow(prime_, e);
}

std::string PadicUnit::to_string() const {
  return std::to_string(residue_) + " mod " + std::to_string(prime_) + "^" +
         std::to_string(precision_);
}

Valuation valuation_pow_minus_one(const PadicUnit& t, std::int64_t k) {
  if (k < 1) raise(ErrorCode::InvalidArgument, "valuation_pow_minus_one needs k >= 1");
  const std::int64_t r = t.pow(k).residue();
  if (r == 1) return Valuation::precision_exhausted();
  return Valuation::finite(num::valuation(r - 1, t.prime()));
}

std::string to_string(Tristate v) {
  switch (v) {
    case Tristate::False: return "false";
    case Tristate::True: return "true";
    case Tristate::Unknown: return "unknown";
  }
  return "unknown";
}

Tristate has_infinite_order_heuristic(const PadicUnit& t) {
  if (t.is_one() || t.is_minus_one()) return Tristate::False;
  if (t.prime() == 2) {
    // The torsion of Z_2^x is {1, -1}; any other residue has no torsion lift.
    return Tristate::True;
  }
  // For odd p the torsion units are the (p-1)-th roots of unity, and their
  // reductions mod p^N are exactly the solutions of x^(p-1) = 1.
  if (t.pow(t.prime() - 1).is_one()) return Tristate::Unknown;
  return Tristate::True;
}

}  // namespace fci
