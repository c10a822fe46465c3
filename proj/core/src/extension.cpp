#include "fci/extension.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace fci {

std::string to_string(const GElement& x) { return "g^" + std::to_string(x.k) + "*" + to_string(x.d); }

CyclicExtension::CyclicExtension(DedekindGroup base, PowerAut action, std::optional<std::int64_t> m, DElement d0,
                                 std::int64_t cap)
    : base_(std::move(base)), action_(std::move(action)), m_(m), d0_(std::move(d0)), cap_(cap) {
  if (base_.is_periodic()) arith_ = compile_action(action_, base_, cap_);
}

CyclicExtension CyclicExtension::infinite(DedekindGroup base, PowerAut action, std::int64_t cap) {
  action.validate(base);
  DElement id = base.identity();
  return CyclicExtension(std::move(base), std::move(action), std::nullopt, std::move(id), cap);
}

CyclicExtension CyclicExtension::finite(DedekindGroup base, std::int64_t m, DElement d0, PowerAut action,
                                        std::int64_t cap) {
  if (m < 1) raise(ErrorCode::InvalidArgument, "top order must be >= 1");
  if (!base.contains(d0)) raise(ErrorCode::GroupMismatch, fci::to_string(d0) + " is not in " + base.to_string());
  action.validate(base);
  if (apply(action, base, d0) != d0) {
    raise(ErrorCode::InvalidCocycle, "the action does not fix g^" + std::to_string(m) + " = " + fci::to_string(d0));
  }
  const DElement d0inv = base.inv(d0);
  for (const auto& x : base.generators()) {
    const DElement conj = base.mul(base.mul(d0inv, x), d0);
    if (apply(action, base, x, m) != conj) {
      raise(ErrorCode::InvalidCocycle, "phi^" + std::to_string(m) + " differs from conjugation by " +
                                           fci::to_string(d0) + " on " + fci::to_string(x));
    }
  }
  return CyclicExtension(std::move(base), std::move(action), m, std::move(d0), cap);
}

Cardinality CyclicExtension::order() const {
  if (!m_ || !base_.is_periodic()) return Cardinality::infinite();
  return Cardinality::finite(*m_ * base_.order().value());
}

void CyclicExtension::check(const GElement& x) const {
  if (!contains(x)) raise(ErrorCode::GroupMismatch, fci::to_string(x) + " is not in " + to_string());
}

GElement CyclicExtension::identity() const { return GElement{0, base_.identity()}; }

GElement CyclicExtension::g() const { return element(1, base_.identity()); }

GElement CyclicExtension::element(std::int64_t k, DElement d) const {
  if (!base_.contains(d)) raise(ErrorCode::GroupMismatch, fci::to_string(d) + " is not in " + base_.to_string());
  if (!m_) return GElement{k, std::move(d)};
  // g^(qm + r) d = g^r d0^q d
  const std::int64_t r = num::mod(k, *m_);
  const std::int64_t q = (k - r) / *m_;
  return GElement{r, base_.mul(base_.pow(d0_, q), d)};
}

bool CyclicExtension::contains(const GElement& x) const {
  if (!base_.contains(x.d)) return false;
  return !m_ || (x.k >= 0 && x.k < *m_);
}

GElement CyclicExtension::mul(const GElement& x, const GElement& y) const {
  check(x);
  check(y);
  return element(x.k + y.k, base_.mul(apply(action_, base_, x.d, y.k), y.d));
}

GElement CyclicExtension::inv(const GElement& x) const {
  check(x);
  return element(-x.k, apply(action_, base_, base_.inv(x.d), -x.k));
}

GElement CyclicExtension::pow(const GElement& x, std::int64_t n) const {
  GElement base = n < 0 ? inv(x) : x;
  auto e = n < 0 ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
  GElement r = identity();
  while (e > 0) {
    if (e & 1U) r = mul(r, base);
    e >>= 1U;
    if (e > 0) base = mul(base, base);
  }
  return r;
}

GElement CyclicExtension::conjugate(const GElement& x, const GElement& by) const {
  return mul(mul(inv(by), x), by);
}

Cardinality CyclicExtension::order_of(const GElement& x) const {
  check(x);
  if (!m_ && x.k != 0) return Cardinality::infinite();
  const std::int64_t r = m_ ? *m_ / std::gcd(x.k, *m_) : 1;
  const Cardinality od = base_.order_of(pow(x, r).d);
  if (!od.is_finite()) return od;
  return Cardinality::finite(r * od.value());
}

bool CyclicExtension::in_cyclic(const GElement& x, const GElement& y) const {
  check(x);
  check(y);
  if (!m_ && x.k != 0) {
    if (y.k % x.k != 0) return false;
    return pow(x, y.k / x.k) == y;
  }
  if (!m_ && y.k != 0) return false;
  const Cardinality ord = order_of(x);
  if (ord.is_finite()) {
    if (ord.value() > cap_) raise(ErrorCode::OrderCapExceeded, "cyclic subgroup too large");
    GElement p = identity();
    for (std::int64_t i = 0; i < ord.value(); ++i) {
      if (p == y) return true;
      p = mul(p, x);
    }
    return false;
  }
  // x^r = z lies in the base and has infinite order, so the base is abelian
  // with free part; <x> is the union of the cosets x^s <z>, 0 <= s < r.
  const std::int64_t r = m_ ? *m_ / std::gcd(x.k, *m_) : 1;
  const DElement z = pow(x, r).d;
  std::size_t pivot = 0;
  while (pivot < z.free.size() && z.free[pivot] == 0) ++pivot;
  if (pivot == z.free.size()) raise(ErrorCode::Inconsistent, "element of infinite order with no free part");
  for (std::int64_t s = 0; s < r; ++s) {
    const GElement w = mul(pow(x, -s), y);
    if (w.k != 0) continue;
    if (w.d.free[pivot] % z.free[pivot] != 0) continue;
    if (base_.pow(z, w.d.free[pivot] / z.free[pivot]) == w.d) return true;
  }
  return false;
}

std::vector<GElement> CyclicExtension::generators() const {
  std::vector<GElement> gens;
  if (!m_ || *m_ > 1) gens.push_back(g());
  for (auto& d : base_.generators()) gens.push_back(GElement{0, std::move(d)});
  return gens;
}

const BaseArith& CyclicExtension::arith() const {
  if (!arith_) raise(ErrorCode::InfiniteBase, "base " + base_.to_string() + " is not finite");
  return *arith_;
}

CompiledGroup CyclicExtension::compile() const {
  if (!m_) raise(ErrorCode::InfiniteGroup, "extension with infinite cyclic top");
  const BaseArith& a = arith();
  return CompiledGroup(arith_, *m_, a.encode(d0_), cap_);
}

GElement CyclicExtension::decode(const CompiledGroup& c, Elem a) const {
  return GElement{c.top_of(a), c.base().decode(c.base_of(a))};
}

Elem CyclicExtension::encode(const CompiledGroup& c, const GElement& x) const {
  check(x);
  return c.make(x.k, c.base().encode(x.d));
}

std::string CyclicExtension::to_string() const {
  std::ostringstream out;
  out << "<g> " << base_.to_string() << ", g ";
  if (m_) {
    out << "of order " << *m_ << " mod base, g^" << *m_ << " = " << fci::to_string(d0_);
  } else {
    out << "of infinite order";
  }
  out << ", action " << action_.to_string();
  return out.str();
}

Cardinality CentralizerDesc::order() const {
  if (!top_order) return Cardinality::infinite();
  return Cardinality::finite(*top_order / projection_step * static_cast<std::int64_t>(torsion_part.size()));
}

CentralizerDesc centralizer(const CyclicExtension& g, const GElement& x) {
  if (!g.contains(x)) raise(ErrorCode::GroupMismatch, to_string(x) + " is not in " + g.to_string());
  const BaseArith& a = g.arith();
  const std::size_t n = a.size();
  const Elem d = a.encode(x.d);

  // y = g^m' e commutes with x iff phi^m'(d) e = phi^k(e) d, i.e. phi^m'(d)
  // lies in the image of e -> phi^k(e) d e^-1.
  std::vector<std::int64_t> witness(n, -1);
  CentralizerDesc desc;
  desc.top_order = g.top_order();
  for (Elem e = 0; e < n; ++e) {
    const Elem s = a.mul(a.mul(a.phi(x.k, e), d), a.inv(e));
    if (witness[s] < 0) witness[s] = e;
    if (s == d) desc.torsion_part.push_back(a.decode(e));
  }
  const std::int64_t span = g.top_order() ? *g.top_order() : a.period();
  std::int64_t m0 = span;
  std::vector<std::int64_t> solvable;
  for (std::int64_t mp = 1; mp < span; ++mp) {
    if (witness[a.phi(mp, d)] >= 0) solvable.push_back(mp);
  }
  if (!solvable.empty()) m0 = solvable.front();
  if (span % m0 != 0) raise(ErrorCode::Inconsistent, "centralizer projection is not a subgroup");
  for (std::size_t i = 0; i < solvable.size(); ++i) {
    if (solvable[i] != static_cast<std::int64_t>(i + 1) * m0) {
      raise(ErrorCode::Inconsistent, "centralizer projection is not a subgroup");
    }
  }
  if (!g.top_order() && x.k % m0 != 0) raise(ErrorCode::Inconsistent, "x is not in its own centralizer");
  desc.projection_step = m0;
  const std::int64_t w = witness[a.phi(m0, d)];
  desc.representative = a.decode(w < 0 ? a.identity() : static_cast<Elem>(w));
  return desc;
}

Cardinality centralizer_index(const CyclicExtension& g, const GElement& x) {
  const CentralizerDesc c = centralizer(g, x);
  if (g.has_infinite_top()) {
    if (x.k == 0) return Cardinality::infinite();
    const std::int64_t k = x.k < 0 ? -x.k : x.k;
    return Cardinality::finite(k / c.projection_step * static_cast<std::int64_t>(c.torsion_part.size()));
  }
  return Cardinality::finite(c.order().value() / g.order_of(x).value());
}

bool is_cyclic_normal(const CyclicExtension& g, const GElement& x) {
  for (const auto& s : g.generators()) {
    if (!g.in_cyclic(x, g.conjugate(x, s))) return false;
    if (!g.in_cyclic(x, g.conjugate(x, g.inv(s)))) return false;
  }
  return true;
}

DedekindGroup torsion_subgroup(const CyclicExtension& g) {
  if (!g.has_infinite_top() || !g.base().is_periodic()) {
    raise(ErrorCode::InvalidArgument, "torsion subgroup is only described for an infinite top over a periodic base");
  }
  return g.base();
}

std::vector<GElement> center(const CyclicExtension& g) {
  const CompiledGroup c = g.compile();
  std::vector<GElement> out;
  for (Elem z : algo::center(c)) out.push_back(g.decode(c, z));
  return out;
}

bool is_metabelian(const CyclicExtension& g) {
  const CompiledGroup c = g.compile();
  return algo::is_metabelian(c, g.cap());
}

namespace {

bool is_fg_extension(const CyclicExtension& g) {
  return !g.base().is_hamiltonian() && g.top_order() == 2 && g.action() == PowerAut::inversion();
}

}  // namespace

CyclicExtension fg_abelian_extension(const FgAbelian& a, const FgElement& d0) {
  if (!a.contains(d0)) raise(ErrorCode::GroupMismatch, "d0 is not in " + a.to_string());
  if (a.scale(d0, 2) != a.zero()) raise(ErrorCode::InvalidCocycle, "the inversion needs g^2 of order at most 2");
  const DedekindGroup base = DedekindGroup::abelian(a);
  return CyclicExtension::finite(base, 2, DElement{std::nullopt, d0.free, d0.torsion}, PowerAut::inversion());
}

std::int64_t fg_centralizer_order(const CyclicExtension& g, const GElement& x) {
  if (!is_fg_extension(g)) raise(ErrorCode::InvalidArgument, "not an inversion extension of order 2");
  if (x.k != 1) raise(ErrorCode::InvalidArgument, "x must lie outside the abelian part");
  return std::int64_t{2} << rank_p(g.base().abelian_part(), 2);
}

Cardinality fg_centralizer_index(const CyclicExtension& g, const GElement& x) {
  if (!is_fg_extension(g)) raise(ErrorCode::InvalidArgument, "not an inversion extension of order 2");
  if (!g.contains(x)) raise(ErrorCode::GroupMismatch, to_string(x) + " is not in " + g.to_string());
  const FgAbelian& a = g.base().abelian_part();
  if (x.k == 1) return Cardinality::finite(fg_centralizer_order(g, x) / g.order_of(x).value());
  const FgElement ax{x.d.free, x.d.torsion};
  // 2a = 0 makes x central; otherwise C_G(x) = A.
  if (a.scale(ax, 2) == a.zero()) {
    if (!a.is_periodic()) return Cardinality::infinite();
    return Cardinality::finite(2 * a.torsion().order() / a.order_of(ax).value());
  }
  const Cardinality ord = a.order_of(ax);
  if (!a.is_periodic()) {
    if (ord.is_finite() || a.free_rank() > 1) return Cardinality::infinite();
    const std::int64_t f = x.d.free[0] < 0 ? -x.d.free[0] : x.d.free[0];
    return Cardinality::finite(f * a.torsion().order());
  }
  return Cardinality::finite(a.torsion().order() / ord.value());
}

ExponentSpec ActionSpec::effective(std::int64_t p) const {
  for (const auto& e : exponents) {
    if (e.prime == p) {
      ExponentSpec r = e;
      r.value = sign * e.value;
      if (r.precision) r.value = num::mod(r.value, num::checked_pow(p, *r.precision));
      return r;
    }
  }
  return ExponentSpec{p, sign, std::nullopt};
}

void ActionSpec::validate() const {
  if (sign != 1 && sign != -1) raise(ErrorCode::SpecInvalid, "sign must be +1 or -1");
  std::set<std::int64_t> seen;
  for (const auto& e : exponents) {
    if (!num::is_prime(e.prime)) raise(ErrorCode::SpecInvalid, std::to_string(e.prime) + " is not prime");
    if (!seen.insert(e.prime).second) raise(ErrorCode::SpecInvalid, "duplicate exponent for prime " + std::to_string(e.prime));
    if (e.precision && *e.precision < 1) raise(ErrorCode::SpecInvalid, "precision must be >= 1");
    if (num::mod(e.value, e.prime) == 0) {
      raise(ErrorCode::NotAUnit, std::to_string(e.value) + " is not a unit at " + std::to_string(e.prime));
    }
  }
}

PowerAut ActionSpec::at_level(const QuasiSpec& base, int level) const {
  validate();
  std::vector<PadicUnit> units;
  for (const auto& e : exponents) {
    int needed = 1;
    for (const auto& c : base.components()) {
      if (c.prime == e.prime) needed = std::max(needed, c.exponent.value_or(level));
    }
    units.push_back(PadicUnit::make(e.prime, e.precision.value_or(needed), e.value));
  }
  return PowerAut::from_units(units, inner).with_sign(sign);
}

DedekindGroup ExtensionSpec::base_at(int level, std::int64_t cap) const {
  const Materialization mat = base.materialize(level, cap);
  if (!hamiltonian) return DedekindGroup::abelian(mat.group);
  if (base.has_quasicyclic(2)) {
    raise(ErrorCode::SpecInvalid, "the 2-part of a Hamiltonian base must be finite");
  }
  std::vector<Component> odd;
  for (const auto& c : mat.group.components()) {
    if (c.prime != 2) odd.push_back(c);
  }
  return DedekindGroup::hamiltonian(mat.group.p_part(2), FinAbelian(std::move(odd), cap));
}

DElement ExtensionSpec::embed(const LevelElement& e, int level) const {
  if (e.level > level) {
    raise(ErrorCode::InvalidArgument, "element given at level " + std::to_string(e.level) +
                                          " cannot be used at level " + std::to_string(level));
  }
  if (e.q.has_value() != hamiltonian) raise(ErrorCode::SpecInvalid, "quaternion coordinate presence mismatch");
  return DElement{e.q, {}, base.embed(e.torsion, e.level, level)};
}

CyclicExtension ExtensionSpec::materialize(int level, std::int64_t cap) const {
  DedekindGroup d = base_at(level, cap);
  PowerAut phi = action.at_level(base, level);
  if (!top_order) return CyclicExtension::infinite(std::move(d), std::move(phi), cap);
  return CyclicExtension::finite(std::move(d), *top_order, embed(d0, level), std::move(phi), cap);
}

}  // namespace fci
