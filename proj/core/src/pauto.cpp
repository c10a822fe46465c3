#include "fci/pauto.hpp"

#include <algorithm>
#include <sstream>

namespace fci {

namespace {

Q8Element canonical_inner(Q8Element q) { return Q8Element(q.unit()); }

Q8Element q8_pow(Q8Element q, std::int64_t k) {
  Q8Element r;
  const std::int64_t e = num::mod(k, 4);
  for (std::int64_t i = 0; i < e; ++i) r = r * q;
  return r;
}

}  // namespace

PowerAut PowerAut::with_sign(int sign) const {
  if (sign != 1 && sign != -1) raise(ErrorCode::InvalidArgument, "sign must be +1 or -1");
  PowerAut phi = *this;
  phi.sign_ = sign;
  return phi;
}

PowerAut PowerAut::inversion() {
  PowerAut phi;
  phi.sign_ = -1;
  return phi;
}

PowerAut PowerAut::from_units(const std::vector<PadicUnit>& units, Q8Element inner) {
  PowerAut phi;
  for (const auto& u : units) {
    if (!phi.units_.emplace(u.prime(), u).second) {
      raise(ErrorCode::InvalidArgument, "duplicate exponent for prime " + std::to_string(u.prime()));
    }
  }
  phi.inner_ = canonical_inner(inner);
  return phi;
}

std::int64_t PowerAut::multiplier(std::int64_t p, int e) const {
  const std::int64_t m = num::checked_pow(p, e);
  const auto it = units_.find(p);
  const std::int64_t t = it == units_.end() ? 1 : it->second.residue_mod(e);
  return num::mod(sign_ * t, m);
}

PadicUnit PowerAut::exponent_unit(std::int64_t p, int fallback_precision) const {
  const auto it = units_.find(p);
  if (it == units_.end()) return PadicUnit::make(p, fallback_precision, sign_);
  return PadicUnit::make(p, it->second.precision(), sign_ * it->second.residue());
}

void PowerAut::validate(const DedekindGroup& base) const {
  if (!base.is_periodic()) {
    for (const auto& [p, u] : units_) {
      if (!u.is_one()) {
        raise(ErrorCode::IncompatibleBase,
              "a non-periodic abelian group only admits the identity and the inversion");
      }
    }
  }
  if (!base.is_hamiltonian() && inner_.unit() != Q8Element::One) {
    raise(ErrorCode::IncompatibleBase, "inner part given for a base without a Q8 factor");
  }
  for (const auto& c : base.torsion().components()) {
    const auto it = units_.find(c.prime);
    if (it != units_.end() && it->second.precision() < c.exponent) {
      raise(ErrorCode::PrecisionTooLow, "t_" + std::to_string(c.prime) + " known mod " +
                                            std::to_string(c.prime) + "^" +
                                            std::to_string(it->second.precision()) + " acting on Z/" +
                                            std::to_string(c.modulus()));
    }
  }
}

PowerAut PowerAut::inverse() const {
  PowerAut phi = *this;
  for (auto& [p, u] : phi.units_) u = u.inverse();
  phi.inner_ = canonical_inner(inner_.inverse());
  return phi;
}

std::string PowerAut::to_string() const {
  std::ostringstream out;
  bool first = true;
  auto sep = [&] {
    if (!first) out << ", ";
    first = false;
  };
  if (sign_ < 0) {
    sep();
    out << "sign -1";
  }
  for (const auto& [p, u] : units_) {
    sep();
    out << "t_" << p << " = " << u.to_string();
  }
  if (inner_.unit() != Q8Element::One) {
    sep();
    out << "inner " << inner_.to_string();
  }
  return first ? std::string("identity") : out.str();
}

DElement apply(const PowerAut& phi, const DedekindGroup& base, const DElement& x, std::int64_t k) {
  if (!base.contains(x)) raise(ErrorCode::GroupMismatch, to_string(x) + " is not in " + base.to_string());
  if (!base.is_periodic()) {
    for (const auto& [p, u] : phi.units()) {
      if (!u.is_one()) raise(ErrorCode::IncompatibleBase, "non-periodic base admits only +-1");
    }
  }
  DElement r = x;
  const int s = (k % 2 == 0) ? 1 : phi.sign();
  for (auto& v : r.free) v *= s;
  const auto& comps = base.torsion().components();
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const std::int64_t m = phi.multiplier(comps[i].prime, comps[i].exponent);
    const std::int64_t mk = PadicUnit::make(comps[i].prime, comps[i].exponent, m).pow(k).residue();
    r.torsion.coords[i] = num::mulmod(r.torsion.coords[i], mk, comps[i].modulus());
  }
  if (r.q) r.q = r.q->conjugated_by(q8_pow(phi.inner(), k));
  return r;
}

PowerAut compose(const PowerAut& phi, const PowerAut& psi) {
  std::vector<PadicUnit> units;
  for (const auto& [p, u] : phi.units()) {
    const auto it = psi.units().find(p);
    units.push_back(it == psi.units().end() ? u : u * it->second);
  }
  for (const auto& [p, u] : psi.units()) {
    if (!phi.units().contains(p)) units.push_back(u);
  }
  return PowerAut::from_units(units, phi.inner() * psi.inner()).with_sign(phi.sign() * psi.sign());
}

bool equal_on(const DedekindGroup& base, const PowerAut& a, const PowerAut& b) {
  for (const auto& gen : base.generators()) {
    if (apply(a, base, gen) != apply(b, base, gen)) return false;
  }
  return true;
}

std::shared_ptr<const BaseArith> compile_action(const PowerAut& phi, const DedekindGroup& base,
                                                std::int64_t cap) {
  phi.validate(base);
  std::vector<std::int64_t> mult;
  for (const auto& c : base.torsion().components()) mult.push_back(phi.multiplier(c.prime, c.exponent));
  return std::make_shared<const BaseArith>(base, std::move(mult), phi.inner(), cap);
}

std::int64_t order_on(const PowerAut& phi, const DedekindGroup& base) {
  return compile_action(phi, base)->period();
}

std::vector<Elem> as_mapping(const PowerAut& phi, const DedekindGroup& base) {
  const auto arith = compile_action(phi, base);
  std::vector<Elem> f(arith->size());
  for (Elem a = 0; a < f.size(); ++a) f[a] = arith->phi(1, a);
  return f;
}

bool PAutGroup::contains(const PowerAut& phi) const {
  return std::any_of(elements.begin(), elements.end(),
                     [&](const PowerAut& e) { return equal_on(base, e, phi); });
}

bool PAutGroup::closed_under_compose() const {
  for (const auto& a : elements) {
    for (const auto& b : elements) {
      if (!contains(compose(a, b))) return false;
    }
  }
  return true;
}

bool PAutGroup::is_abelian() const {
  for (const auto& a : elements) {
    for (const auto& b : elements) {
      if (!equal_on(base, compose(a, b), compose(b, a))) return false;
    }
  }
  return true;
}

std::vector<std::array<Q8Element, 8>> q8_automorphisms() {
  std::vector<std::array<Q8Element, 8>> out;
  std::vector<Q8Element> order4;
  for (Q8Element q : Q8Element::all()) {
    if (q.order() == 4) order4.push_back(q);
  }
  for (Q8Element fi : order4) {
    for (Q8Element fj : order4) {
      if (fj == fi || fj == -fi) continue;
      std::array<Q8Element, 8> f;
      const Q8Element images[4] = {Q8Element(), fi, fj, fi * fj};
      for (std::uint8_t c = 0; c < 8; ++c) {
        const Q8Element x = Q8Element::from_code(c);
        f[c] = x.negative() ? -images[x.unit()] : images[x.unit()];
      }
      out.push_back(f);
    }
  }
  return out;
}

PAutGroup enumerate_paut(const DedekindGroup& base, std::int64_t cap) {
  if (!base.is_periodic()) raise(ErrorCode::NonPeriodic, "enumerate_paut needs a finite base");
  const CompiledGroup group = CompiledGroup::of(base, cap);
  const BaseArith& arith = group.base();
  const auto reps = algo::cyclic_representatives(group);

  // Candidate exponents: units modulo the exponent of each Sylow part.
  const FinAbelian& tors = base.torsion();
  std::vector<std::int64_t> primes = tors.primes();
  std::vector<int> exps;
  std::vector<std::vector<std::int64_t>> candidates;
  for (auto p : primes) {
    int e = 0;
    for (const auto& c : tors.components()) {
      if (c.prime == p) e = std::max(e, c.exponent);
    }
    exps.push_back(e);
    const std::int64_t m = num::checked_pow(p, e);
    std::vector<std::int64_t> units;
    for (std::int64_t u = 1; u < m; ++u) {
      if (u % p != 0) units.push_back(u);
    }
    candidates.push_back(std::move(units));
  }
  std::vector<std::array<Q8Element, 8>> q8_maps;
  if (base.is_hamiltonian()) {
    q8_maps = q8_automorphisms();
  } else {
    std::array<Q8Element, 8> id;
    for (std::uint8_t c = 0; c < 8; ++c) id[c] = Q8Element::from_code(c);
    q8_maps.push_back(id);
  }

  PAutGroup result{base, {}};
  std::vector<std::size_t> pick(primes.size(), 0);
  std::vector<Elem> f(group.order());
  for (;;) {
    for (const auto& q8map : q8_maps) {
      // The unit for prime p scales every component at p.
      std::vector<std::int64_t> mult;
      for (const auto& c : tors.components()) {
        const auto pi = static_cast<std::size_t>(std::find(primes.begin(), primes.end(), c.prime) - primes.begin());
        mult.push_back(candidates[pi][pick[pi]] % c.modulus());
      }
      for (Elem a = 0; a < f.size(); ++a) {
        DElement d = arith.decode(a);
        for (std::size_t i = 0; i < mult.size(); ++i) {
          d.torsion.coords[i] = num::mulmod(d.torsion.coords[i], mult[i], tors.components()[i].modulus());
        }
        if (d.q) d.q = q8map[d.q->code()];
        f[a] = arith.encode(d);
      }
      if (!algo::is_power_map_on(group, f, reps)) continue;

      Q8Element inner;
      if (base.is_hamiltonian()) {
        bool found = false;
        for (Q8Element q0 : {Q8Element(Q8Element::One), Q8Element(Q8Element::I), Q8Element(Q8Element::J),
                             Q8Element(Q8Element::K)}) {
          if (Q8Element(Q8Element::I).conjugated_by(q0) == q8map[Q8Element::I] &&
              Q8Element(Q8Element::J).conjugated_by(q0) == q8map[Q8Element::J]) {
            inner = q0;
            found = true;
          }
        }
        if (!found) raise(ErrorCode::Inconsistent, "power automorphism of Q8 that is not inner");
      }
      std::vector<PadicUnit> units;
      for (std::size_t pi = 0; pi < primes.size(); ++pi) {
        units.push_back(PadicUnit::make(primes[pi], exps[pi], candidates[pi][pick[pi]]));
      }
      result.elements.push_back(PowerAut::from_units(units, inner));
    }
    std::size_t i = 0;
    for (; i < pick.size(); ++i) {
      if (++pick[i] < candidates[i].size()) break;
      pick[i] = 0;
    }
    if (i == pick.size()) break;
  }
  return result;
}

AbSubgroup fixed_points(const PowerAut& phi, const FinAbelian& a, std::int64_t k) {
  if (k < 1) raise(ErrorCode::InvalidArgument, "fixed_points needs k >= 1");
  if (a.is_trivial()) return AbSubgroup(a, {});
  const std::int64_t p = a.components().front().prime;
  if (!a.is_p_group(p)) raise(ErrorCode::NotAPGroup, a.to_string() + " is not a p-group");
  int e = 0;
  for (const auto& c : a.components()) e = std::max(e, c.exponent);
  const PadicUnit t = phi.exponent_unit(p, e);
  if (t.precision() < e) {
    raise(ErrorCode::PrecisionTooLow, "t_" + std::to_string(p) + " = " + t.to_string() + " acting on exponent " +
                                          std::to_string(num::checked_pow(p, e)));
  }
  const Valuation v = valuation_pow_minus_one(t, k);
  return omega(a, v.is_finite() ? v.value : e, p);
}

}  // namespace fci
