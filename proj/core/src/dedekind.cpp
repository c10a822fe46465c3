#include "fci/dedekind.hpp"

#include <algorithm>
#include <sstream>

#include "fci/padic.hpp"

namespace fci {

namespace {

// kUnitTable[u][v] = code of u*v for u, v in {1, i, j, k}.
constexpr std::uint8_t kUnitTable[4][4] = {
    {0, 1, 2, 3},
    {1, 4, 3, 6},  // i1=i, ii=-1, ij=k, ik=-j
    {2, 7, 4, 1},  // j1=j, ji=-k, jj=-1, jk=i
    {3, 2, 5, 4},  // k1=k, ki=j, kj=-i, kk=-1
};

}  // namespace

Q8Element Q8Element::parse(const std::string& s) {
  static const char* kNames[8] = {"1", "i", "j", "k", "-1", "-i", "-j", "-k"};
  for (std::uint8_t c = 0; c < 8; ++c) {
    if (s == kNames[c]) return from_code(c);
  }
  raise(ErrorCode::ParseError, "not a quaternion unit: '" + s + "'");
}

std::array<Q8Element, 8> Q8Element::all() {
  std::array<Q8Element, 8> out;
  for (std::uint8_t c = 0; c < 8; ++c) out[c] = from_code(c);
  return out;
}

Q8Element Q8Element::operator*(Q8Element other) const {
  const std::uint8_t base = kUnitTable[unit()][other.unit()];
  const bool sign = negative() != other.negative();
  return from_code(static_cast<std::uint8_t>(base ^ (sign ? 4U : 0U)));
}

Q8Element Q8Element::inverse() const {
  if (unit() == One) return *this;
  return -*this;
}

int Q8Element::order() const {
  if (unit() != One) return 4;
  return negative() ? 2 : 1;
}

Q8Element Q8Element::conjugated_by(Q8Element q) const { return q.inverse() * *this * q; }

std::string Q8Element::to_string() const {
  static const char* kNames[8] = {"1", "i", "j", "k", "-1", "-i", "-j", "-k"};
  return kNames[code_];
}

std::string to_string(const DElement& d) {
  std::ostringstream out;
  out << '[';
  bool first = true;
  auto sep = [&] {
    if (!first) out << ',';
    first = false;
  };
  if (d.q) {
    sep();
    out << d.q->to_string();
  }
  for (auto v : d.free) {
    sep();
    out << v;
  }
  for (auto v : d.torsion.coords) {
    sep();
    out << v;
  }
  out << ']';
  return out.str();
}

DedekindGroup DedekindGroup::abelian(FgAbelian a) {
  DedekindGroup g;
  g.abelian_ = std::move(a);
  return g;
}

DedekindGroup DedekindGroup::hamiltonian(const FinAbelian& elem2, const FinAbelian& odd) {
  for (const auto& c : elem2.components()) {
    if (c.prime != 2 || c.exponent != 1) {
      raise(ErrorCode::InvalidArgument, "Hamiltonian 2-part must be elementary abelian, got " + elem2.to_string());
    }
  }
  for (const auto& c : odd.components()) {
    if (c.prime == 2) raise(ErrorCode::InvalidArgument, "Hamiltonian odd part has even order: " + odd.to_string());
  }
  std::vector<Component> comps = elem2.components();
  comps.insert(comps.end(), odd.components().begin(), odd.components().end());
  DedekindGroup g;
  g.q8_ = true;
  g.abelian_ = FgAbelian(0, FinAbelian(std::move(comps)));
  if (g.abelian_.torsion().order() > kDefaultOrderCap / 8) {
    raise(ErrorCode::OrderCapExceeded, "Hamiltonian group order exceeds cap");
  }
  return g;
}

Cardinality DedekindGroup::order() const {
  if (!is_periodic()) return Cardinality::infinite();
  return Cardinality::finite((q8_ ? 8 : 1) * torsion().order());
}

DElement DedekindGroup::identity() const {
  DElement d;
  if (q8_) d.q = Q8Element();
  d.free.assign(static_cast<std::size_t>(free_rank()), 0);
  d.torsion = torsion().zero();
  return d;
}

DElement DedekindGroup::element(std::optional<Q8Element> q, std::vector<std::int64_t> free,
                                std::vector<std::int64_t> torsion_coords) const {
  if (q.has_value() != q8_) raise(ErrorCode::GroupMismatch, "quaternion coordinate presence mismatch");
  const FgElement a = abelian_.element(std::move(free), std::move(torsion_coords));
  return DElement{q, a.free, a.torsion};
}

bool DedekindGroup::contains(const DElement& d) const {
  return d.q.has_value() == q8_ && abelian_.contains(FgElement{d.free, d.torsion});
}

void DedekindGroup::check(const DElement& d) const {
  if (!contains(d)) raise(ErrorCode::GroupMismatch, fci::to_string(d) + " is not in " + to_string());
}

DElement DedekindGroup::mul(const DElement& x, const DElement& y) const {
  check(x);
  check(y);
  const FgElement a = abelian_.add(FgElement{x.free, x.torsion}, FgElement{y.free, y.torsion});
  DElement r{std::nullopt, a.free, a.torsion};
  if (q8_) r.q = *x.q * *y.q;
  return r;
}

DElement DedekindGroup::inv(const DElement& x) const {
  check(x);
  const FgElement a = abelian_.neg(FgElement{x.free, x.torsion});
  DElement r{std::nullopt, a.free, a.torsion};
  if (q8_) r.q = x.q->inverse();
  return r;
}

DElement DedekindGroup::pow(const DElement& x, std::int64_t n) const {
  check(x);
  const FgElement a = abelian_.scale(FgElement{x.free, x.torsion}, n);
  DElement r{std::nullopt, a.free, a.torsion};
  if (q8_) {
    Q8Element q;
    const Q8Element base = n >= 0 ? *x.q : x.q->inverse();
    const std::int64_t e = num::mod(n < 0 ? -(n % 4) : n, 4);
    for (std::int64_t i = 0; i < e; ++i) q = q * base;
    r.q = q;
  }
  return r;
}

Cardinality DedekindGroup::order_of(const DElement& x) const {
  check(x);
  const Cardinality a = abelian_.order_of(FgElement{x.free, x.torsion});
  if (a.is_infinite() || !q8_) return a;
  return Cardinality::finite(std::lcm(a.value(), std::int64_t{x.q->order()}));
}

std::vector<DElement> DedekindGroup::generators() const {
  std::vector<DElement> gens;
  if (q8_) {
    for (Q8Element q : {Q8Element(Q8Element::I), Q8Element(Q8Element::J)}) {
      DElement d = identity();
      d.q = q;
      gens.push_back(d);
    }
  }
  for (int i = 0; i < free_rank(); ++i) {
    DElement d = identity();
    d.free[static_cast<std::size_t>(i)] = 1;
    gens.push_back(d);
  }
  for (std::size_t i = 0; i < torsion().num_components(); ++i) {
    DElement d = identity();
    d.torsion = torsion().basis(i);
    gens.push_back(d);
  }
  return gens;
}

std::int64_t DedekindGroup::size() const {
  if (!is_periodic()) raise(ErrorCode::NonPeriodic, to_string() + " is infinite");
  return (q8_ ? 8 : 1) * torsion().order();
}

DElement DedekindGroup::element_at(std::int64_t index) const {
  const std::int64_t n = size();
  if (index < 0 || index >= n) raise(ErrorCode::InvalidArgument, "element index out of range");
  DElement d = identity();
  const std::int64_t t = torsion().order();
  if (q8_) d.q = Q8Element::from_code(static_cast<std::uint8_t>(index / t));
  d.torsion = torsion().element_at(index % t);
  return d;
}

std::int64_t DedekindGroup::index_of(const DElement& d) const {
  check(d);
  if (!is_periodic()) raise(ErrorCode::NonPeriodic, to_string() + " is infinite");
  const std::int64_t base = q8_ ? std::int64_t{d.q->code()} * torsion().order() : 0;
  return base + torsion().index_of(d.torsion);
}

std::vector<std::int64_t> DedekindGroup::primes() const {
  if (!is_periodic()) raise(ErrorCode::NonPeriodic, to_string() + " is not periodic");
  std::vector<std::int64_t> ps = torsion().primes();
  if (q8_ && std::find(ps.begin(), ps.end(), 2) == ps.end()) ps.insert(ps.begin(), 2);
  return ps;
}

SylowDesc DedekindGroup::sylow(std::int64_t p) const {
  if (!is_periodic()) raise(ErrorCode::NonPeriodic, to_string() + " is not periodic");
  if (!num::is_prime(p)) raise(ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
  return SylowDesc{p, q8_ && p == 2, torsion().p_part(p)};
}

std::string DedekindGroup::to_string() const {
  if (!q8_) return abelian_.to_string();
  if (torsion().is_trivial()) return "Q8";
  return "Q8 x " + torsion().to_string();
}

}  // namespace fci
