#include "fci/abelian.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "fci/padic.hpp"

namespace fci {

std::int64_t Component::modulus() const { return num::checked_pow(prime, exponent); }

FinAbelian::FinAbelian(std::vector<Component> components, std::int64_t cap)
    : components_(std::move(components)) {
  std::sort(components_.begin(), components_.end());
  order_ = 1;
  for (const auto& c : components_) {
    if (!num::is_prime(c.prime)) {
      raise(ErrorCode::InvalidArgument, std::to_string(c.prime) + " is not prime");
    }
    if (c.exponent < 1) raise(ErrorCode::InvalidArgument, "component exponent must be >= 1");
    const std::int64_t m = c.modulus();
    if (m > cap || order_ > cap / m) {
      raise(ErrorCode::OrderCapExceeded,
            "order exceeds cap " + std::to_string(cap) + " at component Z/" + std::to_string(m));
    }
    order_ *= m;
  }
}

FinAbelian FinAbelian::cyclic(std::int64_t n, std::int64_t cap) {
  if (n < 1) raise(ErrorCode::InvalidArgument, "cyclic group order must be >= 1");
  std::vector<Component> comps;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) comps.push_back({p, e});
  }
  if (n > 1) comps.push_back({n, 1});
  return FinAbelian(std::move(comps), cap);
}

std::int64_t FinAbelian::exponent() const {
  std::int64_t e = 1;
  for (const auto& c : components_) e = std::lcm(e, c.modulus());
  return e;
}

std::vector<std::int64_t> FinAbelian::primes() const {
  std::vector<std::int64_t> ps;
  for (const auto& c : components_) {
    if (ps.empty() || ps.back() != c.prime) ps.push_back(c.prime);
  }
  return ps;
}

bool FinAbelian::is_p_group(std::int64_t p) const {
  return std::all_of(components_.begin(), components_.end(),
                     [p](const Component& c) { return c.prime == p; });
}

AbElement FinAbelian::zero() const { return AbElement{std::vector<std::int64_t>(components_.size(), 0)}; }

AbElement FinAbelian::basis(std::size_t i) const {
  AbElement a = zero();
  a.coords.at(i) = 1;
  return a;
}

AbElement FinAbelian::element(std::vector<std::int64_t> coords) const {
  if (coords.size() != components_.size()) {
    raise(ErrorCode::GroupMismatch, "expected " + std::to_string(components_.size()) +
                                        " coordinates, got " + std::to_string(coords.size()));
  }
  for (std::size_t i = 0; i < coords.size(); ++i) coords[i] = num::mod(coords[i], components_[i].modulus());
  return AbElement{std::move(coords)};
}

bool FinAbelian::contains(const AbElement& a) const {
  if (a.coords.size() != components_.size()) return false;
  for (std::size_t i = 0; i < a.coords.size(); ++i) {
    if (a.coords[i] < 0 || a.coords[i] >= components_[i].modulus()) return false;
  }
  return true;
}

void FinAbelian::check(const AbElement& a) const {
  if (!contains(a)) raise(ErrorCode::GroupMismatch, fci::to_string(a) + " is not in " + to_string());
}

AbElement FinAbelian::add(const AbElement& a, const AbElement& b) const {
  check(a);
  check(b);
  AbElement r = a;
  for (std::size_t i = 0; i < r.coords.size(); ++i) {
    const std::int64_t m = components_[i].modulus();
    r.coords[i] += b.coords[i];
    if (r.coords[i] >= m) r.coords[i] -= m;
  }
  return r;
}

AbElement FinAbelian::neg(const AbElement& a) const {
  check(a);
  AbElement r = a;
  for (std::size_t i = 0; i < r.coords.size(); ++i) {
    if (r.coords[i] != 0) r.coords[i] = components_[i].modulus() - r.coords[i];
  }
  return r;
}

AbElement FinAbelian::scale(const AbElement& a, std::int64_t n) const {
  check(a);
  AbElement r = a;
  for (std::size_t i = 0; i < r.coords.size(); ++i) {
    r.coords[i] = num::mulmod(r.coords[i], n, components_[i].modulus());
  }
  return r;
}

std::int64_t FinAbelian::order_of(const AbElement& a) const {
  check(a);
  std::int64_t n = 1;
  for (std::size_t i = 0; i < a.coords.size(); ++i) {
    const std::int64_t m = components_[i].modulus();
    n = std::lcm(n, m / std::gcd(m, a.coords[i]));
  }
  return n;
}

AbElement FinAbelian::element_at(std::int64_t index) const {
  if (index < 0 || index >= order_) raise(ErrorCode::InvalidArgument, "element index out of range");
  AbElement a = zero();
  for (std::size_t i = components_.size(); i-- > 0;) {
    const std::int64_t m = components_[i].modulus();
    a.coords[i] = index % m;
    index /= m;
  }
  return a;
}

std::int64_t FinAbelian::index_of(const AbElement& a) const {
  check(a);
  std::int64_t index = 0;
  for (std::size_t i = 0; i < components_.size(); ++i) index = index * components_[i].modulus() + a.coords[i];
  return index;
}

void FinAbelian::for_each(const std::function<void(const AbElement&)>& fn) const {
  AbElement a = zero();
  for (std::int64_t n = 0; n < order_; ++n) {
    fn(a);
    for (std::size_t i = components_.size(); i-- > 0;) {
      if (++a.coords[i] < components_[i].modulus()) break;
      a.coords[i] = 0;
    }
  }
}

FinAbelian FinAbelian::p_part(std::int64_t p, std::vector<std::size_t>* positions) const {
  std::vector<Component> comps;
  if (positions != nullptr) positions->clear();
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (components_[i].prime != p) continue;
    comps.push_back(components_[i]);
    if (positions != nullptr) positions->push_back(i);
  }
  return FinAbelian(std::move(comps));
}

std::string FinAbelian::to_string() const {
  if (components_.empty()) return "1";
  std::ostringstream out;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (i > 0) out << " + ";
    out << "Z/" << components_[i].modulus();
  }
  return out.str();
}

std::string to_string(const AbElement& a) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < a.coords.size(); ++i) {
    if (i > 0) out << ',';
    out << a.coords[i];
  }
  out << ')';
  return out.str();
}

AbSubgroup::AbSubgroup(FinAbelian parent, std::vector<int> shifts)
    : parent_(std::move(parent)), shifts_(std::move(shifts)) {
  if (shifts_.size() != parent_.num_components()) {
    raise(ErrorCode::GroupMismatch, "subgroup shift vector does not match parent");
  }
  for (std::size_t i = 0; i < shifts_.size(); ++i) {
    shifts_[i] = std::clamp(shifts_[i], 0, parent_.components()[i].exponent);
  }
}

std::int64_t AbSubgroup::order() const {
  std::int64_t n = 1;
  for (std::size_t i = 0; i < shifts_.size(); ++i) {
    const auto& c = parent_.components()[i];
    n *= num::checked_pow(c.prime, c.exponent - shifts_[i]);
  }
  return n;
}

bool AbSubgroup::contains(const AbElement& a) const {
  if (!parent_.contains(a)) return false;
  for (std::size_t i = 0; i < shifts_.size(); ++i) {
    if (a.coords[i] % num::checked_pow(parent_.components()[i].prime, shifts_[i]) != 0) return false;
  }
  return true;
}

FinAbelian AbSubgroup::shape() const {
  std::vector<Component> comps;
  for (std::size_t i = 0; i < shifts_.size(); ++i) {
    const auto& c = parent_.components()[i];
    if (c.exponent > shifts_[i]) comps.push_back({c.prime, c.exponent - shifts_[i]});
  }
  return FinAbelian(std::move(comps));
}

AbElement AbSubgroup::embed(const AbElement& a) const {
  const FinAbelian s = shape();
  if (!s.contains(a)) raise(ErrorCode::GroupMismatch, "element is not in the subgroup shape");
  // Surviving components sorted the same way FinAbelian sorts them.
  std::vector<std::pair<Component, std::size_t>> tagged;
  for (std::size_t i = 0; i < shifts_.size(); ++i) {
    const auto& c = parent_.components()[i];
    if (c.exponent > shifts_[i]) tagged.push_back({Component{c.prime, c.exponent - shifts_[i]}, i});
  }
  std::stable_sort(tagged.begin(), tagged.end(),
                   [](const auto& x, const auto& y) { return x.first < y.first; });
  AbElement r = parent_.zero();
  for (std::size_t j = 0; j < tagged.size(); ++j) {
    const std::size_t i = tagged[j].second;
    r.coords[i] = a.coords[j] * num::checked_pow(parent_.components()[i].prime, shifts_[i]);
  }
  return r;
}

std::vector<AbElement> AbSubgroup::elements() const {
  std::vector<AbElement> out;
  out.reserve(static_cast<std::size_t>(order()));
  shape().for_each([&](const AbElement& a) { out.push_back(embed(a)); });
  return out;
}

AbSubgroup omega(const FinAbelian& a, int k, std::int64_t p) {
  if (!a.is_p_group(p)) {
    raise(ErrorCode::NotAPGroup, a.to_string() + " is not a " + std::to_string(p) + "-group");
  }
  if (k < 0) raise(ErrorCode::InvalidArgument, "Omega index must be >= 0");
  std::vector<int> shifts;
  for (const auto& c : a.components()) shifts.push_back(std::max(0, c.exponent - k));
  return AbSubgroup(a, std::move(shifts));
}

std::int64_t omega_order(const FinAbelian& a, int k, std::int64_t p) {
  std::int64_t n = 1;
  for (const auto& c : a.components()) {
    if (c.prime == p) n *= num::checked_pow(p, std::min(k, c.exponent));
  }
  return n;
}

FgAbelian::FgAbelian(int free_rank, FinAbelian torsion)
    : free_rank_(free_rank), torsion_(std::move(torsion)) {
  if (free_rank < 0) raise(ErrorCode::InvalidArgument, "free rank must be >= 0");
}

FgElement FgAbelian::zero() const {
  return FgElement{std::vector<std::int64_t>(static_cast<std::size_t>(free_rank_), 0), torsion_.zero()};
}

FgElement FgAbelian::element(std::vector<std::int64_t> free, std::vector<std::int64_t> torsion) const {
  if (free.size() != static_cast<std::size_t>(free_rank_)) {
    raise(ErrorCode::GroupMismatch, "expected " + std::to_string(free_rank_) + " free coordinates");
  }
  return FgElement{std::move(free), torsion_.element(std::move(torsion))};
}

bool FgAbelian::contains(const FgElement& a) const {
  return a.free.size() == static_cast<std::size_t>(free_rank_) && torsion_.contains(a.torsion);
}

void FgAbelian::check(const FgElement& a) const {
  if (!contains(a)) raise(ErrorCode::GroupMismatch, "element is not in " + to_string());
}

FgElement FgAbelian::add(const FgElement& a, const FgElement& b) const {
  check(a);
  check(b);
  FgElement r = a;
  for (std::size_t i = 0; i < r.free.size(); ++i) r.free[i] += b.free[i];
  r.torsion = torsion_.add(a.torsion, b.torsion);
  return r;
}

FgElement FgAbelian::neg(const FgElement& a) const {
  check(a);
  FgElement r = a;
  for (auto& v : r.free) v = -v;
  r.torsion = torsion_.neg(a.torsion);
  return r;
}

FgElement FgAbelian::scale(const FgElement& a, std::int64_t n) const {
  check(a);
  FgElement r = a;
  for (auto& v : r.free) v *= n;
  r.torsion = torsion_.scale(a.torsion, n);
  return r;
}

Cardinality FgAbelian::order_of(const FgElement& a) const {
  check(a);
  if (std::any_of(a.free.begin(), a.free.end(), [](std::int64_t v) { return v != 0; })) {
    return Cardinality::infinite();
  }
  return Cardinality::finite(torsion_.order_of(a.torsion));
}

std::string FgAbelian::to_string() const {
  std::string s;
  if (free_rank_ > 0) s = free_rank_ == 1 ? "Z" : "Z^" + std::to_string(free_rank_);
  if (!torsion_.is_trivial()) s += (s.empty() ? "" : " + ") + torsion_.to_string();
  return s.empty() ? "1" : s;
}

int rank_p(const FinAbelian& a, std::int64_t p) {
  return static_cast<int>(std::count_if(a.components().begin(), a.components().end(),
                                        [p](const Component& c) { return c.prime == p; }));
}

int rank_p(const FgAbelian& a, std::int64_t p) { return rank_p(a.torsion(), p); }

int rank_0(const FgAbelian& a) { return a.free_rank(); }

int total_rank(const FgAbelian& a) {
  int r = rank_0(a);
  for (auto p : a.torsion().primes()) r += rank_p(a, p);
  return r;
}

namespace {

int sort_key(const QuasiComponent& c) { return c.exponent.value_or(1 << 30); }

}  // namespace

QuasiSpec::QuasiSpec(std::vector<QuasiComponent> components) : components_(std::move(components)) {
  for (const auto& c : components_) {
    if (!num::is_prime(c.prime)) raise(ErrorCode::InvalidArgument, std::to_string(c.prime) + " is not prime");
    if (c.exponent && *c.exponent < 1) raise(ErrorCode::InvalidArgument, "component exponent must be >= 1");
  }
  std::stable_sort(components_.begin(), components_.end(), [](const auto& a, const auto& b) {
    return std::pair(a.prime, sort_key(a)) < std::pair(b.prime, sort_key(b));
  });
}

bool QuasiSpec::has_quasicyclic() const {
  return std::any_of(components_.begin(), components_.end(), [](const auto& c) { return c.is_quasicyclic(); });
}

bool QuasiSpec::has_quasicyclic(std::int64_t p) const {
  return std::any_of(components_.begin(), components_.end(),
                     [p](const auto& c) { return c.prime == p && c.is_quasicyclic(); });
}

std::vector<std::int64_t> QuasiSpec::primes() const {
  std::vector<std::int64_t> ps;
  for (const auto& c : components_) {
    if (ps.empty() || ps.back() != c.prime) ps.push_back(c.prime);
  }
  return ps;
}

QuasiSpec QuasiSpec::p_part(std::int64_t p) const {
  std::vector<QuasiComponent> comps;
  for (const auto& c : components_) {
    if (c.prime == p) comps.push_back(c);
  }
  return QuasiSpec(std::move(comps));
}

Materialization QuasiSpec::materialize(int level, std::int64_t cap) const {
  if (level < 1) raise(ErrorCode::InvalidArgument, "materialization level must be >= 1");
  std::vector<std::pair<Component, std::size_t>> tagged;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    tagged.push_back({Component{components_[i].prime, components_[i].exponent.value_or(level)}, i});
  }
  std::stable_sort(tagged.begin(), tagged.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  Materialization m;
  m.level = level;
  m.slot.resize(components_.size());
  std::vector<Component> comps;
  for (std::size_t j = 0; j < tagged.size(); ++j) {
    comps.push_back(tagged[j].first);
    m.slot[tagged[j].second] = j;
  }
  m.group = FinAbelian(std::move(comps), cap);
  return m;
}

AbElement QuasiSpec::embed(const AbElement& a, int from, int to) const {
  if (to < from) raise(ErrorCode::InvalidArgument, "embedding must go up the ladder");
  const Materialization src = materialize(from, std::int64_t{1} << 62);
  const Materialization dst = materialize(to, std::int64_t{1} << 62);
  if (!src.group.contains(a)) raise(ErrorCode::GroupMismatch, "element is not in the level-" + std::to_string(from) + " group");
  AbElement r = dst.group.zero();
  for (std::size_t i = 0; i < components_.size(); ++i) {
    std::int64_t v = a.coords[src.slot[i]];
    if (components_[i].is_quasicyclic()) v *= num::checked_pow(components_[i].prime, to - from);
    r.coords[dst.slot[i]] = v;
  }
  return r;
}

int QuasiSpec::max_exponent(int level) const {
  int e = 0;
  for (const auto& c : components_) e = std::max(e, c.exponent.value_or(level));
  return e;
}

std::string QuasiSpec::to_string() const {
  if (components_.empty()) return "1";
  std::ostringstream out;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (i > 0) out << " + ";
    if (components_[i].is_quasicyclic()) {
      out << "Z(" << components_[i].prime << "^inf)";
    } else {
      out << "Z/" << num::checked_pow(components_[i].prime, *components_[i].exponent);
    }
  }
  return out.str();
}

}  // namespace fci
