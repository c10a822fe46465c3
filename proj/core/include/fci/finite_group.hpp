#pragma once

// Brute-force algorithms over any finite group whose elements are numbered
// 0..order()-1. Conjugation is x^g = g^-1 x g throughout.

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fci/error.hpp"

namespace fci {

using Elem = std::uint32_t;

template <class G>
concept IndexedGroup = requires(const G& g, Elem a, Elem b) {
  { g.order() } -> std::convertible_to<std::size_t>;
  { g.identity() } -> std::convertible_to<Elem>;
  { g.mul(a, b) } -> std::convertible_to<Elem>;
  { g.inv(a) } -> std::convertible_to<Elem>;
  { g.generators() } -> std::convertible_to<std::vector<Elem>>;
};

/// A finite group given by its Cayley table.
class TableGroup {
 public:
  /// `table[a * n + b]` is the product ab. Validates closure, identity and
  /// inverses (associativity is the caller's responsibility, see is_associative).
  TableGroup(std::size_t n, std::vector<Elem> table, std::vector<std::string> labels = {});

  template <IndexedGroup G>
  static TableGroup from(const G& g) {
    const std::size_t n = g.order();
    std::vector<Elem> table(n * n);
    for (Elem a = 0; a < n; ++a) {
      for (Elem b = 0; b < n; ++b) table[a * n + b] = g.mul(a, b);
    }
    return TableGroup(n, std::move(table));
  }

  std::size_t order() const { return n_; }
  Elem identity() const { return identity_; }
  Elem mul(Elem a, Elem b) const { return table_[a * n_ + b]; }
  Elem inv(Elem a) const { return inverse_[a]; }
  std::vector<Elem> generators() const { return generators_; }
  std::string label(Elem a) const;

 private:
  std::size_t n_;
  std::vector<Elem> table_;
  std::vector<Elem> inverse_;
  std::vector<Elem> generators_;
  std::vector<std::string> labels_;
  Elem identity_ = 0;
};

namespace algo {

template <IndexedGroup G>
void check_cap(const G& g, std::int64_t cap) {
  if (static_cast<std::int64_t>(g.order()) > cap) {
    raise(ErrorCode::OrderCapExceeded,
          "group order " + std::to_string(g.order()) + " exceeds cap " + std::to_string(cap));
  }
}

template <IndexedGroup G>
Elem conjugate(const G& g, Elem x, Elem by) {
  return g.mul(g.mul(g.inv(by), x), by);
}

template <IndexedGroup G>
Elem commutator(const G& g, Elem a, Elem b) {
  return g.mul(g.mul(g.inv(a), g.inv(b)), g.mul(a, b));
}

/// Powers x^0, x^1, ..., x^(o-1).
template <IndexedGroup G>
std::vector<Elem> cyclic_subgroup(const G& g, Elem x) {
  std::vector<Elem> powers{g.identity()};
  for (Elem y = x; y != g.identity(); y = g.mul(y, x)) powers.push_back(y);
  return powers;
}

template <IndexedGroup G>
std::size_t element_order(const G& g, Elem x) {
  std::size_t n = 1;
  for (Elem y = x; y != g.identity(); y = g.mul(y, x)) ++n;
  return n;
}

/// Subgroup generated by `gens`, as a membership bitmap.
template <IndexedGroup G>
std::vector<char> closure(const G& g, std::span<const Elem> gens) {
  std::vector<char> in(g.order(), 0);
  std::vector<Elem> frontier{g.identity()};
  in[g.identity()] = 1;
  while (!frontier.empty()) {
    const Elem y = frontier.back();
    frontier.pop_back();
    for (Elem s : gens) {
      const Elem z = g.mul(y, s);
      if (!in[z]) {
        in[z] = 1;
        frontier.push_back(z);
      }
    }
  }
  return in;
}

inline std::vector<Elem> members(const std::vector<char>& bitmap) {
  std::vector<Elem> out;
  for (std::size_t i = 0; i < bitmap.size(); ++i) {
    if (bitmap[i]) out.push_back(static_cast<Elem>(i));
  }
  return out;
}

/// A generator s of G with s^-1 x s outside <x>, or nullopt when <x> is normal.
template <IndexedGroup G>
std::optional<Elem> cyclic_normality_witness(const G& g, Elem x) {
  const auto powers = cyclic_subgroup(g, x);
  for (Elem s : g.generators()) {
    const Elem c = conjugate(g, x, s);
    if (std::find(powers.begin(), powers.end(), c) == powers.end()) return s;
  }
  return std::nullopt;
}

template <IndexedGroup G>
bool is_cyclic_normal(const G& g, Elem x) {
  return !cyclic_normality_witness(g, x).has_value();
}

/// One generator per cyclic subgroup: the least-index generator of each.
template <IndexedGroup G>
std::vector<Elem> cyclic_representatives(const G& g) {
  std::vector<char> seen(g.order(), 0);
  std::vector<Elem> reps;
  for (Elem x = 0; x < g.order(); ++x) {
    if (seen[x]) continue;
    reps.push_back(x);
    const auto powers = cyclic_subgroup(g, x);
    const std::size_t o = powers.size();
    for (std::size_t j = 1; j < o; ++j) {
      if (std::gcd(j, o) == 1) seen[powers[j]] = 1;
    }
    seen[x] = 1;
  }
  return reps;
}

struct DedekindVerdict {
  bool dedekind = true;
  /// (x, s) with <x>^s != <x>.
  std::optional<std::pair<Elem, Elem>> witness;
};

/// True iff every cyclic subgroup is normal, which forces every subgroup to be normal.
template <IndexedGroup G>
DedekindVerdict is_dedekind(const G& g, std::int64_t cap = kDefaultOrderCap) {
  check_cap(g, cap);
  for (Elem x : cyclic_representatives(g)) {
    if (auto s = cyclic_normality_witness(g, x)) return {false, std::pair(x, *s)};
  }
  return {};
}

template <IndexedGroup G>
std::vector<Elem> centralizer(const G& g, Elem x) {
  std::vector<Elem> out;
  for (Elem y = 0; y < g.order(); ++y) {
    if (g.mul(x, y) == g.mul(y, x)) out.push_back(y);
  }
  return out;
}

template <IndexedGroup G>
bool is_central(const G& g, Elem x) {
  for (Elem s : g.generators()) {
    if (g.mul(x, s) != g.mul(s, x)) return false;
  }
  return true;
}

template <IndexedGroup G>
std::vector<Elem> center(const G& g) {
  std::vector<Elem> out;
  for (Elem x = 0; x < g.order(); ++x) {
    if (is_central(g, x)) out.push_back(x);
  }
  return out;
}

template <IndexedGroup G>
bool is_abelian(const G& g) {
  const auto gens = g.generators();
  for (std::size_t a = 0; a < gens.size(); ++a) {
    for (std::size_t b = a + 1; b < gens.size(); ++b) {
      if (g.mul(gens[a], gens[b]) != g.mul(gens[b], gens[a])) return false;
    }
  }
  return true;
}

/// Derived subgroup as the normal closure of commutators of generators.
/// Returns the membership bitmap and a generating set for it.
template <IndexedGroup G>
std::pair<std::vector<char>, std::vector<Elem>> derived_subgroup(const G& g) {
  const auto gens = g.generators();
  std::vector<Elem> dgens;
  std::vector<char> in(g.order(), 0);
  in[g.identity()] = 1;
  auto absorb = [&](Elem c) {
    if (in[c]) return;
    dgens.push_back(c);
    in = closure(g, dgens);
  };
  for (std::size_t a = 0; a < gens.size(); ++a) {
    for (std::size_t b = a + 1; b < gens.size(); ++b) absorb(commutator(g, gens[a], gens[b]));
  }
  bool grew = true;
  while (grew) {
    grew = false;
    const auto current = dgens;
    for (Elem c : current) {
      for (Elem s : gens) {
        const Elem conj = conjugate(g, c, s);
        if (!in[conj]) {
          absorb(conj);
          grew = true;
        }
      }
    }
  }
  return {std::move(in), std::move(dgens)};
}

template <IndexedGroup G>
bool is_metabelian(const G& g, std::int64_t cap = kDefaultOrderCap) {
  check_cap(g, cap);
  const auto [in, dgens] = derived_subgroup(g);
  for (std::size_t a = 0; a < dgens.size(); ++a) {
    for (std::size_t b = a + 1; b < dgens.size(); ++b) {
      if (g.mul(dgens[a], dgens[b]) != g.mul(dgens[b], dgens[a])) return false;
    }
  }
  return true;
}

/// f(x) lies in <x> for every x. `f` is a full element mapping.
template <IndexedGroup G>
bool is_power_map(const G& g, std::span<const Elem> f) {
  if (f.size() != g.order()) raise(ErrorCode::GroupMismatch, "mapping size differs from group order");
  for (Elem x = 0; x < g.order(); ++x) {
    bool found = false;
    Elem y = g.identity();
    do {
      if (y == f[x]) {
        found = true;
        break;
      }
      y = g.mul(y, x);
    } while (y != g.identity());
    if (!found) return false;
  }
  return true;
}

/// Same test restricted to one generator per cyclic subgroup. Sufficient when
/// f is a homomorphism: f(x^j) = f(x)^j stays in <x^j> whenever f(x) = x^a.
template <IndexedGroup G>
bool is_power_map_on(const G& g, std::span<const Elem> f, std::span<const Elem> reps) {
  for (Elem x : reps) {
    bool found = false;
    Elem y = g.identity();
    do {
      if (y == f[x]) {
        found = true;
        break;
      }
      y = g.mul(y, x);
    } while (y != g.identity());
    if (!found) return false;
  }
  return true;
}

template <IndexedGroup G>
bool is_automorphism(const G& g, std::span<const Elem> f) {
  if (f.size() != g.order()) return false;
  std::vector<char> hit(g.order(), 0);
  for (Elem x = 0; x < g.order(); ++x) {
    if (f[x] >= g.order() || hit[f[x]]) return false;
    hit[f[x]] = 1;
  }
  for (Elem a = 0; a < g.order(); ++a) {
    for (Elem b = 0; b < g.order(); ++b) {
      if (f[g.mul(a, b)] != g.mul(f[a], f[b])) return false;
    }
  }
  return true;
}

template <IndexedGroup G>
bool is_associative(const G& g) {
  for (Elem a = 0; a < g.order(); ++a) {
    for (Elem b = 0; b < g.order(); ++b) {
      const Elem ab = g.mul(a, b);
      for (Elem c = 0; c < g.order(); ++c) {
        if (g.mul(ab, c) != g.mul(a, g.mul(b, c))) return false;
      }
    }
  }
  return true;
}

}  // namespace algo
}  // namespace fci
