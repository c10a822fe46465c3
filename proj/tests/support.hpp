#pragma once

// Independent oracles and group catalogues shared by the unit tests and the
// acceptance runner. Everything here recomputes from definitions with plain
// loops and deliberately avoids the closed forms under test.

#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "fci/abelian.hpp"
#include "fci/compiled.hpp"
#include "fci/dedekind.hpp"
#include "fci/extension.hpp"
#include "fci/finite_group.hpp"
#include "fci/pauto.hpp"

namespace fci::oracle {

inline std::int64_t ipow(std::int64_t p, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= p;
  return r;
}

/// Every partition of n, as non-increasing parts.
inline std::vector<std::vector<int>> partitions(int n, int max_part = -1) {
  if (max_part < 0) max_part = n;
  if (n == 0) return {{}};
  std::vector<std::vector<int>> out;
  for (int first = std::min(n, max_part); first >= 1; --first) {
    for (auto rest : partitions(n - first, first)) {
      rest.insert(rest.begin(), first);
      out.push_back(rest);
    }
  }
  return out;
}

/// Every abelian p-group of order p^n with 1 <= n and p^n <= max_order.
inline std::vector<FinAbelian> abelian_p_groups(std::int64_t p, std::int64_t max_order) {
  std::vector<FinAbelian> out;
  for (int n = 1; ipow(p, n) <= max_order; ++n) {
    for (const auto& parts : partitions(n)) {
      std::vector<Component> cs;
      for (int e : parts) cs.push_back(Component{p, e});
      out.emplace_back(cs);
    }
  }
  return out;
}

/// Every abelian group of order at most max_order (including the trivial group).
inline std::vector<FinAbelian> abelian_groups(std::int64_t max_order) {
  std::vector<FinAbelian> out;
  std::function<void(std::int64_t, std::int64_t, std::vector<Component>)> rec =
      [&](std::int64_t min_prime, std::int64_t order, std::vector<Component> cs) {
        out.emplace_back(cs);
        for (std::int64_t p = min_prime; order * p <= max_order; ++p) {
          if (!num::is_prime(p)) continue;
          for (int n = 1; order * ipow(p, n) <= max_order; ++n) {
            for (const auto& parts : partitions(n)) {
              auto next = cs;
              for (int e : parts) next.push_back(Component{p, e});
              rec(p + 1, order * ipow(p, n), next);
            }
          }
        }
      };
  rec(2, 1, {});
  return out;
}

/// The dihedral group of order 2n.
inline CyclicExtension dihedral(std::int64_t n) {
  return CyclicExtension::finite(DedekindGroup::abelian(FinAbelian::cyclic(n)), 2,
                                 DedekindGroup::abelian(FinAbelian::cyclic(n)).identity(), PowerAut::inversion());
}

/// The image of the integer v in a cyclic group Z/n stored as its primary parts.
inline DElement cyclic_element(const DedekindGroup& base, std::int64_t v) {
  std::vector<std::int64_t> coords;
  for (const auto& c : base.torsion().components()) coords.push_back(v);
  return base.element(std::nullopt, {}, coords);
}

/// The dicyclic group of order 2n (n even): base Z/n inverted by g, g^2 = n/2.
inline CyclicExtension dicyclic(std::int64_t n) {
  const DedekindGroup base = DedekindGroup::abelian(FinAbelian::cyclic(n));
  return CyclicExtension::finite(base, 2, cyclic_element(base, n / 2), PowerAut::inversion());
}

/// G x H as a multiplication table; (a, b) has index a * |H| + b.
template <IndexedGroup G, IndexedGroup H>
TableGroup direct_product(const G& g, const H& h) {
  const std::size_t n = g.order() * h.order();
  std::vector<Elem> table(n * n);
  for (Elem x = 0; x < n; ++x) {
    for (Elem y = 0; y < n; ++y) {
      const Elem a = g.mul(static_cast<Elem>(x / h.order()), static_cast<Elem>(y / h.order()));
      const Elem b = h.mul(static_cast<Elem>(x % h.order()), static_cast<Elem>(y % h.order()));
      table[x * n + y] = static_cast<Elem>(a * h.order() + b);
    }
  }
  return TableGroup(n, std::move(table));
}

/// All subgroups of a finite group, as membership bitmaps, built by joining
/// cyclic subgroups until nothing new appears.
template <IndexedGroup G>
std::set<std::vector<char>> all_subgroups(const G& g) {
  std::vector<std::vector<char>> cyclic;
  std::set<std::vector<char>> seen;
  for (Elem x = 0; x < g.order(); ++x) {
    const Elem gens[1] = {x};
    auto c = algo::closure(g, std::span<const Elem>(gens, 1));
    if (seen.insert(c).second) cyclic.push_back(c);
  }
  std::vector<std::vector<char>> frontier(seen.begin(), seen.end());
  while (!frontier.empty()) {
    std::vector<std::vector<char>> next;
    for (const auto& h : frontier) {
      for (const auto& c : cyclic) {
        std::vector<Elem> gens;
        for (Elem y = 0; y < g.order(); ++y) {
          if (h[y] || c[y]) gens.push_back(y);
        }
        auto j = algo::closure(g, gens);
        if (seen.insert(j).second) next.push_back(std::move(j));
      }
    }
    frontier = std::move(next);
  }
  return seen;
}

/// Every subgroup is normal, checked over all subgroups and all conjugators.
template <IndexedGroup G>
bool dedekind_by_subgroups(const G& g) {
  for (const auto& h : all_subgroups(g)) {
    for (Elem c = 0; c < g.order(); ++c) {
      for (Elem y = 0; y < g.order(); ++y) {
        if (h[y] && !h[g.mul(g.mul(g.inv(c), y), c)]) return false;
      }
    }
  }
  return true;
}

/// Every element of a finite extension, by symbolic normal forms.
inline std::vector<GElement> elements(const CyclicExtension& g) {
  std::vector<GElement> out;
  const std::int64_t m = g.top_order().value();
  for (std::int64_t k = 0; k < m; ++k) {
    for (std::int64_t i = 0; i < g.base().size(); ++i) out.push_back(GElement{k, g.base().element_at(i)});
  }
  return out;
}

/// {y : xy = yx} by symbolic multiplication.
inline std::vector<GElement> brute_centralizer(const CyclicExtension& g, const GElement& x) {
  std::vector<GElement> out;
  for (const auto& y : elements(g)) {
    if (g.mul(x, y) == g.mul(y, x)) out.push_back(y);
  }
  return out;
}

/// |C_G(x):<x>| for an infinite top and x = g^k d, k != 0: every coset of <x>
/// in C_G(x) has exactly one member whose top exponent lies in [0, |k|).
inline std::int64_t coset_index(const CyclicExtension& g, const GElement& x) {
  const std::int64_t k = x.k < 0 ? -x.k : x.k;
  std::int64_t count = 0;
  for (std::int64_t m = 0; m < k; ++m) {
    for (std::int64_t i = 0; i < g.base().size(); ++i) {
      const GElement y{m, g.base().element_at(i)};
      if (g.mul(x, y) == g.mul(y, x)) ++count;
    }
  }
  return count;
}

/// Least positive top exponent of an element of C_G(x), scanning a window.
inline std::int64_t window_projection_step(const CyclicExtension& g, const GElement& x, std::int64_t window) {
  for (std::int64_t m = 1; m <= window; ++m) {
    for (std::int64_t i = 0; i < g.base().size(); ++i) {
      const GElement y{m, g.base().element_at(i)};
      if (g.mul(x, y) == g.mul(y, x)) return m;
    }
  }
  return 0;
}

/// {a : phi^k(a) = a} by direct application.
inline std::set<AbElement> brute_fixed_points(const PowerAut& phi, const FinAbelian& a, std::int64_t k) {
  const DedekindGroup d = DedekindGroup::abelian(a);
  std::set<AbElement> out;
  a.for_each([&](const AbElement& x) {
    const DElement dx{std::nullopt, {}, x};
    if (apply(phi, d, dx, k) == dx) out.insert(x);
  });
  return out;
}

inline std::int64_t random_unit(std::mt19937_64& rng, std::int64_t p, std::int64_t m) {
  std::uniform_int_distribution<std::int64_t> dist(1, m - 1);
  for (;;) {
    const std::int64_t v = dist(rng);
    if (v % p != 0) return v;
  }
}

/// A random abelian p-group of order at most max_order.
inline FinAbelian random_p_group(std::mt19937_64& rng, std::int64_t p, std::int64_t max_order) {
  int n = 0;
  while (ipow(p, n + 1) <= max_order) ++n;
  std::uniform_int_distribution<int> dn(1, n);
  const auto parts = partitions(dn(rng));
  std::uniform_int_distribution<std::size_t> dp(0, parts.size() - 1);
  std::vector<Component> cs;
  for (int e : parts[dp(rng)]) cs.push_back(Component{p, e});
  return FinAbelian(cs);
}

/// The periodic family: A (components at 2) inverted by g with g^2 = 0, times a fixed Q.
inline ExtensionSpec periodic_family(std::vector<QuasiComponent> a, std::vector<QuasiComponent> q) {
  ExtensionSpec s;
  for (const auto& c : q) a.push_back(c);
  s.base = QuasiSpec(a);
  s.top_order = 2;
  s.d0 = LevelElement{1, std::nullopt, s.base.materialize(1).group.zero()};
  s.action.exponents.push_back(ExponentSpec{2, -1, std::nullopt});
  return s;
}

/// Infinite cyclic top acting on a truncated base by the exact exponent t at p.
inline ExtensionSpec infinite_family(std::vector<QuasiComponent> d, std::int64_t p, std::int64_t t) {
  ExtensionSpec s;
  s.base = QuasiSpec(std::move(d));
  s.d0 = LevelElement{1, std::nullopt, s.base.materialize(1).group.zero()};
  s.action.exponents.push_back(ExponentSpec{p, t, std::nullopt});
  return s;
}

inline const QuasiComponent kQuasi2{2, std::nullopt};
inline const QuasiComponent kQuasi3{3, std::nullopt};

}  // namespace fci::oracle
