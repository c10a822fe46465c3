#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fci/abelian.hpp"
#include "fci/extension.hpp"
#include "fci/finite_group.hpp"

namespace fci {

enum class Verdict { Pass, Fail, Undecidable };
std::string to_string(Verdict v);

// ---------------------------------------------------------------------------
// Finite groups

struct CyclicRecord {
  std::string element;
  std::int64_t order = 1;
  bool normal = true;
  std::optional<std::int64_t> index;  ///< |C_G(x):<x>|, only for non-normal <x>
};

struct FciReport {
  std::int64_t group_order = 1;
  std::vector<CyclicRecord> records;
  std::int64_t max_index = 0;  ///< 0 when every cyclic subgroup is normal
  std::optional<std::int64_t> bci_bound;
  bool dedekind = true;

  std::size_t non_normal_count() const;
};

template <typename G>
concept LabelledGroup = IndexedGroup<G> && requires(const G& g, Elem a) {
  { g.label(a) } -> std::convertible_to<std::string>;
};

/// One record per cyclic subgroup, represented by its least-index generator.
template <LabelledGroup G>
FciReport check_fci_finite(const G& g, std::int64_t cap = kDefaultOrderCap) {
  algo::check_cap(g, cap);
  FciReport rep;
  rep.group_order = static_cast<std::int64_t>(g.order());
  for (Elem x : algo::cyclic_representatives(g)) {
    CyclicRecord r;
    r.element = g.label(x);
    r.order = static_cast<std::int64_t>(algo::element_order(g, x));
    r.normal = algo::is_cyclic_normal(g, x);
    if (!r.normal) {
      const auto c = static_cast<std::int64_t>(algo::centralizer(g, x).size());
      r.index = c / r.order;
      rep.max_index = std::max(rep.max_index, *r.index);
      rep.dedekind = false;
    }
    rep.records.push_back(std::move(r));
  }
  rep.bci_bound = rep.max_index;
  return rep;
}

// ---------------------------------------------------------------------------
// Periodic family: P x Q with P = <g, A>, a^g = a^-1, g^2 in A.

struct PeriodicInput {
  QuasiSpec a;
  LevelElement d0;       ///< coordinates over the materialized A
  std::int64_t t = -1;   ///< exponent of the action of g on A
  FinAbelian q;
};

struct PeriodicVerdict {
  Verdict verdict = Verdict::Pass;
  std::vector<std::string> reasons;
  std::optional<ExtensionSpec> spec;  ///< A + Q as a base, g of order 2 over it
};

PeriodicVerdict classify_periodic(const PeriodicInput& in);

// ---------------------------------------------------------------------------
// Non-periodic family: <g> x| D with g of infinite order.

struct Condition {
  Verdict verdict = Verdict::Pass;
  std::string reason;
};

struct NonPeriodicInput {
  QuasiSpec d;
  bool hamiltonian = false;
  ActionSpec action;
};

struct NonPeriodicVerdict {
  Condition cond_i, cond_ii, cond_iii;
  Verdict overall = Verdict::Pass;
  ExtensionSpec spec;

  std::vector<std::string> reasons() const;
};

NonPeriodicVerdict classify_nonperiodic(const NonPeriodicInput& in);

// ---------------------------------------------------------------------------
// Truncation ladders

struct Probe {
  std::int64_t k = 1;
  LevelElement d;
};

struct LadderOptions {
  int first = 2;
  int last = 6;
  int window = 3;
  /// When non-empty the tracked value is the largest index over these
  /// elements, normal or not, instead of the sampled non-normal maximum.
  std::vector<Probe> probes;
  std::int64_t cap = kDefaultOrderCap;
};

struct LadderLevel {
  int level = 1;
  std::int64_t value = 0;
  std::int64_t sampled = 0;
  std::int64_t non_normal = 0;
};

enum class LadderVerdict { Stabilized, Diverging, Inconclusive };
std::string to_string(LadderVerdict v);

struct LadderResult {
  std::vector<LadderLevel> levels;
  LadderVerdict verdict = LadderVerdict::Inconclusive;
  int stable_from = 0;
  std::int64_t stable_value = 0;
};

/// Stabilized: the last two values agree. Diverging: the last three
/// strictly increase. Otherwise Inconclusive.
LadderResult judge_ladder(std::vector<LadderLevel> levels);

LadderLevel ladder_level(const ExtensionSpec& spec, int level, const LadderOptions& opt);
LadderResult ladder(const ExtensionSpec& spec, const LadderOptions& opt);

// ---------------------------------------------------------------------------
// Finitely generated abelian-by-C2 family

struct BciBoundReport {
  int r2 = 0;
  std::int64_t bound = 2;  ///< 2^(r2 + 1)
  std::int64_t max_centralizer = 0;
  std::int64_t sampled = 0;
  std::int64_t non_normal = 0;
  bool closed_form_matches = true;  ///< closed form equals window brute force
  bool infinite_order_normal = true;
  std::vector<std::string> violations;

  bool within() const { return max_centralizer <= bound; }
  bool attained() const { return max_centralizer == bound; }
};

/// Samples every element whose free coordinates lie in [-window, window].
BciBoundReport check_bci_bound_fg(const CyclicExtension& g, int window = 3);

}  // namespace fci
