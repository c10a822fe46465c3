#include "fci/verify.hpp"

#include <algorithm>
#include <future>
#include <set>

namespace fci {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "Pass";
    case Verdict::Fail: return "Fail";
    case Verdict::Undecidable: return "Undecidable";
  }
  return "?";
}

std::string to_string(LadderVerdict v) {
  switch (v) {
    case LadderVerdict::Stabilized: return "Stabilized";
    case LadderVerdict::Diverging: return "Diverging";
    case LadderVerdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::size_t FciReport::non_normal_count() const {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [](const CyclicRecord& r) { return !r.normal; }));
}

PeriodicVerdict classify_periodic(const PeriodicInput& in) {
  PeriodicVerdict v;
  auto fail = [&](std::string reason) {
    v.verdict = Verdict::Fail;
    v.reasons.push_back(std::move(reason));
  };
  const auto primes = in.a.primes();
  if (primes.empty() || std::any_of(primes.begin(), primes.end(), [](std::int64_t p) { return p != 2; })) {
    fail("(i) A is not a 2-group");
  }
  if (!in.a.has_quasicyclic()) fail("(i) A is not infinite abelian");
  if (in.t != -1) fail("(i) g does not invert A (t = " + std::to_string(in.t) + ")");

  const Materialization ma = in.a.materialize(in.d0.level);
  if (!ma.group.contains(in.d0.torsion) || in.d0.q) {
    raise(ErrorCode::SpecInvalid, "d0 is not an element of the level-" + std::to_string(in.d0.level) + " group A");
  }
  if (ma.group.scale(in.d0.torsion, 2) != ma.group.zero()) fail("(i) g has order greater than 4 (2 d0 != 0)");
  if (in.q.order() % 2 == 0) fail("(ii) Q is not a 2′-group");
  if (v.verdict != Verdict::Pass) return v;

  std::vector<QuasiComponent> comps = in.a.components();
  const std::size_t na = comps.size();
  for (const auto& c : in.q.components()) comps.push_back(QuasiComponent{c.prime, c.exponent});
  ExtensionSpec spec;
  spec.base = QuasiSpec(comps);
  // A is a 2-group and Q has odd order, so the A components stay first and in order.
  const Materialization mc = spec.base.materialize(in.d0.level);
  AbElement d0 = mc.group.zero();
  for (std::size_t i = 0; i < na; ++i) d0.coords[mc.slot[i]] = in.d0.torsion.coords[ma.slot[i]];
  spec.top_order = 2;
  spec.d0 = LevelElement{in.d0.level, std::nullopt, d0};
  spec.action.exponents.push_back(ExponentSpec{2, in.t, std::nullopt});
  v.spec = std::move(spec);
  return v;
}

namespace {

void merge(Condition& c, Verdict v, const std::string& reason) {
  if (v == Verdict::Pass) return;
  if (v == Verdict::Fail || c.verdict == Verdict::Pass) c.verdict = v;
  c.reason += (c.reason.empty() ? "" : "; ") + reason;
}

std::string tp(std::int64_t p) { return "t_" + std::to_string(p); }

}  // namespace

std::vector<std::string> NonPeriodicVerdict::reasons() const {
  std::vector<std::string> out;
  for (const Condition* c : {&cond_i, &cond_ii, &cond_iii}) {
    if (!c->reason.empty()) out.push_back(c->reason);
  }
  return out;
}

NonPeriodicVerdict classify_nonperiodic(const NonPeriodicInput& in) {
  in.action.validate();
  NonPeriodicVerdict v;
  std::set<std::int64_t> pi;
  for (auto p : in.d.primes()) pi.insert(p);
  if (in.hamiltonian) {
    pi.insert(2);
    if (in.d.has_quasicyclic(2)) raise(ErrorCode::SpecInvalid, "the 2-part of a Hamiltonian base must be finite");
  }

  if (in.hamiltonian && in.action.inner.unit() != Q8Element::One) {
    merge(v.cond_i, Verdict::Fail, "(i) phi_2 is not the identity (inner part " + in.action.inner.to_string() + ")");
  }

  for (auto p : pi) {
    if (p == 2) continue;
    const ExponentSpec e = in.action.effective(p);
    const std::string shown = std::to_string(e.value) + (e.exact() ? "" : " mod " + std::to_string(p) + "^" +
                                                                            std::to_string(*e.precision));
    if (num::mod(e.value, p) != 1) {
      merge(v.cond_ii, Verdict::Fail, "(ii) " + tp(p) + " = " + shown + " is not 1 mod " + std::to_string(p));
      continue;
    }
    if (!in.d.has_quasicyclic(p)) continue;
    if (e.exact()) {
      if (e.value == 1) merge(v.cond_ii, Verdict::Fail, "(ii) " + tp(p) + " = 1 with D_" + std::to_string(p) + " infinite");
    } else if (num::mod(e.value, num::checked_pow(p, *e.precision)) == 1) {
      merge(v.cond_ii, Verdict::Undecidable, "(ii) " + tp(p) + " = " + shown + " cannot be told apart from 1");
    }
  }

  if (!in.hamiltonian && in.d.has_quasicyclic(2)) {
    const ExponentSpec e = in.action.effective(2);
    if (e.exact()) {
      if (e.value == 1) merge(v.cond_iii, Verdict::Fail, "(iii) t_2 = 1");
      if (e.value == -1) merge(v.cond_iii, Verdict::Fail, "(iii) t_2 = -1");
    } else {
      const std::int64_t m = num::checked_pow(2, *e.precision);
      const std::int64_t r = num::mod(e.value, m);
      if (r == 1 || r == m - 1) {
        merge(v.cond_iii, Verdict::Undecidable,
              "(iii) t_2 = " + std::to_string(r) + " mod 2^" + std::to_string(*e.precision) +
                  " cannot be told apart from " + (r == 1 ? "1" : "-1"));
      }
    }
  }

  for (const Condition* c : {&v.cond_i, &v.cond_ii, &v.cond_iii}) {
    if (c->verdict == Verdict::Fail) v.overall = Verdict::Fail;
    if (c->verdict == Verdict::Undecidable && v.overall == Verdict::Pass) v.overall = Verdict::Undecidable;
  }

  v.spec.base = in.d;
  v.spec.hamiltonian = in.hamiltonian;
  v.spec.action = in.action;
  v.spec.d0 = LevelElement{1, in.hamiltonian ? std::optional<Q8Element>(Q8Element()) : std::nullopt,
                           in.d.materialize(1).group.zero()};
  return v;
}

LadderResult judge_ladder(std::vector<LadderLevel> levels) {
  std::sort(levels.begin(), levels.end(), [](const auto& a, const auto& b) { return a.level < b.level; });
  LadderResult r;
  r.levels = std::move(levels);
  const auto& l = r.levels;
  const std::size_t n = l.size();
  if (n >= 3 && l[n - 3].value < l[n - 2].value && l[n - 2].value < l[n - 1].value) {
    r.verdict = LadderVerdict::Diverging;
  } else if (n >= 2 && l[n - 2].value == l[n - 1].value) {
    r.verdict = LadderVerdict::Stabilized;
    std::size_t i = n - 1;
    while (i > 0 && l[i - 1].value == l[n - 1].value) --i;
    r.stable_from = l[i].level;
    r.stable_value = l[n - 1].value;
  }
  return r;
}

LadderLevel ladder_level(const ExtensionSpec& spec, int level, const LadderOptions& opt) {
  const CyclicExtension g = spec.materialize(level, opt.cap);
  LadderLevel out;
  out.level = level;
  if (!opt.probes.empty()) {
    for (const auto& p : opt.probes) {
      const GElement x = g.element(p.k, spec.embed(p.d, level));
      const Cardinality idx = centralizer_index(g, x);
      if (!idx.is_finite()) raise(ErrorCode::InvalidArgument, "probe " + to_string(x) + " has infinite index");
      ++out.sampled;
      if (!is_cyclic_normal(g, x)) ++out.non_normal;
      out.value = std::max(out.value, idx.value());
    }
    return out;
  }
  if (!g.has_infinite_top()) {
    const FciReport rep = check_fci_finite(g.compile(), opt.cap);
    out.value = rep.max_index;
    out.sampled = static_cast<std::int64_t>(rep.records.size());
    out.non_normal = static_cast<std::int64_t>(rep.non_normal_count());
    return out;
  }
  // x and x^-1 generate the same subgroup, so only k > 0 is sampled.
  const std::int64_t n = g.base().size();
  for (std::int64_t k = 1; k <= opt.window; ++k) {
    for (std::int64_t i = 0; i < n; ++i) {
      const GElement x{k, g.base().element_at(i)};
      ++out.sampled;
      if (is_cyclic_normal(g, x)) continue;
      ++out.non_normal;
      out.value = std::max(out.value, centralizer_index(g, x).value());
    }
  }
  return out;
}

LadderResult ladder(const ExtensionSpec& spec, const LadderOptions& opt) {
  if (opt.first < 1 || opt.last < opt.first) raise(ErrorCode::InvalidArgument, "invalid level range");
  std::vector<std::future<LadderLevel>> jobs;
  for (int n = opt.first; n <= opt.last; ++n) {
    jobs.push_back(std::async(std::launch::async, [&spec, &opt, n] { return ladder_level(spec, n, opt); }));
  }
  std::vector<LadderLevel> levels;
  for (auto& j : jobs) levels.push_back(j.get());
  return judge_ladder(std::move(levels));
}

BciBoundReport check_bci_bound_fg(const CyclicExtension& g, int window) {
  if (g.base().is_hamiltonian() || g.top_order() != 2 || !(g.action() == PowerAut::inversion())) {
    raise(ErrorCode::InvalidArgument, "not an inversion extension of order 2");
  }
  if (window < 0) raise(ErrorCode::InvalidArgument, "window must be >= 0");
  const FgAbelian& a = g.base().abelian_part();
  BciBoundReport rep;
  rep.r2 = rank_p(a, 2);
  rep.bound = std::int64_t{2} << rep.r2;

  std::vector<GElement> elems;
  const auto r0 = static_cast<std::size_t>(a.free_rank());
  std::vector<std::int64_t> free(r0, -window);
  for (;;) {
    for (std::int64_t t = 0; t < a.torsion().order(); ++t) {
      const AbElement tors = a.torsion().element_at(t);
      for (std::int64_t eps = 0; eps < 2; ++eps) elems.push_back(GElement{eps, DElement{std::nullopt, free, tors}});
    }
    std::size_t i = 0;
    for (; i < r0; ++i) {
      if (++free[i] <= window) break;
      free[i] = -window;
    }
    if (i == r0) break;
  }

  for (const auto& x : elems) {
    ++rep.sampled;
    const bool normal = is_cyclic_normal(g, x);
    if (!g.order_of(x).is_finite()) {
      if (!normal) {
        rep.infinite_order_normal = false;
        rep.violations.push_back("<" + to_string(x) + "> has infinite order and is not normal");
      }
      continue;
    }
    if (normal) continue;
    ++rep.non_normal;
    if (x.k != 1) {
      rep.violations.push_back("non-normal <" + to_string(x) + "> inside A");
      continue;
    }
    const std::int64_t c = fg_centralizer_order(g, x);
    const auto brute = static_cast<std::int64_t>(
        std::count_if(elems.begin(), elems.end(), [&](const GElement& y) { return g.mul(x, y) == g.mul(y, x); }));
    if (brute != c) {
      rep.closed_form_matches = false;
      rep.violations.push_back("|C(" + to_string(x) + ")| closed form " + std::to_string(c) + " vs window " +
                               std::to_string(brute));
    }
    rep.max_centralizer = std::max(rep.max_centralizer, c);
  }
  if (!rep.within()) rep.violations.push_back("bound 2^(r+1) exceeded");
  return rep;
}

}  // namespace fci
