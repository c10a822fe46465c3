#include <algorithm>

#include "fci/verify.hpp"
#include "gtest_util.hpp"
#include "support.hpp"

using namespace fci;

namespace {

bool has_reason(const std::vector<std::string>& reasons, const std::string& prefix) {
  return std::any_of(reasons.begin(), reasons.end(), [&](const std::string& r) { return r.rfind(prefix, 0) == 0; });
}

PeriodicInput periodic_input(std::vector<QuasiComponent> a, FinAbelian q) {
  PeriodicInput in;
  in.a = QuasiSpec(std::move(a));
  in.d0 = LevelElement{1, std::nullopt, in.a.materialize(1).group.zero()};
  in.q = std::move(q);
  return in;
}

NonPeriodicInput nonperiodic_input(std::vector<QuasiComponent> d, std::int64_t p, std::int64_t t,
                                   std::optional<int> precision = std::nullopt) {
  NonPeriodicInput in;
  in.d = QuasiSpec(std::move(d));
  in.action.exponents.push_back(ExponentSpec{p, t, precision});
  return in;
}

LevelElement base_zero(const ExtensionSpec& s, int level) {
  return LevelElement{level, std::nullopt, s.base.materialize(level).group.zero()};
}

// <x> is normal iff every conjugate of x by a generator or its inverse is a power of x.
bool normal_by_conjugates(const CyclicExtension& g, const GElement& x) {
  for (const auto& s : g.generators()) {
    for (const auto& by : {s, g.inv(s)}) {
      const GElement y = g.conjugate(x, by);
      if (y.k % x.k != 0 || g.pow(x, y.k / x.k) != y) return false;
    }
  }
  return true;
}

// The ladder value at one level, recomputed from coset counts.
std::int64_t ladder_value_oracle(const ExtensionSpec& s, int level, int window) {
  const CyclicExtension g = s.materialize(level);
  std::int64_t best = 0;
  for (std::int64_t k = 1; k <= window; ++k) {
    for (std::int64_t i = 0; i < g.base().size(); ++i) {
      const GElement x{k, g.base().element_at(i)};
      if (!normal_by_conjugates(g, x)) best = std::max(best, oracle::coset_index(g, x));
    }
  }
  return best;
}

}  // namespace

TEST(CheckFciFinite, Examples) {
  const FciReport d8 = check_fci_finite(oracle::dihedral(4).compile());
  EXPECT_EQ(d8.group_order, 8);
  EXPECT_EQ(d8.records.size(), 7u);
  EXPECT_EQ(d8.non_normal_count(), 4u);
  EXPECT_EQ(d8.max_index, 2);
  EXPECT_FALSE(d8.dedekind);

  const FciReport q8 = check_fci_finite(CompiledGroup::of(DedekindGroup::q8()));
  EXPECT_TRUE(q8.dedekind);
  EXPECT_EQ(q8.max_index, 0);
  EXPECT_EQ(q8.records.size(), 5u);

  const FciReport z6 = check_fci_finite(CompiledGroup::of(DedekindGroup::abelian(FinAbelian::cyclic(6))));
  EXPECT_TRUE(z6.dedekind);
  EXPECT_EQ(z6.records.size(), 4u);
  EXPECT_FCI_ERROR(check_fci_finite(oracle::dihedral(4).compile(), 4), ErrorCode::OrderCapExceeded);
}

TEST(CheckFciFinite, DedekindIffNoNonNormalCyclicProperty) {
  std::vector<CompiledGroup> groups;
  for (std::int64_t n : {3, 4, 5, 6, 8}) groups.push_back(oracle::dihedral(n).compile());
  for (std::int64_t n : {4, 6, 8}) groups.push_back(oracle::dicyclic(n).compile());
  for (const auto& a : oracle::abelian_groups(24)) groups.push_back(CompiledGroup::of(DedekindGroup::abelian(a)));
  groups.push_back(CompiledGroup::of(DedekindGroup::hamiltonian(FinAbelian::cyclic(2), FinAbelian::cyclic(3))));
  for (const auto& g : groups) {
    const FciReport r = check_fci_finite(g);
    EXPECT_EQ(r.dedekind, r.non_normal_count() == 0);
    EXPECT_EQ(r.dedekind, oracle::dedekind_by_subgroups(g));
    std::int64_t best = 0;
    for (Elem x = 0; x < g.order(); ++x) {
      const auto cyc = algo::cyclic_subgroup(g, x);
      bool normal = true;
      for (Elem y = 0; y < g.order() && normal; ++y) {
        normal = std::count(cyc.begin(), cyc.end(), algo::conjugate(g, x, y)) > 0;
      }
      if (normal) continue;
      std::int64_t c = 0;
      for (Elem y = 0; y < g.order(); ++y) c += g.mul(x, y) == g.mul(y, x) ? 1 : 0;
      best = std::max(best, c / static_cast<std::int64_t>(cyc.size()));
    }
    EXPECT_EQ(r.max_index, best);
  }
}

TEST(ClassifyPeriodic, PassBuildsSpec) {
  const PeriodicVerdict v = classify_periodic(periodic_input({oracle::kQuasi2}, FinAbelian::cyclic(3)));
  ASSERT_EQ(v.verdict, Verdict::Pass);
  ASSERT_TRUE(v.spec.has_value());
  EXPECT_EQ(v.spec->top_order, 2);
  EXPECT_EQ(v.spec->materialize(3).order().value(), 2 * 8 * 3);
}

TEST(ClassifyPeriodic, Failures) {
  EXPECT_TRUE(has_reason(classify_periodic(periodic_input({oracle::kQuasi2, QuasiComponent{3, 1}}, FinAbelian())).reasons,
                         "(i) A is not a 2-group"));
  EXPECT_TRUE(has_reason(classify_periodic(periodic_input({QuasiComponent{2, 3}}, FinAbelian())).reasons,
                         "(i) A is not infinite abelian"));
  PeriodicInput t3 = periodic_input({oracle::kQuasi2}, FinAbelian());
  t3.t = 3;
  EXPECT_TRUE(has_reason(classify_periodic(t3).reasons, "(i) g does not invert A"));
  PeriodicInput big = periodic_input({oracle::kQuasi2}, FinAbelian());
  big.d0 = LevelElement{2, std::nullopt, FinAbelian::cyclic(4).element({1})};
  EXPECT_TRUE(has_reason(classify_periodic(big).reasons, "(i) g has order greater than 4"));
  const PeriodicVerdict q2 = classify_periodic(periodic_input({oracle::kQuasi2}, FinAbelian::cyclic(2)));
  EXPECT_EQ(q2.verdict, Verdict::Fail);
  EXPECT_TRUE(has_reason(q2.reasons, "(ii)"));
  EXPECT_FALSE(q2.spec.has_value());
}

TEST(ClassifyPeriodic, OrderFourTopAllowed) {
  PeriodicInput in = periodic_input({oracle::kQuasi2}, FinAbelian());
  in.d0 = LevelElement{1, std::nullopt, FinAbelian::cyclic(2).element({1})};
  const PeriodicVerdict v = classify_periodic(in);
  ASSERT_EQ(v.verdict, Verdict::Pass);
  const auto g = v.spec->materialize(4);
  EXPECT_EQ(g.order_of(g.g()).value(), 4);
}

TEST(ClassifyNonPeriodic, Examples) {
  const auto pass = classify_nonperiodic(nonperiodic_input({oracle::kQuasi3}, 3, 4));
  EXPECT_EQ(pass.overall, Verdict::Pass);
  EXPECT_FALSE(pass.spec.top_order.has_value());

  const auto one = classify_nonperiodic(nonperiodic_input({oracle::kQuasi3}, 3, 1));
  EXPECT_EQ(one.cond_ii.verdict, Verdict::Fail);
  EXPECT_EQ(one.cond_ii.reason, "(ii) t_3 = 1 with D_3 infinite");

  const auto not_one_mod_p = classify_nonperiodic(nonperiodic_input({QuasiComponent{5, 2}}, 5, 2));
  EXPECT_EQ(not_one_mod_p.overall, Verdict::Fail);
  EXPECT_TRUE(has_reason(not_one_mod_p.reasons(), "(ii) t_5 = 2 is not 1 mod 5"));

  const auto finite_part = classify_nonperiodic(nonperiodic_input({QuasiComponent{3, 2}}, 3, 1));
  EXPECT_EQ(finite_part.overall, Verdict::Pass);

  const auto minus = classify_nonperiodic(nonperiodic_input({oracle::kQuasi2}, 2, -1));
  EXPECT_EQ(minus.cond_iii.verdict, Verdict::Fail);
  EXPECT_EQ(minus.cond_iii.reason, "(iii) t_2 = -1");
  EXPECT_EQ(classify_nonperiodic(nonperiodic_input({oracle::kQuasi2}, 2, 5)).overall, Verdict::Pass);

  NonPeriodicInput ham;
  ham.hamiltonian = true;
  ham.d = QuasiSpec({QuasiComponent{2, 1}});
  EXPECT_EQ(classify_nonperiodic(ham).overall, Verdict::Pass);
  ham.action.inner = Q8Element(Q8Element::J);
  EXPECT_EQ(classify_nonperiodic(ham).cond_i.verdict, Verdict::Fail);
  ham.d = QuasiSpec({oracle::kQuasi2});
  EXPECT_FCI_ERROR(classify_nonperiodic(ham), ErrorCode::SpecInvalid);
}

TEST(ClassifyNonPeriodic, FinitePrecisionIsUndecidable) {
  const auto v3 = classify_nonperiodic(nonperiodic_input({oracle::kQuasi3}, 3, 1, 4));
  EXPECT_EQ(v3.overall, Verdict::Undecidable);
  EXPECT_EQ(v3.cond_ii.verdict, Verdict::Undecidable);
  const auto v2 = classify_nonperiodic(nonperiodic_input({oracle::kQuasi2}, 2, 31, 5));
  EXPECT_EQ(v2.cond_iii.verdict, Verdict::Undecidable);
  EXPECT_EQ(classify_nonperiodic(nonperiodic_input({oracle::kQuasi3}, 3, 4, 4)).overall, Verdict::Pass);
  EXPECT_EQ(classify_nonperiodic(nonperiodic_input({oracle::kQuasi2}, 2, 5, 3)).overall, Verdict::Pass);
  EXPECT_FCI_ERROR(classify_nonperiodic(nonperiodic_input({oracle::kQuasi3}, 3, 6)), ErrorCode::NotAUnit);
}

TEST(JudgeLadder, Rules) {
  auto levels = [](std::vector<std::int64_t> values) {
    std::vector<LadderLevel> out;
    int n = 2;
    for (auto v : values) out.push_back(LadderLevel{n++, v, 0, 0});
    return out;
  };
  const LadderResult s = judge_ladder(levels({2, 5, 5, 5}));
  EXPECT_EQ(s.verdict, LadderVerdict::Stabilized);
  EXPECT_EQ(s.stable_from, 3);
  EXPECT_EQ(s.stable_value, 5);
  EXPECT_EQ(judge_ladder(levels({2, 4, 8})).verdict, LadderVerdict::Diverging);
  EXPECT_EQ(judge_ladder(levels({2, 8, 4})).verdict, LadderVerdict::Inconclusive);
  EXPECT_EQ(judge_ladder(levels({3})).verdict, LadderVerdict::Inconclusive);
  EXPECT_EQ(judge_ladder(levels({1, 3, 3, 4, 4})).stable_from, 5);
}

TEST(Ladder, StabilizingFamily) {
  const ExtensionSpec s = oracle::infinite_family({oracle::kQuasi3}, 3, 4);
  LadderOptions opt;
  const LadderResult r = ladder(s, opt);
  ASSERT_EQ(r.levels.size(), 5u);
  EXPECT_EQ(r.verdict, LadderVerdict::Stabilized);
  opt.probes.push_back(Probe{1, base_zero(s, 1)});
  for (const auto& l : ladder(s, opt).levels) EXPECT_EQ(l.value, 3) << "level " << l.level;
}

TEST(Ladder, DivergingFamilies) {
  const ExtensionSpec s1 = oracle::infinite_family({oracle::kQuasi3}, 3, 1);
  LadderOptions opt;
  opt.probes.push_back(Probe{1, base_zero(s1, 1)});
  const LadderResult r1 = ladder(s1, opt);
  EXPECT_EQ(r1.verdict, LadderVerdict::Diverging);
  for (const auto& l : r1.levels) EXPECT_EQ(l.value, oracle::ipow(3, l.level));

  const ExtensionSpec s2 = oracle::infinite_family({oracle::kQuasi2}, 2, -1);
  LadderOptions opt2;
  opt2.first = 3;
  opt2.probes.push_back(Probe{2, LevelElement{2, std::nullopt, FinAbelian::cyclic(4).element({1})}});
  const LadderResult r2 = ladder(s2, opt2);
  EXPECT_EQ(r2.verdict, LadderVerdict::Diverging);
  for (const auto& l : r2.levels) {
    const auto g = s2.materialize(l.level);
    const GElement x = g.element(2, s2.embed(opt2.probes[0].d, l.level));
    EXPECT_EQ(l.value, oracle::coset_index(g, x)) << "level " << l.level;
  }
}

TEST(Ladder, LevelValueMatchesCosetOracle) {
  for (const auto& s : {oracle::infinite_family({oracle::kQuasi3}, 3, 4), oracle::infinite_family({oracle::kQuasi3}, 3, 7),
                        oracle::infinite_family({oracle::kQuasi2}, 2, 5),
                        oracle::infinite_family({oracle::kQuasi2, QuasiComponent{3, 1}}, 2, 3)}) {
    for (int level = 2; level <= 4; ++level) {
      LadderOptions opt;
      EXPECT_EQ(ladder_level(s, level, opt).value, ladder_value_oracle(s, level, opt.window)) << "level " << level;
    }
  }
}

TEST(BciBoundFg, Examples) {
  struct Case {
    int free;
    std::vector<Component> tors;
    std::int64_t bound;
  };
  for (const auto& c : {Case{1, {}, 2}, Case{2, {}, 2}, Case{2, {{2, 2}}, 4}, Case{1, {{2, 1}, {2, 1}}, 8},
                        Case{1, {{2, 3}, {5, 1}}, 4}}) {
    const FgAbelian a(c.free, FinAbelian(c.tors));
    const BciBoundReport r = check_bci_bound_fg(fg_abelian_extension(a, a.zero()), 2);
    EXPECT_EQ(r.bound, c.bound) << a.to_string();
    EXPECT_TRUE(r.attained()) << a.to_string();
    EXPECT_TRUE(r.closed_form_matches);
    EXPECT_TRUE(r.infinite_order_normal);
    EXPECT_TRUE(r.violations.empty());
    EXPECT_GT(r.non_normal, 0);
  }
  const auto z9 = CyclicExtension::infinite(DedekindGroup::abelian(FinAbelian::cyclic(9)),
                                            PowerAut::from_units({PadicUnit::make(3, 2, 4)}));
  EXPECT_FCI_ERROR(check_bci_bound_fg(z9), ErrorCode::InvalidArgument);
}
