#include <gtest/gtest.h>

#include "asyncmodel/error.hpp"
#include "asyncmodel/props.hpp"
#include "asyncmodel/signal.hpp"
#include "oracle.hpp"

using namespace asyncmodel;

namespace {

Signal chi(int a, int b) { return charfn({{Rat(a), Rat(b)}}); }

bool canonical(const Signal& x) { return is_canonical(x.initial(), x.transitions()); }

}  // namespace

TEST(MakeSignal, BuildsPulse) {
  const auto x = make_signal(false, {{Rat(0), true}, {Rat(5), false}});
  EXPECT_EQ(x, chi(0, 5));
  EXPECT_EQ(x.transitions().size(), 2u);
}

TEST(MakeSignal, DropsRedundantEntries) {
  EXPECT_EQ(make_signal(false, {{Rat(0), true}, {Rat(2), true}, {Rat(5), false}}), chi(0, 5));
}

TEST(MakeSignal, SortsInput) {
  EXPECT_EQ(make_signal(false, {{Rat(5), false}, {Rat(0), true}}), chi(0, 5));
}

TEST(MakeSignal, Constant) {
  const auto x = make_signal(true, {});
  EXPECT_TRUE(x.is_constant());
  EXPECT_EQ(x, Signal::constant(true));
}

TEST(MakeSignal, RejectsDuplicateTimes) {
  try {
    make_signal(false, {{Rat(1), true}, {Rat(1), false}});
    FAIL();
  } catch (const model_error& e) {
    EXPECT_EQ(e.code(), errc::duplicate_transition_time);
  }
}

TEST(Signal, ValueAndLeftLimit) {
  const auto x = chi(0, 5);
  EXPECT_FALSE(value_at(x, Rat(-1)));
  EXPECT_TRUE(value_at(x, Rat(0)));
  EXPECT_FALSE(value_at(x, Rat(5)));
  EXPECT_FALSE(left_limit(x, Rat(0)));
  EXPECT_TRUE(left_limit(x, Rat(5)));
  EXPECT_TRUE(left_limit(x, Rat(3)));
}

TEST(Signal, EventualValue) {
  EXPECT_FALSE(eventual_value(chi(0, 5)));
  EXPECT_TRUE(eventual_value(make_signal(false, {{Rat(0), true}})));
  EXPECT_TRUE(eventual_value(Signal::constant(true)));
}

TEST(Signal, Edges) {
  const auto e = edges(chi(0, 5));
  EXPECT_EQ(e.rising, std::vector<Rat>{Rat(0)});
  EXPECT_EQ(e.falling, std::vector<Rat>{Rat(5)});
  const auto c = edges(Signal::constant(true));
  EXPECT_TRUE(c.rising.empty());
  EXPECT_TRUE(c.falling.empty());
  const auto d = edges(make_signal(true, {{Rat(2), false}, {Rat(3), true}}));
  EXPECT_EQ(d.rising, std::vector<Rat>{Rat(3)});
  EXPECT_EQ(d.falling, std::vector<Rat>{Rat(2)});
}

TEST(Pointwise, Examples) {
  EXPECT_EQ(~chi(0, 5), make_signal(true, {{Rat(0), false}, {Rat(5), true}}));
  EXPECT_EQ(chi(0, 4) & chi(2, 6), chi(2, 4));
  EXPECT_EQ(chi(0, 4) | chi(2, 6), chi(0, 6));
  const auto x = chi(1, 3) | chi(5, 9);
  EXPECT_EQ(x ^ x, Signal::constant(false));
}

TEST(Translate, Examples) {
  EXPECT_EQ(translate(chi(0, 5), Rat(2)), chi(2, 7));
  const auto x = chi(1, 3) | chi(5, 9);
  EXPECT_EQ(translate(x, Rat(0)), x);
  EXPECT_EQ(translate(translate(x, Rat(1, 3)), Rat(-5, 2)), translate(x, Rat(1, 3) + Rat(-5, 2)));
}

TEST(Window, AllExample) { EXPECT_EQ(window_all(chi(0, 5), Rat(2), Rat(1)), chi(2, 6)); }

TEST(Window, AnyExample) { EXPECT_EQ(window_any(chi(0, 1), Rat(3), Rat(2)), chi(1, 4)); }

TEST(Window, PointWindowIsTranslation) {
  const auto x = chi(1, 3) | chi(5, 9);
  EXPECT_EQ(window_all(x, Rat(3, 2), Rat(0)), translate(x, Rat(3, 2)));
  EXPECT_EQ(window_any(x, Rat(3, 2), Rat(0)), translate(x, Rat(3, 2)));
}

TEST(Window, ConstantZero) {
  EXPECT_EQ(window_all(Signal::constant(false), Rat(3), Rat(2)), Signal::constant(false));
  EXPECT_EQ(window_any(Signal::constant(false), Rat(3), Rat(2)), Signal::constant(false));
}

TEST(Window, NarrowPulseVanishes) {
  // Closed windows: a pulse no wider than m has no full window inside it.
  EXPECT_EQ(window_all(chi(0, 1), Rat(2), Rat(1)), Signal::constant(false));
  EXPECT_EQ(window_all(chi(0, 2), Rat(2), Rat(1)), chi(2, 3));
}

TEST(Window, InvalidWindow) {
  for (const auto& [d, m] : {std::pair{Rat(1), Rat(2)}, std::pair{Rat(1), Rat(-1)}}) {
    try {
      window_all(chi(0, 1), d, m);
      FAIL();
    } catch (const model_error& e) {
      EXPECT_EQ(e.code(), errc::invalid_window);
    }
    EXPECT_THROW(window_any(chi(0, 1), d, m), model_error);
  }
}

TEST(ApplyFn, Examples) {
  const MultiSignal u{chi(0, 4), chi(2, 6)};
  EXPECT_EQ(apply_fn(BoolFn::and_n(2), u), chi(2, 4));
  EXPECT_EQ(apply_fn(BoolFn::constant(2, true), u), Signal::constant(true));
  EXPECT_EQ(apply_fn(BoolFn::projection(2, 1), u), u[1]);
  EXPECT_THROW(apply_fn(BoolFn::and_n(3), u), model_error);
}

TEST(ApplyFnRange, BoundsEveryInputInTheBox) {
  const MultiSignal lo{chi(0, 2), Signal::constant(false)};
  const MultiSignal hi{chi(0, 4), chi(1, 3)};
  const auto [mn, mx] = apply_fn_range(BoolFn::xor_n(2), lo, hi);
  // On [0,1) u1 = 1 is free only on [2,4); u2 = 0 is forced outside [1,3).
  EXPECT_EQ(mn, chi(0, 1));
  EXPECT_EQ(mx, chi(0, 4));
  const auto [amin, amax] = apply_fn_range(BoolFn::and_n(2), lo, hi);
  EXPECT_EQ(amin, Signal::constant(false));
  EXPECT_EQ(amax, chi(1, 3));
}

TEST(Charfn, Examples) {
  EXPECT_EQ(charfn({{Rat(0), Rat(5)}}), make_signal(false, {{Rat(0), true}, {Rat(5), false}}));
  EXPECT_EQ(charfn({}), Signal::constant(false));
  const auto two = charfn({{Rat(0), Rat(1)}, {Rat(2), Rat(3)}});
  EXPECT_EQ(two.transitions().size(), 4u);
  EXPECT_TRUE(two.at(Rat(5, 2)));
  EXPECT_FALSE(two.at(Rat(3, 2)));
  EXPECT_THROW(charfn({{Rat(0), Rat(2)}, {Rat(1), Rat(3)}}), model_error);
}

TEST(Ones, RoundTrip) {
  const auto x = make_signal(true, {{Rat(0), false}, {Rat(2), true}, {Rat(3), false}});
  const auto iv = ones(x);
  ASSERT_EQ(iv.size(), 2u);
  EXPECT_FALSE(iv[0].lo.has_value());
  EXPECT_EQ(*iv[0].hi, Rat(0));
  EXPECT_EQ(from_ones(iv), x);
}

TEST(Leq, FirstViolation) {
  EXPECT_TRUE(pointwise_leq(chi(1, 2), chi(0, 3)));
  EXPECT_FALSE(pointwise_leq(chi(0, 3), chi(1, 2)));
  const auto v = first_violation_leq(chi(0, 3), chi(1, 2));
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(*v->time, Rat(0));
  const auto w = first_violation_leq(Signal::constant(true), chi(1, 2));
  ASSERT_TRUE(w.has_value());
  EXPECT_FALSE(w->time.has_value());
}

// Randomised laws against the brute-force oracle.

class SignalLaws : public ::testing::Test {
 protected:
  GenConfig cfg;
};

TEST_F(SignalLaws, LeftLimitCoherence) {
  for (std::uint64_t k = 0; k < 200; ++k) {
    Gen gen(cfg, k);
    const auto x = gen.signal();
    for (const auto& tr : x.transitions()) {
      EXPECT_NE(x.left_limit(tr.time), x.at(tr.time));
      EXPECT_EQ(x.left_limit(tr.time + Rat(1, 1000)), x.at(tr.time + Rat(1, 1000)));
    }
  }
}

TEST_F(SignalLaws, WindowsMatchOracle) {
  for (std::uint64_t k = 0; k < 300; ++k) {
    Gen gen(cfg, k);
    const auto x = gen.signal();
    const Rat d = gen.duration(4);
    const Rat m = d * Rat(gen.uniform(0, 4), 4);
    const auto all = window_all(x, d, m);
    const auto any = window_any(x, d, m);
    EXPECT_TRUE(canonical(all) && canonical(any));
    EXPECT_EQ(oracle::window_all_mismatch(x, d, m, all), std::nullopt) << k;
    EXPECT_EQ(oracle::window_any_mismatch(x, d, m, any), std::nullopt) << k;
  }
}

// Fine denominators make the oracle grid large, so fewer instances.
TEST_F(SignalLaws, WindowsMatchOracleFineDenominators) {
  cfg.max_denominator = 16;
  for (std::uint64_t k = 0; k < 12; ++k) {
    Gen gen(cfg, k);
    const auto x = gen.signal(8);
    const Rat d = gen.duration(3);
    const Rat m = d * Rat(gen.uniform(0, 3), 3);
    EXPECT_EQ(oracle::window_all_mismatch(x, d, m, window_all(x, d, m)), std::nullopt) << k;
    EXPECT_EQ(oracle::window_any_mismatch(x, d, m, window_any(x, d, m)), std::nullopt) << k;
  }
}

TEST_F(SignalLaws, DeMorgan) {
  for (std::uint64_t k = 0; k < 200; ++k) {
    Gen gen(cfg, k);
    const auto x = gen.signal();
    const Rat d = gen.duration(4);
    const Rat m = d * Rat(gen.uniform(0, 3), 3);
    EXPECT_EQ(window_any(x, d, m), ~window_all(~x, d, m));
  }
}

TEST_F(SignalLaws, WindowsBracketTranslations) {
  for (std::uint64_t k = 0; k < 200; ++k) {
    Gen gen(cfg, k);
    const auto x = gen.signal();
    const Rat d = gen.duration(4);
    const Rat m = d * Rat(gen.uniform(0, 3), 3);
    for (int j = 0; j <= 4; ++j) {
      const Rat s = m * Rat(j, 4);
      EXPECT_TRUE(pointwise_leq(window_all(x, d, m), translate(x, d - s)));
      EXPECT_TRUE(pointwise_leq(translate(x, d - s), window_any(x, d, m)));
    }
  }
}

TEST_F(SignalLaws, ApplyFnOfComposition) {
  for (std::uint64_t k = 0; k < 200; ++k) {
    Gen gen(cfg, k);
    const int m = gen.uniform(1, 2);
    const auto f = gen.boolfn(m);
    std::vector<BoolFn> inner;
    MultiSignal u;
    MultiSignal ys;
    for (int p = 0; p < m; ++p) {
      const int n = gen.uniform(1, 2);
      inner.push_back(gen.boolfn(n));
      const auto block = gen.multisignal(n, 5);
      u.insert(u.end(), block.begin(), block.end());
      ys.push_back(apply_fn(inner.back(), block));
    }
    EXPECT_EQ(apply_fn(fn_compose(f, inner), u), apply_fn(f, ys));
  }
}

TEST_F(SignalLaws, PointwiseMatchesSampling) {
  for (std::uint64_t k = 0; k < 200; ++k) {
    Gen gen(cfg, k);
    const auto x = gen.signal();
    const auto y = gen.signal();
    const auto a = x & y;
    const auto o = x | y;
    const auto e = x ^ y;
    const Rat h = oracle::step({x, y}, {});
    for (const auto& t : oracle::grid(Rat(-6), Rat(14), h)) {
      EXPECT_EQ(a.at(t), x.at(t) && y.at(t));
      EXPECT_EQ(o.at(t), x.at(t) || y.at(t));
      EXPECT_EQ(e.at(t), x.at(t) != y.at(t));
    }
  }
}
