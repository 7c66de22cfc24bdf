#include <gtest/gtest.h>

#include <algorithm>

#include "asyncmodel/error.hpp"
#include "asyncmodel/props.hpp"

using namespace asyncmodel;

namespace {

// Every statement the suite must cover, one check each.
const std::vector<std::string> manifest{"1.9", "2.4a", "2.4b", "2.4c", "3.4", "3.5", "3.10", "3.12", "4.1", "4.3",
                                        "4.4", "4.5", "4.6",  "4.7",  "4.8", "5.2", "6.3", "6.4",  "6.6"};

bool canonical(const Signal& x) { return is_canonical(x.initial(), x.transitions()); }

// Envelope order with the inequality deliberately reversed.
TheoremCheck corrupted() {
  TheoremCheck c;
  c.id = "corrupted";
  c.summary = "upper <= lower (wrong on purpose)";
  c.generate = [](Gen& gen) {
    const auto p = gen.overlapping_params();
    return json{{"p", blc_params_to_json(p)}, {"u", multisignal_to_json(gen.multisignal(1))}};
  };
  c.check = [](const json& j) -> std::optional<std::string> {
    const auto p = blc_params_from_json(j.at("p"));
    const auto u = multisignal_from_json(j.at("u"));
    const auto id = BoolFn::identity();
    if (!pointwise_leq(upper_envelope(id, u, p), lower_envelope(id, u, p))) return "upper above lower";
    return std::nullopt;
  };
  return c;
}

}  // namespace

TEST(Registry, MatchesManifest) {
  auto ids = theorem_ids();
  auto expected = manifest;
  std::sort(ids.begin(), ids.end());
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(ids, expected);
  EXPECT_EQ(theorem_registry().size(), manifest.size());
  for (const auto& id : manifest) EXPECT_EQ(find_theorem(id).id, id);
}

TEST(Registry, UnknownId) {
  try {
    find_theorem("bogus");
    FAIL();
  } catch (const model_error& e) {
    EXPECT_EQ(e.code(), errc::unknown_theorem);
  }
  EXPECT_THROW(run_theorem("9.9", GenConfig{}), model_error);
}

TEST(GenConfig, Validation) {
  GenConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.cases = 0;
  EXPECT_THROW(cfg.validate(), model_error);
  cfg = {};
  cfg.max_arity = 5;
  EXPECT_THROW(cfg.validate(), model_error);
  cfg = {};
  cfg.max_denominator = 17;
  EXPECT_THROW(cfg.validate(), model_error);
}

TEST(Generators, DeterministicAndWellFormed) {
  GenConfig cfg;
  for (std::uint64_t s = 0; s < 100; ++s) {
    cfg.seed = s;
    EXPECT_EQ(gen_signal(cfg), gen_signal(cfg));
    EXPECT_EQ(gen_boolfn(cfg, 3), gen_boolfn(cfg, 3));
    const auto x = gen_signal(cfg);
    EXPECT_TRUE(canonical(x));
    EXPECT_LE(x.transitions().size(), 12u);
    for (const auto& t : x.transitions()) EXPECT_LE(t.time.denominator(), 8);
    const auto [f, g] = gen_boolfn_pair_leq(cfg, 3);
    EXPECT_TRUE(fn_props(f, g).leq_fg);
    const auto p = gen_blc_params(cfg);
    EXPECT_NO_THROW(p.validate());
    const auto u = gen_multisignal(cfg, 2);
    EXPECT_EQ(u.size(), 2u);
  }
}

TEST(Generators, JsonRoundTrips) {
  GenConfig cfg;
  Gen gen(cfg, 1);
  const auto p = gen.blc_params();
  EXPECT_EQ(blc_params_from_json(blc_params_to_json(p)), p);
  const auto u = gen.multisignal(3);
  EXPECT_EQ(multisignal_from_json(multisignal_to_json(u)), u);
}

TEST(RunTheorem, TimeInvariancePasses) {
  const auto r = run_theorem("4.5", GenConfig{});
  EXPECT_TRUE(r.passed()) << report_to_json(r).dump();
  EXPECT_EQ(r.cases_run, 500u);
  EXPECT_EQ(report_line(r), "4.5 500 pass");
}

TEST(RunTheorem, StabilityPasses) { EXPECT_TRUE(run_theorem("2.4a", GenConfig{}).passed()); }

TEST(RunTheorem, SerialAndParallelAgree) {
  GenConfig cfg;
  cfg.cases = 60;
  for (const auto& id : {"1.9", "4.3", "4.8", "6.4"}) {
    const auto a = run_theorem(id, cfg, Execution::serial);
    const auto b = run_theorem(id, cfg, Execution::parallel);
    EXPECT_EQ(dump(report_to_json(a)), dump(report_to_json(b))) << id;
  }
}

TEST(RunTheorem, CorruptedCheckFailsWithCounterexample) {
  GenConfig cfg;
  cfg.cases = 50;
  const auto r = run_check(corrupted(), cfg);
  ASSERT_FALSE(r.passed());
  EXPECT_EQ(r.status(), "fail");
  const auto& f = r.failures.front();
  EXPECT_TRUE(f.contains("instance"));
  EXPECT_EQ(f.at("message"), "upper above lower");
  EXPECT_EQ(report_line(r), "corrupted 50 fail " + std::to_string(r.failures.size()));
}

TEST(RunTheorem, FailuresReplay) {
  GenConfig cfg;
  cfg.cases = 200;
  const auto r = run_theorem("4.8", cfg);
  for (const auto& f : r.failures) {
    const auto again = replay("4.8", f);
    ASSERT_TRUE(again.has_value());
    EXPECT_EQ(*again, f.at("message").get<std::string>());
  }
}

TEST(Probes, Shapes) {
  EXPECT_EQ(constant_probes(2).size(), 4u);
  const auto u = pulse_input(2, 1, 2, Rat(1), Rat(3));
  ASSERT_EQ(u.size(), 2u);
  EXPECT_TRUE(u[0].at(Rat(2)));
  EXPECT_FALSE(u[1].at(Rat(2)));
  EXPECT_TRUE(u[1].at(Rat(0)));
  const auto t = pulse_train(1, 0, 1, Rat(1), Rat(2), 3);
  EXPECT_EQ(t[0].transitions().size(), 6u);
}
