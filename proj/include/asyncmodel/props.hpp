#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "asyncmodel/blc.hpp"
#include "asyncmodel/inertia.hpp"
#include "asyncmodel/io.hpp"

namespace asyncmodel {

struct GenConfig {
  std::uint64_t seed = 42;
  std::size_t cases = 500;
  int max_transitions = 12;
  int max_denominator = 8;
  int max_arity = 3;

  /// Throws PreconditionViolated outside cases >= 1, arity 1..4,
  /// denominators 1..16, transitions 0..20.
  void validate() const;
};

/// Seeded source of random test objects. Times are multiples of 1/q with
/// q <= max_denominator and lie in [-4, 12].
class Gen {
 public:
  Gen(const GenConfig& cfg, std::uint64_t seed);

  const GenConfig& config() const { return cfg_; }
  std::mt19937_64& rng() { return rng_; }

  int uniform(int lo, int hi);
  bool coin(double p = 0.5);
  Rat time();
  /// Non-negative rational in [0, hi].
  Rat duration(int hi);
  Signal signal(int max_transitions);
  Signal signal() { return signal(cfg_.max_transitions); }
  MultiSignal multisignal(int m, int max_transitions);
  MultiSignal multisignal(int m) { return multisignal(m, cfg_.max_transitions); }
  int arity();
  BoolFn boolfn(int m);
  std::pair<BoolFn, BoolFn> boolfn_pair_leq(int m);
  BlcParams blc_params();
  /// BlcParams that satisfy the window-offset validity condition.
  BlcParams overlapping_params();
  AicParams aic_params();

 private:
  GenConfig cfg_;
  std::mt19937_64 rng_;
};

Signal gen_signal(const GenConfig& cfg);
MultiSignal gen_multisignal(const GenConfig& cfg, int m);
BoolFn gen_boolfn(const GenConfig& cfg, int m);
std::pair<BoolFn, BoolFn> gen_boolfn_pair_leq(const GenConfig& cfg, int m);
BlcParams gen_blc_params(const GenConfig& cfg);

json blc_params_to_json(const BlcParams& p);
BlcParams blc_params_from_json(const json& j);
json multisignal_to_json(const MultiSignal& u);
MultiSignal multisignal_from_json(const json& j);

/// One executable theorem check. `generate` builds a self-contained instance
/// for a case; `check` returns a failure message or nullopt. `check` sees only
/// the instance, which is what makes stored counterexamples replayable.
struct TheoremCheck {
  std::string id;
  std::string summary;
  std::function<json(Gen&)> generate;
  std::function<std::optional<std::string>(const json&)> check;
};

struct TheoremReport {
  std::string theorem_id;
  std::size_t cases_run = 0;
  /// Each entry: {"case", "message", "instance"}.
  std::vector<json> failures;

  bool passed() const { return failures.empty(); }
  std::string status() const { return passed() ? "pass" : "fail"; }
};

enum class Execution { serial, parallel };

const std::vector<TheoremCheck>& theorem_registry();
std::vector<std::string> theorem_ids();
/// Throws UnknownTheorem for ids outside the registry.
const TheoremCheck& find_theorem(const std::string& id);

/// Runs cases 0..cfg.cases-1; case k draws from Gen(cfg, mix(seed, k)), so the
/// report does not depend on `exec`.
TheoremReport run_check(const TheoremCheck& check, const GenConfig& cfg, Execution exec = Execution::parallel);
TheoremReport run_theorem(const std::string& id, const GenConfig& cfg, Execution exec = Execution::parallel);

/// Re-runs a stored failure; returns the failure message it produces now.
std::optional<std::string> replay(const std::string& id, const json& failure);

/// Report line "<id> <cases> <status>", followed by the failure count on fail.
std::string report_line(const TheoremReport& r);
json report_to_json(const TheoremReport& r);

// Probe inputs shared by the theorem checks and the acceptance suite.

/// Constant inputs at every row of B^m.
std::vector<MultiSignal> constant_probes(int m);
/// Inputs equal to row `a` on [start, start + width) and to row `b` elsewhere.
MultiSignal pulse_input(std::uint32_t a, std::uint32_t b, int m, const Rat& start, const Rat& width);
/// Alternates row a for `high` and row b for `low`, `periods` times, from 0.
MultiSignal pulse_train(std::uint32_t a, std::uint32_t b, int m, const Rat& high, const Rat& low, int periods);
/// Inputs used to test the inertial non-emptiness criterion: `random_us`,
/// constants, single pulses and long trains of the shortest forcing pulses.
std::vector<MultiSignal> inertia_probes(const BoolFn& f, const BoolFn& g, const BlcParams& p, const AicParams& a,
                                        const std::vector<MultiSignal>& random_us);

}  // namespace asyncmodel
