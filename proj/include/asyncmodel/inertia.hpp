#pragma once

#include <optional>
#include <span>
#include <utility>

#include "asyncmodel/blc.hpp"
#include "asyncmodel/limit.hpp"

namespace asyncmodel {

/// After a rising edge the signal holds 1 on [t, t + delta_r]; after a falling
/// edge it holds 0 on [t, t + delta_f].
struct AicParams {
  Rat delta_r;
  Rat delta_f;

  /// Throws NegativeDelay when either bound is negative.
  void validate() const;

  friend bool operator==(const AicParams&, const AicParams&) = default;
};

/// h(u o tau^d).
Signal flc_output(const BoolFn& h, const MultiSignal& u, const Rat& d);

/// Pure delay x(t) = h(u(t - d)), viewed as an h-delay (f = g = h).
LimitCondition flc(const BoolFn& h, const Rat& d);
/// Same model viewed as an LC_{f,g}; needs f <= h <= g.
LimitCondition flc(const BoolFn& h, const Rat& d, const BoolFn& f, const BoolFn& g);

struct FlcSpec {
  BoolFn h;
  Rat d;
  BoolFn f;
  BoolFn g;
};

std::optional<FlcSpec> as_flc(const LimitCondition& i);

bool aic_contains(const Signal& x, const AicParams& a);
/// Time of the first edge whose pulse is too short.
std::optional<Rat> aic_violation(const Signal& x, const AicParams& a);

SignalSet aic_set(const AicParams& a);

/// Whether BLC(f, g, p) meets the inertial set for every input.
bool bailc_nonempty(const BoolFn& f, const BoolFn& g, const BlcParams& p, const AicParams& a);

LimitCondition bailc(const BoolFn& f, const BoolFn& g, const BlcParams& p, const AicParams& a);

/// Constructs a member of BLC(u) that satisfies the inertial condition, or
/// nullopt when none exists. `budget.max_nodes` caps the number of forced
/// regions processed.
std::optional<Signal> bailc_witness_search(const BoolFn& f, const BoolFn& g, const BlcParams& p,
                                           const AicParams& a, const MultiSignal& u,
                                           const SearchBudget& budget = {});

/// Same search over explicit bounds; `latest` places every edge as late as possible.
std::optional<Signal> inertial_witness(const Signal& lower, const Signal& upper, const AicParams& a,
                                       bool latest = false, std::size_t max_regions = 2000);

struct BailcSpec {
  BlcSpec blc;
  AicParams aic;

  friend bool operator==(const BailcSpec&, const BailcSpec&) = default;
};

/// Closed form: BLC parameters add up, the inertial bounds of the outer model are kept.
BailcSpec bailc_compose(const BailcSpec& outer, std::span<const std::pair<BoolFn, BoolFn>> inners,
                        const BlcParams& inner_params, const AicParams& inner_aic,
                        const ComposeOptions& opts = {});

std::optional<BailcSpec> as_bailc(const LimitCondition& i);

}  // namespace asyncmodel
