#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "asyncmodel/limit.hpp"

namespace asyncmodel {

/// Rise window [t - d_r, t - d_r + m_r] and fall window [t - d_f, t - d_f + m_f].
struct BlcParams {
  Rat m_r;
  Rat d_r;
  Rat m_f;
  Rat d_f;

  /// Throws InvalidWindow unless 0 <= m_r <= d_r and 0 <= m_f <= d_f.
  void validate() const;

  friend bool operator==(const BlcParams&, const BlcParams&) = default;
};

BlcParams operator+(const BlcParams& a, const BlcParams& b);

/// window_all(f(u), d_r, m_r).
Signal lower_envelope(const BoolFn& f, const MultiSignal& u, const BlcParams& p);
/// window_any(g(u), d_f, m_f).
Signal upper_envelope(const BoolFn& g, const MultiSignal& u, const BlcParams& p);

/// Bounds on the members in [x_lo, x_hi] over inputs in [u_lo, u_hi]: the lower
/// envelope of the pointwise minimum of f joined with x_lo, and the upper
/// envelope of the pointwise maximum of g met with x_hi.
std::pair<Signal, Signal> envelope_range(const BoolFn& f, const BoolFn& g, const BlcParams& p, const MultiSignal& u_lo,
                                         const MultiSignal& u_hi, const Signal& x_lo, const Signal& x_hi);
/// True when the envelope system is non-empty for every input: either
/// d_r - m_r <= d_f and d_f - m_f <= d_r, or max f <= min g.
bool blc_valid(const BoolFn& f, const BoolFn& g, const BlcParams& p);

LimitCondition blc(const BoolFn& f, const BoolFn& g, const BlcParams& p);

struct Determinism {
  bool deterministic = false;
  /// For f = g non-constant: the d with Sol = I_d^f.
  std::optional<Rat> delay;
};

Determinism blc_is_deterministic(const BoolFn& f, const BoolFn& g, const BlcParams& p);

/// Whether BLC(f, g, p) is included in BLC(f2, g2, p2).
bool blc_included(const BoolFn& f, const BoolFn& g, const BlcParams& p, const BoolFn& f2, const BoolFn& g2,
                  const BlcParams& p2);

bool blc_symmetric_usual(const BoolFn& f, const BoolFn& g, const BlcParams& p);
bool blc_symmetric_rf(const BoolFn& f, const BoolFn& g, const BlcParams& p);

struct BlcSpec {
  BoolFn f;
  BoolFn g;
  BlcParams p;

  friend bool operator==(const BlcSpec&, const BlcSpec&) = default;
};

struct ComposeOptions {
  /// Random inputs used to confirm that f and g commute with the windows.
  std::size_t cases = 64;
  std::uint64_t seed = 0x6c63;
};

/// Sampled check of f(W u_1, ..., W u_m) = W f(u) for the rise window and the
/// analogous identity for g and the fall window. AND/OR pass structurally.
bool distributes_over_windows(const BoolFn& f, const BoolFn& g, const BlcParams& p, const ComposeOptions& opts);

/// Closed-form serial connection of BLC(outer) with BLC(f_q, g_q, inner_params).
BlcSpec blc_compose(const BlcSpec& outer, std::span<const std::pair<BoolFn, BoolFn>> inners,
                    const BlcParams& inner_params, const ComposeOptions& opts = {});

std::optional<BlcSpec> as_blc(const LimitCondition& i);

}  // namespace asyncmodel
