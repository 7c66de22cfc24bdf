#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "asyncmodel/boolfn.hpp"
#include "asyncmodel/rat.hpp"

namespace asyncmodel {

struct Transition {
  Rat time;
  bool value;

  friend bool operator==(const Transition&, const Transition&) = default;
};

/// Piecewise-constant function R -> B with finitely many switching times.
///
/// Pieces are left-closed, right-open: the signal equals `initial()` on
/// (-inf, t_0) and `transitions()[k].value` on [t_k, t_{k+1}). Instances are
/// always canonical: times strictly increase and every transition changes the
/// value in force before it.
class Signal {
 public:
  Signal() = default;

  static Signal constant(bool value);

  /// Builds a canonical signal from time-sorted pieces, dropping entries that do
  /// not change the value. Times must be strictly increasing (unchecked).
  static Signal from_sorted(bool initial, std::span<const Transition> pieces);

  bool initial() const noexcept { return initial_; }
  std::span<const Transition> transitions() const noexcept { return transitions_; }
  bool is_constant() const noexcept { return transitions_.empty(); }

  /// x(t).
  bool at(const Rat& t) const;
  /// x(t - 0).
  bool left_limit(const Rat& t) const;
  /// The value after the last transition.
  bool eventual() const noexcept { return transitions_.empty() ? initial_ : transitions_.back().value; }

  friend bool operator==(const Signal&, const Signal&) = default;

 private:
  bool initial_ = false;
  std::vector<Transition> transitions_;
};

/// An m-tuple of signals, m >= 1.
using MultiSignal = std::vector<Signal>;

/// Half-open interval [lo, hi); nullopt bounds stand for -inf / +inf.
struct Interval {
  std::optional<Rat> lo;
  std::optional<Rat> hi;
};

Signal make_signal(bool initial, std::vector<Transition> raw);

bool value_at(const Signal& x, const Rat& t);
bool left_limit(const Signal& x, const Rat& t);
bool eventual_value(const Signal& x);

struct Edges {
  std::vector<Rat> rising;
  std::vector<Rat> falling;
};
Edges edges(const Signal& x);

/// Transition times of x in increasing order.
std::vector<Rat> breakpoints(const Signal& x);
/// Sorted union of the transition times of all signals.
std::vector<Rat> breakpoints(std::span<const Signal> xs);

enum class BitOp { negate, conj, disj, exclusive };

Signal pointwise(BitOp op, const Signal& x, const Signal& y);
Signal pointwise(BitOp op, const Signal& x);
Signal operator~(const Signal& x);
Signal operator&(const Signal& x, const Signal& y);
Signal operator|(const Signal& x, const Signal& y);
Signal operator^(const Signal& x, const Signal& y);

/// (x o tau^d)(t) = x(t - d): every transition moves to t + d.
Signal translate(const Signal& x, const Rat& d);
MultiSignal translate(const MultiSignal& u, const Rat& d);

/// result(t) = 1 iff x = 1 on the closed interval [t - d, t - d + m]. Needs 0 <= m <= d.
Signal window_all(const Signal& x, const Rat& d, const Rat& m);
/// result(t) = 1 iff x = 1 somewhere on [t - d, t - d + m]. Needs 0 <= m <= d.
Signal window_any(const Signal& x, const Rat& d, const Rat& m);

/// t -> f(u_1(t), ..., u_m(t)).
Signal apply_fn(const BoolFn& f, const MultiSignal& u);

/// Pointwise minimum and maximum of f over the inputs u with lo <= u <= hi.
/// Needs lo <= hi coordinatewise.
std::pair<Signal, Signal> apply_fn_range(const BoolFn& f, const MultiSignal& lo, const MultiSignal& hi);
/// Characteristic function of a union of disjoint half-open intervals.
Signal charfn(std::vector<std::pair<Rat, Rat>> pieces);

/// Maximal intervals on which x equals 1.
std::vector<Interval> ones(const Signal& x);
/// Inverse of `ones` for sorted, pairwise separated intervals.
Signal from_ones(const std::vector<Interval>& intervals);

/// x <= y pointwise.
bool pointwise_leq(const Signal& x, const Signal& y);

/// Earliest point where x(t) = 1 and y(t) = 0. An empty `time` means the
/// violation already holds on (-inf, first breakpoint).
struct Violation {
  std::optional<Rat> time;
};
std::optional<Violation> first_violation_leq(const Signal& x, const Signal& y);

/// Strictly increasing times, alternating values, first value differs from initial.
bool is_canonical(bool initial, std::span<const Transition> transitions);

}  // namespace asyncmodel
