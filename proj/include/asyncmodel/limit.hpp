#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "asyncmodel/boolfn.hpp"
#include "asyncmodel/signal.hpp"

namespace asyncmodel {

enum class Kind { sol_fg, sc, mc, scf, flc, blc, bailc, meet, join, restrict, domain_restrict, serial };

std::string_view kind_name(Kind kind);

/// Outcome of a membership query. `inconclusive` only comes from budgeted
/// witness searches and counts as "not a member" for `contains`.
enum class Membership { no, yes, inconclusive };

struct SearchBudget {
  /// Search nodes visited before giving up with an inconclusive verdict.
  std::size_t max_nodes = 2000;
  /// Midpoint refinements of the candidate grid tried after the first pass.
  int refinements = 1;
};

/// Bounds that every member of i(u) lies between.
struct Envelope {
  Signal lower;
  Signal upper;
};

/// A decidable set of signals with a sampler (the V of the meet combinators).
class SignalSet {
 public:
  using Contains = std::function<bool(const Signal&)>;
  using Sampler = std::function<std::vector<Signal>(std::size_t count, std::uint64_t seed)>;

  SignalSet(std::string description, Contains contains, Sampler sampler);

  bool contains(const Signal& x) const { return contains_(x); }
  std::vector<Signal> sample(std::size_t count, std::uint64_t seed) const { return sampler_(count, seed); }
  const std::string& description() const { return description_; }

 private:
  std::string description_;
  Contains contains_;
  Sampler sampler_;
};

class LimitCondition;

namespace detail {

/// Shared state and behaviour of every model node. Concrete models live in the
/// library sources; callers only see LimitCondition.
class Model {
 public:
  Model(Kind kind, int arity, BoolFn f, BoolFn g);
  virtual ~Model() = default;

  Kind kind() const { return kind_; }
  int arity() const { return arity_; }
  const BoolFn& f() const { return f_; }
  const BoolFn& g() const { return g_; }

  virtual Membership decide(const MultiSignal& u, const Signal& x) const = 0;
  virtual std::vector<Signal> sample(const MultiSignal& u, std::size_t count, std::uint64_t seed) const = 0;
  virtual std::optional<Envelope> envelope(const MultiSignal& u) const;
  /// Offsets o such that x(t) depends on the input near t - o.
  virtual std::vector<Rat> offsets() const;
  /// Minimum pulse widths imposed on members.
  virtual std::vector<Rat> pulse_bounds() const;
  virtual std::optional<std::string> explain(const MultiSignal& u, const Signal& x) const;
  /// False only when no u in [u_lo, u_hi] has a member in [x_lo, x_hi].
  virtual bool may_contain(const MultiSignal& u_lo, const MultiSignal& u_hi, const Signal& x_lo,
                           const Signal& x_hi) const;
  virtual bool known_deterministic() const { return false; }

  /// Structural description used for serialization and closed-form dispatch.
  virtual std::map<std::string, Rat> params() const { return {}; }
  virtual std::optional<BoolFn> inner_fn() const { return std::nullopt; }
  virtual std::vector<LimitCondition> children() const;

 private:
  Kind kind_;
  int arity_;
  BoolFn f_;
  BoolFn g_;
};

}  // namespace detail

/// A model i : S^(m) -> P*(S) induced by (f, g), kept intensionally as a
/// membership predicate plus a seeded sampler of members.
class LimitCondition {
 public:
  explicit LimitCondition(std::shared_ptr<const detail::Model> model);

  Kind kind() const { return model_->kind(); }
  int arity() const { return model_->arity(); }
  const BoolFn& f() const { return model_->f(); }
  const BoolFn& g() const { return model_->g(); }

  Membership decide(const MultiSignal& u, const Signal& x) const;
  bool contains(const MultiSignal& u, const Signal& x) const { return decide(u, x) == Membership::yes; }
  /// Up to `count` distinct members of i(u); deterministic in `seed`.
  std::vector<Signal> sample(const MultiSignal& u, std::size_t count, std::uint64_t seed) const;
  std::optional<Envelope> envelope(const MultiSignal& u) const;
  std::vector<Rat> offsets() const { return model_->offsets(); }
  std::vector<Rat> pulse_bounds() const { return model_->pulse_bounds(); }
  /// Human-readable reason why x is not in i(u); nullopt for members.
  std::optional<std::string> explain(const MultiSignal& u, const Signal& x) const;
  /// Pruning test for witness searches: false proves that no input between
  /// u_lo and u_hi has a member between x_lo and x_hi.
  bool may_contain(const MultiSignal& u_lo, const MultiSignal& u_hi, const Signal& x_lo, const Signal& x_hi) const;
  bool known_deterministic() const { return model_->known_deterministic(); }

  std::map<std::string, Rat> params() const { return model_->params(); }
  std::optional<BoolFn> inner_fn() const { return model_->inner_fn(); }
  std::vector<LimitCondition> children() const { return model_->children(); }

 private:
  void check_input(const MultiSignal& u) const;

  std::shared_ptr<const detail::Model> model_;
};

/// Membership in Sol_{f,g}(u): the eventual value of x lies between the
/// eventual values of f(u) and g(u). Exact because signals are eventually constant.
bool sol_fg_contains(const BoolFn& f, const BoolFn& g, const MultiSignal& u, const Signal& x);

LimitCondition sol_fg(const BoolFn& f, const BoolFn& g);
/// Stability condition: sol_fg(id, id).
LimitCondition sc();
/// Muller condition: sol_fg(AND_m, OR_m).
LimitCondition mc(int m);
/// Stability condition induced by f: sol_fg(f, f).
LimitCondition scf(const BoolFn& f);

LimitCondition lc_meet(const LimitCondition& i, const LimitCondition& j);
LimitCondition lc_meet_set(const LimitCondition& i, const SignalSet& v);
LimitCondition lc_join(const LimitCondition& i, const LimitCondition& j);
/// i restricted to inputs in V_1 x ... x V_m; inputs outside have no members.
LimitCondition restrict_domain(const LimitCondition& i, std::vector<SignalSet> domains);

/// (j_1, ..., j_m) applied blockwise to (u^1, ..., u^m).
class DirectProduct {
 public:
  explicit DirectProduct(std::vector<LimitCondition> components);

  const std::vector<LimitCondition>& components() const { return components_; }
  int input_arity() const;
  std::vector<MultiSignal> split(const MultiSignal& u) const;
  std::vector<bool> contains(const MultiSignal& u, std::span<const Signal> xs) const;
  std::vector<std::vector<Signal>> sample(const MultiSignal& u, std::size_t count, std::uint64_t seed) const;

 private:
  std::vector<LimitCondition> components_;
};

DirectProduct direct_product(std::vector<LimitCondition> js);

struct SerialSearchResult {
  Membership verdict = Membership::no;
  /// Intermediate signals (y_1, ..., y_m) when verdict is yes.
  std::optional<MultiSignal> witness;
  std::size_t nodes = 0;
  /// False when the budget, or an inner model without envelopes, cut the enumeration short.
  bool exhaustive = true;
};

/// Searches y_p in j_p(u^p) with x in i(y) over a breakpoint grid. A returned
/// witness has been re-checked against every component.
SerialSearchResult serial_witness(const LimitCondition& outer, std::span<const LimitCondition> inners,
                                  const MultiSignal& u, const Signal& x, const SearchBudget& budget);

/// Serial connection decided by witness search only (no closed forms).
LimitCondition serial_search(const LimitCondition& outer, std::vector<LimitCondition> inners,
                             const SearchBudget& budget = {});

/// Closed form of a fixed, bounded or bounded-inertial chain with shared inner
/// parameters. Throws NoClosedForm for other shapes, and the hypothesis errors
/// of the composition rules when they do not apply.
LimitCondition serial_closed_form(const LimitCondition& outer, const std::vector<LimitCondition>& inners);
/// Serial connection. Fixed, bounded and bounded-inertial chains with shared
/// inner parameters collapse to their closed forms; everything else is searched.
LimitCondition serial(const LimitCondition& outer, std::vector<LimitCondition> inners,
                      const SearchBudget& budget = {});

/// Per input: false when two distinct members were found, true otherwise.
std::vector<bool> check_deterministic(const LimitCondition& i, std::span<const MultiSignal> us,
                                      const SearchBudget& budget = {});
bool check_time_invariance(const LimitCondition& i, const MultiSignal& u, const Signal& x, const Rat& d);
/// Rising edges need g(u(t - d_r)) = 1 and falling edges f(u(t - d_f)) = 0.
bool check_constancy(const MultiSignal& u, const Signal& x, const BoolFn& f, const BoolFn& g, const Rat& d_r,
                     const Rat& d_f);
/// `sigma` is a 0-based permutation of the input coordinates.
bool check_symmetry_usual(const LimitCondition& i, const MultiSignal& u, const Signal& x,
                          std::span<const int> sigma);
bool check_symmetry_rf(const LimitCondition& i, const MultiSignal& u, const Signal& x);

MultiSignal negate_all(const MultiSignal& u);

/// A time at which x leaves the envelope of i(u). For a violation that extends
/// to -inf the earliest breakpoint of u or x inside it is reported.
std::optional<Rat> envelope_violation(const Envelope& env, const MultiSignal& u, const Signal& x);
std::optional<Rat> envelope_violation(const LimitCondition& i, const MultiSignal& u, const Signal& x);

}  // namespace asyncmodel
