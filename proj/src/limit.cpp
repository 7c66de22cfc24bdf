#include "asyncmodel/limit.hpp"

#include <algorithm>
#include <functional>

#include "asyncmodel/blc.hpp"
#include "asyncmodel/error.hpp"
#include "asyncmodel/inertia.hpp"
#include "sampling.hpp"

namespace asyncmodel {

std::string_view kind_name(Kind kind) {
  switch (kind) {
    case Kind::sol_fg: return "sol";
    case Kind::sc: return "sc";
    case Kind::mc: return "mc";
    case Kind::scf: return "scf";
    case Kind::flc: return "flc";
    case Kind::blc: return "blc";
    case Kind::bailc: return "bailc";
    case Kind::meet: return "meet";
    case Kind::join: return "join";
    case Kind::restrict: return "restrict";
    case Kind::domain_restrict: return "domain_restrict";
    case Kind::serial: return "serial";
  }
  return "unknown";
}

SignalSet::SignalSet(std::string description, Contains contains, Sampler sampler)
    : description_(std::move(description)), contains_(std::move(contains)), sampler_(std::move(sampler)) {}

namespace detail {

Model::Model(Kind kind, int arity, BoolFn f, BoolFn g)
    : kind_(kind), arity_(arity), f_(std::move(f)), g_(std::move(g)) {
  if (f_.arity() != arity_ || g_.arity() != arity_) {
    throw model_error(errc::arity_mismatch, "model of arity " + std::to_string(arity_) +
                                                " needs functions of the same arity");
  }
  if (!fn_leq(f_, g_)) {
    throw model_error(errc::precondition_violated, "f <= g fails for f=" + f_.bits() + ", g=" + g_.bits());
  }
}

std::optional<Envelope> Model::envelope(const MultiSignal&) const { return std::nullopt; }

std::vector<Rat> Model::offsets() const { return {}; }

std::vector<Rat> Model::pulse_bounds() const { return {}; }

std::optional<std::string> Model::explain(const MultiSignal& u, const Signal& x) const {
  switch (decide(u, x)) {
    case Membership::yes: return std::nullopt;
    case Membership::no: return "not a member";
    case Membership::inconclusive: return "no witness found within the search budget";
  }
  return std::nullopt;
}

bool Model::may_contain(const MultiSignal&, const MultiSignal&, const Signal&, const Signal&) const { return true; }

std::vector<LimitCondition> Model::children() const { return {}; }

}  // namespace detail

LimitCondition::LimitCondition(std::shared_ptr<const detail::Model> model) : model_(std::move(model)) {}

void LimitCondition::check_input(const MultiSignal& u) const {
  if (static_cast<int>(u.size()) != arity()) {
    throw model_error(errc::arity_mismatch, std::string(kind_name(kind())) + " model of arity " +
                                                std::to_string(arity()) + " given " + std::to_string(u.size()) +
                                                " input signals");
  }
}

Membership LimitCondition::decide(const MultiSignal& u, const Signal& x) const {
  check_input(u);
  return model_->decide(u, x);
}

std::vector<Signal> LimitCondition::sample(const MultiSignal& u, std::size_t count, std::uint64_t seed) const {
  check_input(u);
  return model_->sample(u, count, seed);
}

std::optional<Envelope> LimitCondition::envelope(const MultiSignal& u) const {
  check_input(u);
  return model_->envelope(u);
}

bool LimitCondition::may_contain(const MultiSignal& u_lo, const MultiSignal& u_hi, const Signal& x_lo,
                                 const Signal& x_hi) const {
  check_input(u_lo);
  check_input(u_hi);
  return model_->may_contain(u_lo, u_hi, x_lo, x_hi);
}

std::optional<std::string> LimitCondition::explain(const MultiSignal& u, const Signal& x) const {
  check_input(u);
  return model_->explain(u, x);
}

bool sol_fg_contains(const BoolFn& f, const BoolFn& g, const MultiSignal& u, const Signal& x) {
  const bool lambda = apply_fn(f, u).eventual();
  const bool mu = apply_fn(g, u).eventual();
  const bool v = x.eventual();
  return lambda <= v && v <= mu;
}

namespace {

using detail::Model;

std::vector<Rat> merged(std::vector<Rat> a, const std::vector<Rat>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

class SolModel final : public Model {
 public:
  SolModel(Kind kind, BoolFn f, BoolFn g) : Model(kind, f.arity(), f, g) {}

  Membership decide(const MultiSignal& u, const Signal& x) const override {
    return sol_fg_contains(f(), g(), u, x) ? Membership::yes : Membership::no;
  }

  std::vector<Signal> sample(const MultiSignal& u, std::size_t count, std::uint64_t seed) const override {
    const auto lo = apply_fn(f(), u);
    const auto hi = apply_fn(g(), u);
    std::vector<Signal> out;
    detail::push_unique(out, lo);
    detail::push_unique(out, hi);
    const auto anchors = breakpoints(u);
    auto rng = std::mt19937_64(detail::mix_seed(seed, 1));
    std::bernoulli_distribution coin(0.5);
    for (std::size_t k = 0; out.size() < count && k < 4 * count; ++k) {
      const bool tail = lo.eventual() == hi.eventual() ? lo.eventual() : coin(rng);
      detail::push_unique(out, detail::random_signal_ending(rng, anchors, 6, tail));
    }
    if (out.size() > std::max<std::size_t>(count, 1)) out.resize(std::max<std::size_t>(count, 1));
    return out;
  }

  std::optional<std::string> explain(const MultiSignal& u, const Signal& x) const override {
    if (decide(u, x) == Membership::yes) return std::nullopt;
    return "eventual value " + std::to_string(x.eventual()) + " outside [" +
           std::to_string(apply_fn(f(), u).eventual()) + ", " + std::to_string(apply_fn(g(), u).eventual()) + "]";
  }

  std::optional<BoolFn> inner_fn() const override { return f(); }
};

Membership both(Membership a, Membership b) {
  if (a == Membership::no || b == Membership::no) return Membership::no;
  if (a == Membership::yes && b == Membership::yes) return Membership::yes;
  return Membership::inconclusive;
}

Membership either(Membership a, Membership b) {
  if (a == Membership::yes || b == Membership::yes) return Membership::yes;
  if (a == Membership::no && b == Membership::no) return Membership::no;
  return Membership::inconclusive;
}

void check_same_shape(const LimitCondition& i, const LimitCondition& j, std::string_view what) {
  if (i.arity() != j.arity() || i.f() != j.f() || i.g() != j.g()) {
    throw model_error(errc::precondition_violated,
                      std::string(what) + " needs two models with the same arity and the same (f, g)");
  }
}

class MeetModel final : public Model {
 public:
  MeetModel(LimitCondition i, LimitCondition j)
      : Model(Kind::meet, i.arity(), i.f(), i.g()), i_(std::move(i)), j_(std::move(j)) {}

  Membership decide(const MultiSignal& u, const Signal& x) const override {
    const auto a = i_.decide(u, x);
    if (a == Membership::no) return a;
    return both(a, j_.decide(u, x));
  }

  std::vector<Signal> sample(const MultiSignal& u, std::size_t count, std::uint64_t seed) const override {
    std::vector<Signal> out;
    if (auto env = envelope(u)) {
      for (const auto& x : {env->lower, env->upper})
        if (out.size() < count && contains_both(u, x)) detail::push_unique(out, x);
    }
    for (const auto& x : i_.sample(u, 4 * count + 4, seed))
      if (out.size() < count && j_.contains(u, x)) detail::push_unique(out, x);
    if (out.size() < count) {
      for (const auto& x : j_.sample(u, 4 * count + 4, detail::mix_seed(seed, 2)))
        if (out.size() < count && i_.contains(u, x)) detail::push_unique(out, x);
    }
    if (out.empty()) throw model_error(errc::empty_meet, "no common member found for the given input");
    return out;
  }

  std::optional<Envelope> envelope(const MultiSignal& u) const override {
    auto a = i_.envelope(u);
    auto b = j_.envelope(u);
    if (!a) return b;
    if (!b) return a;
    return Envelope{a->lower | b->lower, a->upper & b->upper};
  }

  std::vector<Rat> offsets() const override { return merged(i_.offsets(), j_.offsets()); }
  std::vector<Rat> pulse_bounds() const override { return merged(i_.pulse_bounds(), j_.pulse_bounds()); }
  bool may_contain(const MultiSignal& u_lo, const MultiSignal& u_hi, const Signal& x_lo,
                   const Signal& x_hi) const override {
    return i_.may_contain(u_lo, u_hi, x_lo, x_hi) && j_.may_contain(u_lo, u_hi, x_lo, x_hi);
  }
  bool known_deterministic() const override { return i_.known_deterministic() || j_.known_deterministic(); }
  std::vector<LimitCondition> children() const override { return {i_, j_}; }

 private:
  bool contains_both(const MultiSignal& u, const Signal& x) const { return i_.contains(u, x) && j_.contains(u, x); }

  LimitCondition i_;
  LimitCondition j_;
};

class MeetSetModel final : public Model {
 public:
  MeetSetModel(LimitCondition i, SignalSet v)
      : Model(Kind::restrict, i.arity(), i.f(), i.g()), i_(std::move(i)), v_(std::move(v)) {}

  Membership decide(const MultiSignal& u, const Signal& x) const override {
    if (!v_.contains(x)) return Membership::no;
    return i_.decide(u, x);
  }

  std::vector<Signal> sample(const MultiSignal& u, std::size_t count, std::uint64_t seed) const override {
    std::vector<Signal> out;
    for (const auto& x : i_.sample(u, 4 * count + 4, seed))
      if (out.size() < count && v_.contains(x)) detail::push_unique(out, x);
    if (out.size() < count) {
      for (const auto& x : v_.sample(16 * count + 16, detail::mix_seed(seed, 3)))
        if (out.size() < count && i_.contains(u, x)) detail::push_unique(out, x);
    }
    if (out.empty()) {
      throw model_error(errc::empty_meet, "no member of " + v_.description() + " found for the given input");
    }
    return out;
  }

  std::optional<Envelope> envelope(const MultiSignal& u) const override { return i_.envelope(u); }
  std::vector<Rat> offsets() const override { return i_.offsets(); }
  std::vector<Rat> pulse_bounds() const override { return i_.pulse_bounds(); }
  bool may_contain(const MultiSignal& u_lo, const MultiSignal& u_hi, const Signal& x_lo,
                   const Signal& x_hi) const override {
    return i_.may_contain(u_lo, u_hi, x_lo, x_hi);
  }
  bool known_deterministic() const override { return i_.known_deterministic(); }
  std::vector<LimitCondition> children() const override { return {i_}; }

 private:
  LimitCondition i_;
  SignalSet v_;
};

class JoinModel final : public Model {
 public:
  JoinModel(LimitCondition i, LimitCondition j)
      : Model(Kind::join, i.arity(), i.f(), i.g()), i_(std::move(i)), j_(std::move(j)) {}

  Membership decide(const MultiSignal& u, const Signal& x) const override {
    const auto a = i_.decide(u, x);
    if (a == Membership::yes) return a;
    return either(a, j_.decide(u, x));
  }

  std::vector<Signal> sample(const MultiSignal& u, std::size_t count, std::uint64_t seed) const override {
    auto a = i_.sample(u, count, seed);
    auto b = j_.sample(u, count, detail::mix_seed(seed, 4));
    std::vector<Signal> out;
    for (std::size_t k = 0; out.size() < count && (k < a.size() || k < b.size()); ++k) {
      if (k < a.size()) detail::push_unique(out, a[k]);
      if (k < b.size() && out.size() < count) detail::push_unique(out, b[k]);
    }
    return out;
  }

  std::optional<Envelope> envelope(const MultiSignal& u) const override {
    auto a = i_.envelope(u);
    auto b = j_.envelope(u);
    if (!a || !b) return std::nullopt;
    return Envelope{a->lower & b->lower, a->upper | b->upper};
  }

  std::vector<Rat> offsets() const override { return merged(i_.offsets(), j_.offsets()); }
  std::vector<Rat> pulse_bounds() const override { return merged(i_.pulse_bounds(), j_.pulse_bounds()); }
  bool may_contain(const MultiSignal& u_lo, const MultiSignal& u_hi, const Signal& x_lo,
                   const Signal& x_hi) const override {
    return i_.may_contain(u_lo, u_hi, x_lo, x_hi) || j_.may_contain(u_lo, u_hi, x_lo, x_hi);
  }
  std::vector<LimitCondition> children() const override { return {i_, j_}; }

 private:
  LimitCondition i_;
  LimitCondition j_;
};

class DomainRestrictModel final : public Model {
 public:
  DomainRestrictModel(LimitCondition i, std::vector<SignalSet> domains)
      : Model(Kind::domain_restrict, i.arity(), i.f(), i.g()), i_(std::move(i)), domains_(std::move(domains)) {
    if (static_cast<int>(domains_.size()) != arity()) {
      throw model_error(errc::arity_mismatch, "domain restriction needs one set per input coordinate");
    }
  }

  bool in_domain(const MultiSignal& u) const {
    for (std::size_t p = 0; p < u.size(); ++p)
      if (!domains_[p].contains(u[p])) return false;
    return true;
  }

  Membership decide(const MultiSignal& u, const Signal& x) const override {
    if (!in_domain(u)) return Membership::no;
    return i_.decide(u, x);
  }

  std::vector<Signal> sample(const MultiSignal& u, std::size_t count, std::uint64_t seed) const override {
    if (!in_domain(u)) return {};
    return i_.sample(u, count, seed);
  }

  std::optional<Envelope> envelope(const MultiSignal& u) const override {
    if (!in_domain(u)) return Envelope{Signal::constant(true), Signal::constant(false)};
    return i_.envelope(u);
  }

  std::vector<Rat> offsets() const override { return i_.offsets(); }
  std::vector<Rat> pulse_bounds() const override { return i_.pulse_bounds(); }
  std::vector<LimitCondition> children() const override { return {i_}; }

 private:
  LimitCondition i_;
  std::vector<SignalSet> domains_;
};

std::vector<MultiSignal> split_blocks(std::span<const LimitCondition> parts, const MultiSignal& u) {
  std::size_t total = 0;
  for (const auto& j : parts) total += static_cast<std::size_t>(j.arity());
  if (total != u.size()) {
    throw model_error(errc::block_arity_mismatch, "inner models take " + std::to_string(total) +
                                                      " input signals, got " + std::to_string(u.size()));
  }
  std::vector<MultiSignal> blocks;
  std::size_t at = 0;
  for (const auto& j : parts) {
    blocks.emplace_back(u.begin() + at, u.begin() + at + j.arity());
    at += j.arity();
  }
  return blocks;
}

struct Fns {
  BoolFn f;
  BoolFn g;
};

Fns composed_fns(const LimitCondition& outer, std::span<const LimitCondition> inners) {
  if (static_cast<int>(inners.size()) != outer.arity()) {
    throw model_error(errc::arity_mismatch, "outer model of arity " + std::to_string(outer.arity()) + " given " +
                                                std::to_string(inners.size()) + " inner models");
  }
  std::vector<BoolFn> fs;
  std::vector<BoolFn> gs;
  for (const auto& j : inners) {
    fs.push_back(j.f());
    gs.push_back(j.g());
  }
  auto f = fn_compose(outer.f(), fs);
  auto g = fn_compose(outer.g(), gs);
  if (!fn_leq(f, g)) {
    throw model_error(errc::hypothesis_violated, "f o (f_1..f_m) <= g o (g_1..g_m) fails: " + f.bits() + " vs " +
                                                     g.bits());
  }
  return {std::move(f), std::move(g)};
}

class SerialModel final : public Model {
 public:
  SerialModel(LimitCondition outer, std::vector<LimitCondition> inners, Fns fns, SearchBudget budget)
      : Model(Kind::serial, fns.f.arity(), fns.f, fns.g),
        outer_(std::move(outer)),
        inners_(std::move(inners)),
        budget_(budget) {}

  Membership decide(const MultiSignal& u, const Signal& x) const override {
    return serial_witness(outer_, inners_, u, x, budget_).verdict;
  }

  std::vector<Signal> sample(const MultiSignal& u, std::size_t count, std::uint64_t seed) const override {
    const auto blocks = split_blocks(inners_, u);
    std::vector<std::vector<Signal>> pools;
    for (std::size_t q = 0; q < inners_.size(); ++q)
      pools.push_back(inners_[q].sample(blocks[q], std::max<std::size_t>(count, 2), detail::mix_seed(seed, q)));
    auto rng = std::mt19937_64(detail::mix_seed(seed, 99));
    std::vector<Signal> out;
    for (std::size_t k = 0; out.size() < count && k < 4 * count + 4; ++k) {
      MultiSignal y;
      for (const auto& pool : pools) {
        if (pool.empty()) return out;
        y.push_back(pool[k == 0 ? 0 : std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)]);
      }
      for (const auto& x : outer_.sample(y, 2, detail::mix_seed(seed, 1000 + k)))
        if (out.size() < count) detail::push_unique(out, x);
    }
    return out;
  }

  std::vector<LimitCondition> children() const override {
    std::vector<LimitCondition> out{outer_};
    out.insert(out.end(), inners_.begin(), inners_.end());
    return out;
  }

 private:
  LimitCondition outer_;
  std::vector<LimitCondition> inners_;
  SearchBudget budget_;
};

// ---- witness search -------------------------------------------------------

std::vector<Rat> search_grid(const Envelope& env, const Signal& x, const std::vector<Rat>& outer_offsets,
                             const std::vector<Rat>& pulse_bounds, int refinements) {
  std::vector<Rat> grid = breakpoints(std::vector<Signal>{env.lower, env.upper});
  const auto env_points = grid;
  for (const auto& t : breakpoints(x))
    for (const auto& o : outer_offsets) grid.push_back(t - o);
  for (const auto& t : env_points)
    for (const auto& delta : pulse_bounds) {
      grid.push_back(t + delta);
      grid.push_back(t - delta);
    }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  for (int r = 0; r < refinements && grid.size() > 1; ++r) {
    std::vector<Rat> finer;
    for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
      finer.push_back(grid[k]);
      finer.push_back((grid[k] + grid[k + 1]) / 2);
    }
    finer.push_back(grid.back());
    grid = std::move(finer);
  }
  return grid;
}

// Cell k of a grid g_0 < ... < g_{n-1} is (-inf, g_0) for k = 0, [g_{k-1}, g_k)
// in between and [g_{n-1}, inf) last.
enum class CellState : std::uint8_t { zero, one, open };

struct InnerGrid {
  std::vector<Rat> grid;
  std::vector<CellState> cells;
  // Fallback for inner models without envelopes: explicit candidate members.
  std::vector<Signal> candidates;
  bool has_grid = false;

  Signal build(bool open_value) const {
    auto value = [&](std::size_t k) { return cells[k] == CellState::open ? open_value : cells[k] == CellState::one; };
    std::vector<Transition> pieces;
    for (std::size_t k = 0; k < grid.size(); ++k) pieces.push_back({grid[k], value(k + 1)});
    return Signal::from_sorted(value(0), pieces);
  }
};

/// Grid cells of j(block) between its envelopes; nullopt when the envelope
/// bounds cross on the grid, i.e. j(block) is empty.
std::optional<InnerGrid> inner_grid(const LimitCondition& j, const MultiSignal& block, const Signal& x,
                                    const std::vector<Rat>& outer_offsets, int refinements) {
  InnerGrid out;
  const auto env = j.envelope(block);
  if (!env) {
    for (auto& y : j.sample(block, 6, 0x5eed)) detail::push_unique(out.candidates, std::move(y));
    for (bool v : {false, true})
      if (j.contains(block, Signal::constant(v))) detail::push_unique(out.candidates, Signal::constant(v));
    return out;
  }
  out.has_grid = true;
  out.grid = search_grid(*env, x, outer_offsets, j.pulse_bounds(), refinements);
  for (std::size_t k = 0; k <= out.grid.size(); ++k) {
    const bool lo = k == 0 ? env->lower.initial() : env->lower.at(out.grid[k - 1]);
    const bool hi = k == 0 ? env->upper.initial() : env->upper.at(out.grid[k - 1]);
    if (lo && !hi) return std::nullopt;
    out.cells.push_back(lo ? CellState::one : hi ? CellState::open : CellState::zero);
  }
  return out;
}

}  // namespace

SerialSearchResult serial_witness(const LimitCondition& outer, std::span<const LimitCondition> inners,
                                  const MultiSignal& u, const Signal& x, const SearchBudget& budget) {
  if (static_cast<int>(inners.size()) != outer.arity()) {
    throw model_error(errc::arity_mismatch, "outer model of arity " + std::to_string(outer.arity()) + " given " +
                                                std::to_string(inners.size()) + " inner models");
  }
  const auto blocks = split_blocks(inners, u);
  const auto offsets = outer.offsets();
  const std::size_t m = inners.size();
  SerialSearchResult result;
  std::size_t& nodes = result.nodes;
  bool budget_hit = false;
  bool unsure = false;

  auto accept = [&](const MultiSignal& y) {
    for (std::size_t q = 0; q < m; ++q)
      if (!inners[q].contains(blocks[q], y[q])) return false;
    const auto verdict = outer.decide(y, x);
    if (verdict == Membership::inconclusive) unsure = true;
    if (verdict != Membership::yes) return false;
    result.verdict = Membership::yes;
    result.witness = y;
    result.exhaustive = true;
    return true;
  };

  // Sampled members of the inner models first: cheap, and they may lie off the grid.
  {
    std::vector<std::vector<Signal>> pools;
    for (std::size_t q = 0; q < m; ++q) pools.push_back(inners[q].sample(blocks[q], 3, 0x5eed));
    MultiSignal y(m);
    std::function<bool(std::size_t)> descend = [&](std::size_t q) -> bool {
      if (q == m) return ++nodes, accept(y);
      for (const auto& cand : pools[q]) {
        if (nodes >= budget.max_nodes) return false;
        y[q] = cand;
        if (descend(q + 1)) return true;
      }
      return false;
    };
    if (descend(0)) return result;
  }

  for (int round = 0; round <= budget.refinements; ++round) {
    std::vector<InnerGrid> grids;
    bool empty = false;
    bool complete = true;
    for (std::size_t q = 0; q < m && !empty; ++q) {
      auto g = inner_grid(inners[q], blocks[q], x, offsets, round);
      if (!g) {
        empty = true;
      } else {
        complete = complete && g->has_grid;
        grids.push_back(std::move(*g));
      }
    }
    if (empty) break;  // some inner model has no member, so neither does the serial connection

    // Open cells of all inner grids, ordered by time so that pruning bites early.
    struct Var {
      std::size_t q;
      std::size_t cell;
    };
    std::vector<Var> vars;
    for (std::size_t q = 0; q < m; ++q)
      for (std::size_t k = 0; k < grids[q].cells.size(); ++k)
        if (grids[q].cells[k] == CellState::open) vars.push_back({q, k});
    auto start = [&](const Var& v) -> std::optional<Rat> {
      if (v.cell == 0) return std::nullopt;
      return grids[v.q].grid[v.cell - 1];
    };
    std::stable_sort(vars.begin(), vars.end(), [&](const Var& a, const Var& b) {
      const auto sa = start(a);
      const auto sb = start(b);
      if (!sa || !sb) return !sa && sb;
      return *sa < *sb;
    });

    MultiSignal lo(m);
    MultiSignal hi(m);
    auto refresh = [&](std::size_t q) {
      lo[q] = grids[q].build(false);
      hi[q] = grids[q].build(true);
    };
    auto feasible = [&](std::size_t q) { return inners[q].may_contain(blocks[q], blocks[q], lo[q], hi[q]); };

    std::function<bool(std::size_t)> cells = [&](std::size_t k) -> bool {
      if (nodes >= budget.max_nodes) {
        budget_hit = true;
        return false;
      }
      ++nodes;
      if (!outer.may_contain(lo, hi, x, x)) return false;
      if (k == vars.size()) return accept(lo);
      const auto [q, c] = vars[k];
      for (auto value : {CellState::zero, CellState::one}) {
        grids[q].cells[c] = value;
        refresh(q);
        if (feasible(q) && cells(k + 1)) return true;
        if (budget_hit) break;
      }
      grids[q].cells[c] = CellState::open;
      refresh(q);
      return false;
    };

    // Inner models without envelopes contribute their candidates one at a time.
    std::function<bool(std::size_t)> choose = [&](std::size_t q) -> bool {
      if (q == m) return cells(0);
      if (grids[q].has_grid) {
        refresh(q);
        return feasible(q) && choose(q + 1);
      }
      for (const auto& cand : grids[q].candidates) {
        lo[q] = hi[q] = cand;
        if (choose(q + 1)) return true;
        if (budget_hit) return false;
      }
      return false;
    };
    if (choose(0)) return result;
    result.exhaustive = complete && !budget_hit && !unsure;
    if (budget_hit) break;
  }
  result.verdict = result.exhaustive ? Membership::no : Membership::inconclusive;
  return result;
}

LimitCondition sol_fg(const BoolFn& f, const BoolFn& g) {
  return LimitCondition(std::make_shared<SolModel>(Kind::sol_fg, f, g));
}

LimitCondition sc() {
  return LimitCondition(std::make_shared<SolModel>(Kind::sc, BoolFn::identity(), BoolFn::identity()));
}

LimitCondition mc(int m) {
  if (m < 1) throw model_error(errc::arity_mismatch, "Muller condition needs m >= 1");
  return LimitCondition(std::make_shared<SolModel>(Kind::mc, BoolFn::and_n(m), BoolFn::or_n(m)));
}

LimitCondition scf(const BoolFn& f) { return LimitCondition(std::make_shared<SolModel>(Kind::scf, f, f)); }

LimitCondition lc_meet(const LimitCondition& i, const LimitCondition& j) {
  check_same_shape(i, j, "meet");
  return LimitCondition(std::make_shared<MeetModel>(i, j));
}

LimitCondition lc_meet_set(const LimitCondition& i, const SignalSet& v) {
  return LimitCondition(std::make_shared<MeetSetModel>(i, v));
}

LimitCondition lc_join(const LimitCondition& i, const LimitCondition& j) {
  check_same_shape(i, j, "join");
  return LimitCondition(std::make_shared<JoinModel>(i, j));
}

LimitCondition restrict_domain(const LimitCondition& i, std::vector<SignalSet> domains) {
  return LimitCondition(std::make_shared<DomainRestrictModel>(i, std::move(domains)));
}

DirectProduct::DirectProduct(std::vector<LimitCondition> components) : components_(std::move(components)) {
  if (components_.empty()) throw model_error(errc::block_arity_mismatch, "direct product needs m >= 1 models");
}

int DirectProduct::input_arity() const {
  int total = 0;
  for (const auto& j : components_) total += j.arity();
  return total;
}

std::vector<MultiSignal> DirectProduct::split(const MultiSignal& u) const { return split_blocks(components_, u); }

std::vector<bool> DirectProduct::contains(const MultiSignal& u, std::span<const Signal> xs) const {
  if (xs.size() != components_.size()) {
    throw model_error(errc::block_arity_mismatch, "direct product of " + std::to_string(components_.size()) +
                                                      " models given " + std::to_string(xs.size()) + " outputs");
  }
  const auto blocks = split(u);
  std::vector<bool> out;
  for (std::size_t p = 0; p < components_.size(); ++p) out.push_back(components_[p].contains(blocks[p], xs[p]));
  return out;
}

std::vector<std::vector<Signal>> DirectProduct::sample(const MultiSignal& u, std::size_t count,
                                                       std::uint64_t seed) const {
  const auto blocks = split(u);
  std::vector<std::vector<Signal>> out;
  for (std::size_t p = 0; p < components_.size(); ++p)
    out.push_back(components_[p].sample(blocks[p], count, detail::mix_seed(seed, p)));
  return out;
}

DirectProduct direct_product(std::vector<LimitCondition> js) { return DirectProduct(std::move(js)); }

LimitCondition serial_search(const LimitCondition& outer, std::vector<LimitCondition> inners,
                             const SearchBudget& budget) {
  auto fns = composed_fns(outer, inners);
  return LimitCondition(std::make_shared<SerialModel>(outer, std::move(inners), std::move(fns), budget));
}

namespace {

template <class Spec, class Extract>
std::optional<std::vector<Spec>> all_as(const std::vector<LimitCondition>& inners, Extract extract) {
  std::vector<Spec> out;
  for (const auto& j : inners) {
    auto s = extract(j);
    if (!s) return std::nullopt;
    out.push_back(std::move(*s));
  }
  return out;
}

}  // namespace

LimitCondition serial_closed_form(const LimitCondition& outer, const std::vector<LimitCondition>& inners) {
  const auto fns = composed_fns(outer, inners);

  if (auto o = as_flc(outer)) {
    if (auto in = all_as<FlcSpec>(inners, as_flc)) {
      const bool shared = std::all_of(in->begin(), in->end(), [&](const auto& s) { return s.d == in->front().d; });
      if (!shared) throw model_error(errc::no_closed_form, "inner fixed delays have different delays");
      std::vector<BoolFn> hs;
      for (const auto& s : *in) hs.push_back(s.h);
      return flc(fn_compose(o->h, hs), o->d + in->front().d, fns.f, fns.g);
    }
  }

  std::vector<std::pair<BoolFn, BoolFn>> inner_fns;
  for (const auto& j : inners) inner_fns.emplace_back(j.f(), j.g());

  if (auto o = as_bailc(outer)) {
    if (auto in = all_as<BailcSpec>(inners, as_bailc)) {
      const bool shared = std::all_of(in->begin(), in->end(), [&](const auto& s) {
        return s.blc.p == in->front().blc.p && s.aic == in->front().aic;
      });
      if (!shared) throw model_error(errc::no_closed_form, "inner inertial models have different parameters");
      const auto c = bailc_compose(*o, inner_fns, in->front().blc.p, in->front().aic);
      return bailc(c.blc.f, c.blc.g, c.blc.p, c.aic);
    }
  } else if (auto o = as_blc(outer)) {
    if (auto in = all_as<BlcSpec>(inners, as_blc)) {
      const bool shared = std::all_of(in->begin(), in->end(), [&](const auto& s) { return s.p == in->front().p; });
      if (!shared) throw model_error(errc::no_closed_form, "inner bounded models have different parameters");
      const auto c = blc_compose(*o, inner_fns, in->front().p);
      return blc(c.f, c.g, c.p);
    }
  }
  std::string kinds(kind_name(outer.kind()));
  for (const auto& j : inners) kinds += std::string(" ") + std::string(kind_name(j.kind()));
  throw model_error(errc::no_closed_form, "no closed form for the kinds " + kinds);
}

LimitCondition serial(const LimitCondition& outer, std::vector<LimitCondition> inners, const SearchBudget& budget) {
  try {
    return serial_closed_form(outer, inners);
  } catch (const model_error& e) {
    switch (e.code()) {
      case errc::no_closed_form:
      case errc::monotony_violated:
      case errc::distributivity_unverified:
      case errc::empty_bailc:
      case errc::invalid_blc:
        break;
      default:
        throw;
    }
  }
  return serial_search(outer, std::move(inners), budget);
}

// ---- property checkers ------------------------------------------------------

std::vector<bool> check_deterministic(const LimitCondition& i, std::span<const MultiSignal> us,
                                      const SearchBudget& budget) {
  std::vector<bool> out;
  for (const auto& u : us) {
    std::vector<Signal> members;
    auto consider = [&](const Signal& x) {
      if (members.size() < 2 && i.contains(u, x)) detail::push_unique(members, x);
    };
    if (auto env = i.envelope(u)) {
      consider(env->lower);
      consider(env->upper);
    }
    const auto n = std::min<std::size_t>(budget.max_nodes, 8);
    for (const auto& x : i.sample(u, n, 0xd7)) consider(x);
    out.push_back(members.size() < 2);
  }
  return out;
}

bool check_time_invariance(const LimitCondition& i, const MultiSignal& u, const Signal& x, const Rat& d) {
  return i.contains(u, x) == i.contains(translate(u, d), translate(x, d));
}

bool check_constancy(const MultiSignal& u, const Signal& x, const BoolFn& f, const BoolFn& g, const Rat& d_r,
                     const Rat& d_f) {
  if (d_r < 0 || d_f < 0) throw model_error(errc::negative_delay, "constancy delays must be non-negative");
  const auto fu = apply_fn(f, u);
  const auto gu = apply_fn(g, u);
  for (const auto& tr : x.transitions()) {
    if (tr.value && !gu.at(tr.time - d_r)) return false;
    if (!tr.value && fu.at(tr.time - d_f)) return false;
  }
  return true;
}

bool check_symmetry_usual(const LimitCondition& i, const MultiSignal& u, const Signal& x,
                          std::span<const int> sigma) {
  if (sigma.size() != u.size()) throw model_error(errc::arity_mismatch, "permutation size differs from input arity");
  std::vector<bool> seen(sigma.size(), false);
  MultiSignal permuted;
  for (int p : sigma) {
    if (p < 0 || p >= static_cast<int>(u.size()) || seen[p]) {
      throw model_error(errc::precondition_violated, "sigma is not a permutation");
    }
    seen[p] = true;
    permuted.push_back(u[p]);
  }
  return i.contains(u, x) == i.contains(permuted, x);
}

MultiSignal negate_all(const MultiSignal& u) {
  MultiSignal out;
  out.reserve(u.size());
  for (const auto& s : u) out.push_back(~s);
  return out;
}

bool check_symmetry_rf(const LimitCondition& i, const MultiSignal& u, const Signal& x) {
  return i.contains(u, x) == i.contains(negate_all(u), ~x);
}

std::optional<Rat> envelope_violation(const LimitCondition& i, const MultiSignal& u, const Signal& x) {
  const auto env = i.envelope(u);
  if (!env) return std::nullopt;
  return envelope_violation(*env, u, x);
}

std::optional<Rat> envelope_violation(const Envelope& env, const MultiSignal& u, const Signal& x) {
  const auto bad = (env.lower & ~x) | (x & ~env.upper);
  const auto regions = ones(bad);
  if (regions.empty()) return std::nullopt;
  const auto& first = regions.front();
  if (first.lo) return first.lo;
  auto points = breakpoints(u);
  for (const auto& t : x.transitions()) points.push_back(t.time);
  std::optional<Rat> best;
  for (const auto& t : points)
    if ((!first.hi || t < *first.hi) && (!best || t < *best)) best = t;
  if (best) return best;
  return first.hi ? *first.hi - 1 : Rat(0);
}

}  // namespace asyncmodel
