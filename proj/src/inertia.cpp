#include "asyncmodel/inertia.hpp"

#include <algorithm>
#include <limits>
#include <random>

#include "asyncmodel/error.hpp"
#include "sampling.hpp"

namespace asyncmodel {

void AicParams::validate() const {
  if (delta_r < 0 || delta_f < 0) {
    throw model_error(errc::negative_delay, "inertial bounds must be non-negative, got (" + to_string(delta_r) +
                                                ", " + to_string(delta_f) + ")");
  }
}

Signal flc_output(const BoolFn& h, const MultiSignal& u, const Rat& d) { return apply_fn(h, translate(u, d)); }

namespace {

class FlcModel final : public detail::Model {
 public:
  FlcModel(BoolFn h, Rat d, BoolFn f, BoolFn g) : Model(Kind::flc, h.arity(), f, g), h_(std::move(h)), d_(d) {}

  Membership decide(const MultiSignal& u, const Signal& x) const override {
    return x == flc_output(h_, u, d_) ? Membership::yes : Membership::no;
  }

  std::vector<Signal> sample(const MultiSignal& u, std::size_t, std::uint64_t) const override {
    return {flc_output(h_, u, d_)};
  }

  std::optional<Envelope> envelope(const MultiSignal& u) const override {
    auto x = flc_output(h_, u, d_);
    return Envelope{x, x};
  }

  std::vector<Rat> offsets() const override { return {d_}; }

  std::optional<std::string> explain(const MultiSignal& u, const Signal& x) const override {
    if (decide(u, x) == Membership::yes) return std::nullopt;
    const auto t = envelope_violation(*envelope(u), u, x);
    return "differs from the delayed output at t=" + (t ? to_string(*t) : std::string("?"));
  }

  bool may_contain(const MultiSignal& u_lo, const MultiSignal& u_hi, const Signal& x_lo,
                   const Signal& x_hi) const override {
    const auto lo = translate(apply_fn_range(h_, u_lo, u_hi).first, d_) | x_lo;
    const auto hi = translate(apply_fn_range(h_, u_lo, u_hi).second, d_) & x_hi;
    return pointwise_leq(lo, hi);
  }

  bool known_deterministic() const override { return true; }
  std::map<std::string, Rat> params() const override { return {{"d", d_}}; }
  std::optional<BoolFn> inner_fn() const override { return h_; }

 private:
  BoolFn h_;
  Rat d_;
};

std::map<std::string, Rat> bailc_param_map(const BlcParams& p, const AicParams& a) {
  return {{"m_r", p.m_r},         {"d_r", p.d_r},        {"m_f", p.m_f},
          {"d_f", p.d_f},         {"delta_r", a.delta_r}, {"delta_f", a.delta_f}};
}

Rat param(const std::map<std::string, Rat>& m, const char* key) {
  auto it = m.find(key);
  return it == m.end() ? Rat(0) : it->second;
}

struct Group {
  bool value;
  std::optional<Rat> first_lo;
  std::optional<Rat> last_hi;
};

// Maximal runs of forced regions sharing one value, in time order.
std::optional<std::vector<Group>> forced_groups(const Signal& lower, const Signal& upper) {
  struct Region {
    bool value;
    Interval iv;
  };
  std::vector<Region> regions;
  for (const auto& iv : ones(lower)) regions.push_back({true, iv});
  for (const auto& iv : ones(~upper)) regions.push_back({false, iv});
  std::sort(regions.begin(), regions.end(), [](const Region& a, const Region& b) {
    if (!a.iv.lo || !b.iv.lo) return !a.iv.lo && b.iv.lo;
    return *a.iv.lo < *b.iv.lo;
  });
  std::vector<Group> groups;
  for (std::size_t k = 0; k < regions.size(); ++k) {
    const auto& r = regions[k];
    if (k > 0) {
      const auto& prev = regions[k - 1].iv;
      // Forced-1 and forced-0 regions overlap when lower > upper somewhere.
      if (!prev.hi || !r.iv.lo || *prev.hi > *r.iv.lo) return std::nullopt;
    }
    if (!groups.empty() && groups.back().value == r.value) {
      groups.back().last_hi = r.iv.hi;
    } else {
      groups.push_back({r.value, r.iv.lo, r.iv.hi});
    }
  }
  return groups;
}

}  // namespace

LimitCondition flc(const BoolFn& h, const Rat& d) { return flc(h, d, h, h); }

LimitCondition flc(const BoolFn& h, const Rat& d, const BoolFn& f, const BoolFn& g) {
  if (d < 0) throw model_error(errc::negative_delay, "delay must be non-negative, got " + to_string(d));
  if (h.arity() != f.arity() || h.arity() != g.arity()) {
    throw model_error(errc::arity_mismatch, "h, f, g must share one arity");
  }
  if (!fn_leq(f, h) || !fn_leq(h, g)) {
    throw model_error(errc::precondition_violated, "f <= h <= g fails for h=" + h.bits());
  }
  return LimitCondition(std::make_shared<FlcModel>(h, d, f, g));
}

std::optional<FlcSpec> as_flc(const LimitCondition& i) {
  if (i.kind() != Kind::flc) return std::nullopt;
  return FlcSpec{*i.inner_fn(), param(i.params(), "d"), i.f(), i.g()};
}

std::optional<Rat> aic_violation(const Signal& x, const AicParams& a) {
  const auto tr = x.transitions();
  for (std::size_t k = 0; k + 1 < tr.size(); ++k) {
    const Rat& delta = tr[k].value ? a.delta_r : a.delta_f;
    if (tr[k + 1].time - tr[k].time <= delta) return tr[k].time;
  }
  return std::nullopt;
}

bool aic_contains(const Signal& x, const AicParams& a) { return !aic_violation(x, a); }

SignalSet aic_set(const AicParams& a) {
  a.validate();
  auto contains = [a](const Signal& x) { return aic_contains(x, a); };
  auto sampler = [a](std::size_t count, std::uint64_t seed) {
    static const Rat extras[] = {Rat(1, 8), Rat(1, 4), Rat(1, 2), Rat(1), Rat(2)};
    auto rng = std::mt19937_64(detail::mix_seed(seed, 11));
    std::uniform_int_distribution<int> pick(0, 4);
    std::uniform_int_distribution<int> start(-2, 2);
    std::uniform_int_distribution<int> length(0, 6);
    std::vector<Signal> out;
    for (std::size_t k = 0; out.size() < count && k < 4 * count + 4; ++k) {
      bool value = std::bernoulli_distribution(0.5)(rng);
      const bool initial = value;
      Rat t(start(rng));
      std::vector<Transition> pieces;
      for (int n = length(rng); n > 0; --n) {
        value = !value;
        pieces.push_back({t, value});
        t += (value ? a.delta_r : a.delta_f) + extras[pick(rng)];
      }
      detail::push_unique(out, Signal::from_sorted(initial, pieces));
    }
    return out;
  };
  return SignalSet("AIC(" + to_string(a.delta_r) + ", " + to_string(a.delta_f) + ")", contains, sampler);
}

bool bailc_nonempty(const BoolFn& f, const BoolFn& g, const BlcParams& p, const AicParams& a) {
  a.validate();
  if (!blc_valid(f, g, p)) {
    throw model_error(errc::invalid_blc, "window-offset condition and max f <= min g condition both fail");
  }
  if (f.max_value() <= g.min_value()) return true;
  return p.d_r >= p.d_f - p.m_f && p.d_f >= p.d_r - p.m_r && a.delta_r + a.delta_f <= p.m_r + p.m_f;
}

std::optional<Signal> inertial_witness(const Signal& lower, const Signal& upper, const AicParams& a, bool latest,
                                       std::size_t max_regions) {
  const auto groups = forced_groups(lower, upper);
  if (!groups) return std::nullopt;
  if (groups->empty()) return Signal::constant(false);
  if (groups->size() > max_regions) return std::nullopt;
  const auto& gs = *groups;
  const std::size_t n = gs.size() - 1;  // transitions needed
  // Transition k switches from gs[k].value to gs[k+1].value inside [b[k], e[k]].
  std::vector<Rat> b(n);
  std::vector<Rat> e(n);
  std::vector<Rat> hold(n);  // minimum width of the piece that transition k starts
  for (std::size_t k = 0; k < n; ++k) {
    b[k] = *gs[k].last_hi;
    e[k] = *gs[k + 1].first_lo;
    if (b[k] > e[k]) return std::nullopt;
    hold[k] = gs[k + 1].value ? a.delta_r : a.delta_f;
  }

  std::vector<Rat> tau(n);
  if (!latest) {
    // Pass 1: infimum of each transition time and whether it is attained.
    std::vector<Rat> inf(n);
    Rat eps(0);
    bool have_eps = false;
    auto consider = [&](const Rat& slack) {
      if (slack > 0 && (!have_eps || slack < eps)) {
        eps = slack;
        have_eps = true;
      }
    };
    for (std::size_t k = 0; k < n; ++k) {
      inf[k] = b[k];
      bool strict = false;
      if (k > 0) {
        const Rat chained = inf[k - 1] + hold[k - 1];
        consider(b[k] - chained);
        if (chained >= inf[k]) {
          inf[k] = chained;
          strict = true;
        }
      }
      if (inf[k] > e[k] || (strict && inf[k] == e[k])) return std::nullopt;
      consider(e[k] - inf[k]);
    }
    eps = have_eps ? eps / (2 * static_cast<std::int64_t>(n + 1)) : Rat(1);
    for (std::size_t k = 0; k < n; ++k) tau[k] = k == 0 ? b[0] : std::max(b[k], tau[k - 1] + hold[k - 1] + eps);
  } else {
    std::vector<Rat> sup(n);
    Rat eps(0);
    bool have_eps = false;
    auto consider = [&](const Rat& slack) {
      if (slack > 0 && (!have_eps || slack < eps)) {
        eps = slack;
        have_eps = true;
      }
    };
    for (std::size_t k = n; k-- > 0;) {
      sup[k] = e[k];
      bool strict = false;
      if (k + 1 < n) {
        const Rat chained = sup[k + 1] - hold[k];
        consider(chained - e[k]);
        if (chained <= sup[k]) {
          sup[k] = chained;
          strict = true;
        }
      }
      if (sup[k] < b[k] || (strict && sup[k] == b[k])) return std::nullopt;
      consider(sup[k] - b[k]);
    }
    eps = have_eps ? eps / (2 * static_cast<std::int64_t>(n + 1)) : Rat(1);
    for (std::size_t k = n; k-- > 0;)
      tau[k] = k + 1 == n ? e[k] : std::min(e[k], tau[k + 1] - hold[k] - eps);
  }

  std::vector<Transition> pieces;
  for (std::size_t k = 0; k < n; ++k) pieces.push_back({tau[k], gs[k + 1].value});
  return Signal::from_sorted(gs.front().value, pieces);
}

namespace {

class BailcModel final : public detail::Model {
 public:
  BailcModel(BoolFn f, BoolFn g, BlcParams p, AicParams a) : Model(Kind::bailc, f.arity(), f, g), p_(p), a_(a) {}

  Membership decide(const MultiSignal& u, const Signal& x) const override {
    const bool ok = pointwise_leq(lower_envelope(f(), u, p_), x) && pointwise_leq(x, upper_envelope(g(), u, p_)) &&
                    aic_contains(x, a_);
    return ok ? Membership::yes : Membership::no;
  }

  std::vector<Signal> sample(const MultiSignal& u, std::size_t count, std::uint64_t seed) const override {
    const auto lo = lower_envelope(f(), u, p_);
    const auto hi = upper_envelope(g(), u, p_);
    std::vector<Signal> out;
    auto keep = [&](const Signal& x) {
      if (out.size() < std::max<std::size_t>(count, 1) && decide(u, x) == Membership::yes) detail::push_unique(out, x);
    };
    const auto early = inertial_witness(lo, hi, a_, false);
    const auto late = inertial_witness(lo, hi, a_, true);
    if (early) keep(*early);
    if (late) keep(*late);
    if (early && late && early->transitions().size() == late->transitions().size()) {
      auto rng = std::mt19937_64(detail::mix_seed(seed, 13));
      std::uniform_int_distribution<int> num(1, 7);
      for (std::size_t k = 0; out.size() < count && k < 4 * count; ++k) {
        const Rat lambda(num(rng), 8);
        std::vector<Transition> pieces;
        for (std::size_t j = 0; j < early->transitions().size(); ++j) {
          const auto& te = early->transitions()[j];
          const auto& tl = late->transitions()[j];
          pieces.push_back({te.time * (1 - lambda) + tl.time * lambda, te.value});
        }
        keep(Signal::from_sorted(early->initial(), pieces));
      }
    }
    keep(lo);
    keep(hi);
    return out;
  }

  std::optional<Envelope> envelope(const MultiSignal& u) const override {
    return Envelope{lower_envelope(f(), u, p_), upper_envelope(g(), u, p_)};
  }

  std::vector<Rat> offsets() const override { return {p_.d_r, p_.d_r - p_.m_r, p_.d_f, p_.d_f - p_.m_f}; }
  std::vector<Rat> pulse_bounds() const override { return {a_.delta_r, a_.delta_f}; }

  std::optional<std::string> explain(const MultiSignal& u, const Signal& x) const override {
    if (decide(u, x) == Membership::yes) return std::nullopt;
    if (auto t = envelope_violation(*envelope(u), u, x)) return "outside the envelopes at t=" + to_string(*t);
    return "pulse starting at t=" + to_string(*aic_violation(x, a_)) + " is too short";
  }

  bool may_contain(const MultiSignal& u_lo, const MultiSignal& u_hi, const Signal& x_lo,
                   const Signal& x_hi) const override {
    const auto [l, u] = envelope_range(f(), g(), p_, u_lo, u_hi, x_lo, x_hi);
    return inertial_witness(l, u, a_, false, std::numeric_limits<std::size_t>::max()).has_value();
  }

  bool known_deterministic() const override { return blc_is_deterministic(f(), g(), p_).deterministic; }
  std::map<std::string, Rat> params() const override { return bailc_param_map(p_, a_); }

 private:
  BlcParams p_;
  AicParams a_;
};

}  // namespace

LimitCondition bailc(const BoolFn& f, const BoolFn& g, const BlcParams& p, const AicParams& a) {
  if (!bailc_nonempty(f, g, p, a)) {
    throw model_error(errc::empty_bailc, "inertial bounds (" + to_string(a.delta_r) + ", " + to_string(a.delta_f) +
                                             ") leave some input without a member");
  }
  return LimitCondition(std::make_shared<BailcModel>(f, g, p, a));
}

std::optional<Signal> bailc_witness_search(const BoolFn& f, const BoolFn& g, const BlcParams& p,
                                           const AicParams& a, const MultiSignal& u, const SearchBudget& budget) {
  a.validate();
  if (!blc_valid(f, g, p)) {
    throw model_error(errc::invalid_blc, "window-offset condition and max f <= min g condition both fail");
  }
  const auto lo = lower_envelope(f, u, p);
  const auto hi = upper_envelope(g, u, p);
  auto x = inertial_witness(lo, hi, a, false, budget.max_nodes);
  if (!x || !pointwise_leq(lo, *x) || !pointwise_leq(*x, hi) || !aic_contains(*x, a)) return std::nullopt;
  return x;
}

BailcSpec bailc_compose(const BailcSpec& outer, std::span<const std::pair<BoolFn, BoolFn>> inners,
                        const BlcParams& inner_params, const AicParams& inner_aic, const ComposeOptions& opts) {
  inner_aic.validate();
  outer.aic.validate();
  BailcSpec out{blc_compose(outer.blc, inners, inner_params, opts), outer.aic};
  if (!blc_valid(out.blc.f, out.blc.g, out.blc.p)) {
    throw model_error(errc::invalid_blc, "composed parameters fail both validity conditions");
  }
  if (!bailc_nonempty(out.blc.f, out.blc.g, out.blc.p, out.aic)) {
    throw model_error(errc::empty_bailc, "composed model has inputs without an inertial member");
  }
  return out;
}

std::optional<BailcSpec> as_bailc(const LimitCondition& i) {
  if (i.kind() != Kind::bailc) return std::nullopt;
  const auto m = i.params();
  return BailcSpec{{i.f(), i.g(), {param(m, "m_r"), param(m, "d_r"), param(m, "m_f"), param(m, "d_f")}},
                   {param(m, "delta_r"), param(m, "delta_f")}};
}

}  // namespace asyncmodel
