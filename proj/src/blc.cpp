#include "asyncmodel/blc.hpp"

#include <random>

#include "asyncmodel/error.hpp"
#include "sampling.hpp"

namespace asyncmodel {

void BlcParams::validate() const {
  if (m_r < 0 || m_r > d_r || m_f < 0 || m_f > d_f) {
    throw model_error(errc::invalid_window, "need 0 <= m_r <= d_r and 0 <= m_f <= d_f, got (" + to_string(m_r) +
                                                ", " + to_string(d_r) + ", " + to_string(m_f) + ", " +
                                                to_string(d_f) + ")");
  }
}

BlcParams operator+(const BlcParams& a, const BlcParams& b) {
  return {a.m_r + b.m_r, a.d_r + b.d_r, a.m_f + b.m_f, a.d_f + b.d_f};
}

Signal lower_envelope(const BoolFn& f, const MultiSignal& u, const BlcParams& p) {
  return window_all(apply_fn(f, u), p.d_r, p.m_r);
}

Signal upper_envelope(const BoolFn& g, const MultiSignal& u, const BlcParams& p) {
  return window_any(apply_fn(g, u), p.d_f, p.m_f);
}

namespace {

bool windows_overlap(const BlcParams& p) { return p.d_r - p.m_r <= p.d_f && p.d_f - p.m_f <= p.d_r; }

void require_leq(const BoolFn& f, const BoolFn& g) {
  if (f.arity() != g.arity()) throw model_error(errc::arity_mismatch, "f and g have different arities");
  if (!fn_leq(f, g)) {
    throw model_error(errc::precondition_violated, "f <= g fails for f=" + f.bits() + ", g=" + g.bits());
  }
}

void require_valid(const BoolFn& f, const BoolFn& g, const BlcParams& p) {
  if (!blc_valid(f, g, p)) {
    throw model_error(errc::invalid_blc, "window-offset condition and max f <= min g condition both fail");
  }
}

std::map<std::string, Rat> param_map(const BlcParams& p) {
  return {{"m_r", p.m_r}, {"d_r", p.d_r}, {"m_f", p.m_f}, {"d_f", p.d_f}};
}

class BlcModel final : public detail::Model {
 public:
  BlcModel(BoolFn f, BoolFn g, BlcParams p) : Model(Kind::blc, f.arity(), f, g), p_(p) {}

  Membership decide(const MultiSignal& u, const Signal& x) const override {
    const bool ok = pointwise_leq(lower_envelope(f(), u, p_), x) && pointwise_leq(x, upper_envelope(g(), u, p_));
    return ok ? Membership::yes : Membership::no;
  }

  std::vector<Signal> sample(const MultiSignal& u, std::size_t count, std::uint64_t seed) const override {
    const auto lo = lower_envelope(f(), u, p_);
    const auto hi = upper_envelope(g(), u, p_);
    std::vector<Signal> out;
    detail::push_unique(out, lo);
    if (out.size() < count) detail::push_unique(out, hi);
    const auto anchors = breakpoints(std::vector<Signal>{lo, hi});
    auto rng = std::mt19937_64(detail::mix_seed(seed, 7));
    for (std::size_t k = 0; out.size() < count && k < 4 * count; ++k)
      detail::push_unique(out, lo | (detail::random_signal_near(rng, anchors, 8) & hi));
    return out;
  }

  std::optional<Envelope> envelope(const MultiSignal& u) const override {
    return Envelope{lower_envelope(f(), u, p_), upper_envelope(g(), u, p_)};
  }

  std::vector<Rat> offsets() const override { return {p_.d_r, p_.d_r - p_.m_r, p_.d_f, p_.d_f - p_.m_f}; }

  std::optional<std::string> explain(const MultiSignal& u, const Signal& x) const override {
    if (decide(u, x) == Membership::yes) return std::nullopt;
    const auto t = envelope_violation(*envelope(u), u, x);
    return "outside the envelopes at t=" + (t ? to_string(*t) : std::string("?"));
  }

  bool may_contain(const MultiSignal& u_lo, const MultiSignal& u_hi, const Signal& x_lo,
                   const Signal& x_hi) const override {
    const auto [l, u] = envelope_range(f(), g(), p_, u_lo, u_hi, x_lo, x_hi);
    return pointwise_leq(l, u);
  }

  bool known_deterministic() const override { return blc_is_deterministic(f(), g(), p_).deterministic; }
  std::map<std::string, Rat> params() const override { return param_map(p_); }

 private:
  BlcParams p_;
};

Rat param(const std::map<std::string, Rat>& m, const char* key) {
  auto it = m.find(key);
  return it == m.end() ? Rat(0) : it->second;
}

}  // namespace

std::pair<Signal, Signal> envelope_range(const BoolFn& f, const BoolFn& g, const BlcParams& p, const MultiSignal& u_lo,
                                         const MultiSignal& u_hi, const Signal& x_lo, const Signal& x_hi) {
  const auto fmin = apply_fn_range(f, u_lo, u_hi).first;
  const auto gmax = apply_fn_range(g, u_lo, u_hi).second;
  return {window_all(fmin, p.d_r, p.m_r) | x_lo, window_any(gmax, p.d_f, p.m_f) & x_hi};
}

bool blc_valid(const BoolFn& f, const BoolFn& g, const BlcParams& p) {
  p.validate();
  require_leq(f, g);
  return windows_overlap(p) || f.max_value() <= g.min_value();
}

LimitCondition blc(const BoolFn& f, const BoolFn& g, const BlcParams& p) {
  require_valid(f, g, p);
  return LimitCondition(std::make_shared<BlcModel>(f, g, p));
}

Determinism blc_is_deterministic(const BoolFn& f, const BoolFn& g, const BlcParams& p) {
  require_valid(f, g, p);
  if (f != g) return {};
  if (f.is_constant()) return {true, std::nullopt};
  if (p.m_r == Rat(0) && p.m_f == Rat(0)) return {true, p.d_r};
  return {};
}

bool blc_included(const BoolFn& f, const BoolFn& g, const BlcParams& p, const BoolFn& f2, const BoolFn& g2,
                  const BlcParams& p2) {
  require_valid(f, g, p);
  require_valid(f2, g2, p2);
  if (!fn_leq(f2, f) || !fn_leq(g, g2)) return false;
  const bool rise = f2.max_value() <= f.min_value() || (p2.d_r - p2.m_r <= p.d_r - p.m_r && p.d_r <= p2.d_r);
  const bool fall = g.max_value() <= g2.min_value() || (p2.d_f - p2.m_f <= p.d_f - p.m_f && p.d_f <= p2.d_f);
  return rise && fall;
}

bool blc_symmetric_usual(const BoolFn& f, const BoolFn& g, const BlcParams& p) {
  require_valid(f, g, p);
  return is_permutation_invariant(f) && is_permutation_invariant(g);
}

bool blc_symmetric_rf(const BoolFn& f, const BoolFn& g, const BlcParams& p) {
  require_valid(f, g, p);
  return p.d_r == p.d_f && p.m_r == p.m_f && is_rf_dual(f, g);
}

bool distributes_over_windows(const BoolFn& f, const BoolFn& g, const BlcParams& p, const ComposeOptions& opts) {
  const int m = f.arity();
  if (f == BoolFn::and_n(m) && g == BoolFn::or_n(m)) return true;
  std::vector<Rat> anchors;
  for (int k = -1; k <= 4; ++k) anchors.emplace_back(k);
  for (const auto& o : {p.m_r, p.d_r, p.m_f, p.d_f}) anchors.push_back(o);
  auto rng = std::mt19937_64(opts.seed);
  for (std::size_t c = 0; c < opts.cases; ++c) {
    MultiSignal u;
    for (int q = 0; q < m; ++q) u.push_back(detail::random_signal_near(rng, anchors, 6));
    MultiSignal all;
    MultiSignal any;
    for (const auto& s : u) {
      all.push_back(window_all(s, p.d_r, p.m_r));
      any.push_back(window_any(s, p.d_f, p.m_f));
    }
    if (apply_fn(f, all) != window_all(apply_fn(f, u), p.d_r, p.m_r)) return false;
    if (apply_fn(g, any) != window_any(apply_fn(g, u), p.d_f, p.m_f)) return false;
  }
  return true;
}

BlcSpec blc_compose(const BlcSpec& outer, std::span<const std::pair<BoolFn, BoolFn>> inners,
                    const BlcParams& inner_params, const ComposeOptions& opts) {
  if (static_cast<int>(inners.size()) != outer.f.arity()) {
    throw model_error(errc::arity_mismatch, "outer model of arity " + std::to_string(outer.f.arity()) +
                                                " given " + std::to_string(inners.size()) + " inner models");
  }
  inner_params.validate();
  if (!is_monotone(outer.f) || !is_monotone(outer.g)) {
    throw model_error(errc::monotony_violated, "outer f=" + outer.f.bits() + ", g=" + outer.g.bits() +
                                                   " must both be monotone");
  }
  if (!distributes_over_windows(outer.f, outer.g, outer.p, opts)) {
    throw model_error(errc::distributivity_unverified,
                      "outer functions do not commute with the windows on a sampled input");
  }
  std::vector<BoolFn> fs;
  std::vector<BoolFn> gs;
  for (const auto& [fq, gq] : inners) {
    fs.push_back(fq);
    gs.push_back(gq);
  }
  BlcSpec out{fn_compose(outer.f, fs), fn_compose(outer.g, gs), outer.p + inner_params};
  if (!fn_leq(out.f, out.g)) {
    throw model_error(errc::hypothesis_violated, "composed f <= composed g fails");
  }
  return out;
}

std::optional<BlcSpec> as_blc(const LimitCondition& i) {
  if (i.kind() != Kind::blc) return std::nullopt;
  const auto m = i.params();
  return BlcSpec{i.f(), i.g(), {param(m, "m_r"), param(m, "d_r"), param(m, "m_f"), param(m, "d_f")}};
}

}  // namespace asyncmodel
