#include "oracle.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace oracle {

namespace {

// Time t is tick t * scale. Every breakpoint and offset lands on a tick, and
// scale = 2 * lcm keeps a tick between any two neighbouring breakpoints.
struct Ticks {
  std::int64_t scale;

  std::int64_t of(const Rat& t) const {
    const Rat s = t * Rat(scale);
    return s.numerator();
  }
};

// Reads a signal at non-decreasing ticks in amortised constant time.
class Sweep {
 public:
  Sweep(const Signal& x, const Ticks& ticks) : value_(x.initial()) {
    for (const auto& tr : x.transitions()) edges_.emplace_back(ticks.of(tr.time), tr.value);
  }

  bool at(std::int64_t j) {
    while (next_ < edges_.size() && edges_[next_].first <= j) value_ = edges_[next_++].second;
    return value_;
  }

 private:
  std::vector<std::pair<std::int64_t, bool>> edges_;
  std::size_t next_ = 0;
  bool value_;
};

// f(u) read tick by tick.
class FnSweep {
 public:
  FnSweep(const BoolFn& f, const MultiSignal& u, const Ticks& ticks) : f_(f), args_(u.size()) {
    for (const auto& s : u) sweeps_.emplace_back(s, ticks);
  }

  bool at(std::int64_t j) {
    for (std::size_t p = 0; p < sweeps_.size(); ++p) args_[p] = sweeps_[p].at(j);
    return f_(args_);
  }

 private:
  const BoolFn& f_;
  std::vector<Sweep> sweeps_;
  std::vector<bool> args_;
};

// Tracks the closed window [i - d, i - d + m] of a sampled source as i advances
// one tick at a time, remembering the last tick holding each value.
template <class Source>
class Window {
 public:
  Window(Source src, std::int64_t d, std::int64_t m, std::int64_t start)
      : src_(std::move(src)), d_(d), m_(m), read_(start - d - 1) {}

  /// Returns {all ones, any one} over the window for output tick i.
  std::pair<bool, bool> at(std::int64_t i) {
    const std::int64_t hi = i - d_ + m_;
    while (read_ < hi) {
      ++read_;
      (src_.at(read_) ? last_one_ : last_zero_) = read_;
    }
    const std::int64_t lo = i - d_;
    return {!(last_zero_ && *last_zero_ >= lo), last_one_ && *last_one_ >= lo};
  }

 private:
  Source src_;
  std::int64_t d_;
  std::int64_t m_;
  std::int64_t read_;
  std::optional<std::int64_t> last_zero_;
  std::optional<std::int64_t> last_one_;
};

struct Range {
  std::int64_t lo;
  std::int64_t hi;
};

// Covers every breakpoint of xs widened by `margin` plus one unit on each side.
Range range_of(const std::vector<Signal>& xs, const Rat& margin, const Ticks& ticks) {
  std::optional<Rat> lo;
  std::optional<Rat> hi;
  for (const auto& x : xs) {
    for (const auto& tr : x.transitions()) {
      if (!lo || tr.time < *lo) lo = tr.time;
      if (!hi || tr.time > *hi) hi = tr.time;
    }
  }
  return {ticks.of(lo.value_or(Rat(0)) - margin - Rat(1)), ticks.of(hi.value_or(Rat(0)) + margin + Rat(1))};
}

Ticks ticks_for(const std::vector<Signal>& xs, const std::vector<Rat>& extra) {
  return {2 * common_denominator(xs, extra)};
}

std::vector<Signal> with(const MultiSignal& u, const Signal& y) {
  std::vector<Signal> all(u.begin(), u.end());
  all.push_back(y);
  return all;
}

Rat time_of(std::int64_t j, const Ticks& ticks) { return Rat(j, ticks.scale); }

template <class Source>
std::optional<Rat> window_mismatch(Source src, const std::vector<Signal>& all, const Rat& d, const Rat& m,
                                   const Signal& y, bool use_all, const Ticks& ticks) {
  const auto r = range_of(all, d, ticks);
  Window<Source> w(std::move(src), ticks.of(d), ticks.of(m), r.lo);
  Sweep ys(y, ticks);
  for (std::int64_t i = r.lo; i <= r.hi; ++i) {
    const auto [every, some] = w.at(i);
    if (ys.at(i) != (use_all ? every : some)) return time_of(i, ticks);
  }
  return std::nullopt;
}

}  // namespace

std::int64_t common_denominator(const std::vector<Signal>& xs, const std::vector<Rat>& extra) {
  std::int64_t l = 1;
  for (const auto& x : xs) {
    for (const auto& tr : x.transitions()) l = std::lcm(l, tr.time.denominator());
  }
  for (const auto& r : extra) l = std::lcm(l, r.denominator());
  return l;
}

std::vector<Rat> grid(const Rat& lo, const Rat& hi, const Rat& h) {
  std::vector<Rat> out;
  for (Rat t = lo; t <= hi; t += h) out.push_back(t);
  return out;
}

Rat step(const std::vector<Signal>& xs, const std::vector<Rat>& extra) {
  return Rat(1, 2 * common_denominator(xs, extra));
}

bool all_ones(const Signal& x, const Rat& lo, const Rat& hi, const Rat& h) {
  for (Rat t = lo; t <= hi; t += h) {
    if (!x.at(t)) return false;
  }
  return true;
}

bool any_one(const Signal& x, const Rat& lo, const Rat& hi, const Rat& h) {
  for (Rat t = lo; t <= hi; t += h) {
    if (x.at(t)) return true;
  }
  return false;
}

bool fn_at(const BoolFn& f, const MultiSignal& u, const Rat& t) {
  std::vector<bool> args;
  args.reserve(u.size());
  for (const auto& s : u) args.push_back(s.at(t));
  return f(args);
}

bool window_all_at(const Signal& x, const Rat& d, const Rat& m, const Rat& t, const Rat& h) {
  return all_ones(x, t - d, t - d + m, h);
}

bool window_any_at(const Signal& x, const Rat& d, const Rat& m, const Rat& t, const Rat& h) {
  return any_one(x, t - d, t - d + m, h);
}

bool lower_at(const BoolFn& f, const MultiSignal& u, const BlcParams& p, const Rat& t, const Rat& h) {
  for (Rat s = t - p.d_r; s <= t - p.d_r + p.m_r; s += h) {
    if (!fn_at(f, u, s)) return false;
  }
  return true;
}

bool upper_at(const BoolFn& g, const MultiSignal& u, const BlcParams& p, const Rat& t, const Rat& h) {
  for (Rat s = t - p.d_f; s <= t - p.d_f + p.m_f; s += h) {
    if (fn_at(g, u, s)) return true;
  }
  return false;
}

std::optional<Rat> window_all_mismatch(const Signal& x, const Rat& d, const Rat& m, const Signal& y) {
  const std::vector<Signal> all{x, y};
  const auto ticks = ticks_for(all, {d, m});
  return window_mismatch(Sweep(x, ticks), all, d, m, y, true, ticks);
}

std::optional<Rat> window_any_mismatch(const Signal& x, const Rat& d, const Rat& m, const Signal& y) {
  const std::vector<Signal> all{x, y};
  const auto ticks = ticks_for(all, {d, m});
  return window_mismatch(Sweep(x, ticks), all, d, m, y, false, ticks);
}

std::optional<Rat> lower_envelope_mismatch(const BoolFn& f, const MultiSignal& u, const BlcParams& p,
                                           const Signal& y) {
  const auto all = with(u, y);
  const auto ticks = ticks_for(all, {p.d_r, p.m_r});
  return window_mismatch(FnSweep(f, u, ticks), all, p.d_r, p.m_r, y, true, ticks);
}

std::optional<Rat> upper_envelope_mismatch(const BoolFn& g, const MultiSignal& u, const BlcParams& p,
                                           const Signal& y) {
  const auto all = with(u, y);
  const auto ticks = ticks_for(all, {p.d_f, p.m_f});
  return window_mismatch(FnSweep(g, u, ticks), all, p.d_f, p.m_f, y, false, ticks);
}

bool aic_holds(const Signal& x, const AicParams& a) {
  const auto ticks = ticks_for({x}, {a.delta_r, a.delta_f});
  const auto r = range_of({x}, std::max(a.delta_r, a.delta_f), ticks);
  const std::int64_t hold_r = ticks.of(a.delta_r);
  const std::int64_t hold_f = ticks.of(a.delta_f);
  Sweep xs(x, ticks);
  // Ticks up to which the signal must keep its current value.
  std::optional<std::int64_t> keep_until;
  bool before = xs.at(r.lo);
  for (std::int64_t i = r.lo + 1; i <= r.hi; ++i) {
    const bool now = xs.at(i);
    if (now != before) {
      if (keep_until && i <= *keep_until) return false;
      keep_until = i + (now ? hold_r : hold_f);
    }
    before = now;
  }
  return true;
}

bool blc_member(const BoolFn& f, const BoolFn& g, const BlcParams& p, const MultiSignal& u, const Signal& x) {
  const auto all = with(u, x);
  const auto ticks = ticks_for(all, {p.d_r, p.m_r, p.d_f, p.m_f});
  const auto r = range_of(all, std::max(p.d_r, p.d_f), ticks);
  Window<FnSweep> lower(FnSweep(f, u, ticks), ticks.of(p.d_r), ticks.of(p.m_r), r.lo);
  Window<FnSweep> upper(FnSweep(g, u, ticks), ticks.of(p.d_f), ticks.of(p.m_f), r.lo);
  Sweep xs(x, ticks);
  for (std::int64_t i = r.lo; i <= r.hi; ++i) {
    const bool v = xs.at(i);
    if (!v && lower.at(i).first) return false;
    if (v && !upper.at(i).second) return false;
  }
  return true;
}

}  // namespace oracle
