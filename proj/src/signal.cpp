#include "asyncmodel/signal.hpp"

#include <algorithm>

#include "asyncmodel/error.hpp"

namespace asyncmodel {

Signal Signal::constant(bool value) {
  Signal s;
  s.initial_ = value;
  return s;
}

Signal Signal::from_sorted(bool initial, std::span<const Transition> pieces) {
  Signal s;
  s.initial_ = initial;
  bool current = initial;
  for (const auto& p : pieces) {
    if (p.value == current) continue;
    s.transitions_.push_back(p);
    current = p.value;
  }
  return s;
}

bool Signal::at(const Rat& t) const {
  auto it = std::upper_bound(transitions_.begin(), transitions_.end(), t,
                             [](const Rat& v, const Transition& tr) { return v < tr.time; });
  return it == transitions_.begin() ? initial_ : std::prev(it)->value;
}

bool Signal::left_limit(const Rat& t) const {
  auto it = std::lower_bound(transitions_.begin(), transitions_.end(), t,
                             [](const Transition& tr, const Rat& v) { return tr.time < v; });
  return it == transitions_.begin() ? initial_ : std::prev(it)->value;
}

Signal make_signal(bool initial, std::vector<Transition> raw) {
  std::stable_sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) { return a.time < b.time; });
  for (std::size_t k = 1; k < raw.size(); ++k) {
    if (raw[k].time == raw[k - 1].time) {
      throw model_error(errc::duplicate_transition_time, "two transitions at t=" + to_string(raw[k].time));
    }
  }
  return Signal::from_sorted(initial, raw);
}

bool value_at(const Signal& x, const Rat& t) { return x.at(t); }

bool left_limit(const Signal& x, const Rat& t) { return x.left_limit(t); }

bool eventual_value(const Signal& x) { return x.eventual(); }

Edges edges(const Signal& x) {
  Edges e;
  for (const auto& tr : x.transitions()) (tr.value ? e.rising : e.falling).push_back(tr.time);
  return e;
}

std::vector<Rat> breakpoints(const Signal& x) {
  std::vector<Rat> out;
  out.reserve(x.transitions().size());
  for (const auto& tr : x.transitions()) out.push_back(tr.time);
  return out;
}

std::vector<Rat> breakpoints(std::span<const Signal> xs) {
  std::vector<Rat> out;
  for (const auto& x : xs)
    for (const auto& tr : x.transitions()) out.push_back(tr.time);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

bool combine(BitOp op, bool a, bool b) {
  switch (op) {
    case BitOp::negate: return !a;
    case BitOp::conj: return a && b;
    case BitOp::disj: return a || b;
    case BitOp::exclusive: return a != b;
  }
  return false;
}

}  // namespace

Signal pointwise(BitOp op, const Signal& x, const Signal& y) {
  if (op == BitOp::negate) return pointwise(op, x);
  const auto xt = x.transitions();
  const auto yt = y.transitions();
  std::vector<Transition> pieces;
  pieces.reserve(xt.size() + yt.size());
  bool a = x.initial();
  bool b = y.initial();
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < xt.size() || j < yt.size()) {
    Rat t;
    if (j == yt.size() || (i < xt.size() && xt[i].time <= yt[j].time)) {
      t = xt[i].time;
    } else {
      t = yt[j].time;
    }
    if (i < xt.size() && xt[i].time == t) a = xt[i++].value;
    if (j < yt.size() && yt[j].time == t) b = yt[j++].value;
    pieces.push_back({t, combine(op, a, b)});
  }
  return Signal::from_sorted(combine(op, x.initial(), y.initial()), pieces);
}

Signal pointwise(BitOp op, const Signal& x) {
  if (op != BitOp::negate) return pointwise(op, x, x);
  std::vector<Transition> pieces(x.transitions().begin(), x.transitions().end());
  for (auto& p : pieces) p.value = !p.value;
  return Signal::from_sorted(!x.initial(), pieces);
}

Signal operator~(const Signal& x) { return pointwise(BitOp::negate, x); }
Signal operator&(const Signal& x, const Signal& y) { return pointwise(BitOp::conj, x, y); }
Signal operator|(const Signal& x, const Signal& y) { return pointwise(BitOp::disj, x, y); }
Signal operator^(const Signal& x, const Signal& y) { return pointwise(BitOp::exclusive, x, y); }

Signal translate(const Signal& x, const Rat& d) {
  std::vector<Transition> pieces(x.transitions().begin(), x.transitions().end());
  for (auto& p : pieces) p.time += d;
  return Signal::from_sorted(x.initial(), pieces);
}

MultiSignal translate(const MultiSignal& u, const Rat& d) {
  MultiSignal out;
  out.reserve(u.size());
  for (const auto& x : u) out.push_back(translate(x, d));
  return out;
}

std::vector<Interval> ones(const Signal& x) {
  std::vector<Interval> out;
  std::optional<Interval> open;
  if (x.initial()) open = Interval{std::nullopt, std::nullopt};
  for (const auto& tr : x.transitions()) {
    if (tr.value) {
      open = Interval{tr.time, std::nullopt};
    } else {
      open->hi = tr.time;
      out.push_back(*open);
      open.reset();
    }
  }
  if (open) out.push_back(*open);
  return out;
}

namespace {

// Lower bounds compare with -inf smallest; upper bounds with +inf largest.
bool lo_less(const std::optional<Rat>& a, const std::optional<Rat>& b) {
  if (!a) return b.has_value();
  return b && *a < *b;
}

// True when the interval starting at `lo` begins at or before `hi` ends,
// i.e. the two half-open pieces overlap or touch.
bool starts_by(const std::optional<Rat>& lo, const std::optional<Rat>& hi) {
  if (!lo || !hi) return true;
  return *lo <= *hi;
}

std::optional<Rat> hi_max(const std::optional<Rat>& a, const std::optional<Rat>& b) {
  if (!a || !b) return std::nullopt;
  return std::max(*a, *b);
}

}  // namespace

Signal from_ones(const std::vector<Interval>& intervals) {
  std::vector<Interval> sorted;
  for (const auto& iv : intervals) {
    if (iv.lo && iv.hi && *iv.hi <= *iv.lo) continue;
    sorted.push_back(iv);
  }
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return lo_less(a.lo, b.lo); });
  std::vector<Interval> merged;
  for (const auto& iv : sorted) {
    if (!merged.empty() && starts_by(iv.lo, merged.back().hi)) {
      merged.back().hi = hi_max(merged.back().hi, iv.hi);
    } else {
      merged.push_back(iv);
    }
  }
  bool initial = false;
  std::vector<Transition> pieces;
  for (const auto& iv : merged) {
    if (iv.lo) {
      pieces.push_back({*iv.lo, true});
    } else {
      initial = true;
    }
    if (iv.hi) pieces.push_back({*iv.hi, false});
  }
  return Signal::from_sorted(initial, pieces);
}

namespace {

void check_window(const Rat& d, const Rat& m) {
  if (m < 0 || m > d) {
    throw model_error(errc::invalid_window, "window needs 0 <= m <= d, got m=" + to_string(m) + ", d=" + to_string(d));
  }
}

}  // namespace

Signal window_all(const Signal& x, const Rat& d, const Rat& m) {
  check_window(d, m);
  // [t-d, t-d+m] fits inside [a, b) iff t in [a+d, b+d-m).
  std::vector<Interval> out;
  for (const auto& iv : ones(x)) {
    Interval shifted{iv.lo ? std::optional<Rat>(*iv.lo + d) : std::nullopt,
                     iv.hi ? std::optional<Rat>(*iv.hi + d - m) : std::nullopt};
    out.push_back(shifted);
  }
  return from_ones(out);
}

Signal window_any(const Signal& x, const Rat& d, const Rat& m) {
  check_window(d, m);
  // [t-d, t-d+m] meets [a, b) iff t in [a+d-m, b+d).
  std::vector<Interval> out;
  for (const auto& iv : ones(x)) {
    Interval shifted{iv.lo ? std::optional<Rat>(*iv.lo + d - m) : std::nullopt,
                     iv.hi ? std::optional<Rat>(*iv.hi + d) : std::nullopt};
    out.push_back(shifted);
  }
  return from_ones(out);
}

Signal apply_fn(const BoolFn& f, const MultiSignal& u) {
  if (static_cast<int>(u.size()) != f.arity()) {
    throw model_error(errc::arity_mismatch, "function of arity " + std::to_string(f.arity()) + " applied to " +
                                                std::to_string(u.size()) + " signals");
  }
  const int m = f.arity();
  std::uint32_t row = 0;
  for (int p = 0; p < m; ++p) row = (row << 1) | (u[p].initial() ? 1u : 0u);
  const bool initial = f.at(row);

  // Event list (time, coordinate, value), merged over coordinates.
  struct Event {
    Rat time;
    int coord;
    bool value;
  };
  std::vector<Event> events;
  for (int p = 0; p < m; ++p)
    for (const auto& tr : u[p].transitions()) events.push_back({tr.time, p, tr.value});
  std::sort(events.begin(), events.end(), [](const auto& a, const auto& b) { return a.time < b.time; });

  std::vector<Transition> pieces;
  for (std::size_t k = 0; k < events.size();) {
    const Rat t = events[k].time;
    for (; k < events.size() && events[k].time == t; ++k) {
      const auto bit = 1u << (m - 1 - events[k].coord);
      row = events[k].value ? (row | bit) : (row & ~bit);
    }
    pieces.push_back({t, f.at(row)});
  }
  return Signal::from_sorted(initial, pieces);
}

std::pair<Signal, Signal> apply_fn_range(const BoolFn& f, const MultiSignal& lo, const MultiSignal& hi) {
  const int m = f.arity();
  if (static_cast<int>(lo.size()) != m || static_cast<int>(hi.size()) != m) {
    throw model_error(errc::arity_mismatch, "function of arity " + std::to_string(m) + " applied to a range of " +
                                                std::to_string(lo.size()) + " and " + std::to_string(hi.size()) +
                                                " signals");
  }
  auto row_at = [&](const MultiSignal& u, const std::optional<Rat>& t) {
    std::uint32_t row = 0;
    for (int p = 0; p < m; ++p) row = (row << 1) | ((t ? u[p].at(*t) : u[p].initial()) ? 1u : 0u);
    return row;
  };
  auto range_at = [&](const std::optional<Rat>& t) {
    const auto a = row_at(lo, t);
    const auto b = row_at(hi, t);
    const auto free = b & ~a;
    bool mn = true;
    bool mx = false;
    // Enumerate the rows between a and b as a | (subsets of the free bits).
    for (std::uint32_t sub = free;; sub = (sub - 1) & free) {
      const bool v = f.at(a | sub);
      mn = mn && v;
      mx = mx || v;
      if (sub == 0) break;
    }
    return std::pair<bool, bool>{mn, mx};
  };
  std::vector<Signal> all(lo.begin(), lo.end());
  all.insert(all.end(), hi.begin(), hi.end());
  const auto [min0, max0] = range_at(std::nullopt);
  std::vector<Transition> mins;
  std::vector<Transition> maxs;
  for (const auto& t : breakpoints(all)) {
    const auto [mn, mx] = range_at(t);
    mins.push_back({t, mn});
    maxs.push_back({t, mx});
  }
  return {Signal::from_sorted(min0, mins), Signal::from_sorted(max0, maxs)};
}

Signal charfn(std::vector<std::pair<Rat, Rat>> pieces) {
  std::vector<std::pair<Rat, Rat>> kept;
  for (const auto& [a, b] : pieces) {
    if (b < a) {
      throw model_error(errc::precondition_violated, "interval [" + to_string(a) + ", " + to_string(b) + ") is reversed");
    }
    if (a < b) kept.emplace_back(a, b);
  }
  std::sort(kept.begin(), kept.end());
  for (std::size_t k = 1; k < kept.size(); ++k) {
    if (kept[k].first < kept[k - 1].second) {
      throw model_error(errc::overlapping_intervals, "[" + to_string(kept[k - 1].first) + ", " +
                                                         to_string(kept[k - 1].second) + ") overlaps [" +
                                                         to_string(kept[k].first) + ", " + to_string(kept[k].second) +
                                                         ")");
    }
  }
  std::vector<Interval> ivs;
  for (const auto& [a, b] : kept) ivs.push_back({a, b});
  return from_ones(ivs);
}

std::optional<Violation> first_violation_leq(const Signal& x, const Signal& y) {
  if (x.initial() && !y.initial()) return Violation{std::nullopt};
  const auto diff = x & ~y;
  if (diff.is_constant()) {
    if (diff.initial()) return Violation{std::nullopt};
    return std::nullopt;
  }
  if (diff.initial()) return Violation{std::nullopt};
  return Violation{diff.transitions().front().time};
}

bool pointwise_leq(const Signal& x, const Signal& y) { return !first_violation_leq(x, y).has_value(); }

bool is_canonical(bool initial, std::span<const Transition> transitions) {
  bool current = initial;
  for (std::size_t k = 0; k < transitions.size(); ++k) {
    if (k > 0 && !(transitions[k - 1].time < transitions[k].time)) return false;
    if (transitions[k].value == current) return false;
    current = transitions[k].value;
  }
  return true;
}

}  // namespace asyncmodel
