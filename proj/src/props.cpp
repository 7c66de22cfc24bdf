#include "asyncmodel/props.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "asyncmodel/error.hpp"
#include "sampling.hpp"

namespace asyncmodel {

void GenConfig::validate() const {
  if (cases < 1 || max_arity < 1 || max_arity > 4 || max_denominator < 1 || max_denominator > 16 ||
      max_transitions < 0 || max_transitions > 20) {
    throw model_error(errc::precondition_violated, "generator limits: cases >= 1, arity 1..4, denominators 1..16, "
                                                   "transitions 0..20");
  }
}

Gen::Gen(const GenConfig& cfg, std::uint64_t seed) : cfg_(cfg), rng_(seed) { cfg_.validate(); }

int Gen::uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

bool Gen::coin(double p) { return std::bernoulli_distribution(p)(rng_); }

Rat Gen::time() {
  const int q = uniform(1, cfg_.max_denominator);
  return Rat(uniform(-4 * q, 12 * q), q);
}

Rat Gen::duration(int hi) {
  const int q = uniform(1, cfg_.max_denominator);
  return Rat(uniform(0, hi * q), q);
}

Signal Gen::signal(int max_transitions) {
  const int k = uniform(0, std::max(0, max_transitions));
  std::vector<Rat> times;
  for (int tries = 0; static_cast<int>(times.size()) < k && tries < 8 * k; ++tries) {
    const auto t = time();
    if (std::find(times.begin(), times.end(), t) == times.end()) times.push_back(t);
  }
  std::sort(times.begin(), times.end());
  bool value = coin();
  const bool initial = value;
  std::vector<Transition> pieces;
  for (const auto& t : times) {
    value = !value;
    pieces.push_back({t, value});
  }
  return Signal::from_sorted(initial, pieces);
}

MultiSignal Gen::multisignal(int m, int max_transitions) {
  MultiSignal u;
  for (int p = 0; p < m; ++p) u.push_back(signal(max_transitions));
  return u;
}

int Gen::arity() { return uniform(1, cfg_.max_arity); }

BoolFn Gen::boolfn(int m) {
  std::vector<bool> table(std::size_t{1} << m);
  for (std::size_t r = 0; r < table.size(); ++r) table[r] = coin();
  return BoolFn(m, std::move(table));
}

std::pair<BoolFn, BoolFn> Gen::boolfn_pair_leq(int m) {
  const auto g = boolfn(m);
  const auto mask = boolfn(m);
  std::vector<bool> f(g.size());
  for (std::uint32_t r = 0; r < g.size(); ++r) f[r] = g.at(r) && mask.at(r);
  return {BoolFn(m, std::move(f)), g};
}

BlcParams Gen::blc_params() {
  const int q = uniform(1, cfg_.max_denominator);
  const int dr = uniform(0, 4 * q);
  const int df = uniform(0, 4 * q);
  return {Rat(uniform(0, dr), q), Rat(dr, q), Rat(uniform(0, df), q), Rat(df, q)};
}

BlcParams Gen::overlapping_params() {
  for (int tries = 0; tries < 64; ++tries) {
    auto p = blc_params();
    if (p.d_r - p.m_r <= p.d_f && p.d_f - p.m_f <= p.d_r) return p;
  }
  auto p = blc_params();
  p.m_f = p.m_r;
  p.d_f = p.d_r;
  return p;
}

AicParams Gen::aic_params() { return {duration(2), duration(2)}; }

Signal gen_signal(const GenConfig& cfg) { return Gen(cfg, cfg.seed).signal(); }
MultiSignal gen_multisignal(const GenConfig& cfg, int m) { return Gen(cfg, cfg.seed).multisignal(m); }
BoolFn gen_boolfn(const GenConfig& cfg, int m) { return Gen(cfg, cfg.seed).boolfn(m); }
std::pair<BoolFn, BoolFn> gen_boolfn_pair_leq(const GenConfig& cfg, int m) {
  return Gen(cfg, cfg.seed).boolfn_pair_leq(m);
}
BlcParams gen_blc_params(const GenConfig& cfg) { return Gen(cfg, cfg.seed).blc_params(); }

json blc_params_to_json(const BlcParams& p) {
  return {{"m_r", to_string(p.m_r)}, {"d_r", to_string(p.d_r)}, {"m_f", to_string(p.m_f)}, {"d_f", to_string(p.d_f)}};
}

namespace {

Rat rat(const json& j) { return parse_rat(j.get<std::string>()); }

}  // namespace

BlcParams blc_params_from_json(const json& j) {
  return {rat(j.at("m_r")), rat(j.at("d_r")), rat(j.at("m_f")), rat(j.at("d_f"))};
}

json multisignal_to_json(const MultiSignal& u) {
  json out = json::array();
  for (const auto& s : u) out.push_back(signal_to_json(s));
  return out;
}

MultiSignal multisignal_from_json(const json& j) {
  MultiSignal u;
  for (const auto& s : j) u.push_back(signal_from_json(s));
  return u;
}

std::vector<MultiSignal> constant_probes(int m) {
  std::vector<MultiSignal> out;
  for (std::uint32_t row = 0; row < (1u << m); ++row) {
    MultiSignal u;
    for (bool bit : args_of(row, m)) u.push_back(Signal::constant(bit));
    out.push_back(std::move(u));
  }
  return out;
}

MultiSignal pulse_input(std::uint32_t a, std::uint32_t b, int m, const Rat& start, const Rat& width) {
  const auto av = args_of(a, m);
  const auto bv = args_of(b, m);
  MultiSignal u;
  for (int p = 0; p < m; ++p) {
    if (av[p] == bv[p]) {
      u.push_back(Signal::constant(bv[p]));
    } else {
      auto pulse = charfn({{start, start + width}});
      u.push_back(av[p] ? pulse : ~pulse);
    }
  }
  return u;
}

MultiSignal pulse_train(std::uint32_t a, std::uint32_t b, int m, const Rat& high, const Rat& low, int periods) {
  const auto av = args_of(a, m);
  const auto bv = args_of(b, m);
  const Rat period = high + low;
  MultiSignal u;
  for (int p = 0; p < m; ++p) {
    std::vector<Transition> raw;
    for (int k = 0; k < periods; ++k) {
      raw.push_back({period * k, av[p]});
      raw.push_back({period * k + high, bv[p]});
    }
    u.push_back(make_signal(bv[p], std::move(raw)));
  }
  return u;
}

namespace {

using detail::mix_seed;

json fnj(const BoolFn& f) { return fn_to_json(f); }
BoolFn fn(const json& j) { return fn_from_json(j); }
json sigj(const Signal& x) { return signal_to_json(x); }
Signal sig(const json& j) { return signal_from_json(j); }
json ratj(const Rat& r) { return to_string(r); }
json aicj(const AicParams& a) { return {{"delta_r", to_string(a.delta_r)}, {"delta_f", to_string(a.delta_f)}}; }
AicParams aic(const json& j) { return {rat(j.at("delta_r")), rat(j.at("delta_f"))}; }

std::string show(const Signal& x) { return signal_to_json(x).dump(); }

bool canonical(const Signal& x) { return is_canonical(x.initial(), x.transitions()); }

/// A negative answer that is not a budget artefact.
bool refuted(Membership m) { return m == Membership::no; }

std::optional<std::string> fail(const std::string& msg) { return msg; }


// Rows a with f(a) = value.
std::vector<std::uint32_t> rows_where(const BoolFn& f, bool value) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t r = 0; r < f.size(); ++r)
    if (f.at(r) == value) out.push_back(r);
  return out;
}

std::pair<BoolFn, BoolFn> gen_valid_pair(Gen& gen, int m) { return gen.boolfn_pair_leq(m); }

BlcParams gen_valid_params(Gen& gen, const BoolFn& f, const BoolFn& g) {
  auto p = gen.coin(0.85) ? gen.overlapping_params() : gen.blc_params();
  if (!blc_valid(f, g, p)) p = gen.overlapping_params();
  return p;
}

/// h with f <= h <= g.
BoolFn between(Gen& gen, const BoolFn& f, const BoolFn& g) {
  const auto mask = gen.boolfn(f.arity());
  std::vector<bool> h(f.size());
  for (std::uint32_t r = 0; r < f.size(); ++r) h[r] = f.at(r) || (g.at(r) && mask.at(r));
  return BoolFn(f.arity(), std::move(h));
}

// Small signals keep witness searches cheap.
MultiSignal small_input(Gen& gen, int m) { return gen.multisignal(m, 2); }

/// A query signal near the members of i(u): a member, a perturbed member, or noise.
Signal query_signal(Gen& gen, const LimitCondition& i, const MultiSignal& u) {
  const int mode = gen.uniform(0, 3);
  const auto members = i.sample(u, 4, gen.rng()());
  if (mode <= 1 && !members.empty()) return members[gen.uniform(0, static_cast<int>(members.size()) - 1)];
  if (mode == 2 && !members.empty()) {
    const auto& x = members[gen.uniform(0, static_cast<int>(members.size()) - 1)];
    if (!x.is_constant()) {
      std::vector<Transition> tr(x.transitions().begin(), x.transitions().end());
      auto& t = tr[gen.uniform(0, static_cast<int>(tr.size()) - 1)];
      t.time += Rat(gen.coin() ? 1 : -1, gen.uniform(1, 4));
      std::sort(tr.begin(), tr.end(), [](const Transition& a, const Transition& b) { return a.time < b.time; });
      std::vector<Transition> uniq;
      for (const auto& e : tr)
        if (uniq.empty() || uniq.back().time != e.time) uniq.push_back(e);
      return make_signal(x.initial(), uniq);
    }
  }
  std::vector<Rat> anchors = breakpoints(u);
  return detail::random_signal_near(gen.rng(), anchors, 4);
}

// ---- 1.9 -------------------------------------------------------------------

json gen_1_9(Gen& gen) {
  const int m = gen.arity();
  const int q = gen.uniform(1, gen.config().max_denominator);
  const int dn = gen.uniform(0, 4 * q);
  return {{"x", sigj(gen.signal())},
          {"u", multisignal_to_json(gen.multisignal(m))},
          {"f", fnj(gen.boolfn(m))},
          {"d", ratj(Rat(dn, q))},
          {"w", ratj(Rat(gen.uniform(0, dn), q))},
          {"shift", ratj(gen.time())}};
}

std::optional<std::string> check_1_9(const json& in) {
  const auto x = sig(in["x"]);
  const auto u = multisignal_from_json(in["u"]);
  const auto f = fn(in["f"]);
  const Rat d = rat(in["d"]);
  const Rat w = rat(in["w"]);
  const Rat shift = rat(in["shift"]);
  const auto all = window_all(x, d, w);
  const auto any = window_any(x, d, w);
  for (const auto& [name, y] : std::vector<std::pair<const char*, Signal>>{
           {"translate", translate(x, shift)}, {"window_all", all}, {"window_any", any}, {"apply_fn", apply_fn(f, u)}}) {
    if (!canonical(y)) return fail(std::string(name) + " returned a non-canonical signal " + show(y));
  }
  for (const auto& y : translate(u, shift))
    if (!canonical(y)) return fail("translate of a multi-signal returned " + show(y));
  for (const auto& s : {Rat(0), w}) {
    const auto shifted = translate(x, d - s);
    if (!pointwise_leq(all, shifted)) return fail("window_all exceeds the translate by " + to_string(d - s));
    if (!pointwise_leq(shifted, any)) return fail("window_any is below the translate by " + to_string(d - s));
  }
  return std::nullopt;
}

// ---- 2.4 -------------------------------------------------------------------

json gen_2_4a(Gen& gen) {
  const int m = gen.arity();
  return {{"f", fnj(gen.boolfn(m))}, {"u", multisignal_to_json(gen.multisignal(m))}, {"x", sigj(gen.signal())}};
}

std::optional<std::string> check_2_4a(const json& in) {
  const auto f = fn(in["f"]);
  const auto u = multisignal_from_json(in["u"]);
  const auto x = sig(in["x"]);
  const bool lhs = scf(f).contains(u, x);
  const bool rhs = sc().contains({apply_fn(f, u)}, x);
  if (lhs != rhs) return fail("SC_f membership " + std::to_string(lhs) + " but SC(f(u)) membership " + std::to_string(rhs));
  return std::nullopt;
}

json gen_2_4b(Gen& gen) {
  const int m = gen.arity();
  const auto u = gen.multisignal(m);
  const int p = gen.uniform(0, m - 1);
  return {{"m", m},
          {"v", sigj(gen.signal())},
          {"u", multisignal_to_json(u)},
          {"p", p},
          {"x", sigj(gen.coin() ? u[p] : gen.signal())}};
}

std::optional<std::string> check_2_4b(const json& in) {
  const int m = in["m"].get<int>();
  const auto v = sig(in["v"]);
  const auto u = multisignal_from_json(in["u"]);
  const int p = in["p"].get<int>();
  const auto x = sig(in["x"]);
  const MultiSignal copies(m, v);
  if (mc(m).contains(copies, x) != sc().contains({v}, x)) return fail("MC(v,...,v) and SC(v) disagree");
  if (sc().contains({u[p]}, x) && !mc(m).contains(u, x)) return fail("member of SC(u_p) outside MC(u)");
  return std::nullopt;
}

json gen_2_4c(Gen& gen) {
  const int m = gen.arity();
  const auto lo = BoolFn::and_n(m);
  const auto hi = BoolFn::or_n(m);
  return {{"f", fnj(between(gen, lo, hi))}, {"u", multisignal_to_json(gen.multisignal(m))}, {"x", sigj(gen.signal())}};
}

std::optional<std::string> check_2_4c(const json& in) {
  const auto f = fn(in["f"]);
  const int m = f.arity();
  if (!fn_leq(BoolFn::and_n(m), f) || !fn_leq(f, BoolFn::or_n(m))) return std::nullopt;
  const auto u = multisignal_from_json(in["u"]);
  const auto x = sig(in["x"]);
  if (scf(f).contains(u, x) && !mc(m).contains(u, x)) return fail("member of SC_f(u) outside MC(u)");
  return std::nullopt;
}

// ---- 3.4 -------------------------------------------------------------------

json gen_3_4(Gen& gen) {
  const int m = gen.arity();
  const auto [f, g] = gen_valid_pair(gen, m);
  return {{"f", fnj(f)},
          {"g", fnj(g)},
          {"p1", blc_params_to_json(gen_valid_params(gen, f, g))},
          {"p2", blc_params_to_json(gen_valid_params(gen, f, g))},
          {"u", multisignal_to_json(gen.multisignal(m, 6))},
          {"seed", gen.uniform(0, 1 << 30)}};
}

std::optional<std::string> check_3_4(const json& in) {
  const auto f = fn(in["f"]);
  const auto g = fn(in["g"]);
  const auto i = blc(f, g, blc_params_from_json(in["p1"]));
  const auto j = blc(f, g, blc_params_from_json(in["p2"]));
  const auto u = multisignal_from_json(in["u"]);
  const auto seed = in["seed"].get<std::uint64_t>();
  const auto join = lc_join(i, j);
  for (const auto& x : join.sample(u, 6, seed)) {
    if (!sol_fg_contains(f, g, u, x)) return fail("join member outside Sol_{f,g}: " + show(x));
    if (!(i.contains(u, x) || j.contains(u, x))) return fail("join member in neither operand: " + show(x));
  }
  const auto ei = *i.envelope(u);
  const auto ej = *j.envelope(u);
  const bool nonempty = pointwise_leq(ei.lower | ej.lower, ei.upper & ej.upper);
  const auto meet = lc_meet(i, j);
  try {
    for (const auto& x : meet.sample(u, 6, seed)) {
      if (!sol_fg_contains(f, g, u, x)) return fail("meet member outside Sol_{f,g}: " + show(x));
      if (!(i.contains(u, x) && j.contains(u, x))) return fail("meet member missing from an operand: " + show(x));
    }
  } catch (const model_error& e) {
    if (e.code() != errc::empty_meet) throw;
    if (nonempty) return fail("meet reported empty although the envelopes leave room");
  }
  return std::nullopt;
}

// ---- 3.5 / 4.5 ---------------------------------------------------------------

json gen_time_invariance(Gen& gen) {
  const int m = gen.arity();
  const auto [f, g] = gen_valid_pair(gen, m);
  const auto p = gen_valid_params(gen, f, g);
  const auto u = gen.multisignal(m);
  const auto i = blc(f, g, p);
  Signal x = gen.coin(0.6) ? i.sample(u, 4, gen.rng()()).back() : gen.signal();
  return {{"f", fnj(f)},
          {"g", fnj(g)},
          {"p", blc_params_to_json(p)},
          {"h", fnj(between(gen, f, g))},
          {"hd", ratj(gen.duration(4))},
          {"u", multisignal_to_json(u)},
          {"x", sigj(x)},
          {"d", ratj(gen.duration(6))}};
}

std::optional<std::string> check_3_5(const json& in) {
  const auto f = fn(in["f"]);
  const auto g = fn(in["g"]);
  const auto u = multisignal_from_json(in["u"]);
  const auto x = sig(in["x"]);
  const Rat d = rat(in["d"]);
  const auto i = blc(f, g, blc_params_from_json(in["p"]));
  if (!check_time_invariance(i, u, x, d)) return fail("bounded model changes membership under translation");
  const auto h = fn(in["h"]);
  const auto k = flc(h, rat(in["hd"]), f, g);
  const auto y = flc_output(h, u, rat(in["hd"]));
  if (!check_time_invariance(k, u, y, d) || !check_time_invariance(k, u, x, d)) {
    return fail("fixed delay changes membership under translation");
  }
  return std::nullopt;
}

std::optional<std::string> check_4_5(const json& in) {
  const auto i = blc(fn(in["f"]), fn(in["g"]), blc_params_from_json(in["p"]));
  const auto u = multisignal_from_json(in["u"]);
  const auto x = sig(in["x"]);
  const Rat d = rat(in["d"]);
  if (!check_time_invariance(i, u, x, d)) {
    return fail("membership " + std::to_string(i.contains(u, x)) + " changes under translation by " + to_string(d));
  }
  return std::nullopt;
}

// ---- 3.10 ------------------------------------------------------------------

SearchBudget search_budget() {
  SearchBudget b;
  b.max_nodes = 1 << 16;
  return b;
}

json gen_3_10(Gen& gen) {
  const int variant = gen.uniform(0, 3);
  const int m = gen.uniform(1, 2);
  json inners = json::array();
  json outer;
  MultiSignal u;
  if (variant == 1) {
    outer = model_to_json(flc(gen.boolfn(m), gen.duration(3)));
    const Rat d = gen.duration(3);
    for (int q = 0; q < m; ++q) inners.push_back(model_to_json(flc(gen.boolfn(1), d)));
  } else if (variant == 3) {
    // rising-falling symmetric pieces: dual (f, g) and equal rise/fall parameters
    auto sym = [&](const BoolFn& f, const BoolFn& g) {
      const int qd = gen.uniform(1, gen.config().max_denominator);
      const int dd = gen.uniform(0, 3 * qd);
      const Rat d(dd, qd);
      const Rat w(gen.uniform(0, dd), qd);
      return model_to_json(blc(f, g, {w, d, w, d}));
    };
    outer = sym(m == 1 ? BoolFn::identity() : BoolFn::and_n(2), m == 1 ? BoolFn::identity() : BoolFn::or_n(2));
    for (int q = 0; q < m; ++q) inners.push_back(sym(BoolFn::identity(), BoolFn::identity()));
  } else {
    const auto f = m == 1 ? BoolFn::identity() : BoolFn::and_n(2);
    const auto g = m == 1 ? BoolFn::identity() : (gen.coin() ? BoolFn::or_n(2) : BoolFn::and_n(2));
    outer = model_to_json(blc(f, g, gen_valid_params(gen, f, g)));
    for (int q = 0; q < m; ++q) {
      const auto [fq, gq] = gen_valid_pair(gen, 1);
      inners.push_back(model_to_json(blc(fq, gq, gen_valid_params(gen, fq, gq))));
    }
  }
  u = small_input(gen, m);
  return {{"variant", variant},
          {"outer", outer},
          {"inners", inners},
          {"u", multisignal_to_json(u)},
          {"d", ratj(gen.duration(4))},
          {"seed", gen.uniform(0, 1 << 30)}};
}

std::vector<LimitCondition> models_from_json(const json& j) {
  std::vector<LimitCondition> out;
  for (const auto& e : j) out.push_back(model_from_json(e));
  return out;
}

std::optional<std::string> check_3_10(const json& in) {
  const auto outer = model_from_json(in["outer"]);
  const auto inners = models_from_json(in["inners"]);
  const auto u = multisignal_from_json(in["u"]);
  const auto seed = in["seed"].get<std::uint64_t>();
  const auto k = serial_search(outer, inners, search_budget());
  const auto members = k.sample(u, 4, seed);
  const int variant = in["variant"].get<int>();
  for (const auto& x : members) {
    if (!sol_fg_contains(k.f(), k.g(), u, x)) return fail("serial member outside the composed Sol: " + show(x));
  }
  if (variant == 1) {
    if (members.size() != 1) return fail("serial connection of fixed delays has several members");
    if (k.decide(u, members.front()) != Membership::yes) return fail("sampled member rejected");
  }
  if (variant == 2) {
    const Rat d = rat(in["d"]);
    for (const auto& x : members)
      if (refuted(k.decide(translate(u, d), translate(x, d)))) return fail("translated member rejected: " + show(x));
  }
  if (variant == 3) {
    const auto nu = negate_all(u);
    for (const auto& x : members)
      if (refuted(k.decide(nu, ~x))) return fail("complemented member rejected: " + show(x));
  }
  return std::nullopt;
}

// ---- 3.12 ------------------------------------------------------------------

BlcParams loosen(Gen& gen, const BlcParams& p) {
  auto widen = [&](const Rat& d, const Rat& w) {
    const Rat e1 = gen.duration(1);
    const Rat slack = d - w;
    const Rat e2 = slack * Rat(gen.uniform(0, 4), 4);
    return std::pair<Rat, Rat>{d + e1, w + e1 + e2};
  };
  const auto [dr, mr] = widen(p.d_r, p.m_r);
  const auto [df, mf] = widen(p.d_f, p.m_f);
  return {mr, dr, mf, df};
}

json gen_3_12(Gen& gen) {
  const int variant = gen.uniform(0, 5);
  const int m = gen.uniform(1, 2);
  const auto f = m == 1 ? BoolFn::identity() : BoolFn::and_n(2);
  const auto g = m == 1 ? BoolFn::identity() : BoolFn::or_n(2);
  const auto p = gen.overlapping_params();
  const auto pj = variant <= 1 ? loosen(gen, p) : gen.overlapping_params();
  json ks = json::array();
  json ls = json::array();
  for (int q = 0; q < m; ++q) {
    const auto [fq, gq] = gen_valid_pair(gen, 1);
    const auto pq = gen.overlapping_params();
    ks.push_back(model_to_json(blc(fq, gq, pq)));
    ls.push_back(model_to_json(blc(fq, gq, variant == 1 ? loosen(gen, pq) : gen.overlapping_params())));
  }
  const auto i = blc(f, g, p);
  return {{"variant", variant},
          {"i", model_to_json(i)},
          {"j", model_to_json(blc(f, g, pj))},
          {"ks", ks},
          {"ls", ls},
          {"aic", aicj(gen.aic_params())},
          {"u", multisignal_to_json(small_input(gen, m))},
          {"seed", gen.uniform(0, 1 << 30)}};
}

std::optional<std::string> check_3_12(const json& in) {
  const auto i = model_from_json(in["i"]);
  const auto j = model_from_json(in["j"]);
  const auto ks = models_from_json(in["ks"]);
  const auto ls = models_from_json(in["ls"]);
  const auto u = multisignal_from_json(in["u"]);
  const auto seed = in["seed"].get<std::uint64_t>();
  const auto budget = search_budget();
  auto ser = [&](const LimitCondition& outer, const std::vector<LimitCondition>& inner) {
    return serial_search(outer, inner, budget);
  };
  // Every sampled member of `small` must not be refuted by `big`.
  auto included = [&](const LimitCondition& small, const LimitCondition& big,
                      const std::string& what) -> std::optional<std::string> {
    for (const auto& x : small.sample(u, 3, seed))
      if (refuted(big.decide(u, x))) return what + " fails for " + show(x);
    return std::nullopt;
  };
  // Decisions agree wherever both sides are conclusive.
  auto equal = [&](const LimitCondition& a, const LimitCondition& b,
                   const std::string& what) -> std::optional<std::string> {
    std::vector<Signal> xs = a.sample(u, 2, seed);
    for (const auto& x : b.sample(u, 2, seed + 1)) xs.push_back(x);
    for (const auto& x : xs) {
      const auto da = a.decide(u, x);
      const auto db = b.decide(u, x);
      if (da != Membership::inconclusive && db != Membership::inconclusive && da != db) {
        return what + " disagrees on " + show(x);
      }
    }
    return std::nullopt;
  };

  const auto iv = as_blc(i);
  const auto jv = as_blc(j);
  switch (in["variant"].get<int>()) {
    case 0:
      if (!blc_included(iv->f, iv->g, iv->p, jv->f, jv->g, jv->p)) return std::nullopt;
      return included(ser(i, ks), ser(j, ks), "i <= j => i o k <= j o k");
    case 1: {
      for (std::size_t q = 0; q < ks.size(); ++q) {
        const auto a = *as_blc(ks[q]);
        const auto b = *as_blc(ls[q]);
        if (!blc_included(a.f, a.g, a.p, b.f, b.g, b.p)) return std::nullopt;
      }
      return included(ser(i, ks), ser(i, ls), "k <= l => i o k <= i o l");
    }
    case 2: {
      const auto v = aic_set(aic(in["aic"]));
      return equal(ser(lc_meet_set(i, v), ks), lc_meet_set(ser(i, ks), v), "(i ^ V) o k = (i o k) ^ V");
    }
    case 3: {
      const auto meet = lc_meet(i, j);
      try {
        return included(ser(meet, ks), lc_meet(ser(i, ks), ser(j, ks)), "(i ^ j) o k <= (i o k) ^ (j o k)");
      } catch (const model_error& e) {
        if (e.code() == errc::empty_meet) return std::nullopt;
        throw;
      }
    }
    case 4:
      return equal(ser(lc_join(i, j), ks), lc_join(ser(i, ks), ser(j, ks)), "(i v j) o k = (i o k) v (j o k)");
    default: {
      std::vector<LimitCondition> kl;
      for (std::size_t q = 0; q < ks.size(); ++q) kl.push_back(lc_join(ks[q], ls[q]));
      return included(lc_join(ser(i, ks), ser(i, ls)), ser(i, kl), "i o (k v l) >= (i o k) v (i o l)");
    }
  }
}

// ---- 4.1 -------------------------------------------------------------------

const Rat kTiny(1, 128);

json gen_4_1(Gen& gen) {
  const int m = gen.arity();
  const bool valid = gen.coin();
  json us = json::array();
  for (int k = 0; k < 10; ++k) us.push_back(multisignal_to_json(gen.multisignal(m)));
  for (int tries = 0;; ++tries) {
    auto [f, g] = gen_valid_pair(gen, m);
    if (valid) return {{"f", fnj(f)}, {"g", fnj(g)}, {"p", blc_params_to_json(gen_valid_params(gen, f, g))}, {"us", us}};
    if (f.max_value() <= g.min_value() && tries < 64) continue;
    if (f.max_value() <= g.min_value()) {
      f = BoolFn::identity();
      g = BoolFn::identity();
      if (m > 1) f = g = BoolFn::projection(m, 0);
    }
    BlcParams p = gen.blc_params();
    for (int k = 0; k < 64 && blc_valid(f, g, p); ++k) p = gen.blc_params();
    if (blc_valid(f, g, p)) p = {Rat(0), Rat(1), Rat(0), Rat(2)};
    return {{"f", fnj(f)}, {"g", fnj(g)}, {"p", blc_params_to_json(p)}, {"us", us}};
  }
}

/// Single-pulse inputs (row a on a short interval, row b elsewhere) that make
/// lower > upper somewhere; nullopt when none of the probes does.
std::optional<MultiSignal> order_counterexample(const BoolFn& f, const BoolFn& g, const BlcParams& p) {
  const int m = f.arity();
  for (auto a : rows_where(f, true))
    for (auto b : rows_where(g, false))
      for (const Rat& extra : {Rat(1, 64), kTiny, Rat(1, 8), Rat(1, 2), Rat(1), Rat(2)}) {
        const auto u = pulse_input(a, b, m, Rat(0), p.m_r + extra);
        if (!pointwise_leq(lower_envelope(f, u, p), upper_envelope(g, u, p))) return u;
      }
  return std::nullopt;
}

std::optional<std::string> check_4_1(const json& in) {
  const auto f = fn(in["f"]);
  const auto g = fn(in["g"]);
  const auto p = blc_params_from_json(in["p"]);
  if (blc_valid(f, g, p)) {
    for (const auto& uj : in["us"]) {
      const auto u = multisignal_from_json(uj);
      const auto lo = lower_envelope(f, u, p);
      const auto hi = upper_envelope(g, u, p);
      if (!pointwise_leq(lo, hi)) return fail("valid parameters but lower > upper for input " + uj.dump());
      if (!sol_fg_contains(f, g, u, lo) || !sol_fg_contains(f, g, u, hi)) {
        return fail("an envelope leaves Sol_{f,g} for input " + uj.dump());
      }
    }
    return std::nullopt;
  }
  if (f.max_value() <= g.min_value()) return fail("invalid parameters although max f <= min g");
  if (!order_counterexample(f, g, p)) return fail("invalid parameters but no pulse input breaks the envelope order");
  return std::nullopt;
}

// ---- 4.3 -------------------------------------------------------------------

json gen_4_3(Gen& gen) {
  const int m = gen.arity();
  auto [f, g] = gen_valid_pair(gen, m);
  const int shape = gen.uniform(0, 5);
  if (shape <= 2) f = g;
  if (shape == 3) f = g = BoolFn::constant(m, gen.coin());
  BlcParams p = gen_valid_params(gen, f, g);
  if (gen.coin(0.35)) {
    p.m_r = p.m_f = 0;
    p.d_f = p.d_r;
  }
  json us = json::array();
  for (int k = 0; k < 4; ++k) us.push_back(multisignal_to_json(gen.multisignal(m, 6)));
  return {{"f", fnj(f)}, {"g", fnj(g)}, {"p", blc_params_to_json(p)}, {"us", us}};
}

std::vector<MultiSignal> determinism_probes(const BoolFn& f, const BlcParams& p, const json& random_us) {
  const int m = f.arity();
  auto probes = constant_probes(m);
  std::vector<Rat> widths{Rat(1), Rat(1, 2)};
  for (const auto& w : {p.m_r, p.m_f}) {
    widths.push_back(w);
    widths.push_back(w / 2);
    widths.push_back(w + Rat(1, 2));
  }
  for (std::uint32_t a = 0; a < (1u << m); ++a)
    for (std::uint32_t b = 0; b < (1u << m); ++b) {
      if (a == b) continue;
      for (const auto& w : widths)
        if (w > 0) probes.push_back(pulse_input(a, b, m, Rat(0), w));
    }
  for (const auto& uj : random_us) probes.push_back(multisignal_from_json(uj));
  return probes;
}

std::optional<std::string> check_4_3(const json& in) {
  const auto f = fn(in["f"]);
  const auto g = fn(in["g"]);
  const auto p = blc_params_from_json(in["p"]);
  const auto verdict = blc_is_deterministic(f, g, p);
  const bool b21 = p.d_r == p.d_f - p.m_f && p.d_f == p.d_r - p.m_r;
  const bool b22 = p.m_r == Rat(0) && p.m_f == Rat(0);
  if (b21 != b22) return fail("the two parameter forms of determinism disagree");
  const auto i = blc(f, g, p);
  const auto probes = determinism_probes(f, p, in["us"]);
  const auto single = check_deterministic(i, probes);
  const bool search_deterministic = std::all_of(single.begin(), single.end(), [](bool b) { return b; });
  if (verdict.deterministic != search_deterministic) {
    return fail(std::string("criterion says ") + (verdict.deterministic ? "deterministic" : "non-deterministic") +
                ", search says the opposite");
  }
  if (verdict.deterministic && !f.is_constant()) {
    for (const auto& u : probes) {
      const auto y = flc_output(f, u, *verdict.delay);
      if (lower_envelope(f, u, p) != y || upper_envelope(g, u, p) != y) {
        return fail("deterministic envelopes differ from the pure delay by " + to_string(*verdict.delay));
      }
    }
  }
  return std::nullopt;
}

// ---- 4.4 -------------------------------------------------------------------

json gen_4_4(Gen& gen) {
  const int m = gen.arity();
  const auto [f, g] = gen_valid_pair(gen, m);
  const auto p = gen_valid_params(gen, f, g);
  BoolFn f2 = f;
  BoolFn g2 = g;
  BlcParams p2 = p;
  if (gen.coin()) {
    const auto mask = gen.boolfn(m);
    const auto extra = gen.boolfn(m);
    std::vector<bool> lo(f.size());
    std::vector<bool> hi(f.size());
    for (std::uint32_t r = 0; r < f.size(); ++r) {
      lo[r] = f.at(r) && mask.at(r);
      hi[r] = g.at(r) || extra.at(r);
    }
    f2 = BoolFn(m, lo);
    g2 = BoolFn(m, hi);
    p2 = loosen(gen, p);
  } else {
    std::tie(f2, g2) = gen_valid_pair(gen, m);
    p2 = gen_valid_params(gen, f2, g2);
    if (gen.coin()) {
      f2 = f;
      g2 = g;
    }
  }
  if (!blc_valid(f2, g2, p2)) p2 = gen_valid_params(gen, f2, g2);
  json us = json::array();
  for (int k = 0; k < 3; ++k) us.push_back(multisignal_to_json(gen.multisignal(m, 6)));
  return {{"f", fnj(f)},   {"g", fnj(g)},   {"p", blc_params_to_json(p)}, {"f2", fnj(f2)},
          {"g2", fnj(g2)}, {"p2", blc_params_to_json(p2)}, {"us", us}, {"seed", gen.uniform(0, 1 << 30)}};
}

std::optional<std::string> check_4_4(const json& in) {
  const auto f = fn(in["f"]);
  const auto g = fn(in["g"]);
  const auto p = blc_params_from_json(in["p"]);
  const auto f2 = fn(in["f2"]);
  const auto g2 = fn(in["g2"]);
  const auto p2 = blc_params_from_json(in["p2"]);
  const auto left = blc(f, g, p);
  const auto right = blc(f2, g2, p2);
  const int m = f.arity();
  if (blc_included(f, g, p, f2, g2, p2)) {
    auto probes = constant_probes(m);
    for (const auto& uj : in["us"]) probes.push_back(multisignal_from_json(uj));
    for (const auto& u : probes)
      for (const auto& x : left.sample(u, 6, in["seed"].get<std::uint64_t>()))
        if (!right.contains(u, x)) return fail("inclusion claimed but " + show(x) + " is only on the left");
    return std::nullopt;
  }
  auto probes = constant_probes(m);
  for (std::uint32_t a = 0; a < (1u << m); ++a)
    for (std::uint32_t b = 0; b < (1u << m); ++b) {
      if (a == b) continue;
      for (const auto& s : {-p.d_r, p.m_r - p.d_r, -p.d_f, p.m_f - p.d_f})
        probes.push_back(pulse_input(a, b, m, s, kTiny));
    }
  for (const auto& u : probes) {
    const auto env = *left.envelope(u);
    for (const auto& x : {env.lower, env.upper})
      if (!right.contains(u, x)) return std::nullopt;
  }
  return fail("inclusion denied but every left-side envelope probe lies on the right");
}

// ---- 4.6 / 4.7 ---------------------------------------------------------------

json gen_symmetry(Gen& gen) {
  const int m = gen.arity();
  auto [f, g] = gen_valid_pair(gen, m);
  const int shape = gen.uniform(0, 3);
  if (shape == 0) {
    f = BoolFn::and_n(m);
    g = BoolFn::or_n(m);
  }
  BlcParams p = gen_valid_params(gen, f, g);
  if (gen.coin()) {
    p.m_f = p.m_r;
    p.d_f = p.d_r;
  }
  std::vector<int> sigma(m);
  std::iota(sigma.begin(), sigma.end(), 0);
  std::shuffle(sigma.begin(), sigma.end(), gen.rng());
  json us = json::array();
  for (int k = 0; k < 3; ++k) us.push_back(multisignal_to_json(gen.multisignal(m, 6)));
  return {{"f", fnj(f)}, {"g", fnj(g)}, {"p", blc_params_to_json(p)}, {"sigma", sigma}, {"us", us},
          {"seed", gen.uniform(0, 1 << 30)}};
}

std::optional<std::string> check_4_6(const json& in) {
  const auto f = fn(in["f"]);
  const auto g = fn(in["g"]);
  const auto p = blc_params_from_json(in["p"]);
  const auto i = blc(f, g, p);
  const int m = f.arity();
  if (blc_symmetric_usual(f, g, p)) {
    const auto sigma = in["sigma"].get<std::vector<int>>();
    for (const auto& uj : in["us"]) {
      const auto u = multisignal_from_json(uj);
      for (const auto& x : i.sample(u, 4, in["seed"].get<std::uint64_t>()))
        if (!check_symmetry_usual(i, u, x, sigma)) return fail("permuting inputs changes membership of " + show(x));
    }
    return std::nullopt;
  }
  std::vector<int> sigma(m);
  std::iota(sigma.begin(), sigma.end(), 0);
  do {
    for (const auto& u : constant_probes(m))
      for (bool c : {false, true})
        if (!check_symmetry_usual(i, u, Signal::constant(c), sigma)) return std::nullopt;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return fail("criterion says asymmetric but no permutation of constant inputs changes membership");
}

std::optional<std::string> check_4_7(const json& in) {
  const auto f = fn(in["f"]);
  const auto g = fn(in["g"]);
  const auto p = blc_params_from_json(in["p"]);
  const auto i = blc(f, g, p);
  const int m = f.arity();
  const auto seed = in["seed"].get<std::uint64_t>();
  if (blc_symmetric_rf(f, g, p)) {
    for (const auto& uj : in["us"]) {
      const auto u = multisignal_from_json(uj);
      for (const auto& x : i.sample(u, 4, seed))
        if (!check_symmetry_rf(i, u, x)) return fail("complementing changes membership of " + show(x));
    }
    return std::nullopt;
  }
  auto probes = determinism_probes(f, p, in["us"]);
  for (std::uint32_t a = 0; a < (1u << m); ++a)
    for (std::uint32_t b = 0; b < (1u << m); ++b)
      if (a != b)
        for (const auto& w : {p.d_r, p.d_f, p.m_r + p.m_f + 1}) probes.push_back(pulse_input(a, b, m, Rat(0), w + 1));
  for (const auto& u : probes) {
    std::vector<Signal> xs = i.sample(u, 4, seed);
    const auto env = *i.envelope(negate_all(u));
    xs.push_back(~env.lower);
    xs.push_back(~env.upper);
    for (const auto& x : xs)
      if (!check_symmetry_rf(i, u, x)) return std::nullopt;
  }
  return fail("criterion says not rf-symmetric but complementing never changes membership on the probes");
}

// ---- compositions (4.8, 5.2, 6.6) --------------------------------------------

/// Outer functions with the monotone and window-commuting shape the closed form needs.
std::pair<BoolFn, BoolFn> composable_outer(Gen& gen, int m) {
  if (m == 1) return {BoolFn::identity(), BoolFn::identity()};
  switch (gen.uniform(0, 3)) {
    case 0: return {BoolFn::and_n(m), BoolFn::or_n(m)};
    case 1: return {BoolFn::and_n(m), BoolFn::and_n(m)};
    case 2: return {BoolFn::projection(m, 0), BoolFn::or_n(m)};
    default: return {BoolFn::and_n(m), BoolFn::projection(m, m - 1)};
  }
}

AicParams inertia_within(Gen& gen, const BlcParams& p) {
  const Rat budget = p.m_r + p.m_f;
  const Rat share = Rat(gen.uniform(0, 8), 8);
  const Rat total = budget * Rat(gen.uniform(0, 8), 8);
  return {total * share, total * (1 - share)};
}

json gen_composition(Gen& gen, bool inertial) {
  const int m = gen.uniform(1, 2);
  const auto [f, g] = composable_outer(gen, m);
  const auto p = gen.overlapping_params();
  const auto pi = gen.overlapping_params();
  json inner_fns = json::array();
  int arity = 0;
  for (int q = 0; q < m; ++q) {
    const int a = (m == 1 && gen.coin()) ? 2 : 1;
    arity += a;
    const auto [fq, gq] = gen_valid_pair(gen, a);
    inner_fns.push_back({{"f", fnj(fq)}, {"g", fnj(gq)}});
  }
  json out = {{"f", fnj(f)},
              {"g", fnj(g)},
              {"p", blc_params_to_json(p)},
              {"inners", inner_fns},
              {"pi", blc_params_to_json(pi)},
              {"u", multisignal_to_json(small_input(gen, arity))}};
  if (inertial) {
    out["a"] = aicj(inertia_within(gen, p));
    out["ai"] = aicj(inertia_within(gen, pi));
  }
  return out;
}

struct Composition {
  LimitCondition closed;
  LimitCondition search;
};

std::optional<Composition> build_composition(const json& in, bool inertial) {
  const BlcSpec outer{fn(in["f"]), fn(in["g"]), blc_params_from_json(in["p"])};
  const auto pi = blc_params_from_json(in["pi"]);
  std::vector<std::pair<BoolFn, BoolFn>> fns;
  for (const auto& e : in["inners"]) fns.emplace_back(fn(e["f"]), fn(e["g"]));
  for (const auto& [fq, gq] : fns)
    if (!blc_valid(fq, gq, pi)) return std::nullopt;
  std::vector<LimitCondition> inners;
  try {
    if (!inertial) {
      const auto c = blc_compose(outer, fns, pi);
      for (const auto& [fq, gq] : fns) inners.push_back(blc(fq, gq, pi));
      return Composition{blc(c.f, c.g, c.p),
                         serial_search(blc(outer.f, outer.g, outer.p), inners, search_budget())};
    }
    const auto a = aic(in["a"]);
    const auto ai = aic(in["ai"]);
    for (const auto& [fq, gq] : fns)
      if (!bailc_nonempty(fq, gq, pi, ai)) return std::nullopt;
    if (!bailc_nonempty(outer.f, outer.g, outer.p, a)) return std::nullopt;
    const auto c = bailc_compose({outer, a}, fns, pi, ai);
    for (const auto& [fq, gq] : fns) inners.push_back(bailc(fq, gq, pi, ai));
    return Composition{bailc(c.blc.f, c.blc.g, c.blc.p, c.aic),
                       serial_search(bailc(outer.f, outer.g, outer.p, a), inners, search_budget())};
  } catch (const model_error& e) {
    switch (e.code()) {
      case errc::monotony_violated:
      case errc::distributivity_unverified:
      case errc::invalid_blc:
      case errc::empty_bailc:
        return std::nullopt;
      default:
        throw;
    }
  }
}

json gen_4_8(Gen& gen) {
  auto in = gen_composition(gen, false);
  in["seed"] = gen.uniform(0, 1 << 30);
  return in;
}

json gen_6_6(Gen& gen) {
  auto in = gen_composition(gen, true);
  in["seed"] = gen.uniform(0, 1 << 30);
  return in;
}

/// Picks the query x deterministically from the instance seed.
Signal composition_query(const Composition& c, const MultiSignal& u, std::uint64_t seed) {
  GenConfig cfg;
  Gen gen(cfg, seed);
  return query_signal(gen, c.closed, u);
}

std::optional<std::string> compare_composition(const json& in, bool inertial) {
  const auto c = build_composition(in, inertial);
  if (!c) return std::nullopt;
  const auto u = multisignal_from_json(in["u"]);
  const auto x = in.contains("x") ? sig(in["x"]) : composition_query(*c, u, in["seed"].get<std::uint64_t>());

  // Envelope identity: composed window of f o (f_q) equals the outer window of the inner envelopes.
  const auto parts = c->search.children();
  const auto outer = parts.front();
  const std::vector<LimitCondition> inners(parts.begin() + 1, parts.end());
  MultiSignal lowers;
  MultiSignal uppers;
  std::size_t at = 0;
  for (const auto& j : inners) {
    MultiSignal block(u.begin() + at, u.begin() + at + j.arity());
    at += j.arity();
    const auto env = *j.envelope(block);
    lowers.push_back(env.lower);
    uppers.push_back(env.upper);
  }
  const auto composed = *c->closed.envelope(u);
  if (composed.lower != outer.envelope(lowers)->lower) return fail("composed lower envelope differs");
  if (composed.upper != outer.envelope(uppers)->upper) return fail("composed upper envelope differs");

  const auto closed = c->closed.decide(u, x);
  const auto result = serial_witness(outer, inners, u, x, search_budget());
  if (result.verdict == Membership::yes && closed != Membership::yes) {
    return fail("witness search found intermediate signals for " + show(x) + " but the closed form rejects it");
  }
  if (closed == Membership::yes && result.verdict != Membership::yes) {
    return fail(std::string("closed form accepts ") + show(x) + " but the witness search " +
                (result.exhaustive ? "exhausted its grid without a witness" : "ran out of budget"));
  }
  return std::nullopt;
}

std::optional<std::string> check_4_8(const json& in) { return compare_composition(in, false); }
std::optional<std::string> check_6_6(const json& in) { return compare_composition(in, true); }

json gen_5_2(Gen& gen) {
  const int m = gen.uniform(1, 2);
  json hs = json::array();
  int arity = 0;
  for (int q = 0; q < m; ++q) {
    const int a = gen.uniform(1, 3 - m);
    arity += a;
    hs.push_back(fnj(gen.boolfn(a)));
  }
  const auto u = gen.multisignal(arity, 6);
  return {{"h", fnj(gen.boolfn(m))},
          {"hs", hs},
          {"d", ratj(gen.duration(4))},
          {"d2", ratj(gen.duration(4))},
          {"u", multisignal_to_json(u)},
          {"x", sigj(gen.signal(6))},
          {"shift", ratj(gen.duration(4))}};
}

std::optional<std::string> check_5_2(const json& in) {
  const auto h = fn(in["h"]);
  std::vector<BoolFn> hs;
  for (const auto& e : in["hs"]) hs.push_back(fn(e));
  const Rat d = rat(in["d"]);
  const Rat d2 = rat(in["d2"]);
  const auto u = multisignal_from_json(in["u"]);
  std::vector<LimitCondition> inners;
  for (const auto& hq : hs) inners.push_back(flc(hq, d2));
  const auto search = serial_search(flc(h, d), inners, search_budget());
  const auto hc = fn_compose(h, hs);
  const auto closed = flc(hc, d + d2);
  const auto y = flc_output(hc, u, d + d2);
  const auto members = search.sample(u, 3, 1);
  if (members.size() != 1 || members.front() != y) return fail("serial connection of fixed delays is not the composed delay");
  if (search.decide(u, y) != Membership::yes) return fail("composed delay output rejected by the witness search");
  const auto x = sig(in["x"]);
  if ((x == y) != (search.decide(u, x) == Membership::yes)) return fail("witness search disagrees on " + show(x));
  if (closed.contains(u, x) != (x == y)) return fail("composed fixed delay membership is wrong for " + show(x));
  if (!check_constancy(u, y, hc, hc, d + d2, d + d2)) return fail("composed delay output is not constant");
  if (!check_time_invariance(closed, u, y, rat(in["shift"]))) return fail("composed delay is not time invariant");
  return std::nullopt;
}

// ---- 6.3 -------------------------------------------------------------------

json gen_6_3(Gen& gen) {
  const int m = gen.arity();
  const auto [f, g] = gen_valid_pair(gen, m);
  const auto p = gen.overlapping_params();
  const auto a = inertia_within(gen, p);
  const auto u = gen.multisignal(m, 6);
  const auto i = blc(f, g, p);
  const auto seed = static_cast<std::uint64_t>(gen.uniform(0, 1 << 30));
  std::vector<Signal> xs = i.sample(u, 3, seed);
  xs.push_back(gen.signal());
  if (blc_valid(f, g, p) && bailc_nonempty(f, g, p, a))
    for (const auto& x : bailc(f, g, p, a).sample(u, 3, seed)) xs.push_back(x);
  json xj = json::array();
  for (const auto& x : xs) xj.push_back(sigj(x));
  return {{"f", fnj(f)}, {"g", fnj(g)}, {"p", blc_params_to_json(p)}, {"a", aicj(a)}, {"u", multisignal_to_json(u)},
          {"xs", xj}};
}

std::optional<std::string> check_6_3(const json& in) {
  const auto f = fn(in["f"]);
  const auto g = fn(in["g"]);
  const auto p = blc_params_from_json(in["p"]);
  const auto a = aic(in["a"]);
  if (!bailc_nonempty(f, g, p, a)) return std::nullopt;
  const auto meet = lc_meet_set(blc(f, g, p), aic_set(a));
  const auto direct = bailc(f, g, p, a);
  const auto u = multisignal_from_json(in["u"]);
  for (const auto& xj : in["xs"]) {
    const auto x = sig(xj);
    const bool lhs = meet.contains(u, x);
    if (lhs != direct.contains(u, x)) return fail("meet with the inertial set disagrees with the BAILC on " + show(x));
    if (lhs && !sol_fg_contains(f, g, u, x)) return fail("inertial member outside Sol_{f,g}: " + show(x));
  }
  for (const auto& x : direct.sample(u, 4, 3))
    if (!meet.contains(u, x) || !aic_contains(x, a)) return fail("sampled BAILC member is not inertial: " + show(x));
  return std::nullopt;
}

// ---- 6.4 -------------------------------------------------------------------

json gen_6_4(Gen& gen) {
  const int m = gen.arity();
  const auto [f, g] = gen_valid_pair(gen, m);
  const auto p = gen_valid_params(gen, f, g);
  const auto a = gen.coin() ? inertia_within(gen, p) : gen.aic_params();
  json us = json::array();
  for (int k = 0; k < 2; ++k) us.push_back(multisignal_to_json(gen.multisignal(m, 6)));
  return {{"f", fnj(f)}, {"g", fnj(g)}, {"p", blc_params_to_json(p)}, {"a", aicj(a)}, {"us", us}};
}

}  // namespace

/// Inputs for the non-emptiness experiment: the instance's random inputs,
/// constants, single pulses, and for every (a, b) with f(a) = 1, g(b) = 0 a
/// long train of the shortest pulses that still force both envelopes.
std::vector<MultiSignal> inertia_probes(const BoolFn& f, const BoolFn& g, const BlcParams& p, const AicParams& a,
                                        const std::vector<MultiSignal>& random_us) {
  const int m = f.arity();
  std::vector<MultiSignal> probes = random_us;
  for (auto& u : constant_probes(m)) probes.push_back(std::move(u));
  const Rat surplus = a.delta_r + a.delta_f - p.m_r - p.m_f;
  const Rat eps = surplus > 0 ? std::min(surplus / 4, Rat(1, 64)) : Rat(1, 64);
  const Rat high = p.m_r + eps;
  const Rat low = p.m_f + eps;
  int periods = 32;
  if (surplus > 0) {
    const Rat need = (2 * (high + low) + p.d_r + p.d_f) / (surplus - 2 * eps) + 4;
    periods = static_cast<int>(boost::rational_cast<double>(need)) + 2;
  }
  for (auto hi_row : rows_where(f, true))
    for (auto lo_row : rows_where(g, false)) {
      probes.push_back(pulse_input(hi_row, lo_row, m, Rat(0), high));
      probes.push_back(pulse_input(lo_row, hi_row, m, Rat(0), low));
      probes.push_back(pulse_train(hi_row, lo_row, m, high, low, periods));
    }
  return probes;
}

namespace {

std::optional<std::string> check_6_4(const json& in) {
  const auto f = fn(in["f"]);
  const auto g = fn(in["g"]);
  const auto p = blc_params_from_json(in["p"]);
  const auto a = aic(in["a"]);
  if (!blc_valid(f, g, p)) return std::nullopt;
  const bool criterion = bailc_nonempty(f, g, p, a);
  std::vector<MultiSignal> us;
  for (const auto& uj : in["us"]) us.push_back(multisignal_from_json(uj));
  SearchBudget budget;
  budget.max_nodes = 1 << 20;
  std::optional<std::size_t> missing;
  const auto probes = inertia_probes(f, g, p, a, us);
  for (std::size_t k = 0; k < probes.size() && !missing; ++k)
    if (!bailc_witness_search(f, g, p, a, probes[k], budget)) missing = k;
  if (criterion && missing) {
    return fail("criterion holds but probe " + std::to_string(*missing) + " has no inertial member");
  }
  if (!criterion && !missing) return fail("criterion fails but every probe has an inertial member");
  return std::nullopt;
}

std::vector<TheoremCheck> build_registry() {
  auto time_inv = [](Gen& gen) { return gen_time_invariance(gen); };
  return {
      {"1.9", "translations, windows and applied functions return canonical signals", gen_1_9, check_1_9},
      {"2.4a", "SC_f(u) equals SC(f(u))", gen_2_4a, check_2_4a},
      {"2.4b", "MC(v,...,v) equals SC(v) and SC(u_p) lies in MC(u)", gen_2_4b, check_2_4b},
      {"2.4c", "SC_f(u) lies in MC(u) for f between AND and OR", gen_2_4c, check_2_4c},
      {"3.4", "meets and joins of limit conditions are limit conditions", gen_3_4, check_3_4},
      {"3.5", "time invariant models keep membership under translation", time_inv, check_3_5},
      {"3.10", "serial connections keep the delay, determinism, time and rf properties", gen_3_10, check_3_10},
      {"3.12", "serial connection is monotone and commutes with meets and joins", gen_3_12, check_3_12},
      {"4.1", "envelope order holds exactly for valid parameters", gen_4_1, check_4_1},
      {"4.3", "determinism criterion for bounded models", gen_4_3, check_4_3},
      {"4.4", "inclusion criterion for bounded models", gen_4_4, check_4_4},
      {"4.5", "bounded models are time invariant", time_inv, check_4_5},
      {"4.6", "usual symmetry criterion for bounded models", gen_symmetry, check_4_6},
      {"4.7", "rising-falling symmetry criterion for bounded models", gen_symmetry, check_4_7},
      {"4.8", "closed form of bounded serial connections", gen_4_8, check_4_8},
      {"5.2", "fixed delays compose by adding delays", gen_5_2, check_5_2},
      {"6.3", "meet with the inertial set is an inertial model", gen_6_3, check_6_3},
      {"6.4", "non-emptiness criterion for bounded inertial models", gen_6_4, check_6_4},
      {"6.6", "closed form of bounded inertial serial connections", gen_6_6, check_6_6},
  };
}

}  // namespace

const std::vector<TheoremCheck>& theorem_registry() {
  static const std::vector<TheoremCheck> registry = build_registry();
  return registry;
}

std::vector<std::string> theorem_ids() {
  std::vector<std::string> out;
  for (const auto& c : theorem_registry()) out.push_back(c.id);
  return out;
}

const TheoremCheck& find_theorem(const std::string& id) {
  for (const auto& c : theorem_registry())
    if (c.id == id) return c;
  throw model_error(errc::unknown_theorem, "no check registered under \"" + id + "\"");
}

namespace {

std::optional<std::string> guarded(const TheoremCheck& check, const json& instance) {
  try {
    return check.check(instance);
  } catch (const std::exception& e) {
    return std::string("exception: ") + e.what();
  }
}

}  // namespace

TheoremReport run_check(const TheoremCheck& check, const GenConfig& cfg, Execution exec) {
  cfg.validate();
  const auto n = static_cast<std::int64_t>(cfg.cases);
  std::vector<std::optional<json>> outcome(cfg.cases);
  const bool parallel = exec == Execution::parallel;
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::int64_t k = 0; k < n; ++k) {
    json instance;
    std::optional<std::string> message;
    try {
      Gen gen(cfg, mix_seed(cfg.seed, static_cast<std::uint64_t>(k)));
      instance = check.generate(gen);
      message = guarded(check, instance);
    } catch (const std::exception& e) {
      message = std::string("generator exception: ") + e.what();
    }
    if (message) outcome[k] = json{{"case", k}, {"message", *message}, {"instance", instance}};
  }
  TheoremReport report;
  report.theorem_id = check.id;
  report.cases_run = cfg.cases;
  for (auto& o : outcome)
    if (o) report.failures.push_back(std::move(*o));
  return report;
}

TheoremReport run_theorem(const std::string& id, const GenConfig& cfg, Execution exec) {
  return run_check(find_theorem(id), cfg, exec);
}

std::optional<std::string> replay(const std::string& id, const json& failure) {
  return guarded(find_theorem(id), failure.at("instance"));
}

std::string report_line(const TheoremReport& r) {
  std::ostringstream out;
  out << r.theorem_id << ' ' << r.cases_run << ' ' << r.status();
  if (!r.passed()) out << ' ' << r.failures.size();
  return out.str();
}

json report_to_json(const TheoremReport& r) {
  return {{"theorem", r.theorem_id}, {"cases", r.cases_run}, {"status", r.status()}, {"failures", r.failures}};
}

}  // namespace asyncmodel
