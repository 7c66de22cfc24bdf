#include "fixtures.hpp"

namespace fixtures {

using namespace asyncmodel;

namespace {

LimitCondition leaf(Gen& gen, int m) {
  switch (gen.uniform(0, 6)) {
    case 0: {
      const auto [f, g] = gen.boolfn_pair_leq(m);
      return sol_fg(f, g);
    }
    case 1:
      return m == 1 ? sc() : mc(m);
    case 2:
      return scf(gen.boolfn(m));
    case 3:
      return flc(gen.boolfn(m), gen.duration(3));
    case 4: {
      const auto [f, g] = gen.boolfn_pair_leq(m);
      return blc(f, g, gen.overlapping_params());
    }
    case 5: {
      const auto [f, g] = gen.boolfn_pair_leq(m);
      const auto p = gen.overlapping_params();
      const AicParams a{std::min(p.d_f, p.m_r), std::min(p.d_r, p.m_f)};
      if (bailc_nonempty(f, g, p, a)) return bailc(f, g, p, a);
      return blc(f, g, p);
    }
    default: {
      const auto h = gen.boolfn(m);
      return flc(h, gen.duration(3), BoolFn::constant(m, false), BoolFn::constant(m, true));
    }
  }
}

}  // namespace

LimitCondition random_model(Gen& gen, int depth) {
  const int m = gen.arity();
  if (depth <= 0 || gen.coin(0.6)) return leaf(gen, m);
  if (gen.coin()) {
    const auto h = gen.boolfn(m);
    const auto d = gen.duration(2);
    return gen.coin() ? lc_join(flc(h, d), scf(h)) : lc_meet(flc(h, d), scf(h));
  }
  const auto outer = flc(gen.boolfn(m), gen.duration(2));
  std::vector<LimitCondition> inners;
  for (int p = 0; p < m; ++p) inners.push_back(blc(BoolFn::identity(), BoolFn::identity(), gen.overlapping_params()));
  return serial_search(outer, inners);
}

}  // namespace fixtures
