#include "sampling.hpp"

#include <algorithm>

namespace asyncmodel::detail {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finalizer over the combined words.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Signal random_signal_near(std::mt19937_64& rng, std::span<const Rat> anchors, int max_transitions) {
  static const Rat jitters[] = {Rat(0), Rat(1, 4), Rat(-1, 4), Rat(1, 2), Rat(-1, 2), Rat(1), Rat(-1), Rat(1, 8)};
  std::vector<Rat> pool;
  for (const auto& a : anchors)
    for (const auto& j : jitters) pool.push_back(a + j);
  if (pool.empty())
    for (int k = -2; k <= 6; ++k) pool.emplace_back(k);
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());

  std::uniform_int_distribution<int> count_dist(0, std::max(0, max_transitions));
  const auto k = std::min<std::size_t>(count_dist(rng), pool.size());
  std::shuffle(pool.begin(), pool.end(), rng);
  pool.resize(k);
  std::sort(pool.begin(), pool.end());

  bool value = std::bernoulli_distribution(0.5)(rng);
  const bool initial = value;
  std::vector<Transition> pieces;
  for (const auto& t : pool) {
    value = !value;
    pieces.push_back({t, value});
  }
  return Signal::from_sorted(initial, pieces);
}

Signal random_signal_ending(std::mt19937_64& rng, std::span<const Rat> anchors, int max_transitions, bool tail) {
  auto s = random_signal_near(rng, anchors, max_transitions);
  if (s.eventual() == tail) return s;
  Rat last = s.is_constant() ? Rat(0) : s.transitions().back().time;
  for (const auto& a : anchors) last = std::max(last, a);
  std::vector<Transition> pieces(s.transitions().begin(), s.transitions().end());
  pieces.push_back({last + 1, tail});
  return Signal::from_sorted(s.initial(), pieces);
}

void push_unique(std::vector<Signal>& out, Signal s) {
  if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(std::move(s));
}

}  // namespace asyncmodel::detail
