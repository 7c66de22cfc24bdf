#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "asyncmodel/signal.hpp"

namespace asyncmodel::detail {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

/// Random canonical signal whose switching times cluster around `anchors`.
Signal random_signal_near(std::mt19937_64& rng, std::span<const Rat> anchors, int max_transitions);

/// Random signal with value `tail` from some point on.
Signal random_signal_ending(std::mt19937_64& rng, std::span<const Rat> anchors, int max_transitions, bool tail);

void push_unique(std::vector<Signal>& out, Signal s);

}  // namespace asyncmodel::detail
