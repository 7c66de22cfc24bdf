#pragma once

#include "asyncmodel/props.hpp"

namespace fixtures {

/// A random model of a file-representable kind: sol, sc, mc, scf, flc, blc,
/// bailc, meet, join or serial. Arity is at most the generator's max arity.
asyncmodel::LimitCondition random_model(asyncmodel::Gen& gen, int depth = 1);

}  // namespace fixtures
