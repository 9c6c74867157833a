#pragma once

#include "tat/interp.hpp"

namespace tat {

struct FbpOptions {
  /// Interpolation of filtered projections in t during backprojection.
  TInterp interp = TInterp::Linear;
};

}  // namespace tat
