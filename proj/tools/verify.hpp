#pragma once

#include "config.hpp"

namespace antisym::cli {

/// Full invariant battery plus the typo adjudication. Every check carries its
/// measured error, tolerance and verdict; "pass" is the conjunction.
json run_verify(const RunConfig& rc);

}  // namespace antisym::cli
