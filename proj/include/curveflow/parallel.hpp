#pragma once

#include <functional>

namespace curveflow {

/// Worker count used for per-vertex parallel maps. Controlled by the
/// CURVEFLOW_THREADS environment variable (0 or unset = hardware auto).
int worker_count();

/// Runs fn(0..n-1) on a static index partition. Each index must write only
/// to its own output slot, so results are bitwise independent of scheduling.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace curveflow
