#pragma once

#include <functional>

namespace nasq {

/// Worker-count default: the NASQ_THREADS environment variable when set to
/// a positive integer, otherwise hardware concurrency.
int recommended_threads();

/// Runs task(0) .. task(n-1) across up to `threads` workers.  Tasks must
/// write only to their own slots; iteration order inside a worker is
/// ascending, so deterministic merges are the caller's responsibility and
/// straightforward.
void parallel_for(int n, int threads, const std::function<void(int)>& task);

}  // namespace nasq
