#pragma once

namespace copclust {

/// Worker count for OpenMP regions: COPCLUST_THREADS when set, else the
/// OpenMP default.
int worker_count();

/// Applies COPCLUST_THREADS to the OpenMP runtime (called by the CLI).
void configure_workers_from_env();

}  // namespace copclust
