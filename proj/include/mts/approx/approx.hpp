#pragma once

#include <chrono>
#include <cstdint>

#include "mts/sched/schedule.hpp"
#include "mts/sched/workload.hpp"

namespace mts::approx {

/// Earliest-deadline-first admission: visit images by ascending deadline
/// (ties by id), admit each one whose completion time stays within its own
/// deadline. Deterministic.
sched::Schedule greedy_edf(const sched::WorkloadInstance& workload);

/// First-improvement hill climb from a feasible seed. Neighborhoods: replace
/// a scheduled image with a dropped one, insert a dropped image at any
/// position, transpose adjacent slots. Candidate order is shuffled by
/// rng_seed; acceptance compares the exact objective, so the result never
/// falls below the seed. Stops at a local optimum or when the budget runs
/// out. Throws ValidationError on an infeasible seed.
sched::Schedule local_search(const sched::WorkloadInstance& workload, const sched::Schedule& seed,
                             std::chrono::nanoseconds budget, std::uint64_t rng_seed);

/// Restart 0 runs plain greedy_edf; later restarts perturb the deadline keys
/// with seeded noise. Every restart is polished by local_search on an equal
/// slice of the budget; the best result wins, ties to the earliest restart.
/// Restart generators derive from rng_seed + restart index, so the parallel
/// path returns exactly the serial result.
sched::Schedule randomized_restarts(const sched::WorkloadInstance& workload, int restarts,
                                    std::chrono::nanoseconds budget, std::uint64_t rng_seed,
                                    bool parallel = true);

}  // namespace mts::approx
