#include <algorithm>

#include "mts/approx/approx.hpp"
#include "mts/errors.hpp"
#include "mts/util/rng.hpp"

namespace mts::approx {

namespace {

// Greedy admission with perturbed deadline keys. Admission itself always
// checks the true deadlines, so feasibility is unaffected; only the visit
// order changes.
sched::Schedule perturbed_greedy(const sched::WorkloadInstance& workload, util::SplitMix64& rng) {
    struct Keyed {
        const sched::ImageJob* job;
        Rational key;
    };
    std::vector<Keyed> order;
    order.reserve(workload.images.size());
    for (const sched::ImageJob& job : workload.images) {
        // key = deadline * (1 + u/5) with u uniform on a 2^20 grid
        Rational noise(static_cast<std::int64_t>(rng.bounded(1u << 20)),
                       std::int64_t{5} * (1 << 20));
        order.push_back({&job, job.deadline * (Rational(1) + noise)});
    }
    std::sort(order.begin(), order.end(), [](const Keyed& a, const Keyed& b) {
        if (a.key != b.key) return a.key < b.key;
        return a.job->id < b.job->id;
    });

    std::vector<std::int64_t> admitted;
    Rational cumulative;
    for (const Keyed& k : order) {
        if (cumulative + k.job->analysis_time <= k.job->deadline) {
            cumulative += k.job->analysis_time;
            admitted.push_back(k.job->id);
        }
    }
    return sched::make_schedule(workload, admitted);
}

sched::Schedule run_restart(const sched::WorkloadInstance& workload, int restart,
                            std::chrono::nanoseconds slice, std::uint64_t rng_seed) {
    std::uint64_t seed = rng_seed + static_cast<std::uint64_t>(restart);
    sched::Schedule start;
    if (restart == 0) {
        start = greedy_edf(workload);
    } else {
        util::SplitMix64 rng(seed);
        start = perturbed_greedy(workload, rng);
    }
    return local_search(workload, start, slice, seed ^ 0x9e3779b97f4a7c15ULL);
}

}  // namespace

sched::Schedule randomized_restarts(const sched::WorkloadInstance& workload, int restarts,
                                    std::chrono::nanoseconds budget, std::uint64_t rng_seed,
                                    bool parallel) {
    if (restarts < 1) throw ValidationError("randomized_restarts: restarts must be >= 1");
    sched::validate_workload(workload);

    const std::chrono::nanoseconds slice = budget / restarts;
    std::vector<sched::Schedule> results(static_cast<std::size_t>(restarts));

#ifdef _OPENMP
    if (parallel && restarts > 1) {
#pragma omp parallel for schedule(dynamic)
        for (int r = 0; r < restarts; ++r) {
            results[static_cast<std::size_t>(r)] = run_restart(workload, r, slice, rng_seed);
        }
    } else {
        for (int r = 0; r < restarts; ++r) {
            results[static_cast<std::size_t>(r)] = run_restart(workload, r, slice, rng_seed);
        }
    }
#else
    (void)parallel;
    for (int r = 0; r < restarts; ++r) {
        results[static_cast<std::size_t>(r)] = run_restart(workload, r, slice, rng_seed);
    }
#endif

    // best objective wins; ties go to the earliest restart
    std::size_t best = 0;
    for (std::size_t r = 1; r < results.size(); ++r) {
        if (results[r].objective_value > results[best].objective_value) best = r;
    }
    return results[best];
}

}  // namespace mts::approx
