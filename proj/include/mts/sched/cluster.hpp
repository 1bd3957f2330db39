#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "mts/rational.hpp"
#include "mts/sched/workload.hpp"

namespace mts::sched {

struct MachineSpec {
    std::int64_t id = 0;  // >= 1, unique
    int cores = 1;
    Rational energy_budget;     // per scheduling round
    Rational ram_capacity;
    Rational energy_per_time;   // energy units per ms of analysis
    std::size_t slots_per_core = 0;  // 0: use the number of offered images
};

struct ClusterSpec {
    std::vector<MachineSpec> machines;
    Rational default_bandwidth{1000};  // data units per ms
    std::map<std::pair<std::int64_t, std::int64_t>, Rational> links;  // keyed (min,max)

    const MachineSpec* find(std::int64_t id) const;

    /// Link rate between two distinct machines; symmetric.
    Rational bandwidth(std::int64_t a, std::int64_t b) const;

    /// size / bandwidth(origin, to); zero on the origin machine itself.
    Rational transfer_time(const ImageJob& job, std::int64_t to_machine) const;
};

void validate_cluster(const ClusterSpec& cluster);  // throws ValidationError

}  // namespace mts::sched
