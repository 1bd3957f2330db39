#include "mts/sched/cluster.hpp"

#include <algorithm>

#include "mts/errors.hpp"

namespace mts::sched {

const MachineSpec* ClusterSpec::find(std::int64_t id) const {
    for (const MachineSpec& m : machines) {
        if (m.id == id) return &m;
    }
    return nullptr;
}

Rational ClusterSpec::bandwidth(std::int64_t a, std::int64_t b) const {
    if (a == b) throw ValidationError("bandwidth: no link from a machine to itself");
    auto key = std::minmax(a, b);
    auto it = links.find({key.first, key.second});
    return it != links.end() ? it->second : default_bandwidth;
}

Rational ClusterSpec::transfer_time(const ImageJob& job, std::int64_t to_machine) const {
    if (job.origin_machine == to_machine) return Rational(0);
    return job.size / bandwidth(job.origin_machine, to_machine);
}

void validate_cluster(const ClusterSpec& cluster) {
    if (cluster.machines.empty()) {
        throw ValidationError("cluster: at least one machine is required");
    }
    std::vector<std::int64_t> ids;
    for (const MachineSpec& m : cluster.machines) {
        if (m.id < 1) throw ValidationError("cluster: machine ids start at 1");
        if (m.cores < 1) {
            throw ValidationError("cluster: machine " + std::to_string(m.id) +
                                  " must have at least one core");
        }
        if (m.energy_budget < Rational(0) || m.ram_capacity < Rational(0) ||
            m.energy_per_time < Rational(0)) {
            throw ValidationError("cluster: machine " + std::to_string(m.id) +
                                  " has a negative budget");
        }
        ids.push_back(m.id);
    }
    std::sort(ids.begin(), ids.end());
    if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
        throw ValidationError("cluster: duplicate machine id");
    }
    if (cluster.default_bandwidth <= Rational(0)) {
        throw ValidationError("cluster: default bandwidth must be positive");
    }
    for (const auto& [key, rate] : cluster.links) {
        if (rate <= Rational(0)) {
            throw ValidationError("cluster: link " + std::to_string(key.first) + "-" +
                                  std::to_string(key.second) + " must have positive bandwidth");
        }
    }
}

}  // namespace mts::sched
