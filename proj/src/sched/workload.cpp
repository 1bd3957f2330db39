#include "mts/sched/workload.hpp"

#include <unordered_set>

#include "mts/errors.hpp"

namespace mts::sched {

const ImageJob* WorkloadInstance::find(std::int64_t id) const {
    for (const ImageJob& job : images) {
        if (job.id == id) return &job;
    }
    return nullptr;
}

Rational WorkloadInstance::total_analysis_time() const {
    Rational total;
    for (const ImageJob& job : images) total += job.analysis_time;
    return total;
}

void validate_workload(const WorkloadInstance& workload) {
    std::unordered_set<std::int64_t> seen;
    for (const ImageJob& job : workload.images) {
        if (job.id < 1) {
            throw ValidationError("workload: image id " + std::to_string(job.id) +
                                  " (ids start at 1; 0 is the null image)");
        }
        if (!seen.insert(job.id).second) {
            throw ValidationError("workload: duplicate image id " + std::to_string(job.id));
        }
        if (job.analysis_time <= Rational(0)) {
            throw ValidationError("workload: image " + std::to_string(job.id) +
                                  " has non-positive analysis time");
        }
        if (job.deadline < Rational(0)) {
            throw ValidationError("workload: image " + std::to_string(job.id) +
                                  " has negative deadline");
        }
        if (job.size < Rational(0) || job.ram_need < Rational(0)) {
            throw ValidationError("workload: image " + std::to_string(job.id) +
                                  " has negative size or ram");
        }
    }
}

}  // namespace mts::sched
