#include <algorithm>

#include "mts/approx/approx.hpp"

namespace mts::approx {

sched::Schedule greedy_edf(const sched::WorkloadInstance& workload) {
    sched::validate_workload(workload);

    std::vector<const sched::ImageJob*> order;
    order.reserve(workload.images.size());
    for (const sched::ImageJob& job : workload.images) order.push_back(&job);
    std::sort(order.begin(), order.end(), [](const sched::ImageJob* a, const sched::ImageJob* b) {
        if (a->deadline != b->deadline) return a->deadline < b->deadline;
        return a->id < b->id;
    });

    std::vector<std::int64_t> admitted;
    Rational cumulative;
    for (const sched::ImageJob* job : order) {
        if (cumulative + job->analysis_time <= job->deadline) {
            cumulative += job->analysis_time;
            admitted.push_back(job->id);
        }
    }
    return sched::make_schedule(workload, admitted);
}

}  // namespace mts::approx
