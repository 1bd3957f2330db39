#include "mts/sched/schedule.hpp"

#include <algorithm>
#include <map>

#include "mts/errors.hpp"

namespace mts::sched {

Rational compaction_value(const std::vector<std::int64_t>& slots) {
    std::int64_t index_sum = 0;
    for (std::size_t i = 0; i < slots.size(); ++i) {
        if (slots[i] == 0) index_sum += static_cast<std::int64_t>(i) + 1;
    }
    return kCompactionWeight * Rational(index_sum);
}

Rational schedule_objective(const WorkloadInstance& workload,
                            const std::vector<std::int64_t>& ordered_scheduled) {
    const std::int64_t n = static_cast<std::int64_t>(workload.images.size());
    const std::int64_t k = static_cast<std::int64_t>(ordered_scheduled.size());
    Rational total;
    for (std::int64_t id : ordered_scheduled) {
        const ImageJob* job = workload.find(id);
        if (job == nullptr) throw ValidationError("schedule_objective: unknown image id " + std::to_string(id));
        total += job->analysis_time;
    }
    // null slots are k+1..n
    return total + kCompactionWeight * Rational((n * (n + 1) - k * (k + 1)) / 2);
}

Schedule make_schedule(const WorkloadInstance& workload,
                       const std::vector<std::int64_t>& ordered_scheduled) {
    Schedule s;
    s.slots.assign(workload.images.size(), 0);
    s.per_slot_completion.assign(workload.images.size(), Rational(0));

    if (ordered_scheduled.size() > workload.images.size()) {
        throw ValidationError("make_schedule: more scheduled jobs than slots");
    }
    for (std::size_t i = 0; i < ordered_scheduled.size(); ++i) {
        const ImageJob* job = workload.find(ordered_scheduled[i]);
        if (job == nullptr) {
            throw ValidationError("make_schedule: unknown image id " +
                                  std::to_string(ordered_scheduled[i]));
        }
        s.slots[i] = job->id;
    }

    Rational cumulative;
    for (std::size_t i = 0; i < s.slots.size(); ++i) {
        if (s.slots[i] != 0) cumulative += workload.find(s.slots[i])->analysis_time;
        s.per_slot_completion[i] = cumulative;
    }

    s.scheduled = ordered_scheduled;
    std::sort(s.scheduled.begin(), s.scheduled.end());
    for (const ImageJob& job : workload.images) {
        if (!std::binary_search(s.scheduled.begin(), s.scheduled.end(), job.id)) {
            s.dropped.push_back(job.id);
        }
    }
    std::sort(s.dropped.begin(), s.dropped.end());
    s.objective_value = schedule_objective(workload, ordered_scheduled);
    return s;
}

Schedule all_null_schedule(const WorkloadInstance& workload, bool budget_fallback) {
    Schedule s = make_schedule(workload, {});
    s.budget_fallback = budget_fallback;
    return s;
}

std::vector<Violation> validate_schedule(const WorkloadInstance& workload, const Schedule& schedule) {
    for (std::int64_t id : schedule.slots) {
        if (id != 0 && workload.find(id) == nullptr) {
            throw ValidationError("validate_schedule: unknown image id " + std::to_string(id));
        }
    }
    for (std::int64_t id : schedule.scheduled) {
        if (workload.find(id) == nullptr) {
            throw ValidationError("validate_schedule: unknown scheduled id " + std::to_string(id));
        }
    }
    for (std::int64_t id : schedule.dropped) {
        if (workload.find(id) == nullptr) {
            throw ValidationError("validate_schedule: unknown dropped id " + std::to_string(id));
        }
    }

    std::vector<Violation> out;
    const std::size_t n = workload.images.size();
    if (schedule.slots.size() != n) {
        out.push_back({"slot-count", 0,
                       "expected " + std::to_string(n) + " slots, got " +
                           std::to_string(schedule.slots.size())});
        return out;
    }

    // each image in at most one slot
    std::map<std::int64_t, int> placements;
    for (std::size_t i = 0; i < n; ++i) {
        if (schedule.slots[i] != 0) ++placements[schedule.slots[i]];
    }
    for (std::size_t i = 0; i < n; ++i) {
        std::int64_t id = schedule.slots[i];
        if (id != 0 && placements[id] > 1) {
            out.push_back({"at-most-once", static_cast<int>(i) + 1,
                           "image " + std::to_string(id) + " appears in " +
                               std::to_string(placements[id]) + " slots"});
        }
    }

    // scheduled/dropped partition matches the slot contents
    std::vector<std::int64_t> in_slots;
    for (std::int64_t id : schedule.slots) {
        if (id != 0) in_slots.push_back(id);
    }
    std::sort(in_slots.begin(), in_slots.end());
    in_slots.erase(std::unique(in_slots.begin(), in_slots.end()), in_slots.end());
    if (in_slots != schedule.scheduled) {
        out.push_back({"scheduled-set", 0, "scheduled set does not match slot contents"});
    }
    std::vector<std::int64_t> uni;
    std::merge(schedule.scheduled.begin(), schedule.scheduled.end(), schedule.dropped.begin(),
               schedule.dropped.end(), std::back_inserter(uni));
    std::vector<std::int64_t> all;
    for (const ImageJob& job : workload.images) all.push_back(job.id);
    std::sort(all.begin(), all.end());
    if (uni != all) {
        out.push_back({"partition", 0, "scheduled and dropped do not partition the workload"});
    }

    // prefix completion times and deadlines
    Rational cumulative;
    for (std::size_t i = 0; i < n; ++i) {
        std::int64_t id = schedule.slots[i];
        if (id != 0) {
            const ImageJob* job = workload.find(id);
            cumulative += job->analysis_time;
            if (cumulative > job->deadline) {
                out.push_back({"deadline", static_cast<int>(i) + 1,
                               "image " + std::to_string(id) + " completes at " +
                                   cumulative.to_string() + " > deadline " +
                                   job->deadline.to_string()});
            }
        }
        if (i < schedule.per_slot_completion.size() && schedule.per_slot_completion[i] != cumulative) {
            out.push_back({"completion-prefix", static_cast<int>(i) + 1,
                           "recorded completion " + schedule.per_slot_completion[i].to_string() +
                               " != recomputed " + cumulative.to_string()});
        }
    }
    if (schedule.per_slot_completion.size() != n) {
        out.push_back({"completion-prefix", 0, "per_slot_completion length mismatch"});
    }

    // objective decomposition: sum of scheduled analysis times + compaction
    Rational expected;
    for (std::int64_t id : schedule.scheduled) expected += workload.find(id)->analysis_time;
    expected += compaction_value(schedule.slots);
    if (expected != schedule.objective_value) {
        out.push_back({"objective", 0,
                       "recorded " + schedule.objective_value.to_string() + " != recomputed " +
                           expected.to_string()});
    }
    return out;
}

}  // namespace mts::sched
