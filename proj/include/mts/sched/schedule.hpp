#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mts/rational.hpp"
#include "mts/sched/workload.hpp"

namespace mts::sched {

/// Weight of the objective term that rewards null assignments at high slot
/// indices, pushing real jobs into a compact prefix.
inline const Rational kCompactionWeight{1, 100000};

/// Slot assignment for one execution chain. Slot i (1-based) holds an image
/// id, or 0 for the null image.
struct Schedule {
    std::vector<std::int64_t> slots;            // length = number of images offered
    std::vector<std::int64_t> scheduled;        // sorted ids
    std::vector<std::int64_t> dropped;          // sorted ids
    Rational objective_value;
    std::vector<Rational> per_slot_completion;  // cumulative analysis time through slot i
    bool budget_fallback = false;               // all-null schedule stood in for a missing incumbent
};

struct Violation {
    std::string constraint;  // e.g. "deadline"
    int slot = 0;            // 1-based; 0 when not slot-specific
    std::string detail;
};

/// 10^-5 * sum of null slot indices.
Rational compaction_value(const std::vector<std::int64_t>& slots);

/// Objective of the canonical layout: the given jobs in order at slots
/// 1..k, nulls after.
Rational schedule_objective(const WorkloadInstance& workload,
                            const std::vector<std::int64_t>& ordered_scheduled);

/// Builds the canonical schedule for the given job order; does not check
/// deadlines.
Schedule make_schedule(const WorkloadInstance& workload,
                       const std::vector<std::int64_t>& ordered_scheduled);

Schedule all_null_schedule(const WorkloadInstance& workload, bool budget_fallback);

/// Independent checker: recomputes everything from the workload and reports
/// every violated constraint. Empty result == valid schedule.
/// Throws ValidationError if the schedule references unknown image ids.
std::vector<Violation> validate_schedule(const WorkloadInstance& workload, const Schedule& schedule);

}  // namespace mts::sched
