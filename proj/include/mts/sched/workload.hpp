#pragma once

#include <cstdint>
#include <vector>

#include "mts/rational.hpp"

namespace mts::sched {

/// One image to analyze. Durations are milliseconds, exact.
struct ImageJob {
    std::int64_t id = 0;     // >= 1; 0 is the reserved null image
    Rational analysis_time;  // > 0
    Rational deadline;       // >= 0, offset from schedule start
    Rational size;           // data volume, drives transfer times when offloading
    Rational ram_need;
    bool priority = false;
    std::int64_t origin_machine = 0;  // 0: not tied to any cluster machine
};

struct WorkloadInstance {
    std::vector<ImageJob> images;

    const ImageJob* find(std::int64_t id) const;
    Rational total_analysis_time() const;
};

void validate_workload(const WorkloadInstance& workload);  // throws ValidationError

}  // namespace mts::sched
