#pragma once

#include <chrono>
#include <optional>
#include <span>
#include <utility>

#include "mts/ilp/model.hpp"
#include "mts/sched/schedule.hpp"
#include "mts/sched/workload.hpp"

namespace mts::sched {

/// Variable layout of the local admission model: slots 1..n by rows, and per
/// slot one column for the null image (column 0) plus one per image in
/// workload order.
struct LocalVarMap {
    std::size_t n = 0;
    std::vector<std::int64_t> ids;  // column k (1-based) holds ids[k-1]

    std::size_t var(std::size_t slot, std::size_t col) const { return (slot - 1) * (n + 1) + col; }
    std::size_t num_vars() const { return n * (n + 1); }
};

/// Single-machine admission program over n slots:
///   maximize  sum of admitted analysis times
///             + 10^-5 * sum of null slot indices
///   s.t.      each slot holds exactly one column (null included),
///             each image is assigned at most once,
///             cumulative analysis time through slot i stays within the
///             deadline of the image at slot i; null slots relax that row
///             with a big-M term so they are deadline-free.
std::pair<ilp::IlpModel, LocalVarMap> build_local_model(const WorkloadInstance& workload);

Schedule decode_local(const WorkloadInstance& workload, const LocalVarMap& map,
                      std::span<const std::uint8_t> assignment, const Rational& objective);

/// Build, solve, decode. Budget exhaustion without an incumbent degrades to
/// the all-null schedule (always feasible), flagged budget_fallback.
Schedule solve_local(const WorkloadInstance& workload,
                     std::optional<std::chrono::nanoseconds> budget = {});

}  // namespace mts::sched
