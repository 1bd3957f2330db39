#pragma once

#include <chrono>
#include <map>
#include <optional>
#include <set>
#include <utility>

#include "mts/ilp/model.hpp"
#include "mts/sched/cluster.hpp"
#include "mts/sched/schedule.hpp"
#include "mts/sched/workload.hpp"

namespace mts::sched {

enum class ObjectiveMode { MaxComputation, MinEnergyPerWork };

/// Variable layout of the cluster model: chains (machine, core) sorted by id
/// then core, each with the same slot/column grid as the local model.
struct GlobalVarMap {
    struct Chain {
        std::int64_t machine;
        int core;  // 0-based
    };
    std::vector<Chain> chains;
    std::size_t slots = 0;          // per chain
    std::vector<std::int64_t> ids;  // column order, offered-workload order

    std::size_t var(std::size_t chain, std::size_t slot, std::size_t col) const {
        return (chain * slots + (slot - 1)) * (ids.size() + 1) + col;
    }
    std::size_t num_vars() const { return chains.size() * slots * (ids.size() + 1); }
};

struct GlobalBuildOptions {
    ObjectiveMode mode = ObjectiveMode::MaxComputation;
    Rational priority_weight{10};
    Rational energy_tradeoff{1, 10};  // lambda in MinEnergyPerWork
    std::size_t slots_per_core = 0;   // 0: per-machine spec, then offered count
    /// image id -> machines it may not run on this round
    std::map<std::int64_t, std::set<std::int64_t>> excluded;
    /// optional cap on a machine's per-chain occupancy (transfer + analysis)
    std::map<std::int64_t, Rational> chain_capacity;
};

/// Cluster admission program over variables (machine, core, slot, column).
/// Occupancy of an image on a machine is transfer time + analysis time.
/// Constraints: one column per chain slot, each image at most once in the
/// whole cluster, per-chain prefix occupancy within deadlines (big-M-relaxed
/// null columns), per-machine energy, per-machine RAM summed across cores at
/// each slot index, plus any exclusions and chain capacity caps.
std::pair<ilp::IlpModel, GlobalVarMap> build_global_model(const WorkloadInstance& offered,
                                                          const ClusterSpec& cluster,
                                                          const GlobalBuildOptions& options = {});

struct ChainSchedule {
    std::vector<std::int64_t> slots;   // 0 = null
    std::vector<Rational> completion;  // cumulative occupancy through each slot
};

struct GlobalSchedule {
    std::map<std::pair<std::int64_t, int>, ChainSchedule> chains;
    std::vector<std::int64_t> dropped;  // sorted
    Rational objective_value;
    ObjectiveMode mode = ObjectiveMode::MaxComputation;
    bool budget_fallback = false;

    std::vector<std::int64_t> scheduled_ids() const;  // sorted
};

GlobalSchedule schedule_cluster(const WorkloadInstance& offered, const ClusterSpec& cluster,
                                const GlobalBuildOptions& options = {},
                                std::optional<std::chrono::nanoseconds> budget = {});

struct GlobalViolation {
    std::string constraint;
    std::int64_t machine = 0;
    int core = 0;
    int slot = 0;
    std::string detail;
};

/// Independent checker for cluster schedules: at-most-once, deadlines under
/// transfer+analysis occupancy, energy and RAM budgets, exclusions.
std::vector<GlobalViolation> validate_global(const WorkloadInstance& offered,
                                             const ClusterSpec& cluster,
                                             const GlobalSchedule& schedule,
                                             const GlobalBuildOptions& options = {});

struct LocalRoundResult {
    std::int64_t machine = 0;
    WorkloadInstance workload;  // deadlines relative to the round start, uncapped
    Schedule schedule;
};

struct OffloadOptions {
    Rational elapsed_ms;  // local round wall time; subtracted from remaining deadlines
    GlobalBuildOptions build;
    std::optional<std::chrono::nanoseconds> budget;
};

/// Gathers every image dropped by the local rounds, rebases deadlines by the
/// configured elapsed time, bars each deadline-dropped image from its origin
/// machine for this round, and reschedules the rest across the cluster.
GlobalSchedule offload_round(const std::vector<LocalRoundResult>& locals,
                             const ClusterSpec& cluster, const OffloadOptions& options);

}  // namespace mts::sched
