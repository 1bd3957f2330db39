#include "mts/sched/global.hpp"

#include <algorithm>

#include "mts/errors.hpp"

namespace mts::sched {

namespace {

Rational job_weight(const ImageJob& job, const GlobalBuildOptions& options) {
    return job.priority ? options.priority_weight : Rational(1);
}

GlobalVarMap make_var_map(const WorkloadInstance& offered, const ClusterSpec& cluster,
                          const GlobalBuildOptions& options) {
    GlobalVarMap map;
    for (const ImageJob& job : offered.images) map.ids.push_back(job.id);

    std::vector<const MachineSpec*> machines;
    for (const MachineSpec& m : cluster.machines) machines.push_back(&m);
    std::sort(machines.begin(), machines.end(),
              [](const MachineSpec* a, const MachineSpec* b) { return a->id < b->id; });

    for (const MachineSpec* m : machines) {
        std::size_t slots = options.slots_per_core != 0 ? options.slots_per_core
                            : m->slots_per_core != 0   ? m->slots_per_core
                                                       : offered.images.size();
        for (int core = 0; core < m->cores; ++core) {
            map.chains.push_back({m->id, core, slots, 0});
        }
    }
    std::size_t base = 0;
    for (GlobalVarMap::Chain& chain : map.chains) {
        chain.var_base = base;
        base += chain.slots * map.cols();
    }
    return map;
}

}  // namespace

std::vector<std::int64_t> GlobalSchedule::scheduled_ids() const {
    std::vector<std::int64_t> out;
    for (const auto& [key, chain] : chains) {
        for (std::int64_t id : chain.slots) {
            if (id != 0) out.push_back(id);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::pair<ilp::IlpModel, GlobalVarMap> build_global_model(const WorkloadInstance& offered,
                                                          const ClusterSpec& cluster,
                                                          const GlobalBuildOptions& options) {
    validate_workload(offered);
    validate_cluster(cluster);
    if (offered.images.empty()) {
        throw ValidationError("build_global_model: empty offered set");
    }
    for (const ImageJob& job : offered.images) {
        if (cluster.find(job.origin_machine) == nullptr) {
            throw ValidationError("build_global_model: image " + std::to_string(job.id) +
                                  " originates on unknown machine " +
                                  std::to_string(job.origin_machine));
        }
    }

    GlobalVarMap map = make_var_map(offered, cluster, options);
    const std::size_t vars = map.num_vars();
    const std::size_t cols = map.cols();

    // occupancy of image col j on machine m: transfer + analysis
    auto occupancy = [&](std::int64_t machine, std::size_t col) {
        const ImageJob& job = offered.images[col - 1];
        return cluster.transfer_time(job, machine) + job.analysis_time;
    };

    Rational big_m;
    for (const ImageJob& job : offered.images) {
        Rational worst;
        for (const MachineSpec& m : cluster.machines) {
            Rational occ = cluster.transfer_time(job, m.id) + job.analysis_time;
            if (occ > worst) worst = occ;
        }
        big_m += worst;
    }

    ilp::IlpModel model;
    model.num_vars = vars;
    model.objective.assign(vars, Rational(0));
    model.var_labels.resize(vars);

    for (std::size_t c = 0; c < map.chains.size(); ++c) {
        const GlobalVarMap::Chain& chain = map.chains[c];
        std::string prefix = "m" + std::to_string(chain.machine) + ".c" + std::to_string(chain.core);
        const MachineSpec* spec = cluster.find(chain.machine);
        for (std::size_t slot = 1; slot <= chain.slots; ++slot) {
            model.objective[map.var(c, slot, 0)] =
                kCompactionWeight * Rational(static_cast<std::int64_t>(slot));
            model.var_labels[map.var(c, slot, 0)] =
                prefix + ".slot" + std::to_string(slot) + ":null";
            for (std::size_t col = 1; col < cols; ++col) {
                const ImageJob& job = offered.images[col - 1];
                Rational coeff = job_weight(job, options) * job.analysis_time;
                if (options.mode == ObjectiveMode::MinEnergyPerWork) {
                    coeff -= options.energy_tradeoff * spec->energy_per_time * job.analysis_time;
                }
                model.objective[map.var(c, slot, col)] = coeff;
                model.var_labels[map.var(c, slot, col)] =
                    prefix + ".slot" + std::to_string(slot) + ":img" + std::to_string(job.id);
            }
        }
    }

    // one column per chain slot
    for (std::size_t c = 0; c < map.chains.size(); ++c) {
        for (std::size_t slot = 1; slot <= map.chains[c].slots; ++slot) {
            ilp::LinearConstraint row;
            row.coeffs.assign(vars, Rational(0));
            for (std::size_t col = 0; col < cols; ++col) row.coeffs[map.var(c, slot, col)] = Rational(1);
            row.relation = ilp::Relation::EQ;
            row.bound = Rational(1);
            model.constraints.push_back(std::move(row));
        }
    }

    // each image at most once anywhere in the cluster
    for (std::size_t col = 1; col < cols; ++col) {
        ilp::LinearConstraint row;
        row.coeffs.assign(vars, Rational(0));
        for (std::size_t c = 0; c < map.chains.size(); ++c) {
            for (std::size_t slot = 1; slot <= map.chains[c].slots; ++slot) {
                row.coeffs[map.var(c, slot, col)] = Rational(1);
            }
        }
        row.relation = ilp::Relation::LE;
        row.bound = Rational(1);
        model.constraints.push_back(std::move(row));
    }

    // per-chain prefix occupancy within the slot image's deadline
    for (std::size_t c = 0; c < map.chains.size(); ++c) {
        const GlobalVarMap::Chain& chain = map.chains[c];
        for (std::size_t slot = 1; slot <= chain.slots; ++slot) {
            ilp::LinearConstraint row;
            row.coeffs.assign(vars, Rational(0));
            for (std::size_t k = 1; k <= slot; ++k) {
                for (std::size_t col = 1; col < cols; ++col) {
                    row.coeffs[map.var(c, k, col)] += occupancy(chain.machine, col);
                }
            }
            for (std::size_t col = 1; col < cols; ++col) {
                row.coeffs[map.var(c, slot, col)] -= offered.images[col - 1].deadline;
            }
            row.coeffs[map.var(c, slot, 0)] = -big_m;
            row.relation = ilp::Relation::LE;
            row.bound = Rational(0);
            model.constraints.push_back(std::move(row));
        }
    }

    // per-machine energy: analysis time only, transfers draw on the network
    for (const MachineSpec& m : cluster.machines) {
        ilp::LinearConstraint row;
        row.coeffs.assign(vars, Rational(0));
        for (std::size_t c = 0; c < map.chains.size(); ++c) {
            if (map.chains[c].machine != m.id) continue;
            for (std::size_t slot = 1; slot <= map.chains[c].slots; ++slot) {
                for (std::size_t col = 1; col < cols; ++col) {
                    row.coeffs[map.var(c, slot, col)] =
                        m.energy_per_time * offered.images[col - 1].analysis_time;
                }
            }
        }
        row.relation = ilp::Relation::LE;
        row.bound = m.energy_budget;
        model.constraints.push_back(std::move(row));
    }

    // per-machine RAM across cores at each slot index
    for (const MachineSpec& m : cluster.machines) {
        std::size_t max_slots = 0;
        for (const GlobalVarMap::Chain& chain : map.chains) {
            if (chain.machine == m.id) max_slots = std::max(max_slots, chain.slots);
        }
        for (std::size_t slot = 1; slot <= max_slots; ++slot) {
            ilp::LinearConstraint row;
            row.coeffs.assign(vars, Rational(0));
            for (std::size_t c = 0; c < map.chains.size(); ++c) {
                if (map.chains[c].machine != m.id || slot > map.chains[c].slots) continue;
                for (std::size_t col = 1; col < cols; ++col) {
                    row.coeffs[map.var(c, slot, col)] = offered.images[col - 1].ram_need;
                }
            }
            row.relation = ilp::Relation::LE;
            row.bound = m.ram_capacity;
            model.constraints.push_back(std::move(row));
        }
    }

    // exclusions: barred (image, machine) pairs can hold no slot there
    for (const auto& [image_id, machines] : options.excluded) {
        auto it = std::find(map.ids.begin(), map.ids.end(), image_id);
        if (it == map.ids.end()) continue;
        std::size_t col = static_cast<std::size_t>(it - map.ids.begin()) + 1;
        for (std::int64_t machine : machines) {
            ilp::LinearConstraint row;
            row.coeffs.assign(vars, Rational(0));
            bool any = false;
            for (std::size_t c = 0; c < map.chains.size(); ++c) {
                if (map.chains[c].machine != machine) continue;
                for (std::size_t slot = 1; slot <= map.chains[c].slots; ++slot) {
                    row.coeffs[map.var(c, slot, col)] = Rational(1);
                    any = true;
                }
            }
            if (!any) continue;
            row.relation = ilp::Relation::LE;
            row.bound = Rational(0);
            model.constraints.push_back(std::move(row));
        }
    }

    // optional per-chain occupancy caps
    for (std::size_t c = 0; c < map.chains.size(); ++c) {
        auto it = options.chain_capacity.find(map.chains[c].machine);
        if (it == options.chain_capacity.end()) continue;
        ilp::LinearConstraint row;
        row.coeffs.assign(vars, Rational(0));
        for (std::size_t slot = 1; slot <= map.chains[c].slots; ++slot) {
            for (std::size_t col = 1; col < cols; ++col) {
                row.coeffs[map.var(c, slot, col)] = occupancy(map.chains[c].machine, col);
            }
        }
        row.relation = ilp::Relation::LE;
        row.bound = it->second;
        model.constraints.push_back(std::move(row));
    }

    return {std::move(model), std::move(map)};
}

namespace {

GlobalSchedule decode_global(const WorkloadInstance& offered, const ClusterSpec& cluster,
                             const GlobalVarMap& map, const GlobalBuildOptions& options,
                             std::span<const std::uint8_t> assignment, const Rational& objective) {
    GlobalSchedule out;
    out.mode = options.mode;
    out.objective_value = objective;

    std::vector<std::int64_t> scheduled;
    for (std::size_t c = 0; c < map.chains.size(); ++c) {
        const GlobalVarMap::Chain& chain = map.chains[c];
        ChainSchedule cs;
        cs.slots.assign(chain.slots, 0);
        cs.completion.assign(chain.slots, Rational(0));
        Rational cumulative;
        for (std::size_t slot = 1; slot <= chain.slots; ++slot) {
            int chosen = -1;
            for (std::size_t col = 0; col < map.cols(); ++col) {
                if (assignment[map.var(c, slot, col)]) {
                    if (chosen >= 0) throw InternalError("decode_global: slot holds two columns");
                    chosen = static_cast<int>(col);
                }
            }
            if (chosen < 0) throw InternalError("decode_global: empty slot");
            if (chosen > 0) {
                const ImageJob& job = offered.images[static_cast<std::size_t>(chosen) - 1];
                cs.slots[slot - 1] = job.id;
                cumulative += cluster.transfer_time(job, chain.machine) + job.analysis_time;
                scheduled.push_back(job.id);
            }
            cs.completion[slot - 1] = cumulative;
        }
        out.chains[{chain.machine, chain.core}] = std::move(cs);
    }

    std::sort(scheduled.begin(), scheduled.end());
    for (const ImageJob& job : offered.images) {
        if (!std::binary_search(scheduled.begin(), scheduled.end(), job.id)) {
            out.dropped.push_back(job.id);
        }
    }
    std::sort(out.dropped.begin(), out.dropped.end());
    return out;
}

GlobalSchedule all_dropped_global(const WorkloadInstance& offered, const ClusterSpec& cluster,
                                  const GlobalBuildOptions& options, bool budget_fallback) {
    GlobalSchedule out;
    out.mode = options.mode;
    out.budget_fallback = budget_fallback;
    GlobalVarMap map = make_var_map(offered, cluster, options);
    Rational compaction;
    for (const GlobalVarMap::Chain& chain : map.chains) {
        ChainSchedule cs;
        cs.slots.assign(chain.slots, 0);
        cs.completion.assign(chain.slots, Rational(0));
        std::int64_t s = static_cast<std::int64_t>(chain.slots);
        compaction += kCompactionWeight * Rational(s * (s + 1) / 2);
        out.chains[{chain.machine, chain.core}] = std::move(cs);
    }
    for (const ImageJob& job : offered.images) out.dropped.push_back(job.id);
    std::sort(out.dropped.begin(), out.dropped.end());
    out.objective_value = compaction;
    return out;
}

}  // namespace

GlobalSchedule schedule_cluster(const WorkloadInstance& offered, const ClusterSpec& cluster,
                                const GlobalBuildOptions& options,
                                std::optional<std::chrono::nanoseconds> budget) {
    auto [model, map] = build_global_model(offered, cluster, options);
    ilp::SolveOptions solve_options;
    solve_options.budget = budget;
    ilp::SolveResult result = ilp::solve_exact(model, solve_options);

    switch (result.status) {
        case ilp::SolveStatus::Optimal:
        case ilp::SolveStatus::FeasibleIncumbent:
            return decode_global(offered, cluster, map, options, result.assignment, result.value);
        case ilp::SolveStatus::Infeasible:  // unreachable: all-null is feasible
        case ilp::SolveStatus::BudgetExhaustedNoIncumbent:
            return all_dropped_global(offered, cluster, options, true);
    }
    throw InternalError("schedule_cluster: unhandled solver status");
}

std::vector<GlobalViolation> validate_global(const WorkloadInstance& offered,
                                             const ClusterSpec& cluster,
                                             const GlobalSchedule& schedule,
                                             const GlobalBuildOptions& options) {
    std::vector<GlobalViolation> out;

    std::map<std::int64_t, int> seen;
    std::map<std::int64_t, Rational> energy_used;
    Rational objective;

    for (const auto& [key, chain] : schedule.chains) {
        const auto [machine_id, core] = key;
        const MachineSpec* machine = cluster.find(machine_id);
        if (machine == nullptr) {
            out.push_back({"machine", machine_id, core, 0, "unknown machine"});
            continue;
        }
        Rational cumulative;
        for (std::size_t i = 0; i < chain.slots.size(); ++i) {
            std::int64_t id = chain.slots[i];
            std::int64_t slot_index = static_cast<std::int64_t>(i) + 1;
            if (id == 0) {
                objective += kCompactionWeight * Rational(slot_index);
            } else {
                const ImageJob* job = offered.find(id);
                if (job == nullptr) {
                    out.push_back({"image", machine_id, core, static_cast<int>(slot_index),
                                   "unknown image " + std::to_string(id)});
                    continue;
                }
                ++seen[id];
                cumulative += cluster.transfer_time(*job, machine_id) + job->analysis_time;
                if (cumulative > job->deadline) {
                    out.push_back({"deadline", machine_id, core, static_cast<int>(slot_index),
                                   "image " + std::to_string(id) + " completes at " +
                                       cumulative.to_string() + " > " + job->deadline.to_string()});
                }
                energy_used[machine_id] += machine->energy_per_time * job->analysis_time;
                Rational coeff = job_weight(*job, options) * job->analysis_time;
                if (schedule.mode == ObjectiveMode::MinEnergyPerWork) {
                    coeff -= options.energy_tradeoff * machine->energy_per_time * job->analysis_time;
                }
                objective += coeff;
                auto excl = options.excluded.find(id);
                if (excl != options.excluded.end() && excl->second.count(machine_id) != 0) {
                    out.push_back({"exclusion", machine_id, core, static_cast<int>(slot_index),
                                   "image " + std::to_string(id) + " barred from this machine"});
                }
            }
            if (i < chain.completion.size() && chain.completion[i] != cumulative) {
                out.push_back({"completion-prefix", machine_id, core, static_cast<int>(slot_index),
                               "recorded completion differs from recomputed occupancy"});
            }
        }
    }

    for (const auto& [id, count] : seen) {
        if (count > 1) {
            out.push_back({"at-most-once", 0, 0, 0,
                           "image " + std::to_string(id) + " scheduled " + std::to_string(count) +
                               " times"});
        }
    }

    for (const MachineSpec& m : cluster.machines) {
        auto it = energy_used.find(m.id);
        if (it != energy_used.end() && it->second > m.energy_budget) {
            out.push_back({"energy", m.id, 0, 0,
                           "used " + it->second.to_string() + " > budget " +
                               m.energy_budget.to_string()});
        }
        // RAM per slot index across the machine's cores
        std::size_t max_slots = 0;
        for (const auto& [key, chain] : schedule.chains) {
            if (key.first == m.id) max_slots = std::max(max_slots, chain.slots.size());
        }
        for (std::size_t i = 0; i < max_slots; ++i) {
            Rational ram;
            for (const auto& [key, chain] : schedule.chains) {
                if (key.first != m.id || i >= chain.slots.size() || chain.slots[i] == 0) continue;
                const ImageJob* job = offered.find(chain.slots[i]);
                if (job != nullptr) ram += job->ram_need;
            }
            if (ram > m.ram_capacity) {
                out.push_back({"ram", m.id, 0, static_cast<int>(i) + 1,
                               "resident " + ram.to_string() + " > capacity " +
                                   m.ram_capacity.to_string()});
            }
        }
    }

    // scheduled/dropped partition
    std::vector<std::int64_t> scheduled = schedule.scheduled_ids();
    std::vector<std::int64_t> uni;
    std::merge(scheduled.begin(), scheduled.end(), schedule.dropped.begin(),
               schedule.dropped.end(), std::back_inserter(uni));
    std::vector<std::int64_t> all;
    for (const ImageJob& job : offered.images) all.push_back(job.id);
    std::sort(all.begin(), all.end());
    if (uni != all) {
        out.push_back({"partition", 0, 0, 0, "scheduled and dropped do not partition the offers"});
    }

    if (objective != schedule.objective_value) {
        out.push_back({"objective", 0, 0, 0,
                       "recorded " + schedule.objective_value.to_string() + " != recomputed " +
                           objective.to_string()});
    }
    return out;
}

GlobalSchedule offload_round(const std::vector<LocalRoundResult>& locals,
                             const ClusterSpec& cluster, const OffloadOptions& options) {
    validate_cluster(cluster);

    WorkloadInstance offered;
    GlobalBuildOptions build = options.build;

    for (const LocalRoundResult& local : locals) {
        for (std::int64_t id : local.schedule.dropped) {
            const ImageJob* job = local.workload.find(id);
            if (job == nullptr) {
                throw ValidationError("offload_round: dropped image " + std::to_string(id) +
                                      " not in the round workload");
            }
            ImageJob moved = *job;
            Rational remaining = moved.deadline - options.elapsed_ms;
            moved.deadline = remaining < Rational(0) ? Rational(0) : remaining;
            offered.images.push_back(moved);
            if (!local.schedule.budget_fallback) {
                // dropped on deadline grounds: its origin is out for this round
                build.excluded[id].insert(local.machine);
            }
        }
    }

    if (offered.images.empty()) {
        GlobalSchedule empty;
        empty.mode = build.mode;
        return empty;
    }
    validate_workload(offered);

    // nothing to solve if every image is barred from every machine
    bool any_candidate = false;
    for (const ImageJob& job : offered.images) {
        auto it = build.excluded.find(job.id);
        std::size_t barred = it == build.excluded.end() ? 0 : it->second.size();
        if (barred < cluster.machines.size()) {
            any_candidate = true;
            break;
        }
    }
    if (!any_candidate) {
        return all_dropped_global(offered, cluster, build, false);
    }

    return schedule_cluster(offered, cluster, build, options.budget);
}

}  // namespace mts::sched
