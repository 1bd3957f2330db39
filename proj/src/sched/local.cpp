#include "mts/sched/local.hpp"

#include <algorithm>

#include "mts/errors.hpp"

namespace mts::sched {

std::pair<ilp::IlpModel, LocalVarMap> build_local_model(const WorkloadInstance& workload) {
    validate_workload(workload);

    LocalVarMap map;
    map.n = workload.images.size();
    for (const ImageJob& job : workload.images) map.ids.push_back(job.id);

    const std::size_t n = map.n;
    const std::size_t vars = map.num_vars();

    ilp::IlpModel model;
    model.num_vars = vars;
    model.objective.assign(vars, Rational(0));
    model.var_labels.resize(vars);

    const Rational big_m = workload.total_analysis_time();

    for (std::size_t slot = 1; slot <= n; ++slot) {
        model.objective[map.var(slot, 0)] =
            kCompactionWeight * Rational(static_cast<std::int64_t>(slot));
        model.var_labels[map.var(slot, 0)] = "slot" + std::to_string(slot) + ":null";
        for (std::size_t col = 1; col <= n; ++col) {
            model.objective[map.var(slot, col)] = workload.images[col - 1].analysis_time;
            model.var_labels[map.var(slot, col)] =
                "slot" + std::to_string(slot) + ":img" + std::to_string(map.ids[col - 1]);
        }
    }

    // one column per slot
    for (std::size_t slot = 1; slot <= n; ++slot) {
        ilp::LinearConstraint c;
        c.coeffs.assign(vars, Rational(0));
        for (std::size_t col = 0; col <= n; ++col) c.coeffs[map.var(slot, col)] = Rational(1);
        c.relation = ilp::Relation::EQ;
        c.bound = Rational(1);
        model.constraints.push_back(std::move(c));
    }

    // each image at most once
    for (std::size_t col = 1; col <= n; ++col) {
        ilp::LinearConstraint c;
        c.coeffs.assign(vars, Rational(0));
        for (std::size_t slot = 1; slot <= n; ++slot) c.coeffs[map.var(slot, col)] = Rational(1);
        c.relation = ilp::Relation::LE;
        c.bound = Rational(1);
        model.constraints.push_back(std::move(c));
    }

    // deadline per slot: prefix analysis time - deadline of the slot's image
    // - big-M for the null column <= 0
    for (std::size_t slot = 1; slot <= n; ++slot) {
        ilp::LinearConstraint c;
        c.coeffs.assign(vars, Rational(0));
        for (std::size_t k = 1; k <= slot; ++k) {
            for (std::size_t col = 1; col <= n; ++col) {
                c.coeffs[map.var(k, col)] += workload.images[col - 1].analysis_time;
            }
        }
        for (std::size_t col = 1; col <= n; ++col) {
            c.coeffs[map.var(slot, col)] -= workload.images[col - 1].deadline;
        }
        c.coeffs[map.var(slot, 0)] = -big_m;
        c.relation = ilp::Relation::LE;
        c.bound = Rational(0);
        model.constraints.push_back(std::move(c));
    }

    return {std::move(model), std::move(map)};
}

Schedule decode_local(const WorkloadInstance& workload, const LocalVarMap& map,
                      std::span<const std::uint8_t> assignment, const Rational& objective) {
    if (assignment.size() != map.num_vars()) {
        throw ValidationError("decode_local: assignment length mismatch");
    }

    std::vector<std::int64_t> ordered;
    std::vector<std::int64_t> slots(map.n, 0);
    for (std::size_t slot = 1; slot <= map.n; ++slot) {
        int chosen = -1;
        for (std::size_t col = 0; col <= map.n; ++col) {
            if (assignment[map.var(slot, col)]) {
                if (chosen >= 0) throw InternalError("decode_local: slot holds two columns");
                chosen = static_cast<int>(col);
            }
        }
        if (chosen < 0) throw InternalError("decode_local: empty slot");
        if (chosen > 0) slots[slot - 1] = map.ids[chosen - 1];
    }

    Schedule s;
    s.slots = std::move(slots);
    s.per_slot_completion.assign(map.n, Rational(0));
    Rational cumulative;
    for (std::size_t i = 0; i < map.n; ++i) {
        if (s.slots[i] != 0) cumulative += workload.find(s.slots[i])->analysis_time;
        s.per_slot_completion[i] = cumulative;
    }
    for (std::int64_t id : s.slots) {
        if (id != 0) s.scheduled.push_back(id);
    }
    std::sort(s.scheduled.begin(), s.scheduled.end());
    for (const ImageJob& job : workload.images) {
        if (!std::binary_search(s.scheduled.begin(), s.scheduled.end(), job.id)) {
            s.dropped.push_back(job.id);
        }
    }
    std::sort(s.dropped.begin(), s.dropped.end());
    s.objective_value = objective;
    return s;
}

Schedule solve_local(const WorkloadInstance& workload,
                     std::optional<std::chrono::nanoseconds> budget) {
    auto [model, map] = build_local_model(workload);
    ilp::SolveOptions options;
    options.budget = budget;
    ilp::SolveResult result = ilp::solve_exact(model, options);

    switch (result.status) {
        case ilp::SolveStatus::Optimal:
        case ilp::SolveStatus::FeasibleIncumbent:
            return decode_local(workload, map, result.assignment, result.value);
        case ilp::SolveStatus::Infeasible:
            // unreachable on a valid workload (all-null is always feasible);
            // degrade the same way as budget exhaustion
        case ilp::SolveStatus::BudgetExhaustedNoIncumbent:
            return all_null_schedule(workload, true);
    }
    throw InternalError("solve_local: unhandled solver status");
}

}  // namespace mts::sched
