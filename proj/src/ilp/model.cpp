#include "mts/ilp/model.hpp"

#include "mts/errors.hpp"

namespace mts::ilp {

void validate_model(const IlpModel& model) {
    if (model.objective.size() != model.num_vars) {
        throw ValidationError("model: objective has " + std::to_string(model.objective.size()) +
                              " coefficients for " + std::to_string(model.num_vars) + " variables");
    }
    for (std::size_t i = 0; i < model.constraints.size(); ++i) {
        if (model.constraints[i].coeffs.size() != model.num_vars) {
            throw ValidationError("model: constraint " + std::to_string(i) + " has " +
                                  std::to_string(model.constraints[i].coeffs.size()) +
                                  " coefficients for " + std::to_string(model.num_vars) +
                                  " variables");
        }
    }
    if (!model.var_labels.empty() && model.var_labels.size() != model.num_vars) {
        throw ValidationError("model: var_labels size mismatch");
    }
}

const char* to_string(SolveStatus status) {
    switch (status) {
        case SolveStatus::Optimal: return "optimal";
        case SolveStatus::FeasibleIncumbent: return "feasible_incumbent";
        case SolveStatus::Infeasible: return "infeasible";
        case SolveStatus::BudgetExhaustedNoIncumbent: return "budget_exhausted_no_incumbent";
    }
    return "unknown";
}

bool check_feasible(const IlpModel& model, std::span<const std::uint8_t> assignment) {
    validate_model(model);
    if (assignment.size() != model.num_vars) {
        throw ValidationError("check_feasible: assignment length " +
                              std::to_string(assignment.size()) + " != num_vars " +
                              std::to_string(model.num_vars));
    }
    for (const LinearConstraint& c : model.constraints) {
        Rational lhs;
        for (std::size_t v = 0; v < model.num_vars; ++v) {
            if (assignment[v]) lhs += c.coeffs[v];
        }
        bool ok = false;
        switch (c.relation) {
            case Relation::LE: ok = lhs <= c.bound; break;
            case Relation::EQ: ok = lhs == c.bound; break;
            case Relation::GE: ok = lhs >= c.bound; break;
        }
        if (!ok) return false;
    }
    return true;
}

Rational objective_value(const IlpModel& model, std::span<const std::uint8_t> assignment) {
    if (assignment.size() != model.num_vars) {
        throw ValidationError("objective_value: assignment length mismatch");
    }
    Rational total;
    for (std::size_t v = 0; v < model.num_vars; ++v) {
        if (assignment[v]) total += model.objective[v];
    }
    return total;
}

}  // namespace mts::ilp
