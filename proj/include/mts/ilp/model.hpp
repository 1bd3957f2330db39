#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mts/rational.hpp"

namespace mts::ilp {

enum class Relation { LE, EQ, GE };

struct LinearConstraint {
    std::vector<Rational> coeffs;  // dense, one per variable
    Relation relation = Relation::LE;
    Rational bound;
};

/// 0-1 maximization program. objective and every constraint row have
/// exactly num_vars coefficients.
struct IlpModel {
    std::size_t num_vars = 0;
    std::vector<Rational> objective;
    std::vector<LinearConstraint> constraints;
    std::vector<std::string> var_labels;  // empty, or one label per variable
};

void validate_model(const IlpModel& model);  // throws ValidationError

enum class SolveStatus {
    Optimal,
    FeasibleIncumbent,
    Infeasible,
    BudgetExhaustedNoIncumbent,
};

const char* to_string(SolveStatus status);

/// Testing hook: a subtree cut, recorded when SolveOptions::record_pruned.
struct PrunedNode {
    std::vector<std::uint8_t> prefix;  // values of search_order[0..prefix.size())
    Rational bound;                    // objective bound at the cut
    bool by_bound = false;             // false: cut by constraint propagation
};

struct SolveResult {
    std::vector<std::uint8_t> assignment;  // empty unless an incumbent exists
    Rational value;
    SolveStatus status = SolveStatus::Infeasible;
    std::uint64_t nodes_explored = 0;
    std::chrono::nanoseconds elapsed{0};
    std::vector<std::size_t> search_order;  // populated when record_pruned
    std::vector<PrunedNode> pruned;         // populated when record_pruned
};

struct SolveOptions {
    std::optional<std::chrono::nanoseconds> budget;
    bool record_pruned = false;
    std::size_t max_recorded_prunes = 10000;
};

/// Depth-first branch and bound over the binary variables. Deterministic:
/// variables ordered by descending |objective coefficient| (ties by index),
/// value 1 branched first, bound = fixed objective + positive remainder.
/// With a budget, returns the best incumbent found when time runs out.
SolveResult solve_exact(const IlpModel& model, const SolveOptions& options = {});

/// Exhaustive scan of all 2^num_vars assignments; num_vars <= 24.
/// Ties on the optimum resolve to the lexicographically smallest assignment.
/// The parallel path partitions the scan and merges chunk winners in order,
/// so it returns bit-identical results to the serial path.
SolveResult brute_force_oracle(const IlpModel& model, bool parallel = true);

/// Exact feasibility check in rational arithmetic. Shares no code with the
/// solvers; used to referee them.
bool check_feasible(const IlpModel& model, std::span<const std::uint8_t> assignment);

Rational objective_value(const IlpModel& model, std::span<const std::uint8_t> assignment);

}  // namespace mts::ilp
