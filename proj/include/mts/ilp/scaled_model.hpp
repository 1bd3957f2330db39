#pragma once

#include <cstdint>
#include <vector>

#include "mts/ilp/model.hpp"

namespace mts::ilp::detail {

struct ScaledTerm {
    std::uint32_t var;
    std::int64_t coeff;
};

struct ScaledConstraint {
    std::vector<ScaledTerm> terms;  // nonzero coefficients only
    Relation relation = Relation::LE;
    std::int64_t bound = 0;
};

/// Integer view of an IlpModel used by the solver kernels. Each constraint
/// row is multiplied by the lcm of its denominators, the objective by its
/// own; feasibility and the argmax are unchanged. Row magnitudes are checked
/// at build time so kernels can accumulate in plain int64 without overflow.
struct ScaledModel {
    std::size_t num_vars = 0;
    std::vector<std::int64_t> objective;  // dense, scaled by objective_scale
    std::int64_t objective_scale = 1;
    std::vector<ScaledConstraint> constraints;

    static ScaledModel from(const IlpModel& model);  // throws std::overflow_error

    Rational value_of(std::int64_t scaled_objective) const {
        return Rational(scaled_objective, objective_scale);
    }

    /// Early-exit feasibility for a full assignment (bit i = variable i).
    bool feasible(const std::uint8_t* assignment) const;

    std::int64_t objective_of(const std::uint8_t* assignment) const;
};

}  // namespace mts::ilp::detail
