#include "mts/ilp/scaled_model.hpp"

#include <cstdlib>
#include <numeric>
#include <stdexcept>

namespace mts::ilp::detail {

namespace {

using i128 = __int128;

// Any partial sum of a row must stay well inside int64.
constexpr std::int64_t kMagnitudeLimit = std::int64_t{1} << 61;

std::int64_t lcm_checked(std::int64_t a, std::int64_t b) {
    std::int64_t g = std::gcd(a, b);
    i128 l = static_cast<i128>(a / g) * b;
    if (l > kMagnitudeLimit) throw std::overflow_error("scaled model: denominator lcm too large");
    return static_cast<std::int64_t>(l);
}

std::int64_t scale_coeff(const Rational& r, std::int64_t scale) {
    i128 v = static_cast<i128>(r.num()) * (scale / r.den());
    if (v > kMagnitudeLimit || v < -kMagnitudeLimit) {
        throw std::overflow_error("scaled model: coefficient too large");
    }
    return static_cast<std::int64_t>(v);
}

}  // namespace

ScaledModel ScaledModel::from(const IlpModel& model) {
    ScaledModel out;
    out.num_vars = model.num_vars;

    std::int64_t obj_scale = 1;
    for (const Rational& c : model.objective) obj_scale = lcm_checked(obj_scale, c.den());
    out.objective_scale = obj_scale;
    out.objective.reserve(model.num_vars);
    i128 obj_mag = 0;
    for (const Rational& c : model.objective) {
        std::int64_t s = scale_coeff(c, obj_scale);
        obj_mag += s < 0 ? -static_cast<i128>(s) : static_cast<i128>(s);
        out.objective.push_back(s);
    }
    if (obj_mag > kMagnitudeLimit) throw std::overflow_error("scaled model: objective too large");

    out.constraints.reserve(model.constraints.size());
    for (const LinearConstraint& c : model.constraints) {
        std::int64_t scale = c.bound.den();
        for (const Rational& coeff : c.coeffs) scale = lcm_checked(scale, coeff.den());

        ScaledConstraint sc;
        sc.relation = c.relation;
        sc.bound = scale_coeff(c.bound, scale);
        i128 mag = sc.bound < 0 ? -static_cast<i128>(sc.bound) : static_cast<i128>(sc.bound);
        for (std::size_t v = 0; v < c.coeffs.size(); ++v) {
            if (c.coeffs[v].is_zero()) continue;
            std::int64_t s = scale_coeff(c.coeffs[v], scale);
            mag += s < 0 ? -static_cast<i128>(s) : static_cast<i128>(s);
            sc.terms.push_back({static_cast<std::uint32_t>(v), s});
        }
        if (mag > kMagnitudeLimit) throw std::overflow_error("scaled model: constraint too large");
        out.constraints.push_back(std::move(sc));
    }
    return out;
}

bool ScaledModel::feasible(const std::uint8_t* assignment) const {
    for (const ScaledConstraint& c : constraints) {
        std::int64_t lhs = 0;
        for (const ScaledTerm& t : c.terms) {
            if (assignment[t.var]) lhs += t.coeff;
        }
        switch (c.relation) {
            case Relation::LE:
                if (lhs > c.bound) return false;
                break;
            case Relation::EQ:
                if (lhs != c.bound) return false;
                break;
            case Relation::GE:
                if (lhs < c.bound) return false;
                break;
        }
    }
    return true;
}

std::int64_t ScaledModel::objective_of(const std::uint8_t* assignment) const {
    std::int64_t total = 0;
    for (std::size_t v = 0; v < num_vars; ++v) {
        if (assignment[v]) total += objective[v];
    }
    return total;
}

}  // namespace mts::ilp::detail
