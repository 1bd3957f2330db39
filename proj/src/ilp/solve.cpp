#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <numeric>

#include "mts/errors.hpp"
#include "mts/ilp/model.hpp"
#include "mts/ilp/scaled_model.hpp"
#include "mts/util/stopwatch.hpp"

namespace mts::ilp {

namespace {

constexpr std::uint64_t kBudgetPollInterval = 64;  // nodes between clock reads

struct ConstraintState {
    std::int64_t base = 0;     // sum of coefficients fixed to 1
    std::int64_t min_add = 0;  // sum of negative coefficients still unfixed
    std::int64_t max_add = 0;  // sum of positive coefficients still unfixed
    Relation relation = Relation::LE;
    std::int64_t bound = 0;

    bool viable() const {
        switch (relation) {
            case Relation::LE: return base + min_add <= bound;
            case Relation::GE: return base + max_add >= bound;
            case Relation::EQ: return base + min_add <= bound && base + max_add >= bound;
        }
        return false;
    }
};

struct VarUse {
    std::uint32_t constraint;
    std::int64_t coeff;
};

class BranchAndBound {
public:
    BranchAndBound(const detail::ScaledModel& scaled, const SolveOptions& options)
        : scaled_(scaled), options_(options), gate_(options.budget) {
        n_ = scaled.num_vars;

        order_.resize(n_);
        std::iota(order_.begin(), order_.end(), std::size_t{0});
        std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
            std::int64_t ma = std::abs(scaled_.objective[a]);
            std::int64_t mb = std::abs(scaled_.objective[b]);
            if (ma != mb) return ma > mb;
            return a < b;
        });

        states_.reserve(scaled_.constraints.size());
        uses_.resize(n_);
        for (std::uint32_t ci = 0; ci < scaled_.constraints.size(); ++ci) {
            const detail::ScaledConstraint& c = scaled_.constraints[ci];
            ConstraintState st;
            st.relation = c.relation;
            st.bound = c.bound;
            for (const detail::ScaledTerm& t : c.terms) {
                if (t.coeff < 0) {
                    st.min_add += t.coeff;
                } else {
                    st.max_add += t.coeff;
                }
                uses_[t.var].push_back({ci, t.coeff});
            }
            states_.push_back(st);
        }

        positive_remaining_ = 0;
        for (std::int64_t c : scaled_.objective) {
            if (c > 0) positive_remaining_ += c;
        }
        values_.assign(n_, 0);
    }

    SolveResult run() {
        SolveResult result;

        bool root_viable = true;
        for (const ConstraintState& st : states_) {
            if (!st.viable()) {
                root_viable = false;
                break;
            }
        }
        if (root_viable) dfs(0);

        result.nodes_explored = nodes_;
        result.elapsed = gate_.elapsed();
        if (stopped_) {
            result.status =
                has_incumbent_ ? SolveStatus::FeasibleIncumbent : SolveStatus::BudgetExhaustedNoIncumbent;
        } else {
            result.status = has_incumbent_ ? SolveStatus::Optimal : SolveStatus::Infeasible;
        }
        if (has_incumbent_) {
            result.assignment = incumbent_;
            result.value = scaled_.value_of(incumbent_value_);
        }
        if (options_.record_pruned) {
            result.search_order = order_;
            result.pruned = std::move(pruned_);
        }
        return result;
    }

private:
    void record_prune(std::size_t depth, bool by_bound) {
        if (!options_.record_pruned || pruned_.size() >= options_.max_recorded_prunes) return;
        PrunedNode node;
        node.prefix.reserve(depth);
        for (std::size_t d = 0; d < depth; ++d) node.prefix.push_back(values_[order_[d]]);
        node.bound = scaled_.value_of(current_objective_ + positive_remaining_);
        node.by_bound = by_bound;
        pruned_.push_back(std::move(node));
    }

    // Fix variable v := value; returns false if some touched constraint can
    // no longer be satisfied. apply/revert are exact mirrors.
    bool apply(std::size_t v, std::uint8_t value) {
        values_[v] = value;
        current_objective_ += value ? scaled_.objective[v] : 0;
        if (scaled_.objective[v] > 0) positive_remaining_ -= scaled_.objective[v];
        bool ok = true;
        for (const VarUse& use : uses_[v]) {
            ConstraintState& st = states_[use.constraint];
            if (use.coeff < 0) {
                st.min_add -= use.coeff;
            } else {
                st.max_add -= use.coeff;
            }
            if (value) st.base += use.coeff;
            if (!st.viable()) ok = false;
        }
        return ok;
    }

    void revert(std::size_t v, std::uint8_t value) {
        current_objective_ -= value ? scaled_.objective[v] : 0;
        if (scaled_.objective[v] > 0) positive_remaining_ += scaled_.objective[v];
        for (const VarUse& use : uses_[v]) {
            ConstraintState& st = states_[use.constraint];
            if (use.coeff < 0) {
                st.min_add += use.coeff;
            } else {
                st.max_add += use.coeff;
            }
            if (value) st.base -= use.coeff;
        }
    }

    void dfs(std::size_t depth) {
        if (stopped_) return;
        ++nodes_;
        if (nodes_ % kBudgetPollInterval == 0 && gate_.exhausted()) {
            stopped_ = true;
            return;
        }

        if (depth == n_) {
            // every constraint has min_add == max_add == 0, so viability at
            // the last apply() was an exact feasibility check
            if (!has_incumbent_ || current_objective_ > incumbent_value_) {
                has_incumbent_ = true;
                incumbent_value_ = current_objective_;
                incumbent_ = values_;
            }
            return;
        }

        if (has_incumbent_ && current_objective_ + positive_remaining_ <= incumbent_value_) {
            record_prune(depth, true);
            return;
        }

        std::size_t v = order_[depth];
        for (std::uint8_t value : {std::uint8_t{1}, std::uint8_t{0}}) {
            bool viable = apply(v, value);
            if (viable) {
                dfs(depth + 1);
            } else {
                ++nodes_;
                record_prune(depth + 1, false);
            }
            revert(v, value);
            if (stopped_) return;
        }
    }

    const detail::ScaledModel& scaled_;
    const SolveOptions& options_;
    util::BudgetGate gate_;

    std::size_t n_ = 0;
    std::vector<std::size_t> order_;
    std::vector<ConstraintState> states_;
    std::vector<std::vector<VarUse>> uses_;
    std::vector<std::uint8_t> values_;

    std::int64_t current_objective_ = 0;
    std::int64_t positive_remaining_ = 0;

    bool has_incumbent_ = false;
    std::int64_t incumbent_value_ = 0;
    std::vector<std::uint8_t> incumbent_;

    std::uint64_t nodes_ = 0;
    bool stopped_ = false;
    std::vector<PrunedNode> pruned_;
};

}  // namespace

SolveResult solve_exact(const IlpModel& model, const SolveOptions& options) {
    validate_model(model);
    const detail::ScaledModel scaled = detail::ScaledModel::from(model);
    BranchAndBound search(scaled, options);
    return search.run();
}

}  // namespace mts::ilp
