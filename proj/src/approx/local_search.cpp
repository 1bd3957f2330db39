#include <algorithm>

#include "mts/approx/approx.hpp"
#include "mts/errors.hpp"
#include "mts/util/rng.hpp"
#include "mts/util/stopwatch.hpp"

namespace mts::approx {

namespace {

// A candidate edit of the ordered job list.
struct Move {
    enum Kind { Replace, Insert, Transpose } kind;
    std::size_t a;      // position in the ordered list
    std::int64_t drop;  // dropped image id for Replace/Insert
};

bool order_feasible(const sched::WorkloadInstance& workload,
                    const std::vector<std::int64_t>& ordered) {
    Rational cumulative;
    for (std::int64_t id : ordered) {
        const sched::ImageJob* job = workload.find(id);
        cumulative += job->analysis_time;
        if (cumulative > job->deadline) return false;
    }
    return true;
}

}  // namespace

sched::Schedule local_search(const sched::WorkloadInstance& workload, const sched::Schedule& seed,
                             std::chrono::nanoseconds budget, std::uint64_t rng_seed) {
    sched::validate_workload(workload);
    if (!sched::validate_schedule(workload, seed).empty()) {
        throw ValidationError("local_search: seed schedule is infeasible");
    }

    std::vector<std::int64_t> ordered;
    for (std::int64_t id : seed.slots) {
        if (id != 0) ordered.push_back(id);
    }
    std::vector<std::int64_t> dropped = seed.dropped;

    Rational best = sched::schedule_objective(workload, ordered);
    util::BudgetGate gate(budget);
    util::SplitMix64 rng(rng_seed);

    bool improved = true;
    while (improved && !gate.exhausted()) {
        improved = false;

        std::vector<Move> moves;
        for (std::size_t d = 0; d < dropped.size(); ++d) {
            for (std::size_t p = 0; p < ordered.size(); ++p) {
                moves.push_back({Move::Replace, p, dropped[d]});
            }
            for (std::size_t p = 0; p <= ordered.size(); ++p) {
                moves.push_back({Move::Insert, p, dropped[d]});
            }
        }
        for (std::size_t p = 0; p + 1 < ordered.size(); ++p) {
            moves.push_back({Move::Transpose, p, 0});
        }
        rng.shuffle(moves);

        for (const Move& move : moves) {
            if (gate.exhausted()) break;

            std::vector<std::int64_t> candidate = ordered;
            switch (move.kind) {
                case Move::Replace: candidate[move.a] = move.drop; break;
                case Move::Insert:
                    candidate.insert(candidate.begin() + static_cast<std::ptrdiff_t>(move.a),
                                     move.drop);
                    break;
                case Move::Transpose: std::swap(candidate[move.a], candidate[move.a + 1]); break;
            }
            if (!order_feasible(workload, candidate)) continue;

            Rational value = sched::schedule_objective(workload, candidate);
            if (value > best) {
                if (move.kind == Move::Replace) {
                    dropped.push_back(ordered[move.a]);
                }
                if (move.kind != Move::Transpose) {
                    dropped.erase(std::find(dropped.begin(), dropped.end(), move.drop));
                }
                ordered = std::move(candidate);
                best = value;
                improved = true;
                break;  // first improvement; rebuild the neighborhood
            }
        }
    }
    return sched::make_schedule(workload, ordered);
}

}  // namespace mts::approx
