#include <algorithm>
#include <cstdint>

#include "mts/errors.hpp"
#include "mts/ilp/model.hpp"
#include "mts/ilp/scaled_model.hpp"
#include "mts/util/stopwatch.hpp"

namespace mts::ilp {

namespace {

constexpr std::size_t kMaxOracleVars = 24;

struct ChunkBest {
    bool found = false;
    std::int64_t value = 0;
    std::uint64_t code = 0;  // enumeration counter of the winner
};

// Counter bit (n-1-i) carries variable i, so increasing counters enumerate
// assignments in lexicographic order and the first winner is the
// lexicographically smallest one.
void decode_counter(std::uint64_t code, std::size_t n, std::uint8_t* out) {
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = static_cast<std::uint8_t>((code >> (n - 1 - i)) & 1u);
    }
}

ChunkBest scan_range(const detail::ScaledModel& scaled, std::uint64_t begin, std::uint64_t end) {
    const std::size_t n = scaled.num_vars;
    ChunkBest best;
    std::uint8_t bits[kMaxOracleVars + 1] = {0};
    for (std::uint64_t code = begin; code < end; ++code) {
        decode_counter(code, n, bits);
        bool ok = true;
        for (const detail::ScaledConstraint& c : scaled.constraints) {
            std::int64_t lhs = 0;
            for (const detail::ScaledTerm& t : c.terms) {
                if (bits[t.var]) lhs += t.coeff;
            }
            if ((c.relation == Relation::LE && lhs > c.bound) ||
                (c.relation == Relation::EQ && lhs != c.bound) ||
                (c.relation == Relation::GE && lhs < c.bound)) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        std::int64_t value = scaled.objective_of(bits);
        if (!best.found || value > best.value) {
            best = {true, value, code};
        }
    }
    return best;
}

}  // namespace

SolveResult brute_force_oracle(const IlpModel& model, bool parallel) {
    validate_model(model);
    if (model.num_vars > kMaxOracleVars) {
        throw ValidationError("brute_force_oracle: " + std::to_string(model.num_vars) +
                              " variables exceeds the enumeration guard of " +
                              std::to_string(kMaxOracleVars));
    }

    util::Stopwatch sw;
    const detail::ScaledModel scaled = detail::ScaledModel::from(model);
    const std::uint64_t total = std::uint64_t{1} << model.num_vars;

    ChunkBest best;
#ifdef _OPENMP
    if (parallel && total >= (1u << 16)) {
        constexpr std::uint64_t kChunks = 256;
        const std::uint64_t step = (total + kChunks - 1) / kChunks;
        std::vector<ChunkBest> partial(kChunks);
#pragma omp parallel for schedule(static)
        for (std::int64_t chunk = 0; chunk < static_cast<std::int64_t>(kChunks); ++chunk) {
            std::uint64_t begin = static_cast<std::uint64_t>(chunk) * step;
            std::uint64_t end = std::min(total, begin + step);
            if (begin < end) partial[chunk] = scan_range(scaled, begin, end);
        }
        // chunks cover ascending counter ranges; first winner is lex-smallest
        for (const ChunkBest& b : partial) {
            if (b.found && (!best.found || b.value > best.value)) best = b;
        }
    } else {
        best = scan_range(scaled, 0, total);
    }
#else
    (void)parallel;
    best = scan_range(scaled, 0, total);
#endif

    SolveResult result;
    result.nodes_explored = total;
    if (best.found) {
        result.status = SolveStatus::Optimal;
        result.assignment.resize(model.num_vars);
        decode_counter(best.code, model.num_vars, result.assignment.data());
        result.value = scaled.value_of(best.value);
    } else {
        result.status = SolveStatus::Infeasible;
    }
    result.elapsed = sw.elapsed();
    return result;
}

}  // namespace mts::ilp
