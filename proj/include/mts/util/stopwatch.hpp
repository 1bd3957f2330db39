#pragma once

#include <chrono>
#include <optional>

namespace mts::util {

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}

    std::chrono::nanoseconds elapsed() const {
        return std::chrono::duration_cast<std::chrono::nanoseconds>(
            std::chrono::steady_clock::now() - start_);
    }

private:
    std::chrono::steady_clock::time_point start_;
};

// Wall-clock budget gate. Search loops poll exhausted() between short slices
// of work; an unset budget never exhausts.
class BudgetGate {
public:
    explicit BudgetGate(std::optional<std::chrono::nanoseconds> budget) : budget_(budget) {}

    bool exhausted() const { return budget_.has_value() && sw_.elapsed() >= *budget_; }
    std::chrono::nanoseconds elapsed() const { return sw_.elapsed(); }

private:
    std::optional<std::chrono::nanoseconds> budget_;
    Stopwatch sw_;
};

}  // namespace mts::util
