#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "qmin/qsearch.hpp"
#include "qmin/random.hpp"
#include "qmin/table.hpp"

namespace qmin {

/// Time-step accounting: lg N per initialization, 1 per Grover iteration,
/// nothing for choosing, observing, or returning.
class CostLedger {
public:
    explicit CostLedger(double cap) : cap_(cap) {}

    double spent() const noexcept { return spent_; }
    double cap() const noexcept { return cap_; }
    double remaining() const noexcept { return cap_ - spent_; }
    bool can_afford(double steps) const noexcept { return spent_ + steps <= cap_; }
    void charge(double steps) noexcept { spent_ += steps; }

private:
    double spent_ = 0.0;
    double cap_;
};

struct ThresholdChange {
    double time = 0.0;  // ledger time at which y was set
    std::size_t y = 0;
};

struct ThresholdState {
    std::size_t y = 0;
    std::vector<ThresholdChange> history;  // filled only when recording
};

struct RunResult {
    std::size_t returned_index = 0;
    bool returned_is_minimum = false;
    std::optional<double> first_hit_time;  // when the threshold first held a minimum value
    double total_spent = 0.0;
    std::size_t loop_passes = 0;
    std::size_t search_iterations = 0;  // total Grover iterations over all passes
    std::optional<double> cap;          // unset for the infinite algorithm
    std::vector<ThresholdChange> history;
};

/// Default cap 22.5 sqrt N + 1.4 lg^2 N unless overridden. A pass is started
/// only when its lg N initialization still fits under the cap; an interrupted
/// search is still observed before y is returned.
RunResult find_minimum(const Table& table, BackendKind backend, const SearchParams& params,
                       std::optional<double> timeout_override, Rng& rng, bool record_history = false);

/// Same loop without a cap, stopped from outside as soon as T[y] is minimal.
/// The history is always recorded.
RunResult find_minimum_infinite(const Table& table, BackendKind backend, const SearchParams& params, Rng& rng);

enum class BoostMode {
    Repeat,          // c independent runs, keep the best outcome
    ExtendedTimeout  // one run with cap c * 2 m0
};

/// Throws std::invalid_argument for c == 0. Totals are summed over repeats and
/// first_hit_time is measured on the concatenated timeline.
RunResult find_minimum_boosted(const Table& table, BackendKind backend, const SearchParams& params, std::size_t c,
                               Rng& rng, BoostMode mode = BoostMode::Repeat);

}  // namespace qmin
