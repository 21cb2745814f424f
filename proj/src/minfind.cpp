#include "qmin/minfind.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "qmin/bounds.hpp"

namespace qmin {
namespace {

struct LoopLimits {
    std::optional<double> cap;  // none: run until the threshold is minimal
    bool record_history = false;
};

RunResult threshold_loop(const Table& table, BackendKind backend, const SearchParams& params, LoopLimits limits,
                         Rng& rng) {
    params.validate();
    const std::size_t n = table.size();
    RunResult res;
    res.cap = limits.cap;
    if (n == 1) {
        res.returned_index = 0;
        res.returned_is_minimum = true;
        res.first_hit_time = 0.0;
        if (limits.record_history) res.history.push_back({0.0, 0});
        return res;
    }

    const double init_cost = std::log2(static_cast<double>(n));
    CostLedger ledger{limits.cap.value_or(std::numeric_limits<double>::infinity())};
    ThresholdState state{uniform_index(rng, 0, n - 1), {}};

    auto accept = [&](std::size_t y) {
        state.y = y;
        if (limits.record_history) state.history.push_back({ledger.spent(), y});
        if (!res.first_hit_time && table.is_minimum(y)) res.first_hit_time = ledger.spent();
    };
    accept(state.y);

    const bool infinite = !limits.cap.has_value();
    while (ledger.can_afford(init_cost)) {
        if (infinite && table.is_minimum(state.y)) break;
        ledger.charge(init_cost);
        ++res.loop_passes;
        const ThresholdOracle oracle{table, state.y};
        TimeBudget budget = infinite ? TimeBudget::unlimited() : TimeBudget{std::max(0.0, ledger.remaining())};
        const SearchOutcome out = exponential_search(oracle, params, budget, backend, rng);
        ledger.charge(static_cast<double>(out.iterations_used));
        res.search_iterations += out.iterations_used;
        if (table[out.index] < table[state.y]) accept(out.index);
        if (out.interrupted && !infinite) break;
    }

    res.returned_index = state.y;
    res.returned_is_minimum = table.is_minimum(state.y);
    res.total_spent = ledger.spent();
    res.history = std::move(state.history);
    return res;
}

}  // namespace

RunResult find_minimum(const Table& table, BackendKind backend, const SearchParams& params,
                       std::optional<double> timeout_override, Rng& rng, bool record_history) {
    std::optional<double> cap = timeout_override;
    if (!cap) cap = table.size() >= 2 ? bounds::timeout_cap(table.size()) : 0.0;
    if (!(*cap >= 0.0)) throw std::invalid_argument("timeout must be non-negative");
    return threshold_loop(table, backend, params, {cap, record_history}, rng);
}

RunResult find_minimum_infinite(const Table& table, BackendKind backend, const SearchParams& params, Rng& rng) {
    return threshold_loop(table, backend, params, {std::nullopt, true}, rng);
}

RunResult find_minimum_boosted(const Table& table, BackendKind backend, const SearchParams& params, std::size_t c,
                               Rng& rng, BoostMode mode) {
    if (c == 0) throw std::invalid_argument("boost factor c must be at least 1");
    if (mode == BoostMode::ExtendedTimeout) {
        const double cap = table.size() >= 2 ? static_cast<double>(c) * 2.0 * bounds::m0(table.size()) : 0.0;
        return find_minimum(table, backend, params, cap, rng);
    }
    RunResult best;
    for (std::size_t k = 0; k < c; ++k) {
        RunResult r = find_minimum(table, backend, params, std::nullopt, rng);
        if (r.first_hit_time && !best.first_hit_time) best.first_hit_time = best.total_spent + *r.first_hit_time;
        if (k == 0 || table[r.returned_index] < table[best.returned_index]) {
            best.returned_index = r.returned_index;
            best.returned_is_minimum = r.returned_is_minimum;
        }
        best.total_spent += r.total_spent;
        best.loop_passes += r.loop_passes;
        best.search_iterations += r.search_iterations;
        best.cap = best.cap.value_or(0.0) + r.cap.value_or(0.0);
    }
    return best;
}

}  // namespace qmin
