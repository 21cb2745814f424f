#pragma once

// Exponential searching for a marked index when the number of marked items is
// unknown: Grover runs of random length below a geometrically growing cap.

#include <cmath>
#include <concepts>
#include <cstddef>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

#include "qmin/grover.hpp"
#include "qmin/random.hpp"

namespace qmin {

enum class BackendKind { ExactStatevector, AnalyticSampler };

std::string_view to_string(BackendKind kind) noexcept;
/// Accepts "exact" or "analytic". Throws std::invalid_argument otherwise.
BackendKind parse_backend(std::string_view name);

struct SearchParams {
    double lambda = 8.0 / 7.0;
    std::optional<double> m_cap;  // sqrt(N) when unset
    double m_init = 1.0;

    /// Throws std::invalid_argument unless 1 < lambda < 4/3, m_init >= 1 and m_cap >= m_init.
    void validate() const;
    double cap_for(std::size_t n) const;
};

/// Remaining time steps available to Grover iterations.
class TimeBudget {
public:
    explicit TimeBudget(double steps);
    static TimeBudget unlimited() { return TimeBudget{std::numeric_limits<double>::infinity()}; }

    double remaining() const noexcept { return remaining_; }
    bool is_unlimited() const noexcept { return std::isinf(remaining_); }
    /// Whole iterations that still fit.
    std::size_t affordable_iterations() const noexcept;
    void spend(std::size_t iterations) noexcept;

private:
    double remaining_;
};

struct SearchOutcome {
    std::size_t index = 0;
    std::size_t iterations_used = 0;
    bool interrupted = false;
};

/// What the backends need from an oracle. Only the analytic sampler touches
/// marked_count() and the class samplers.
template <class O>
concept SearchOracle = requires(const O& o, std::size_t i, Rng& rng) {
    { o.size() } -> std::convertible_to<std::size_t>;
    { o.is_marked(i) } -> std::convertible_to<bool>;
    { o.marked_count() } -> std::convertible_to<std::size_t>;
    { o.sample_marked(rng) } -> std::convertible_to<std::size_t>;
    { o.sample_unmarked(rng) } -> std::convertible_to<std::size_t>;
};

/// Oracle over an explicit marked subset of {0..n-1}.
class SubsetOracle {
public:
    explicit SubsetOracle(std::vector<bool> marked);
    /// First t of n indices marked.
    static SubsetOracle prefix(std::size_t n, std::size_t t);
    /// t of n indices marked, chosen uniformly.
    static SubsetOracle random(std::size_t n, std::size_t t, Rng& rng);

    std::size_t size() const noexcept { return mask_.size(); }
    bool is_marked(std::size_t i) const { return mask_[i]; }
    std::size_t marked_count() const noexcept { return marked_.size(); }
    std::size_t sample_marked(Rng& rng) const;
    std::size_t sample_unmarked(Rng& rng) const;

private:
    std::vector<bool> mask_;
    std::vector<std::size_t> marked_;
    std::vector<std::size_t> unmarked_;
};

struct OutcomeDistribution {
    double p_success = 0.0;
    std::size_t marked_class = 0;    // success-class support, law uniform
    std::size_t unmarked_class = 0;  // failure-class support, law uniform

    double p_index_given_success() const { return marked_class ? 1.0 / marked_class : 0.0; }
    double p_index_given_failure() const { return unmarked_class ? 1.0 / unmarked_class : 0.0; }
};

OutcomeDistribution outcome_distribution(std::size_t n, std::size_t t, std::size_t j);

namespace detail {

template <SearchOracle O>
std::size_t exact_attempt(const O& oracle, std::size_t j, Rng& rng) {
    StateVector state = uniform_state(oracle.size());
    auto marked = [&oracle](std::size_t i) { return static_cast<bool>(oracle.is_marked(i)); };
    for (std::size_t k = 0; k < j; ++k) state = grover_iterate(std::move(state), marked);
    return measure(state, rng);
}

template <SearchOracle O>
std::size_t analytic_attempt(const O& oracle, std::size_t j, Rng& rng) {
    const std::size_t n = oracle.size();
    const std::size_t t = oracle.marked_count();
    if (t == 0) return oracle.sample_unmarked(rng);
    if (t == n) return oracle.sample_marked(rng);
    const bool success = uniform_unit(rng) < success_probability(n, t, j);
    return success ? oracle.sample_marked(rng) : oracle.sample_unmarked(rng);
}

}  // namespace detail

/// Runs until a marked index is observed or the budget cannot pay for another
/// iteration. A planned run longer than the budget is cut to what is
/// affordable, measured, and reported as interrupted.
template <SearchOracle O>
SearchOutcome exponential_search(const O& oracle, const SearchParams& params, TimeBudget& budget,
                                 BackendKind backend, Rng& rng) {
    const std::size_t n = oracle.size();
    const double m_cap = params.cap_for(n);
    double m = std::min(params.m_init, m_cap);
    SearchOutcome out;
    for (;;) {
        const auto draw_bound = static_cast<std::size_t>(std::ceil(m));
        std::size_t j = uniform_index(rng, 0, draw_bound - 1);
        bool truncated = false;
        if (const auto affordable = budget.affordable_iterations(); j > affordable) {
            j = affordable;
            truncated = true;
        }
        out.index = backend == BackendKind::ExactStatevector ? detail::exact_attempt(oracle, j, rng)
                                                             : detail::analytic_attempt(oracle, j, rng);
        budget.spend(j);
        out.iterations_used += j;
        if (oracle.is_marked(out.index)) {
            out.interrupted = truncated;
            return out;
        }
        // With a cap of one, only empty runs are possible and nothing can change.
        if (truncated || budget.affordable_iterations() == 0 || std::ceil(m_cap) <= 1.0) {
            out.interrupted = true;
            return out;
        }
        m = std::min(params.lambda * m, m_cap);
    }
}

}  // namespace qmin
