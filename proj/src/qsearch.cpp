#include "qmin/qsearch.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace qmin {

std::string_view to_string(BackendKind kind) noexcept {
    return kind == BackendKind::ExactStatevector ? "exact" : "analytic";
}

BackendKind parse_backend(std::string_view name) {
    if (name == "exact") return BackendKind::ExactStatevector;
    if (name == "analytic") return BackendKind::AnalyticSampler;
    throw std::invalid_argument("unknown backend '" + std::string(name) + "' (expected exact|analytic)");
}

void SearchParams::validate() const {
    if (!(lambda > 1.0 && lambda < 4.0 / 3.0))
        throw std::invalid_argument("lambda must lie strictly between 1 and 4/3");
    if (!(m_init >= 1.0)) throw std::invalid_argument("m_init must be at least 1");
    if (m_cap && !(*m_cap >= m_init)) throw std::invalid_argument("m_cap must be at least m_init");
}

double SearchParams::cap_for(std::size_t n) const {
    return m_cap.value_or(std::sqrt(static_cast<double>(n)));
}

TimeBudget::TimeBudget(double steps) : remaining_(steps) {
    if (!(steps >= 0.0)) throw std::invalid_argument("time budget must be non-negative");
}

std::size_t TimeBudget::affordable_iterations() const noexcept {
    if (is_unlimited()) return std::numeric_limits<std::size_t>::max();
    return static_cast<std::size_t>(std::floor(remaining_));
}

void TimeBudget::spend(std::size_t iterations) noexcept {
    if (!is_unlimited()) remaining_ = std::max(0.0, remaining_ - static_cast<double>(iterations));
}

SubsetOracle::SubsetOracle(std::vector<bool> marked) : mask_(std::move(marked)) {
    if (mask_.empty()) throw std::invalid_argument("oracle domain must be non-empty");
    for (std::size_t i = 0; i < mask_.size(); ++i) (mask_[i] ? marked_ : unmarked_).push_back(i);
}

SubsetOracle SubsetOracle::prefix(std::size_t n, std::size_t t) {
    if (t > n) throw std::domain_error("marked count exceeds domain size");
    std::vector<bool> mask(n, false);
    std::fill_n(mask.begin(), t, true);
    return SubsetOracle{std::move(mask)};
}

SubsetOracle SubsetOracle::random(std::size_t n, std::size_t t, Rng& rng) {
    if (t > n) throw std::domain_error("marked count exceeds domain size");
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::shuffle(idx.begin(), idx.end(), rng);
    std::vector<bool> mask(n, false);
    for (std::size_t k = 0; k < t; ++k) mask[idx[k]] = true;
    return SubsetOracle{std::move(mask)};
}

std::size_t SubsetOracle::sample_marked(Rng& rng) const {
    if (marked_.empty()) throw std::logic_error("no marked index to sample");
    return marked_[uniform_index(rng, 0, marked_.size() - 1)];
}

std::size_t SubsetOracle::sample_unmarked(Rng& rng) const {
    if (unmarked_.empty()) throw std::logic_error("no unmarked index to sample");
    return unmarked_[uniform_index(rng, 0, unmarked_.size() - 1)];
}

OutcomeDistribution outcome_distribution(std::size_t n, std::size_t t, std::size_t j) {
    return {success_probability(n, t, j), t, n - t};
}

}  // namespace qmin
