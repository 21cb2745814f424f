#include "qmin/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace qmin::bounds {
namespace {

constexpr std::size_t kDirectHarmonicLimit = 10'000'000;

void require_at_least_two(std::size_t n) {
    if (n < 2) throw std::domain_error("bound needs n >= 2");
}

double lg(double x) { return std::log2(x); }

}  // namespace

double m0(std::size_t n) {
    require_at_least_two(n);
    const double l = lg(static_cast<double>(n));
    return 45.0 / 4.0 * std::sqrt(static_cast<double>(n)) + 7.0 / 10.0 * l * l;
}

double timeout_cap(std::size_t n) {
    require_at_least_two(n);
    const double l = lg(static_cast<double>(n));
    return 22.5 * std::sqrt(static_cast<double>(n)) + 1.4 * l * l;
}

double bbht_expected_iterations_bound(std::size_t n, std::size_t t) {
    if (t > n) throw std::domain_error("marked count exceeds table size");
    if (t == 0) return std::numeric_limits<double>::infinity();
    return 4.5 * std::sqrt(static_cast<double>(n) / static_cast<double>(t));
}

double harmonic(std::size_t n) {
    if (n <= kDirectHarmonicLimit) {
        // smallest terms first
        double acc = 0.0;
        for (std::size_t k = n; k >= 1; --k) acc += 1.0 / static_cast<double>(k);
        return acc;
    }
    const double x = static_cast<double>(n);
    const double inv2 = 1.0 / (x * x);
    return std::log(x) + std::numbers::egamma + 0.5 / x - inv2 / 12.0 + inv2 * inv2 / 120.0;
}

double expected_search_cost_bound(std::size_t n) {
    require_at_least_two(n);
    double acc = 0.0;
    for (std::size_t r = n - 1; r >= 1; --r) {
        const double rd = static_cast<double>(r);
        acc += 1.0 / ((rd + 1.0) * std::sqrt(rd));
    }
    return 4.5 * std::sqrt(static_cast<double>(n)) * acc;
}

double expected_init_cost(std::size_t n) {
    require_at_least_two(n);
    return (harmonic(n) - 1.0) * lg(static_cast<double>(n));
}

BoundReport bound_report(std::size_t n) {
    require_at_least_two(n);
    BoundReport rep;
    rep.n = n;
    rep.m0 = m0(n);
    rep.cap = timeout_cap(n);
    rep.harmonic = harmonic(n);
    rep.search_cost = expected_search_cost_bound(n);
    rep.init_cost = (rep.harmonic - 1.0) * lg(static_cast<double>(n));
    std::vector<std::size_t> ts{1, 2, n / 16, n / 4, n};
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    for (auto t : ts)
        if (t >= 1 && t <= n) rep.bbht.emplace_back(t, bbht_expected_iterations_bound(n, t));
    return rep;
}

SweepResult sweep(std::size_t n_max) {
    SweepResult res;
    res.n_max = n_max;
    res.min_search_slack = std::numeric_limits<double>::infinity();
    res.min_init_slack = std::numeric_limits<double>::infinity();
    double search_sum = 0.0;  // sum_{r=1}^{n-1} 1/((r+1) sqrt r)
    double h = 1.0;           // H_n
    for (std::size_t n = 2; n <= n_max; ++n) {
        const double nd = static_cast<double>(n);
        const double prev = nd - 1.0;
        search_sum += 1.0 / (nd * std::sqrt(prev));
        h += 1.0 / nd;
        const double l = lg(nd);

        const double search_slack = 45.0 / 4.0 * std::sqrt(nd) - 4.5 * std::sqrt(nd) * search_sum;
        const double init = (h - 1.0) * l;
        const double via_ln = std::log(nd) * l;
        const double init_slack = 0.7 * l * l - init;
        const double cap_dev = std::abs(timeout_cap(n) - 2.0 * m0(n));

        res.min_search_slack = std::min(res.min_search_slack, search_slack);
        res.min_init_slack = std::min(res.min_init_slack, init_slack);
        res.max_cap_deviation = std::max(res.max_cap_deviation, cap_dev);

        const bool search_ok = search_slack >= 0.0;
        const bool init_ok = init <= via_ln && via_ln <= 0.7 * l * l;
        const bool cap_ok = cap_dev <= 1e-9;
        if (!(search_ok && init_ok && cap_ok) && res.first_violation == 0) res.first_violation = n;
        res.search_bound_holds = res.search_bound_holds && search_ok;
        res.init_bound_holds = res.init_bound_holds && init_ok;
        res.cap_identity_holds = res.cap_identity_holds && cap_ok;
    }
    return res;
}

}  // namespace qmin::bounds
