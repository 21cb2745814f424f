#pragma once

// Closed-form bounds for the minimum-finding loop. All values are in time
// steps: lg N per initialization, 1 per Grover iteration.

#include <cstddef>
#include <vector>

namespace qmin::bounds {

/// Expected-cost bound 45/4 sqrt(n) + 7/10 lg^2 n. Throws std::domain_error for n < 2.
double m0(std::size_t n);

/// Stage-2 timeout 22.5 sqrt(n) + 1.4 lg^2 n (= 2 m0). Throws std::domain_error for n < 2.
double timeout_cap(std::size_t n);

/// 4.5 sqrt(n/t). Returns +infinity for t == 0 (the search never ends);
/// throws std::domain_error for t > n.
double bbht_expected_iterations_bound(std::size_t n, std::size_t t);

/// H_n by direct summation up to 1e7, Euler-Maclaurin above.
double harmonic(std::size_t n);

/// 4.5 sqrt(n) * sum_{r=1}^{n-1} 1/((r+1) sqrt r): the expected number of
/// search iterations before the threshold reaches the minimum.
double expected_search_cost_bound(std::size_t n);

/// (H_n - 1) lg n: expected initialization cost before the minimum is held.
double expected_init_cost(std::size_t n);

struct BoundReport {
    std::size_t n = 0;
    double m0 = 0.0;
    double cap = 0.0;
    double harmonic = 0.0;
    double search_cost = 0.0;
    double init_cost = 0.0;
    std::vector<std::pair<std::size_t, double>> bbht;  // (t, bound)
};

/// Report for n >= 2, with bbht bounds at t in {1, 2, n/16, n/4, n} (deduplicated, t >= 1).
BoundReport bound_report(std::size_t n);

struct SweepResult {
    std::size_t n_max = 0;
    bool search_bound_holds = true;  // expected_search_cost_bound(n) <= 45/4 sqrt n
    bool init_bound_holds = true;    // (H_n - 1) lg n <= ln n lg n <= 0.7 lg^2 n
    bool cap_identity_holds = true;  // |timeout_cap - 2 m0| <= 1e-9
    double min_search_slack = 0.0;   // min over n of 45/4 sqrt n - search cost
    double min_init_slack = 0.0;     // min over n of 0.7 lg^2 n - (H_n - 1) lg n
    double max_cap_deviation = 0.0;
    std::size_t first_violation = 0; // 0 if none

    bool passed() const { return search_bound_holds && init_bound_holds && cap_identity_holds; }
};

/// Checks every inequality for n in [2, n_max] using running sums.
SweepResult sweep(std::size_t n_max);

}  // namespace qmin::bounds
