#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace qmin::stats {

struct MeanEstimate {
    double mean = 0.0;
    double se = 0.0;  // standard error of the mean
    std::size_t count = 0;
};

/// Sequential fold in index order, so the result does not depend on how the
/// samples were produced.
MeanEstimate mean_estimate(std::span<const double> samples);

struct Interval {
    double lo = 0.0;
    double hi = 1.0;
};

/// Two-sided Wilson score interval for a binomial proportion.
Interval wilson_interval(std::size_t successes, std::size_t trials, double confidence = 0.99);

/// Standard error of a proportion estimate.
double proportion_se(double p, std::size_t trials);

struct ChiSquare {
    double statistic = 0.0;
    std::size_t dof = 0;
    double p_value = 1.0;
};

/// Two-sample homogeneity test on ordered categories. Adjacent categories are
/// pooled until each pooled cell expects at least 5 counts in both samples.
ChiSquare chi_square_homogeneity(const std::map<std::int64_t, std::size_t>& a,
                                 const std::map<std::int64_t, std::size_t>& b);

/// Goodness of fit of `counts` against the uniform law over its cells. When a
/// cell expects fewer than `min_expected` counts the approximation does not
/// hold and the test is skipped (dof 0, p 1).
ChiSquare chi_square_uniform(std::span<const std::size_t> counts, double min_expected = 5.0);

}  // namespace qmin::stats
