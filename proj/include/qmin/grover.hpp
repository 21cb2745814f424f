#pragma once

// Statevector Grover iteration over a lazily evaluated marked predicate,
// plus the closed-form marked-subset probability used by the analytic sampler.

#include <complex>
#include <concepts>
#include <cstddef>
#include <span>
#include <vector>

#include "qmin/random.hpp"

namespace qmin {

using Amplitude = std::complex<double>;

inline constexpr double kNormTolerance = 1e-9;

template <class P>
concept IndexPredicate = std::predicate<const P&, std::size_t>;

/// Amplitudes of the index register. Always normalized within kNormTolerance.
class StateVector {
public:
    /// Throws std::invalid_argument if empty or not normalized.
    static StateVector from_amplitudes(std::vector<Amplitude> amplitudes);

    std::size_t size() const noexcept { return amps_.size(); }
    std::span<const Amplitude> amplitudes() const noexcept { return amps_; }
    const Amplitude& operator[](std::size_t i) const { return amps_[i]; }

    double probability(std::size_t i) const { return std::norm(amps_[i]); }
    double norm_squared() const noexcept;

    template <IndexPredicate P>
    double marked_probability(const P& marked) const {
        double p = 0.0;
        for (std::size_t i = 0; i < amps_.size(); ++i)
            if (marked(i)) p += std::norm(amps_[i]);
        return p;
    }

private:
    explicit StateVector(std::vector<Amplitude> amplitudes) : amps_(std::move(amplitudes)) {}

    std::vector<Amplitude> amps_;

    friend StateVector uniform_state(std::size_t n);
    template <IndexPredicate P>
    friend StateVector grover_iterate(StateVector state, const P& marked);
};

/// Angle theta = arcsin(sqrt(t/N)) of the marked subspace.
struct GroverAngle {
    double theta = 0.0;
    std::size_t n_total = 1;
    std::size_t n_marked = 0;

    /// Throws std::domain_error unless 0 <= t <= n and n >= 1.
    static GroverAngle of(std::size_t n, std::size_t t);
};

/// Equal superposition over n indices. Throws std::invalid_argument for n == 0.
StateVector uniform_state(std::size_t n);

/// One Grover step: phase-flip marked amplitudes, then reflect every amplitude
/// about the mean (a -> 2*mean - a).
template <IndexPredicate P>
StateVector grover_iterate(StateVector state, const P& marked) {
    auto& a = state.amps_;
    Amplitude sum{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (marked(i)) a[i] = -a[i];
        sum += a[i];
    }
    const Amplitude twice_mean = 2.0 * sum / static_cast<double>(a.size());
    for (auto& x : a) x = twice_mean - x;
    return state;
}

/// sin^2((2j+1) theta): probability of observing a marked index after j
/// iterations from the uniform state. Throws std::domain_error for t > n.
double success_probability(std::size_t n, std::size_t t, std::size_t j);

/// Samples index i with probability |a_i|^2.
std::size_t measure(const StateVector& state, Rng& rng);

}  // namespace qmin
