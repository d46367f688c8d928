#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ancred/effects.hpp"

namespace ancred {

/// Seeded Monte Carlo configuration for the null distribution of the
/// extrinsic credibility p-value.
struct SimulationConfig {
    std::uint64_t n_samples = 50'000;
    double variance_ratio_c = 1.0;
    std::uint64_t seed = 0;
};

/// Draws from one simulation run, together with the configuration that
/// produced them.
struct SampleSet {
    SimulationConfig config;
    std::vector<double> samples;
};

/// Equal-width histogram over [0,1].
struct Histogram {
    std::vector<double> bin_edges; ///< bins+1 edges spanning [0,1]
    std::vector<std::uint64_t> counts;
    std::uint64_t total = 0;
};

/// Null density of the intrinsic credibility p-value,
/// f(p_I) = 2 sqrt(pi) phi(t(p_I)) with t(x) = Phi^{-1}(1 - x/2).
double p_i_null_density(double p_i);

/// Null tail Pr(p_I < alpha | no effect)
///   = 2{1 - Phi(sqrt(2) Phi^{-1}(1 - alpha/2))}.
double null_tail_p_i(double alpha);

/// Null distribution of the extrinsic credibility p-value: draws i.i.d.
/// pairs t, t0 ~ N(0,1) and solves for p_E at the configured variance
/// ratio.  Deterministic for a fixed seed; with shards > 1 the index
/// range is split across that many workers and the merged result is
/// identical to the sequential run.
SampleSet simulate_p_e_null(const SimulationConfig& config, unsigned shards = 1);

/// Limiting null density of p_E as the variance ratio goes to zero:
/// the Be(2,1) density 2x on [0,1].
double limiting_density_c0(double x);

/// Monte Carlo replication probability: draws n predictive estimates
/// from N(theta_hat, 2 se^2) and returns twice the fraction landing on
/// the opposite side of zero from theta_hat.
double replication_probability_mc(const EffectEstimate& est, std::uint64_t n,
                                  std::uint64_t seed);

/// Bin samples (expected inside [0,1]) into `bins` equal-width bins.
Histogram make_histogram(std::span<const double> samples, std::size_t bins);

} // namespace ancred
