#include "ancred/nulldist.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "ancred/credibility.hpp"
#include "ancred/errors.hpp"
#include "ancred/numerics.hpp"
#include "ancred/rng.hpp"

namespace ancred {

namespace {

constexpr double kTwoSqrtPi = 3.5449077018110320546; // 2 sqrt(pi)

void fill_p_e_range(const CounterRng& rng, double c, std::uint64_t begin,
                    std::uint64_t end, std::vector<double>& out) {
    for (std::uint64_t k = begin; k < end; ++k) {
        const double t = rng.normal(2 * k);
        const double t0 = rng.normal(2 * k + 1);
        out[k] = extrinsic_p(t, t0, c);
    }
}

} // namespace

double p_i_null_density(double p_i) {
    if (!(p_i > 0.0 && p_i < 1.0)) {
        throw std::domain_error("p_i_null_density: p_i must be in (0,1)");
    }
    const double t = -std_normal_quantile(p_i / 2.0);
    return kTwoSqrtPi * std_normal_pdf(t);
}

double null_tail_p_i(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::domain_error("null_tail_p_i: alpha must be in (0,1)");
    }
    const double z = -std_normal_quantile(alpha / 2.0);
    return 2.0 * std_normal_cdf(-std::numbers::sqrt2 * z);
}

SampleSet simulate_p_e_null(const SimulationConfig& config, unsigned shards) {
    if (config.n_samples < 1) {
        throw std::invalid_argument("simulate_p_e_null: n_samples must be >= 1");
    }
    if (!(config.variance_ratio_c > 0.0)) {
        throw std::domain_error(
            "simulate_p_e_null: variance ratio must be > 0 (use the analytic "
            "Be(2,1) limit for c = 0)");
    }
    if (shards < 1) shards = 1;

    const CounterRng rng(config.seed);
    const std::uint64_t n = config.n_samples;
    SampleSet result{.config = config, .samples = std::vector<double>(n)};

    if (shards == 1 || n < 2 * shards) {
        fill_p_e_range(rng, config.variance_ratio_c, 0, n, result.samples);
        return result;
    }

    // Each worker owns a contiguous index range; draw k depends only on
    // (seed, k), so the merged vector matches the sequential run.
    std::vector<std::thread> workers;
    workers.reserve(shards);
    const std::uint64_t chunk = (n + shards - 1) / shards;
    for (unsigned s = 0; s < shards; ++s) {
        const std::uint64_t begin = s * chunk;
        const std::uint64_t end = std::min(n, begin + chunk);
        if (begin >= end) break;
        workers.emplace_back([&, begin, end] {
            fill_p_e_range(rng, config.variance_ratio_c, begin, end, result.samples);
        });
    }
    for (auto& w : workers) w.join();
    return result;
}

double limiting_density_c0(double x) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw std::domain_error("limiting_density_c0: x must be in [0,1]");
    }
    return 2.0 * x;
}

double replication_probability_mc(const EffectEstimate& est, std::uint64_t n,
                                  std::uint64_t seed) {
    detail::validate(est);
    if (est.theta_hat == 0.0) {
        throw std::domain_error(
            "replication_probability_mc: direction undefined for a zero estimate");
    }
    if (n < 1) {
        throw std::invalid_argument("replication_probability_mc: n must be >= 1");
    }
    const CounterRng rng(seed);
    const double predictive_sd = std::numbers::sqrt2 * est.se;
    std::uint64_t opposite = 0;
    for (std::uint64_t k = 0; k < n; ++k) {
        const double draw = est.theta_hat + predictive_sd * rng.normal(k);
        if (est.theta_hat > 0.0 ? draw <= 0.0 : draw >= 0.0) ++opposite;
    }
    return 2.0 * static_cast<double>(opposite) / static_cast<double>(n);
}

Histogram make_histogram(std::span<const double> samples, std::size_t bins) {
    if (bins < 1) {
        throw std::invalid_argument("make_histogram: need at least one bin");
    }
    if (samples.empty()) {
        throw std::invalid_argument("make_histogram: empty sample set");
    }
    Histogram hist;
    hist.bin_edges.resize(bins + 1);
    for (std::size_t i = 0; i <= bins; ++i) {
        hist.bin_edges[i] = static_cast<double>(i) / static_cast<double>(bins);
    }
    hist.counts.assign(bins, 0);
    for (const double x : samples) {
        if (!(x >= 0.0 && x <= 1.0)) {
            throw std::domain_error("make_histogram: sample outside [0,1]");
        }
        const auto idx = std::min(bins - 1,
                                  static_cast<std::size_t>(x * static_cast<double>(bins)));
        ++hist.counts[idx];
    }
    hist.total = samples.size();
    return hist;
}

} // namespace ancred
