// End-to-end acceptance suite.  Each criterion prints one line:
//   [PASS] <criterion>: <details>
//   [FAIL] <criterion>: <details>
// The binary exits nonzero if any criterion fails.  All tolerances are
// pinned here, not tuned at runtime.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ancred/credibility.hpp"
#include "ancred/effects.hpp"
#include "ancred/errors.hpp"
#include "ancred/nulldist.hpp"
#include "ancred/numerics.hpp"
#include "ancred/rng.hpp"
#include "oracles.hpp"

using namespace ancred;

namespace {

int g_failures = 0;

void report(bool ok, const std::string& name, const std::string& details) {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << ": " << details << "\n";
    if (!ok) ++g_failures;
}

bool close(double value, double target, double tol) {
    return std::isfinite(value) && std::fabs(value - target) <= tol;
}

std::string num(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

std::string run_command(const std::string& args) {
    const std::string cmd = std::string(ANCRED_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) return "<popen failed>";
    std::string output;
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
        output.append(buf.data(), got);
    }
    pclose(pipe);
    return output;
}

// exact running-example pipeline shared by several criteria
const TwoByTwoTable kTrialCounts{102, 288, 75, 277};

EffectEstimate external_estimate() {
    return ci_to_estimate({std::log(1.31), std::log(2.02), 0.95});
}

void criterion_1_running_example() {
    const EffectEstimate est = from_two_by_two(kTrialCounts);
    const ConfidenceInterval ci = estimate_to_ci(est, 0.95);
    const double rr = std::exp(est.theta_hat);
    const double lo = std::exp(ci.lower);
    const double hi = std::exp(ci.upper);
    const double p = p_value(est);
    const bool ok = close(rr, 1.31, 0.005) && close(lo, 1.02, 0.005) &&
                    close(hi, 1.68, 0.005) && close(p, 0.034, 0.001);
    report(ok, "1 running example",
           "exp(theta)=" + num(rr) + " ci=(" + num(lo) + "," + num(hi) +
               ") p=" + num(p));
}

void criterion_2_sceptical_prior() {
    const EffectEstimate est = from_two_by_two(kTrialCounts);
    const ScepticalPrior prior = make_sceptical_prior(est, 0.05);
    const double s = prior.sceptical_limit;
    const double tau = std::sqrt(prior.variance);
    const bool ok = close(s, 0.60, 0.01) && close(std::exp(s), 1.83, 0.01) &&
                    close(tau, 0.31, 0.005) && close(est.se, 0.13, 0.005);
    report(ok, "2 sceptical prior",
           "S=" + num(s) + " exp(S)=" + num(std::exp(s)) + " tau=" + num(tau) +
               " sigma=" + num(est.se));
}

void criterion_3_box_test() {
    const EffectEstimate est = from_two_by_two(kTrialCounts);
    const EffectEstimate ext = external_estimate();
    const TestResult at95 = box_test(ext, make_sceptical_prior(est, 0.05));
    const TestResult at90 = box_test(ext, make_sceptical_prior(est, 0.10));
    const bool ok = close(at95.statistic, 1.49, 0.01) && close(at95.tail, 0.14, 0.005) &&
                    at90.tail < at95.tail;
    report(ok, "3 box test",
           "t_box=" + num(at95.statistic) + " p_box=" + num(at95.tail) +
               " p_box@90%=" + num(at90.tail));
}

void criterion_4_extrinsic_p() {
    const EffectEstimate est = from_two_by_two(kTrialCounts);
    const EffectEstimate ext = external_estimate();
    const double c = (est.se * est.se) / (ext.se * ext.se);
    const double pe = extrinsic_p(test_statistic(est), test_statistic(ext), c);
    report(close(pe, 0.062, 0.002), "4 extrinsic p-value",
           "p_E=" + num(pe) + " at c=" + num(c));
}

void criterion_5_intrinsic_threshold() {
    const double a_i = intrinsic_threshold(0.05);
    const double matthews = matthews_intrinsic_threshold(0.05);
    const double boundary = std::numbers::sqrt2 * std_normal_quantile(0.975);
    const bool ok = close(a_i, 0.0056, 0.0001) && close(matthews, 0.0127, 0.0002) &&
                    close(boundary, 2.77, 0.005);
    report(ok, "5 intrinsic threshold",
           "alpha_I=" + num(a_i) + " matthews=" + num(matthews) +
               " sqrt(2)z=" + num(boundary));
}

void criterion_6_credibility_ratio() {
    const double bound = credibility_ratio_bound();
    bool ok = bound == 3.0 + 2.0 * std::sqrt(2.0) && close(bound, 5.828427, 1e-6);

    std::mt19937_64 gen(20250601);
    std::uniform_real_distribution<double> se(0.02, 2.0);
    std::uniform_real_distribution<double> alpha(0.002, 0.3);
    std::uniform_real_distribution<double> excess(1e-5, 3.0);
    std::uniform_int_distribution<int> sign(0, 1);
    int disagreements = 0;
    for (int i = 0; i < 10000; ++i) {
        const double a = alpha(gen);
        const double z = -std_normal_quantile(a / 2.0);
        const double sigma = se(gen);
        const double mag = (1.0 + excess(gen)) * z * sigma;
        const EffectEstimate est{sign(gen) ? mag : -mag, sigma};

        const bool by_ratio =
            credibility_ratio_credible(estimate_to_ci(est, 1.0 - a)).credible;
        const bool by_variance = intrinsically_credible_by_variance(est, a);
        const bool by_threshold = p_value(est) <= intrinsic_threshold(a);
        const double t = test_statistic(est);
        const bool by_statistic = t * t >= 2.0 * z * z;
        if (by_ratio != by_variance || by_variance != by_threshold ||
            by_threshold != by_statistic) {
            ++disagreements;
        }
    }
    ok = ok && disagreements == 0;
    report(ok, "6 credibility ratio",
           "bound=" + num(bound) + " disagreements=" + std::to_string(disagreements) +
               "/10000");
}

void criterion_7_intrinsic_p() {
    const double pi = intrinsic_p(0.034);
    report(close(pi, 0.13, 0.005), "7 intrinsic p-value", "p_I(0.034)=" + num(pi));
}

void criterion_8_replication_identity() {
    std::mt19937_64 gen(20250608);
    std::uniform_real_distribution<double> se(0.05, 1.5);
    std::uniform_real_distribution<double> ts(0.3, 3.2);
    std::uniform_int_distribution<int> sign(0, 1);
    const std::uint64_t n = 1'000'000;
    int ok_count = 0;
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const double sigma = se(gen);
        const double mag = ts(gen) * sigma;
        const EffectEstimate est{sign(gen) ? mag : -mag, sigma};
        const double target = intrinsic_p(p_value(est));
        const double rep =
            replication_probability_mc(est, n, 777000 + static_cast<std::uint64_t>(i));
        const double q = target / 2.0;
        const double four_se = 4.0 * 2.0 * std::sqrt(q * (1.0 - q) / static_cast<double>(n));
        const double gap = std::fabs(rep - target);
        worst = std::max(worst, four_se > 0.0 ? gap / four_se : 0.0);
        if (gap <= four_se) ++ok_count;
    }
    report(ok_count == 20, "8 replication identity",
           std::to_string(ok_count) + "/20 within 4 binomial SE (worst " + num(worst) +
               " of budget)");
}

void criterion_9_null_p_i() {
    const double analytic = null_tail_p_i(0.05);
    bool ok = close(analytic, 0.0056, 0.0001);

    const std::uint64_t n = 50'000;
    const CounterRng rng(20250609);
    std::uint64_t below = 0;
    for (std::uint64_t k = 0; k < n; ++k) {
        if (intrinsic_p(rng.uniform(k)) < 0.05) ++below;
    }
    const double empirical = static_cast<double>(below) / static_cast<double>(n);
    const double se = std::sqrt(analytic * (1.0 - analytic) / static_cast<double>(n));
    ok = ok && std::fabs(empirical - analytic) <= 3.0 * se;

    const double mass = oracles::simpson([](double x) { return p_i_null_density(x); },
                                         1e-9, 1.0 - 1e-9, 40000);
    ok = ok && close(mass, 1.0, 1e-6);
    report(ok, "9 null distribution of p_I",
           "analytic=" + num(analytic) + " empirical=" + num(empirical) +
               " integral=" + num(mass));
}

void criterion_10_null_p_e() {
    const std::uint64_t n = 50'000;
    const std::uint64_t seed = 20250610;
    const std::vector<double> c_grid{0.001, 0.5, 1.0, 2.0};
    const double bound = 0.0025 + 3.0 * std::sqrt(0.0025 / static_cast<double>(n));

    bool ok = true;
    std::string details;
    std::vector<std::vector<double>> runs;
    for (const double c : c_grid) {
        runs.push_back(simulate_p_e_null({n, c, seed}).samples);
        const auto& samples = runs.back();
        const double tail =
            static_cast<double>(std::count_if(samples.begin(), samples.end(),
                                              [](double v) { return v < 0.05; })) /
            static_cast<double>(n);
        if (!(tail <= bound)) ok = false;
        details += "tail(c=" + num(c) + ")=" + num(tail) + " ";
    }

    // c = 0.001: empirical CDF within 0.01 of x^2 in sup norm
    std::vector<double> sorted = runs[0];
    std::sort(sorted.begin(), sorted.end());
    double sup = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = sorted[i] * sorted[i];
        sup = std::max(sup, std::fabs(f - static_cast<double>(i) / static_cast<double>(n)));
        sup = std::max(sup,
                       std::fabs(static_cast<double>(i + 1) / static_cast<double>(n) - f));
    }
    if (!(sup <= 0.01)) ok = false;
    details += "sup|F-x^2|(c=0.001)=" + num(sup) + " ";

    // samplewise monotonicity across the shared random pairs
    std::uint64_t violations = 0;
    for (std::size_t ci = 0; ci + 1 < runs.size(); ++ci) {
        for (std::uint64_t k = 0; k < n; ++k) {
            if (runs[ci][k] > runs[ci + 1][k]) ++violations;
        }
    }
    if (violations != 0) ok = false;
    details += "monotonicity violations=" + std::to_string(violations) +
               " (bound " + num(bound) + ")";
    report(ok, "10 null distribution of p_E", details);
}

void criterion_11_property_suite() {
    bool ok = true;
    std::string details;

    // extrinsic_p symmetry in (t, t0)
    std::mt19937_64 gen(20250611);
    std::uniform_real_distribution<double> ts(0.1, 5.0);
    std::uniform_real_distribution<double> cs(0.05, 4.0);
    for (int i = 0; i < 500; ++i) {
        const double t = ts(gen);
        const double t0 = ts(gen);
        const double c = cs(gen);
        if (extrinsic_p(t, t0, c) != extrinsic_p(t0, t, c)) {
            ok = false;
            break;
        }
    }
    details += std::string("symmetry=") + (ok ? "exact" : "BROKEN");

    // extrinsic_p(t, t, 1) = intrinsic_p(p(t)) within 1e-6 on [2, 5]
    double worst_gap = 0.0;
    for (double t = 2.0; t <= 5.0; t += 0.05) {
        const double p = 2.0 * std_normal_cdf(-t);
        worst_gap = std::max(worst_gap,
                             std::fabs(extrinsic_p(t, t, 1.0) - intrinsic_p(p)));
    }
    if (!(worst_gap <= 1e-6)) ok = false;
    details += " equal-study gap=" + num(worst_gap);

    // p_E always exceeds both ordinary p-values
    bool dominance = true;
    for (int i = 0; i < 2000; ++i) {
        const double t = ts(gen);
        const double t0 = ts(gen);
        const double c = cs(gen);
        const double pe = extrinsic_p(t, t0, c);
        const double pmax =
            std::max(2.0 * std_normal_cdf(-t), 2.0 * std_normal_cdf(-t0));
        if (!(pe > pmax && pe < 1.0)) {
            dominance = false;
            break;
        }
    }
    if (!dominance) ok = false;
    details += std::string(" dominance=") + (dominance ? "holds" : "BROKEN");

    // CI <-> estimate round trips at 1e-10
    std::uniform_real_distribution<double> theta(-3.0, 3.0);
    std::uniform_real_distribution<double> se(0.01, 2.0);
    std::uniform_real_distribution<double> level(0.5, 0.999);
    double worst_rt = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const EffectEstimate est{theta(gen), se(gen)};
        const EffectEstimate back = ci_to_estimate(estimate_to_ci(est, level(gen)));
        worst_rt = std::max(worst_rt, std::fabs(back.theta_hat - est.theta_hat));
        worst_rt = std::max(worst_rt, std::fabs(back.se - est.se));
    }
    if (!(worst_rt <= 1e-10)) ok = false;
    details += " roundtrip=" + num(worst_rt);

    // deterministic reruns of seeded commands are byte-identical
    const std::string sim_args = "simulate --c 1 --n 50000 --seed 42 --json --csv -";
    const bool sim_identical = run_command(sim_args) == run_command(sim_args);
    const std::string fig_args = "figure-data null-histograms --n 5000 --seed 3 --c 0.5,1";
    const bool fig_identical = run_command(fig_args) == run_command(fig_args);
    if (!(sim_identical && fig_identical)) ok = false;
    details += std::string(" cli-rerun=") +
               (sim_identical && fig_identical ? "identical" : "DIFFERS");

    report(ok, "11 property suite", details);
}

} // namespace

int main() {
    criterion_1_running_example();
    criterion_2_sceptical_prior();
    criterion_3_box_test();
    criterion_4_extrinsic_p();
    criterion_5_intrinsic_threshold();
    criterion_6_credibility_ratio();
    criterion_7_intrinsic_p();
    criterion_8_replication_identity();
    criterion_9_null_p_i();
    criterion_10_null_p_e();
    criterion_11_property_suite();

    if (g_failures != 0) {
        std::cout << g_failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all acceptance criteria passed\n";
    return 0;
}
