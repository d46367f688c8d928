// ancred: reverse-Bayes credibility analysis from the command line.
//
// Subcommands: analyse, extrinsic, prior, simulate, figure-data.
// Every command accepts --json for a machine-readable envelope; numbers
// in human output are printed to 4 significant digits, JSON carries
// full precision.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ancred/credibility.hpp"
#include "ancred/effects.hpp"
#include "ancred/errors.hpp"
#include "ancred/nulldist.hpp"
#include "ancred/numerics.hpp"
#include "ancred/rng.hpp"

using json = nlohmann::ordered_json;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;
constexpr int kExitNotSignificant = 4;
constexpr std::uint64_t kDefaultSeed = 1;
constexpr const char* kSchemaVersion = "1";

class usage_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Locale-independent shortest representation (full precision).
std::string fmt_full(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

// 4 significant digits for human-readable output.
std::string fmt_sig(double v, int digits = 4) {
    char buf[40];
    const auto res =
        std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, digits);
    return std::string(buf, res.ptr);
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("ANCRED_SEED")) {
        std::uint64_t value = 0;
        const std::string s(env);
        const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
        if (res.ec == std::errc() && res.ptr == s.data() + s.size()) return value;
        throw usage_error("ANCRED_SEED must be an unsigned integer");
    }
    return kDefaultSeed;
}

// ---------------------------------------------------------------------------
// study inputs

struct StudyFlags {
    std::optional<double> p;
    std::vector<double> ci; // two entries when given
    std::optional<double> theta;
    std::optional<double> se;
};

struct ResolvedStudy {
    std::optional<ancred::EffectEstimate> estimate;
    double p = 1.0;
    double t_abs = 0.0;
    json echo;
};

void add_internal_flags(CLI::App* cmd, StudyFlags& flags) {
    cmd->add_option("--p", flags.p, "Two-sided p-value for significance");
    cmd->add_option("--ci", flags.ci,
                    "Confidence interval as L,U at the working level")
        ->delimiter(',')
        ->expected(2);
    auto* theta = cmd->add_option("--theta", flags.theta,
                                  "Point estimate on the additive (log) scale");
    auto* se = cmd->add_option("--se", flags.se, "Standard error of --theta");
    theta->needs(se);
    se->needs(theta);
}

struct CountFlags {
    std::optional<std::int64_t> events, n1, events0, n2;
};

void add_count_flags(CLI::App* cmd, CountFlags& counts) {
    cmd->add_option("--events", counts.events, "Events in the treatment group");
    cmd->add_option("--n1", counts.n1, "Treatment group size");
    cmd->add_option("--events0", counts.events0, "Events in the control group");
    cmd->add_option("--n2", counts.n2, "Control group size");
}

int count_given(const StudyFlags& flags, const CountFlags& counts) {
    int forms = 0;
    if (flags.p) ++forms;
    if (!flags.ci.empty()) ++forms;
    if (flags.theta) ++forms;
    if (counts.events || counts.n1 || counts.events0 || counts.n2) ++forms;
    return forms;
}

double require_p_in_range(double p) {
    if (!(p > 0.0 && p <= 1.0)) {
        throw std::domain_error("p-value must be in (0,1]");
    }
    return p;
}

ancred::ConfidenceInterval interval_from_flags(const std::vector<double>& ci,
                                               double level, bool ratio_scale) {
    double lower = ci[0];
    double upper = ci[1];
    if (ratio_scale) {
        if (!(lower > 0.0 && upper > 0.0)) {
            throw std::domain_error(
                "ratio-scale interval limits must be positive (use --scale additive "
                "for limits on the log scale)");
        }
        lower = std::log(lower);
        upper = std::log(upper);
    }
    return ancred::ConfidenceInterval{lower, upper, level};
}

ResolvedStudy resolve_study(const StudyFlags& flags, const CountFlags& counts,
                            double level, bool ratio_scale, const char* label) {
    const int forms = count_given(flags, counts);
    if (forms == 0) {
        throw usage_error(std::string("no ") + label +
                          " input given (use --p, --ci, --theta/--se or counts)");
    }
    if (forms > 1) {
        throw usage_error(std::string("conflicting ") + label +
                          " inputs: supply exactly one of --p, --ci, --theta/--se, counts");
    }

    ResolvedStudy study;
    if (flags.p) {
        study.p = require_p_in_range(*flags.p);
        study.t_abs = study.p == 1.0
                          ? 0.0
                          : -ancred::std_normal_quantile(study.p / 2.0);
        study.echo = json{{"p", *flags.p}};
        return study;
    }
    if (!flags.ci.empty()) {
        const auto ci = interval_from_flags(flags.ci, level, ratio_scale);
        study.estimate = ancred::ci_to_estimate(ci);
        study.echo = json{{"ci", {flags.ci[0], flags.ci[1]}},
                          {"level", level},
                          {"scale", ratio_scale ? "ratio" : "additive"}};
    } else if (flags.theta) {
        study.estimate = ancred::EffectEstimate{*flags.theta, flags.se.value_or(0.0)};
        ancred::detail::validate(*study.estimate);
        study.echo = json{{"theta", *flags.theta}, {"se", *flags.se}};
    } else {
        if (!(counts.events && counts.n1 && counts.events0 && counts.n2)) {
            throw usage_error(std::string(label) +
                              " counts need all of --events, --n1, --events0, --n2");
        }
        const ancred::TwoByTwoTable table{*counts.events, *counts.n1, *counts.events0,
                                          *counts.n2};
        study.estimate = ancred::from_two_by_two(table);
        study.echo = json{{"events", *counts.events},
                          {"n1", *counts.n1},
                          {"events0", *counts.events0},
                          {"n2", *counts.n2}};
    }
    study.p = ancred::p_value(*study.estimate);
    study.t_abs = std::fabs(ancred::test_statistic(*study.estimate));
    return study;
}

// external-study flags: same four forms under 0-suffixed names
struct ExternalFlags {
    std::optional<double> p0;
    std::vector<double> ci0;
    std::optional<double> theta0;
    std::optional<double> se0;
    std::vector<std::int64_t> counts0;
};

void add_external_flags(CLI::App* cmd, ExternalFlags& flags) {
    cmd->add_option("--p0", flags.p0, "External two-sided p-value");
    cmd->add_option("--ci0", flags.ci0, "External confidence interval as L,U")
        ->delimiter(',')
        ->expected(2);
    auto* theta0 = cmd->add_option("--theta0", flags.theta0,
                                   "External point estimate (additive scale)");
    auto* se0 = cmd->add_option("--se0", flags.se0, "Standard error of --theta0");
    theta0->needs(se0);
    se0->needs(theta0);
    cmd->add_option("--counts0", flags.counts0,
                    "External 2x2 counts as events,n1,events0,n2")
        ->delimiter(',')
        ->expected(4);
}

ResolvedStudy resolve_external(const ExternalFlags& flags, double level,
                               bool ratio_scale) {
    int forms = 0;
    if (flags.p0) ++forms;
    if (!flags.ci0.empty()) ++forms;
    if (flags.theta0) ++forms;
    if (!flags.counts0.empty()) ++forms;
    if (forms == 0) {
        throw usage_error(
            "no external input given (use --p0, --ci0, --theta0/--se0 or --counts0)");
    }
    if (forms > 1) {
        throw usage_error("conflicting external inputs: supply exactly one form");
    }

    ResolvedStudy study;
    if (flags.p0) {
        study.p = require_p_in_range(*flags.p0);
        study.t_abs = study.p == 1.0
                          ? 0.0
                          : -ancred::std_normal_quantile(study.p / 2.0);
        study.echo = json{{"p0", *flags.p0}};
        return study;
    }
    if (!flags.ci0.empty()) {
        const auto ci = interval_from_flags(flags.ci0, level, ratio_scale);
        study.estimate = ancred::ci_to_estimate(ci);
        study.echo = json{{"ci0", {flags.ci0[0], flags.ci0[1]}},
                          {"level", level},
                          {"scale", ratio_scale ? "ratio" : "additive"}};
    } else if (flags.theta0) {
        study.estimate = ancred::EffectEstimate{*flags.theta0, flags.se0.value_or(0.0)};
        ancred::detail::validate(*study.estimate);
        study.echo = json{{"theta0", *flags.theta0}, {"se0", *flags.se0}};
    } else {
        const ancred::TwoByTwoTable table{flags.counts0[0], flags.counts0[1],
                                          flags.counts0[2], flags.counts0[3]};
        study.estimate = ancred::from_two_by_two(table);
        study.echo = json{{"counts0", flags.counts0}};
    }
    study.p = ancred::p_value(*study.estimate);
    study.t_abs = std::fabs(ancred::test_statistic(*study.estimate));
    return study;
}

json envelope(const std::string& command, json inputs, json results) {
    return json{{"schema_version", kSchemaVersion},
                {"command", command},
                {"inputs", std::move(inputs)},
                {"results", std::move(results)}};
}

void emit(const json& env, bool as_json, const std::string& human) {
    if (as_json) {
        std::cout << env.dump(2) << "\n";
    } else {
        std::cout << human;
    }
}

// ---------------------------------------------------------------------------
// analyse / prior

struct AnalyseOptions {
    StudyFlags study;
    CountFlags counts;
    double level = 0.95;
    std::string scale = "ratio";
    bool exp_display = false;
    bool as_json = false;
};

void run_analyse(const AnalyseOptions& opt) {
    const bool ratio_scale = opt.scale == "ratio";
    const ResolvedStudy study =
        resolve_study(opt.study, opt.counts, opt.level, ratio_scale, "study");
    const double alpha = 1.0 - opt.level;

    ancred::CredibilityReport report =
        study.estimate ? ancred::credibility_report(*study.estimate, opt.level)
                       : ancred::credibility_report(study.p, opt.level);

    json results;
    json reasons;
    results["level"] = opt.level;
    results["p"] = report.p;
    results["p_intrinsic"] = report.p_intrinsic;
    results["intrinsic_threshold"] = ancred::intrinsic_threshold(alpha);

    std::string human;
    human += "p            = " + fmt_sig(report.p) + "\n";
    human += "p_intrinsic  = " + fmt_sig(report.p_intrinsic) + "\n";

    std::optional<ancred::ScepticalPrior> prior;
    if (study.estimate) {
        const auto& est = *study.estimate;
        results["estimate"] = json{{"theta_hat", est.theta_hat},
                                   {"se", est.se},
                                   {"t", ancred::test_statistic(est)}};
        const auto ci = ancred::estimate_to_ci(est, opt.level);
        results["ci"] = json{{"lower", ci.lower}, {"upper", ci.upper}, {"level", ci.level}};
        human += "theta_hat    = " + fmt_sig(est.theta_hat) + "  (se " + fmt_sig(est.se) +
                 ", t " + fmt_sig(ancred::test_statistic(est)) + ")\n";
        human += "ci           = [" + fmt_sig(ci.lower) + ", " + fmt_sig(ci.upper) +
                 "] at level " + fmt_sig(opt.level) + "\n";

        try {
            prior = ancred::make_sceptical_prior(est, alpha);
            results["sceptical_prior"] =
                json{{"limit", prior->sceptical_limit},
                     {"tau", std::sqrt(prior->variance)},
                     {"variance", prior->variance},
                     {"interval", {-prior->sceptical_limit, prior->sceptical_limit}},
                     {"level", prior->level}};
            human += "sceptical    : limit " + fmt_sig(prior->sceptical_limit) + ", tau " +
                     fmt_sig(std::sqrt(prior->variance)) + "\n";
        } catch (const ancred::not_significant_error&) {
            reasons["sceptical_prior"] = "result not significant at the working level";
        }

        if (report.credibility_ratio) {
            results["credibility_ratio"] = *report.credibility_ratio;
            results["credibility_ratio_bound"] = ancred::credibility_ratio_bound();
            results["ratio_credible"] = *report.ratio_credible;
            human += "ratio        = " + fmt_sig(*report.credibility_ratio) + " (bound " +
                     fmt_sig(ancred::credibility_ratio_bound()) + ") -> " +
                     (*report.ratio_credible ? "credible" : "not credible") + "\n";
        } else {
            reasons["credibility_ratio"] = "interval covers zero at the working level";
        }
        results["intrinsically_credible"] = *report.intrinsically_credible;
        human += std::string("intrinsic    : ") +
                 (*report.intrinsically_credible ? "credible" : "not credible") +
                 " at level " + fmt_sig(opt.level) + "\n";

        if (opt.exp_display) {
            json exp_block{{"rr", std::exp(est.theta_hat)},
                           {"ci", {std::exp(ci.lower), std::exp(ci.upper)}}};
            human += "exp          : rr " + fmt_sig(std::exp(est.theta_hat)) + ", ci [" +
                     fmt_sig(std::exp(ci.lower)) + ", " + fmt_sig(std::exp(ci.upper)) +
                     "]";
            if (prior) {
                exp_block["sceptical_limit"] = std::exp(prior->sceptical_limit);
                exp_block["interval"] = {std::exp(-prior->sceptical_limit),
                                         std::exp(prior->sceptical_limit)};
                human += ", sceptical limit " + fmt_sig(std::exp(prior->sceptical_limit));
            }
            human += "\n";
            results["exp"] = std::move(exp_block);
        }
    }

    if (!reasons.empty()) results["reasons"] = std::move(reasons);
    emit(envelope("analyse", study.echo, results), opt.as_json, human);
}

struct PriorOptions {
    StudyFlags study;
    CountFlags counts;
    double level = 0.95;
    std::string scale = "ratio";
    bool exp_display = false;
    bool as_json = false;
};

void run_prior(const PriorOptions& opt) {
    const bool ratio_scale = opt.scale == "ratio";
    const ResolvedStudy study =
        resolve_study(opt.study, opt.counts, opt.level, ratio_scale, "study");
    if (!study.estimate) {
        throw usage_error("prior needs an estimate-bearing input (--ci, --theta/--se or counts)");
    }
    const double alpha = 1.0 - opt.level;
    const ancred::ScepticalPrior prior =
        ancred::make_sceptical_prior(*study.estimate, alpha);

    json results{{"level", prior.level},
                 {"sceptical_limit", prior.sceptical_limit},
                 {"tau", std::sqrt(prior.variance)},
                 {"variance", prior.variance},
                 {"interval", {-prior.sceptical_limit, prior.sceptical_limit}}};
    std::string human;
    human += "sceptical limit = " + fmt_sig(prior.sceptical_limit) + "\n";
    human += "tau             = " + fmt_sig(std::sqrt(prior.variance)) + "\n";
    human += "interval        = [" + fmt_sig(-prior.sceptical_limit) + ", " +
             fmt_sig(prior.sceptical_limit) + "] at level " + fmt_sig(prior.level) + "\n";
    if (opt.exp_display) {
        results["exp"] = json{{"sceptical_limit", std::exp(prior.sceptical_limit)},
                              {"interval",
                               {std::exp(-prior.sceptical_limit),
                                std::exp(prior.sceptical_limit)}}};
        human += "exp interval    = [" + fmt_sig(std::exp(-prior.sceptical_limit)) +
                 ", " + fmt_sig(std::exp(prior.sceptical_limit)) + "]\n";
    }
    emit(envelope("prior", study.echo, results), opt.as_json, human);
}

// ---------------------------------------------------------------------------
// extrinsic

struct ExtrinsicOptions {
    StudyFlags study;
    CountFlags counts;
    ExternalFlags external;
    std::optional<double> c_override;
    double level = 0.95;
    std::string scale = "ratio";
    bool as_json = false;
};

void run_extrinsic(const ExtrinsicOptions& opt) {
    const bool ratio_scale = opt.scale == "ratio";
    const ResolvedStudy internal =
        resolve_study(opt.study, opt.counts, opt.level, ratio_scale, "internal");
    const ResolvedStudy external = resolve_external(opt.external, opt.level, ratio_scale);
    const double alpha = 1.0 - opt.level;

    double c = 0.0;
    if (opt.c_override) {
        c = *opt.c_override;
        if (!(c > 0.0)) throw std::domain_error("--c must be > 0");
    } else if (internal.estimate && external.estimate) {
        c = (internal.estimate->se * internal.estimate->se) /
            (external.estimate->se * external.estimate->se);
    } else {
        throw usage_error(
            "variance ratio not derivable from the inputs; pass --c explicitly");
    }

    json inputs{{"internal", internal.echo}, {"external", external.echo}};
    if (opt.c_override) inputs["c"] = *opt.c_override;

    json results;
    json reasons;
    results["level"] = opt.level;
    results["t"] = internal.t_abs;
    results["t0"] = external.t_abs;
    results["c"] = c;
    results["p"] = internal.p;
    results["p0"] = external.p;

    std::string human;
    human += "t    = " + fmt_sig(internal.t_abs) + "  (p " + fmt_sig(internal.p) + ")\n";
    human += "t0   = " + fmt_sig(external.t_abs) + "  (p0 " + fmt_sig(external.p) + ")\n";
    human += "c    = " + fmt_sig(c) + "\n";

    try {
        const double pe = ancred::extrinsic_p(internal.t_abs, external.t_abs, c);
        results["p_extrinsic"] = pe;
        human += "p_extrinsic = " + fmt_sig(pe) + "\n";
    } catch (const ancred::no_solution_error&) {
        reasons["p_extrinsic"] = "no solution below 1 (a test statistic is zero)";
        human += "p_extrinsic = (no solution below 1)\n";
    }

    // Credibility machinery sees the positive orientation: mirror both
    // studies when the internal effect is negative.
    if (internal.estimate && external.estimate) {
        ancred::EffectEstimate internal_est = *internal.estimate;
        ancred::EffectEstimate external_est = *external.estimate;
        if (internal_est.theta_hat < 0.0) {
            internal_est.theta_hat = -internal_est.theta_hat;
            external_est.theta_hat = -external_est.theta_hat;
        }
        try {
            const ancred::ScepticalPrior prior =
                ancred::make_sceptical_prior(internal_est, alpha);
            const ancred::TestResult box = ancred::box_test(external_est, prior);
            results["box"] = json{{"statistic", box.statistic}, {"tail", box.tail}};
            const bool matthews = ancred::matthews_extrinsic_credible(
                internal.t_abs, external.t_abs, c, alpha);
            results["matthews_credible"] = matthews;
            human += "box  : t_box " + fmt_sig(box.statistic) + ", p_box " +
                     fmt_sig(box.tail) + "\n";
            human += std::string("matthews check: ") +
                     (matthews ? "credible" : "not credible") + " at level " +
                     fmt_sig(opt.level) + "\n";
        } catch (const ancred::not_significant_error&) {
            reasons["box"] = "internal result not significant at the working level";
            reasons["matthews_credible"] =
                "internal result not significant at the working level";
            human += "box  : (internal result not significant at the working level)\n";
        }
        const ancred::TestResult compat =
            ancred::compatibility_test(*internal.estimate, *external.estimate);
        results["compatibility"] =
            json{{"statistic", compat.statistic}, {"tail", compat.tail}};
        human += "compatibility: statistic " + fmt_sig(compat.statistic) + ", tail " +
                 fmt_sig(compat.tail) + "\n";
    } else {
        reasons["box"] = "needs estimates with standard errors on both sides";
        reasons["compatibility"] = "needs estimates with standard errors on both sides";
    }

    if (!reasons.empty()) results["reasons"] = std::move(reasons);
    emit(envelope("extrinsic", inputs, results), opt.as_json, human);
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateOptions {
    double c = 1.0;
    std::uint64_t n = 50'000;
    std::optional<std::uint64_t> seed;
    std::size_t bins = 40;
    unsigned shards = 1;
    std::string csv_path;
    bool as_json = false;
};

std::string histogram_csv(const ancred::Histogram& hist) {
    std::string csv = "bin_lo,bin_hi,count,density\n";
    const double total = static_cast<double>(hist.total);
    for (std::size_t i = 0; i < hist.counts.size(); ++i) {
        const double lo = hist.bin_edges[i];
        const double hi = hist.bin_edges[i + 1];
        const double density = static_cast<double>(hist.counts[i]) / (total * (hi - lo));
        csv += fmt_full(lo) + "," + fmt_full(hi) + "," + std::to_string(hist.counts[i]) +
               "," + fmt_full(density) + "\n";
    }
    return csv;
}

void run_simulate(const SimulateOptions& opt) {
    if (!(opt.c > 0.0)) throw std::domain_error("--c must be > 0");
    const std::uint64_t seed = opt.seed ? *opt.seed : default_seed();
    const ancred::SimulationConfig config{opt.n, opt.c, seed};
    const ancred::SampleSet run = ancred::simulate_p_e_null(config, opt.shards);
    const ancred::Histogram hist = ancred::make_histogram(run.samples, opt.bins);

    json tails;
    std::string human;
    human += "p_E null simulation: c " + fmt_sig(opt.c) + ", n " + std::to_string(opt.n) +
             ", seed " + std::to_string(seed) + "\n";
    for (const double a : {0.01, 0.05, 0.1}) {
        const auto count = std::count_if(run.samples.begin(), run.samples.end(),
                                         [&](double v) { return v < a; });
        const double fraction =
            static_cast<double>(count) / static_cast<double>(run.samples.size());
        tails[fmt_full(a)] = fraction;
        human += "  Pr(p_E < " + fmt_sig(a) + ") = " + fmt_sig(fraction) +
                 "  (bound " + fmt_sig(a * a) + ")\n";
    }

    json results{{"c", opt.c},
                 {"n", opt.n},
                 {"seed", seed},
                 {"bins", opt.bins},
                 {"tail_probabilities", std::move(tails)},
                 {"histogram",
                  json{{"bin_edges", hist.bin_edges}, {"counts", hist.counts}}}};

    const json inputs{{"c", opt.c}, {"n", opt.n}, {"seed", seed}, {"bins", opt.bins}};
    emit(envelope("simulate", inputs, results), opt.as_json, human);

    if (!opt.csv_path.empty()) {
        const std::string csv = histogram_csv(hist);
        if (opt.csv_path == "-") {
            std::cout << csv;
        } else {
            std::ofstream out(opt.csv_path, std::ios::binary);
            if (!out) throw std::runtime_error("cannot open " + opt.csv_path);
            out << csv;
        }
    }
}

// ---------------------------------------------------------------------------
// figure-data

struct FigureOptions {
    std::string figure;
    int points = 200;
    double alpha_max = 0.1;
    double p_max = 0.25;
    std::vector<double> c_grid;
    std::uint64_t n = 50'000;
    std::optional<std::uint64_t> seed;
    std::size_t bins = 40;
    unsigned shards = 1;
    bool as_json = false;
};

void emit_table(const std::string& figure, const std::vector<std::string>& columns,
                const std::vector<std::vector<double>>& rows, bool as_json,
                const json& inputs) {
    if (as_json) {
        json jrows = json::array();
        for (const auto& row : rows) jrows.push_back(row);
        emit(envelope("figure-data",
                      inputs,
                      json{{"figure", figure}, {"columns", columns}, {"rows", jrows}}),
             true, "");
        return;
    }
    std::string out;
    for (std::size_t i = 0; i < columns.size(); ++i) {
        out += columns[i];
        out += (i + 1 < columns.size()) ? ',' : '\n';
    }
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out += fmt_full(row[i]);
            out += (i + 1 < row.size()) ? ',' : '\n';
        }
    }
    std::cout << out;
}

void run_figure_data(const FigureOptions& opt) {
    const std::vector<double> c_grid =
        opt.c_grid.empty() ? std::vector<double>{0.001, 0.5, 1.0, 2.0} : opt.c_grid;
    const std::uint64_t seed = opt.seed ? *opt.seed : default_seed();
    if (opt.points < 2) throw usage_error("--points must be at least 2");

    json inputs{{"figure", opt.figure}, {"points", opt.points}};

    if (opt.figure == "thresholds") {
        std::vector<std::vector<double>> rows;
        for (int k = 1; k <= opt.points; ++k) {
            const double alpha = opt.alpha_max * k / opt.points;
            rows.push_back({alpha, ancred::intrinsic_threshold(alpha),
                            ancred::matthews_intrinsic_threshold(alpha)});
        }
        inputs["alpha_max"] = opt.alpha_max;
        emit_table(opt.figure, {"alpha", "alpha_i", "matthews_alpha_i"}, rows,
                   opt.as_json, inputs);
        return;
    }
    if (opt.figure == "calibration") {
        std::vector<std::vector<double>> rows;
        for (int k = 1; k <= opt.points; ++k) {
            const double p = static_cast<double>(k) / opt.points;
            rows.push_back({p, ancred::intrinsic_p(p)});
        }
        emit_table(opt.figure, {"p", "p_i"}, rows, opt.as_json, inputs);
        return;
    }
    if (opt.figure == "null-density") {
        std::vector<std::vector<double>> rows;
        for (int k = 1; k <= opt.points; ++k) {
            const double x = (k - 0.5) / opt.points;
            rows.push_back({x, 1.0, ancred::p_i_null_density(x)});
        }
        emit_table(opt.figure, {"x", "f_p", "f_p_i"}, rows, opt.as_json, inputs);
        return;
    }
    if (opt.figure == "null-histograms") {
        // histogram rows carry bin data; overlay rows carry smooth curves
        std::vector<std::string> columns{"series", "c", "bin_lo", "bin_hi", "x", "value"};
        std::vector<std::vector<double>> numeric_rows;
        std::vector<std::string> series_tags;
        for (const double c : c_grid) {
            const ancred::SampleSet run =
                ancred::simulate_p_e_null({opt.n, c, seed}, opt.shards);
            const ancred::Histogram hist = ancred::make_histogram(run.samples, opt.bins);
            for (std::size_t i = 0; i < hist.counts.size(); ++i) {
                const double lo = hist.bin_edges[i];
                const double hi = hist.bin_edges[i + 1];
                const double density = static_cast<double>(hist.counts[i]) /
                                       (static_cast<double>(hist.total) * (hi - lo));
                series_tags.push_back("pe_hist");
                numeric_rows.push_back({c, lo, hi, 0.5 * (lo + hi), density});
            }
        }
        const int curve_points = 201;
        for (int k = 1; k < curve_points; ++k) {
            const double x = static_cast<double>(k) / curve_points;
            series_tags.push_back("be21_density");
            numeric_rows.push_back({0.0, 0.0, 0.0, x, ancred::limiting_density_c0(x)});
            series_tags.push_back("p_i_density");
            numeric_rows.push_back({0.0, 0.0, 0.0, x, ancred::p_i_null_density(x)});
            series_tags.push_back("uniform_density");
            numeric_rows.push_back({0.0, 0.0, 0.0, x, 1.0});
        }
        inputs["c"] = c_grid;
        inputs["n"] = opt.n;
        inputs["seed"] = seed;
        inputs["bins"] = opt.bins;
        if (opt.as_json) {
            json jrows = json::array();
            for (std::size_t i = 0; i < numeric_rows.size(); ++i) {
                json row = json::array();
                row.push_back(series_tags[i]);
                for (const double v : numeric_rows[i]) row.push_back(v);
                jrows.push_back(std::move(row));
            }
            emit(envelope("figure-data", inputs,
                          json{{"figure", opt.figure},
                               {"columns", columns},
                               {"rows", jrows}}),
                 true, "");
        } else {
            std::string out = "series,c,bin_lo,bin_hi,x,value\n";
            for (std::size_t i = 0; i < numeric_rows.size(); ++i) {
                out += series_tags[i];
                for (const double v : numeric_rows[i]) out += "," + fmt_full(v);
                out += "\n";
            }
            std::cout << out;
        }
        return;
    }
    if (opt.figure == "pe-contours") {
        std::vector<std::vector<double>> rows;
        for (const double c : c_grid) {
            for (int i = 1; i <= opt.points; ++i) {
                for (int j = 1; j <= opt.points; ++j) {
                    const double p = opt.p_max * i / opt.points;
                    const double p0 = opt.p_max * j / opt.points;
                    const double t = -ancred::std_normal_quantile(p / 2.0);
                    const double t0 = -ancred::std_normal_quantile(p0 / 2.0);
                    rows.push_back({c, p, p0, ancred::extrinsic_p(t, t0, c)});
                }
            }
        }
        inputs["c"] = c_grid;
        inputs["p_max"] = opt.p_max;
        emit_table(opt.figure, {"c", "p", "p0", "p_e"}, rows, opt.as_json, inputs);
        return;
    }
    throw usage_error("unknown figure '" + opt.figure +
                      "' (expected thresholds, calibration, null-density, "
                      "null-histograms or pe-contours)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reverse-Bayes credibility analysis toolkit"};
    app.require_subcommand(1);

    AnalyseOptions analyse;
    auto* analyse_cmd =
        app.add_subcommand("analyse", "Intrinsic credibility analysis of one study");
    add_internal_flags(analyse_cmd, analyse.study);
    add_count_flags(analyse_cmd, analyse.counts);
    analyse_cmd->add_option("--level", analyse.level, "Working confidence level")
        ->capture_default_str();
    analyse_cmd->add_option("--scale", analyse.scale, "Scale of --ci limits")
        ->check(CLI::IsMember({"ratio", "additive"}))
        ->capture_default_str();
    analyse_cmd->add_flag("--exp", analyse.exp_display,
                          "Also report ratio-scale transforms");
    analyse_cmd->add_flag("--json", analyse.as_json, "Emit a JSON envelope");

    ExtrinsicOptions extrinsic;
    auto* extrinsic_cmd = app.add_subcommand(
        "extrinsic", "Extrinsic credibility against an external study");
    add_internal_flags(extrinsic_cmd, extrinsic.study);
    add_count_flags(extrinsic_cmd, extrinsic.counts);
    add_external_flags(extrinsic_cmd, extrinsic.external);
    extrinsic_cmd->add_option("--c", extrinsic.c_override,
                              "Variance ratio sigma^2/sigma0^2 override");
    extrinsic_cmd->add_option("--level", extrinsic.level, "Working confidence level")
        ->capture_default_str();
    extrinsic_cmd->add_option("--scale", extrinsic.scale, "Scale of --ci/--ci0 limits")
        ->check(CLI::IsMember({"ratio", "additive"}))
        ->capture_default_str();
    extrinsic_cmd->add_flag("--json", extrinsic.as_json, "Emit a JSON envelope");

    PriorOptions prior;
    auto* prior_cmd =
        app.add_subcommand("prior", "Sceptical prior for a significant study");
    add_internal_flags(prior_cmd, prior.study);
    add_count_flags(prior_cmd, prior.counts);
    prior_cmd->add_option("--level", prior.level, "Working confidence level")
        ->capture_default_str();
    prior_cmd->add_option("--scale", prior.scale, "Scale of --ci limits")
        ->check(CLI::IsMember({"ratio", "additive"}))
        ->capture_default_str();
    prior_cmd->add_flag("--exp", prior.exp_display, "Also report ratio-scale transforms");
    prior_cmd->add_flag("--json", prior.as_json, "Emit a JSON envelope");

    SimulateOptions simulate;
    auto* simulate_cmd =
        app.add_subcommand("simulate", "Monte Carlo null distribution of p_E");
    simulate_cmd->add_option("--c", simulate.c, "Variance ratio")->capture_default_str();
    simulate_cmd->add_option("--n", simulate.n, "Number of samples")
        ->capture_default_str();
    simulate_cmd->add_option("--seed", simulate.seed, "RNG seed");
    simulate_cmd->add_option("--bins", simulate.bins, "Histogram bins")
        ->capture_default_str();
    simulate_cmd->add_option("--shards", simulate.shards,
                             "Parallel shards (output is shard-invariant)")
        ->capture_default_str();
    simulate_cmd->add_option("--csv", simulate.csv_path,
                             "Write histogram CSV to this path ('-' for stdout)");
    simulate_cmd->add_flag("--json", simulate.as_json, "Emit a JSON envelope");

    FigureOptions figure;
    auto* figure_cmd =
        app.add_subcommand("figure-data", "Plottable CSV data for the standard figures");
    figure_cmd->add_option("figure", figure.figure,
                           "thresholds | calibration | null-density | "
                           "null-histograms | pe-contours")
        ->required();
    figure_cmd->add_option("--points", figure.points, "Grid points per axis")
        ->capture_default_str();
    figure_cmd->add_option("--alpha-max", figure.alpha_max,
                           "Upper end of the alpha grid (thresholds)")
        ->capture_default_str();
    figure_cmd->add_option("--p-max", figure.p_max,
                           "Upper end of the p grids (pe-contours)")
        ->capture_default_str();
    figure_cmd->add_option("--c", figure.c_grid, "Variance-ratio grid")->delimiter(',');
    figure_cmd->add_option("--n", figure.n, "Samples per histogram")
        ->capture_default_str();
    figure_cmd->add_option("--seed", figure.seed, "RNG seed");
    figure_cmd->add_option("--bins", figure.bins, "Histogram bins")
        ->capture_default_str();
    figure_cmd->add_option("--shards", figure.shards, "Parallel shards")
        ->capture_default_str();
    figure_cmd->add_flag("--json", figure.as_json, "Emit a JSON envelope");

    try {
        try {
            app.parse(argc, argv);
        } catch (const CLI::CallForHelp& e) {
            return app.exit(e);
        } catch (const CLI::ParseError& e) {
            app.exit(e);
            return kExitUsage;
        }

        if (analyse_cmd->parsed()) {
            run_analyse(analyse);
        } else if (extrinsic_cmd->parsed()) {
            run_extrinsic(extrinsic);
        } else if (prior_cmd->parsed()) {
            run_prior(prior);
        } else if (simulate_cmd->parsed()) {
            run_simulate(simulate);
        } else if (figure_cmd->parsed()) {
            run_figure_data(figure);
        }
        return 0;
    } catch (const usage_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ancred::not_significant_error& e) {
        std::cerr << "not significant: " << e.what() << "\n";
        return kExitNotSignificant;
    } catch (const ancred::degenerate_table_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
