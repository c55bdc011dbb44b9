#include "sspi/cli.hpp"

#include "sspi/analysis.hpp"
#include "sspi/errors.hpp"
#include "sspi/montecarlo.hpp"
#include "sspi/oracle.hpp"
#include "sspi/tables.hpp"
#include "sspi/verification.hpp"
#include "sspi/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>

namespace sspi {

namespace {

using nlohmann::json;

json rational_json(const Rational& r) {
    return json{{"exact", to_fraction_string(r)}, {"approx", to_double(r)}};
}

json dyadic_json(const Dyadic& d) {
    return json{{"exact", d.str()}, {"approx", to_double(d.to_rational())}};
}

json instance_json(const Instance& instance) {
    json pairs = json::array();
    for (const ItemPair& p : instance.pairs)
        pairs.push_back({to_fraction_string(p.y), to_fraction_string(p.z)});
    return json{{"k", instance.k}, {"pairs", pairs}};
}

struct Stopwatch {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

json report_header(const std::string& command, json parameters) {
    return json{{"tool", kToolName},
                {"version", kToolVersion},
                {"command", command},
                {"parameters", std::move(parameters)}};
}

void emit(std::ostream& out, json report) {
    out << report.dump(2) << "\n";
}

// --- verify ----------------------------------------------------------------

struct VerifyArgs {
    int k = 2;
    int max_n = 8;
    int trials_per_n = 100;
    std::uint64_t seed = 1;
    int threads = 0;
    std::string csv_path;
};

void write_csv_rows(std::ostream& csv, int n, int trial, const Instance& instance,
                    const InstanceVerification& v) {
    ElementTable table(instance);
    for (const ElementComparison& cmp : v.elements) {
        csv << n << ',' << trial << ',' << cmp.element << ','
            << to_fraction_string(table.value(cmp.element)) << ',' << table.pair_of(cmp.element)
            << ',' << (table.is_y(cmp.element) ? 'y' : 'z') << ',' << cmp.oracle_prophet.str() << ','
            << (cmp.table_prophet ? cmp.table_prophet->str() : std::string{}) << ','
            << cmp.oracle_gambler.str() << ','
            << (cmp.table_gambler ? cmp.table_gambler->str() : std::string{}) << '\n';
    }
}

int cmd_verify(const VerifyArgs& args, std::ostream& out) {
    OracleOptions oracle{24, args.threads};
    if (args.max_n < 1) throw std::invalid_argument("--max-n must be >= 1");
    if (args.trials_per_n < 1) throw std::invalid_argument("--trials-per-n must be >= 1");
    if (args.max_n > oracle.max_n)
        throw ResourceCapError("--max-n " + std::to_string(args.max_n) +
                               " exceeds the enumeration cap of " + std::to_string(oracle.max_n));

    std::ofstream csv;
    if (!args.csv_path.empty()) {
        csv.open(args.csv_path);
        if (!csv) throw std::invalid_argument("cannot open csv output file: " + args.csv_path);
        csv << "n,trial,element,w,pair,kind,oracle_p,table_p,oracle_q,table_q\n";
    }

    Stopwatch timer;
    std::uint64_t instances = 0;
    std::uint64_t prophet_table_mismatches = 0, gambler_bound_failures = 0, margin_failures = 0;
    std::optional<Rational> min_margin;
    json failures = json::array();

    for (int n = 1; n <= args.max_n; ++n) {
        for (int trial = 0; trial < args.trials_per_n; ++trial) {
            Instance instance =
                random_instance(n, args.k, args.seed, (static_cast<std::uint64_t>(n) << 32) | trial);
            InstanceVerification v = verify_instance(instance, oracle);
            ++instances;
            if (!v.prophet_table_equal) ++prophet_table_mismatches;
            if (!v.gambler_table_bounded) ++gambler_bound_failures;
            if (!v.margin_nonnegative) ++margin_failures;
            if (!v.pass() && failures.size() < 16)
                failures.push_back(json{{"instance", instance_json(instance)},
                                        {"margin", rational_json(v.margin)},
                                        {"prophet_table_equal", v.prophet_table_equal},
                                        {"gambler_table_bounded", v.gambler_table_bounded}});
            if (!min_margin || v.margin < *min_margin) min_margin = v.margin;
            if (csv.is_open()) write_csv_rows(csv, n, trial, instance, v);
        }
    }

    bool pass = prophet_table_mismatches == 0 && gambler_bound_failures == 0 && margin_failures == 0;
    json report = report_header("verify", json{{"k", args.k},
                                               {"max_n", args.max_n},
                                               {"trials_per_n", args.trials_per_n},
                                               {"seed", args.seed},
                                               {"threads", args.threads},
                                               {"csv", args.csv_path}});
    report["seed"] = args.seed;
    report["results"] = json{{"instances_checked", instances},
                             {"prophet_table_mismatches", prophet_table_mismatches},
                             {"gambler_bound_failures", gambler_bound_failures},
                             {"margin_failures", margin_failures},
                             {"min_margin", min_margin ? rational_json(*min_margin) : json()},
                             {"failures", failures}};
    report["elapsed_seconds"] = timer.seconds();
    report["pass"] = pass;
    emit(out, std::move(report));
    return pass ? kExitPass : kExitViolation;
}

// --- configs -----------------------------------------------------------------

int cmd_configs(int max_two_n, int threads, std::ostream& out) {
    if (max_two_n < 4 || max_two_n % 2 != 0)
        throw std::invalid_argument("--max-2n must be even and >= 4");

    Stopwatch timer;
    ConfigSweep sweep = check_all_configs(max_two_n, threads);

    // the two exact-equality witnesses must hold everywhere
    bool equalities_ok = sweep.tail_pair_equalities == sweep.tail_pair_checked &&
                         sweep.star_absorbing_equalities == sweep.star_absorbing_checked;
    bool pass = sweep.pass() && equalities_ok;

    json violating = json::array();
    for (const Configuration& c : sweep.violating)
        violating.push_back(json{{"two_n", c.two_n},
                                 {"j_star", c.j_star},
                                 {"k_star", c.k_star},
                                 {"j_y", c.j_y},
                                 {"k_y", c.k_y}});

    json report = report_header("configs", json{{"max_2n", max_two_n}, {"threads", threads}});
    report["results"] =
        json{{"configurations_checked", sweep.configurations_checked},
             {"prefix_violations", sweep.prefix_violations},
             {"block_violations", sweep.block_violations},
             {"prophet_mass_violations", sweep.mass_violations},
             {"tail_pair_block", json{{"checked", sweep.tail_pair_checked},
                                      {"exact_equalities", sweep.tail_pair_equalities},
                                      {"all_equal", sweep.tail_pair_equalities == sweep.tail_pair_checked}}},
             {"star_block_absorbing",
              json{{"checked", sweep.star_absorbing_checked},
                   {"exact_equalities", sweep.star_absorbing_equalities},
                   {"all_equal", sweep.star_absorbing_equalities == sweep.star_absorbing_checked}}},
             {"violating_sample", violating}};
    report["elapsed_seconds"] = timer.seconds();
    report["pass"] = pass;
    emit(out, std::move(report));
    return pass ? kExitPass : kExitViolation;
}

// --- simulate ----------------------------------------------------------------

struct SimulateArgs {
    std::string spec_path;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 1;
    std::string order = "adversarial";
    int threads = 0;
};

int cmd_simulate(const SimulateArgs& args, std::ostream& out) {
    namespace mc = montecarlo;
    mc::DistributionSpec spec = mc::load_spec_file(args.spec_path);
    mc::OrderPolicy policy = mc::parse_order_policy(args.order);

    Stopwatch timer;
    mc::RatioEstimate est = mc::estimate_ratio(spec, args.trials, args.seed, policy, {args.threads});

    json results{{"trials", est.trials},
                 {"mean_prophet", est.mean_prophet},
                 {"prophet_stderr", est.prophet_stderr},
                 {"mean_gambler", est.mean_gambler},
                 {"gambler_stderr", est.gambler_stderr},
                 {"ci_level", est.ci_level}};
    if (est.ratio) {
        results["ratio"] = *est.ratio;
        results["ratio_half_width"] = est.ratio_half_width;
    } else {
        results["ratio"] = nullptr;
        results["ratio_unbounded"] = est.ratio_unbounded;
    }

    bool pass = true;
    std::optional<Instance> paired = mc::paired_instance_of(spec);
    if (paired && policy == mc::OrderPolicy::adversarial) {
        // exact cross-check only when the value order needs no tie-breaking
        // (the oracle breaks ties by pair structure, the simulator by
        // sample/realization role, so tied values are not comparable runs)
        std::vector<Rational> all;
        for (const ItemPair& p : paired->pairs) {
            all.push_back(p.y);
            all.push_back(p.z);
        }
        std::sort(all.begin(), all.end());
        bool distinct = std::adjacent_find(all.begin(), all.end()) == all.end();
        if (distinct && paired->n() <= 24) {
            ExactResult exact = enumerate_pairwise(*paired, OracleOptions{24, args.threads});
            auto z_score = [](double mean, double exact_value, double stderr_) {
                double diff = mean - exact_value;
                if (stderr_ > 0) return diff / stderr_;
                return diff == 0 ? 0.0 : std::numeric_limits<double>::infinity();
            };
            double zp = z_score(est.mean_prophet, to_double(exact.prophet_expectation), est.prophet_stderr);
            double zg = z_score(est.mean_gambler, to_double(exact.gambler_expectation), est.gambler_stderr);
            results["oracle"] = json{{"prophet_expectation", rational_json(exact.prophet_expectation)},
                                     {"gambler_expectation", rational_json(exact.gambler_expectation)},
                                     {"prophet_z", zp},
                                     {"gambler_z", zg}};
            pass = std::abs(zp) <= 3 && std::abs(zg) <= 3;
        } else {
            results["oracle"] = distinct ? "skipped: instance above enumeration cap"
                                         : "skipped: tied values";
        }
    }

    json report = report_header("simulate", json{{"spec", args.spec_path},
                                                 {"trials", args.trials},
                                                 {"seed", args.seed},
                                                 {"order", args.order},
                                                 {"threads", args.threads}});
    report["seed"] = args.seed;
    report["results"] = std::move(results);
    report["elapsed_seconds"] = timer.seconds();
    report["pass"] = pass;
    emit(out, std::move(report));
    return pass ? kExitPass : kExitViolation;
}

// --- oracle ----------------------------------------------------------------

struct OracleArgs {
    std::string instance_path;
    int cap = 24;
    int threads = 0;
};

int cmd_oracle(const OracleArgs& args, std::ostream& out) {
    Instance instance = load_instance_file(args.instance_path);

    Stopwatch timer;
    InstanceVerification v = verify_instance(instance, OracleOptions{args.cap, args.threads});

    ElementTable table(instance);
    json elements = json::array();
    for (const ElementComparison& cmp : v.elements) {
        json row{{"element", cmp.element},
                 {"w", rational_json(table.value(cmp.element))},
                 {"pair", table.pair_of(cmp.element)},
                 {"kind", table.is_y(cmp.element) ? "y" : "z"},
                 {"oracle_p", dyadic_json(cmp.oracle_prophet)},
                 {"oracle_q", dyadic_json(cmp.oracle_gambler)}};
        if (cmp.table_prophet) row["table_p"] = dyadic_json(*cmp.table_prophet);
        if (cmp.table_gambler) row["table_q"] = dyadic_json(*cmp.table_gambler);
        elements.push_back(std::move(row));
    }

    json results{{"instance", instance_json(instance)},
                 {"prophet_expectation", rational_json(v.exact.prophet_expectation)},
                 {"gambler_expectation", rational_json(v.exact.gambler_expectation)},
                 {"margin", rational_json(v.margin)},
                 {"prophet_table_equal", v.prophet_table_equal},
                 {"gambler_table_bounded", v.gambler_table_bounded},
                 {"elements", elements}};
    if (v.exact.ratio)
        results["ratio"] = rational_json(*v.exact.ratio);
    else
        results["ratio"] = v.exact.ratio_unbounded ? json("unbounded") : json();
    if (v.config)
        results["configuration"] = json{{"two_n", v.config->two_n},
                                        {"j_star", v.config->j_star},
                                        {"k_star", v.config->k_star},
                                        {"j_y", v.config->j_y},
                                        {"k_y", v.config->k_y}};

    json report = report_header("oracle", json{{"instance", args.instance_path},
                                               {"cap", args.cap},
                                               {"threads", args.threads}});
    report["results"] = std::move(results);
    report["elapsed_seconds"] = timer.seconds();
    report["pass"] = v.pass();
    emit(out, std::move(report));
    return v.pass() ? kExitPass : kExitViolation;
}

// --- badexample ----------------------------------------------------------------

int cmd_badexample(const std::string& m_text, const std::string& big_m_text, std::ostream& out) {
    Rational m = parse_rational(m_text);
    Rational big_m = parse_rational(big_m_text);

    Stopwatch timer;
    json scenarios = json::array();
    for (int beta = 0; beta <= 2; ++beta) {
        analysis::BadExampleGains gains = analysis::bad_example_gains({m, big_m, beta});
        json entry{{"beta", beta},
                   {"prophet_gain", rational_json(gains.prophet_gain_lb)},
                   {"gambler_gain", rational_json(gains.gambler_gain_ub)}};
        if (gains.gambler_gain_ub > 0)
            entry["forced_ratio"] = rational_json(gains.prophet_gain_lb / gains.gambler_gain_ub);
        else
            entry["forced_ratio"] = "unbounded";
        scenarios.push_back(std::move(entry));
    }
    analysis::LowerBoundCurve curve = analysis::lower_bound_curve(m, big_m);

    json report = report_header("badexample", json{{"m", m_text}, {"M", big_m_text}});
    report["results"] = json{
        {"scenarios", scenarios},
        {"deterministic_bound", rational_json(curve.deterministic_bound)},
        {"limit", "the beta=2 ratio 2M/(M+7m) increases with M/m and tends to 2"},
    };
    report["elapsed_seconds"] = timer.seconds();
    report["pass"] = true;
    emit(out, std::move(report));
    return kExitPass;
}

// --- search ----------------------------------------------------------------

struct SearchArgs {
    int k = 3;
    int max_n = 4;
    std::string grid = "0,1,2,4,8,16";
    int threads = 0;
    int cap = 24;
};

int cmd_search(const SearchArgs& args, std::ostream& out) {
    std::vector<Rational> grid;
    std::stringstream stream(args.grid);
    std::string token;
    while (std::getline(stream, token, ',')) {
        if (token.empty()) continue;
        grid.push_back(parse_rational(token));
    }
    if (args.max_n > args.cap)
        throw ResourceCapError("--max-n " + std::to_string(args.max_n) +
                               " exceeds the enumeration cap of " + std::to_string(args.cap));

    Stopwatch timer;
    analysis::SearchOptions options;
    options.threads = args.threads;
    options.oracle = OracleOptions{args.cap, 1};
    analysis::SearchReport report = analysis::conjecture_search(args.k, args.max_n, grid, options);

    json grid_json = json::array();
    for (const Rational& v : report.grid) grid_json.push_back(to_fraction_string(v));
    json violations = json::array();
    for (const analysis::Violation& v : report.violations)
        violations.push_back(json{{"instance", instance_json(v.instance)}, {"margin", rational_json(v.margin)}});

    bool pass = report.violations.empty();
    json doc = report_header("search", json{{"k", args.k},
                                            {"max_n", args.max_n},
                                            {"grid", args.grid},
                                            {"threads", args.threads},
                                            {"cap", args.cap}});
    doc["results"] = json{{"grid", grid_json},
                          {"instances_checked", report.instances_checked},
                          {"duplicates_skipped", report.duplicates_skipped},
                          {"violations", violations}};
    doc["elapsed_seconds"] = timer.seconds();
    doc["pass"] = pass;
    emit(out, std::move(doc));
    return pass ? kExitPass : kExitViolation;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"single-sample prophet inequality verification toolkit"};
    app.require_subcommand(1);

    VerifyArgs verify_args;
    CLI::App* verify = app.add_subcommand(
        "verify", "check the closed-form tables and the margin on random instances");
    verify->add_option("--k", verify_args.k, "matroid rank")->capture_default_str();
    verify->add_option("--max-n", verify_args.max_n, "largest number of items")->capture_default_str();
    verify->add_option("--trials-per-n", verify_args.trials_per_n, "instances per size")
        ->capture_default_str();
    verify->add_option("--seed", verify_args.seed, "instance stream seed")->capture_default_str();
    verify->add_option("--threads", verify_args.threads, "worker threads (0 = auto)")
        ->envname("SSPI_THREADS");
    verify->add_option("--csv", verify_args.csv_path, "write per-element probabilities as CSV");

    int configs_max_2n = 40;
    int configs_threads = 0;
    CLI::App* configs = app.add_subcommand(
        "configs", "exhaustively check the prefix inequality and its blocks over all configurations");
    configs->add_option("--max-2n", configs_max_2n, "largest sequence length")->capture_default_str();
    configs->add_option("--threads", configs_threads, "worker threads (0 = auto)")
        ->envname("SSPI_THREADS");

    OracleArgs oracle_args;
    CLI::App* oracle = app.add_subcommand("oracle", "exact enumeration of one instance file");
    oracle->add_option("--instance", oracle_args.instance_path, "pairwise instance file")->required();
    oracle->add_option("--cap", oracle_args.cap, "enumeration cap on n")->capture_default_str();
    oracle->add_option("--threads", oracle_args.threads, "worker threads (0 = auto)")
        ->envname("SSPI_THREADS");

    SimulateArgs simulate_args;
    CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo estimate of both gains");
    simulate->add_option("--spec", simulate_args.spec_path, "distribution spec file")->required();
    simulate->add_option("--trials", simulate_args.trials, "number of trials")->capture_default_str();
    simulate->add_option("--seed", simulate_args.seed, "rng seed")->capture_default_str();
    simulate->add_option("--order", simulate_args.order, "arrival order: fixed|random|adversarial")
        ->capture_default_str();
    simulate->add_option("--threads", simulate_args.threads, "worker threads (0 = auto)")
        ->envname("SSPI_THREADS");

    std::string bad_m = "1";
    std::string bad_big_m = "1000000";
    CLI::App* badexample = app.add_subcommand("badexample", "evaluate the deterministic lower bound");
    badexample->add_option("--m", bad_m, "small value m > 0")->capture_default_str();
    badexample->add_option("--M", bad_big_m, "spike value M > m")->capture_default_str();

    SearchArgs search_args;
    CLI::App* search = app.add_subcommand("search", "look for counterexamples on a value grid");
    search->add_option("--k", search_args.k, "matroid rank")->capture_default_str();
    search->add_option("--max-n", search_args.max_n, "largest number of items")->capture_default_str();
    search->add_option("--grid", search_args.grid, "comma-separated grid values")->capture_default_str();
    search->add_option("--threads", search_args.threads, "worker threads (0 = auto)")
        ->envname("SSPI_THREADS");
    search->add_option("--cap", search_args.cap, "enumeration cap on n")->capture_default_str();

    std::vector<const char*> argv;
    argv.push_back("sspi");
    for (const std::string& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
        if (verify->parsed()) return cmd_verify(verify_args, out);
        if (configs->parsed()) return cmd_configs(configs_max_2n, configs_threads, out);
        if (oracle->parsed()) return cmd_oracle(oracle_args, out);
        if (simulate->parsed()) return cmd_simulate(simulate_args, out);
        if (badexample->parsed()) return cmd_badexample(bad_m, bad_big_m, out);
        if (search->parsed()) return cmd_search(search_args, out);
        err << "no subcommand given\n";
        return kExitUsage;
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitPass;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return kExitUsage;
    } catch (const ResourceCapError& e) {
        err << "resource cap: " << e.what() << "\n";
        return kExitResourceCap;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "invalid input: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        err << "invalid input: " << e.what() << "\n";
        return kExitUsage;
    }
}

} // namespace sspi
