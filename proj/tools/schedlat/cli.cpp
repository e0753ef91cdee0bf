#include "cli.hpp"

#include <schedlat/catalog.hpp>
#include <schedlat/error.hpp>
#include <schedlat/estimator.hpp>
#include <schedlat/model.hpp>
#include <schedlat/multilevel.hpp>
#include <schedlat/numfmt.hpp>
#include <schedlat/report.hpp>
#include <schedlat/simengine.hpp>
#include <schedlat/workloads.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

namespace schedlat::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

/// Mutually exclusive or missing sources, bad option combinations.
class UsageError : public Error {
public:
    using Error::Error;
};

ordered_json num(double v) {
    return round_sig(v);
}

struct ProfileArgs {
    std::string name;
    std::optional<double> t_s;
    std::optional<double> alpha;

    void add_to(CLI::App* app) {
        app->add_option("--profile", name, "Built-in profile: slurm, grid-engine, mesos, yarn");
        app->add_option("--ts", t_s, "Explicit marginal scheduler latency t_s (seconds)");
        app->add_option("--alpha", alpha, "Explicit nonlinear exponent alpha_s");
    }

    bool given() const { return !name.empty() || t_s || alpha; }

    SchedulerProfile resolve() const {
        if (!name.empty() && (t_s || alpha)) {
            throw UsageError("give either --profile or --ts/--alpha, not both");
        }
        if (!name.empty()) return builtin_profile(name);
        if (!t_s || !alpha) {
            throw UsageError("a scheduler profile is required: --profile NAME or --ts X --alpha Y");
        }
        SchedulerProfile p{"custom", *t_s, *alpha};
        p.validate();
        return p;
    }
};

struct TaskSetArgs {
    std::string preset_name;
    std::optional<double> task_time;
    std::optional<std::uint64_t> tasks_per_proc;

    void add_to(CLI::App* app) {
        app->add_option("--preset", preset_name, "Benchmark preset: rapid, fast, medium, long");
        app->add_option("--task-time", task_time, "Constant task time t (seconds)");
        app->add_option("--tasks-per-proc", tasks_per_proc, "Tasks per processor n");
    }

    bool explicit_given() const { return task_time || tasks_per_proc; }

    ConstantTaskSpec resolve() const {
        if (!preset_name.empty() && explicit_given()) {
            throw UsageError("give either --preset or --task-time/--tasks-per-proc, not both");
        }
        if (!preset_name.empty()) return preset(preset_name).spec();
        if (!task_time || !tasks_per_proc) {
            throw UsageError("a task set is required: --preset NAME or --task-time T --tasks-per-proc N");
        }
        ConstantTaskSpec spec{*task_time, *tasks_per_proc};
        spec.validate();
        return spec;
    }
};

struct OutputArgs {
    std::string format;
    std::string out_path;

    void add_to(CLI::App* app, std::string default_format, std::vector<std::string> allowed) {
        format = std::move(default_format);
        app->add_option("--format", format, "Output format")
            ->check(CLI::IsMember(std::move(allowed)))
            ->capture_default_str();
        app->add_option("--out", out_path, "Write output to this path instead of stdout");
    }
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag,
                           const std::optional<std::string>& env) {
    if (flag) return *flag;
    if (env && !env->empty()) {
        std::uint64_t v = 0;
        const auto* end = env->data() + env->size();
        const auto [ptr, ec] = std::from_chars(env->data(), end, v);
        if (ec != std::errc{} || ptr != end) {
            throw UsageError("SCHEDLAT_SEED must be an unsigned integer, got '" + *env + "'");
        }
        return v;
    }
    return 0;
}

void deliver(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    f << text;
    if (!f) throw IoError("write to '" + path + "' failed");
}

std::vector<MeasuredRun> runs_from(const std::string& input) {
    return input.empty() ? builtin_runs() : load_runs(input);
}

std::vector<std::string> selected_schedulers(const std::vector<MeasuredRun>& runs,
                                             const std::vector<std::string>& wanted) {
    auto present = schedulers_in(runs);
    if (wanted.empty()) return present;
    for (const auto& w : wanted) {
        if (std::find(present.begin(), present.end(), w) == present.end()) {
            std::string valid;
            for (const auto& p : present) valid += (valid.empty() ? "" : ", ") + p;
            throw UnknownNameError("scheduler '" + w + "' not in input (present: " + valid + ")");
        }
    }
    return wanted;
}

// ---------------------------------------------------------------- simulate

struct SimulateCmd {
    ProfileArgs profile;
    TaskSetArgs taskset;
    std::string generate;
    std::optional<std::uint64_t> tasks;
    std::string workload_path;
    std::uint64_t processors = 1408;
    std::string release = "release-on-completion";
    std::string assign = "round-robin";
    std::optional<std::uint64_t> seed;
    double noise = 0.0;
    bool traces = false;
    std::string save_workload_path;
    OutputArgs output;

    void add_to(CLI::App* app) {
        profile.add_to(app);
        taskset.add_to(app);
        app->add_option("--generate", generate,
                        "Generated workload: uniform:LO,HI | lognormal:MU,SIGMA | choice:V1,..[/W1,..]");
        app->add_option("--tasks", tasks, "Total task count for --generate");
        app->add_option("--workload", workload_path, "Workload CSV (task_id,duration_s)");
        app->add_option("-P,--processors", processors, "Cluster processors P")->capture_default_str();
        app->add_option("--release", release, "release-on-completion | hold-until-job-end")
            ->capture_default_str();
        app->add_option("--assign", assign, "round-robin | greedy-earliest-finish")
            ->capture_default_str();
        app->add_option("--seed", seed, "RNG seed (falls back to SCHEDLAT_SEED, then 0)");
        app->add_option("--noise", noise, "Multiplicative log-normal duration noise sigma");
        app->add_flag("--traces", traces, "Include per-processor traces in JSON output");
        app->add_option("--save-workload", save_workload_path, "Also write the workload CSV here");
        output.add_to(app, "json", {"json", "csv"});
    }

    int run(std::ostream& out, const std::optional<std::string>& seed_env) const {
        const auto prof = profile.resolve();
        const std::uint64_t s = resolve_seed(seed, seed_env);
        const int sources = (!taskset.preset_name.empty() || taskset.explicit_given()) +
                            !generate.empty() + !workload_path.empty();
        if (sources != 1) {
            throw UsageError("exactly one workload source is required: --preset, "
                             "--task-time/--tasks-per-proc, --generate, or --workload");
        }
        if (tasks && generate.empty()) throw UsageError("--tasks only applies to --generate");

        ClusterSpec cluster{processors};
        cluster.validate();
        Workload workload;
        if (!generate.empty()) {
            if (!tasks) throw UsageError("--generate needs --tasks N");
            workload = variable_workload(parse_distribution(generate), *tasks, s);
        } else if (!workload_path.empty()) {
            workload = load_workload(workload_path);
        } else {
            const auto spec = taskset.resolve();
            workload = constant_workload(spec.t, spec.n * processors);
            workload.label = taskset.preset_name.empty() ? "constant" : taskset.preset_name;
        }
        if (noise != 0.0) workload = apply_duration_noise(workload, noise, s);
        if (!save_workload_path.empty()) save_workload(workload, save_workload_path);

        SimOptions opts{parse_release_mode(release), parse_assignment_policy(assign), s};
        const auto result = simulate(workload, cluster, prof, opts);

        std::ostringstream text;
        if (output.format == "csv") {
            write_traces_csv(result, text);
        } else {
            text << to_json(result, {traces, &prof, workload.label});
        }
        deliver(text.str(), output.out_path, out);
        return kExitOk;
    }
};

// ---------------------------------------------------------------- fit

struct FitCmd {
    std::string input;
    std::vector<std::string> schedulers;
    std::uint64_t min_n = kReproductionMinN;
    OutputArgs output;

    void add_to(CLI::App* app) {
        app->add_option("--input", input, "Observation CSV (default: shipped measured runtimes)");
        app->add_option("--scheduler", schedulers, "Fit only these schedulers")->delimiter(',');
        app->add_option("--min-n", min_n, "Exclude observations with n below this (1 keeps all)")
            ->capture_default_str();
        output.add_to(app, "json", {"json", "csv"});
    }

    int run(std::ostream& out, std::ostream& err) const {
        const auto runs = runs_from(input);
        const auto names = selected_schedulers(runs, schedulers);
        if (names.empty()) throw FitInfeasibleError("observation file has no runs");

        FitOptions opts{min_n};
        Table table;
        table.columns = {"scheduler", "t_s", "alpha_s", "r_squared", "points_used", "points_excluded"};
        auto arr = ordered_json::array();
        for (const auto& name : names) {
            const auto obs = observations_for(runs, name);
            FitResult fit;
            try {
                fit = fit_power_law(obs, opts);
            } catch (const FitInfeasibleError& e) {
                throw FitInfeasibleError(name + ": " + e.what());
            }
            for (const auto& w : fit.warnings) err << "warning: " << name << ": " << w << '\n';
            table.rows.push_back({name, fit.t_s_hat, fit.alpha_s_hat, fit.r_squared,
                                  static_cast<std::int64_t>(fit.points_used),
                                  static_cast<std::int64_t>(fit.points_excluded)});
            arr.push_back({{"scheduler", name},
                           {"t_s", num(fit.t_s_hat)},
                           {"alpha_s", num(fit.alpha_s_hat)},
                           {"r_squared", num(fit.r_squared)},
                           {"points_used", fit.points_used},
                           {"points_excluded", fit.points_excluded},
                           {"min_n", min_n}});
        }
        std::ostringstream text;
        if (output.format == "csv") {
            emit(table, EmitFormat::csv, text);
        } else {
            text << (arr.size() == 1 ? arr[0] : arr).dump(2) << '\n';
        }
        deliver(text.str(), output.out_path, out);
        return kExitOk;
    }
};

// ---------------------------------------------------------------- predict

struct PredictCmd {
    ProfileArgs profile;
    std::string fit_path;
    TaskSetArgs taskset;
    OutputArgs output;

    void add_to(CLI::App* app) {
        profile.add_to(app);
        app->add_option("--fit", fit_path, "JSON fit result (fields t_s, alpha_s) as the profile");
        taskset.add_to(app);
        output.add_to(app, "json", {"json", "csv"});
    }

    SchedulerProfile resolve_profile() const {
        if (fit_path.empty()) return profile.resolve();
        if (profile.given()) throw UsageError("give either --fit or a profile, not both");
        std::ifstream in(fit_path, std::ios::binary);
        if (!in) throw IoError("cannot open '" + fit_path + "'");
        try {
            const auto j = ordered_json::parse(in);
            SchedulerProfile p{j.value("scheduler", std::string("fit")), j.at("t_s").get<double>(),
                               j.at("alpha_s").get<double>()};
            p.validate();
            return p;
        } catch (const ordered_json::exception& e) {
            throw ParseError(fit_path + ": " + e.what(), 0);
        }
    }

    int run(std::ostream& out) const {
        const auto prof = resolve_profile();
        const auto spec = taskset.resolve();
        FitResult fit;
        fit.t_s_hat = prof.t_s;
        fit.alpha_s_hat = prof.alpha_s;
        const double total = predict_total(fit, spec);
        const double work = job_time_constant(spec);

        std::ostringstream text;
        if (output.format == "csv") {
            Table t;
            t.columns = {"profile", "t_s", "alpha_s", "task_time_s", "tasks_per_proc",
                         "T_job_s", "delta_t_s", "T_total_s", "utilization"};
            t.rows.push_back({prof.name, prof.t_s, prof.alpha_s, spec.t,
                              static_cast<std::int64_t>(spec.n), work, total - work, total,
                              utilization_constant(prof, spec)});
            emit(t, EmitFormat::csv, text);
        } else {
            ordered_json j;
            j["profile"] = {{"name", prof.name}, {"t_s", num(prof.t_s)}, {"alpha_s", num(prof.alpha_s)}};
            j["task_time_s"] = num(spec.t);
            j["tasks_per_proc"] = spec.n;
            j["T_job"] = num(work);
            j["delta_t"] = num(delta_t(prof, spec.n));
            j["T_total"] = num(total);
            j["utilization"] = num(utilization_constant(prof, spec));
            text << j.dump(2) << '\n';
        }
        deliver(text.str(), output.out_path, out);
        return kExitOk;
    }
};

// ---------------------------------------------------------------- sweep

struct SweepCmd {
    std::vector<std::string> profiles{"slurm", "grid-engine", "mesos", "yarn"};
    std::vector<std::string> presets{"rapid", "fast", "medium", "long"};
    std::vector<std::uint64_t> bundle_sizes{1};
    std::uint64_t processors = 1408;
    unsigned jobs = 0;
    OutputArgs output;

    void add_to(CLI::App* app) {
        app->add_option("--profiles", profiles, "Built-in profiles")->delimiter(',')->capture_default_str();
        app->add_option("--presets", presets, "Benchmark presets")->delimiter(',')->capture_default_str();
        app->add_option("--bundle-sizes", bundle_sizes, "Bundle sizes")->delimiter(',')->capture_default_str();
        app->add_option("-P,--processors", processors, "Cluster processors P")->capture_default_str();
        app->add_option("-j,--jobs", jobs, "Concurrent simulations (0: hardware concurrency)");
        output.add_to(app, "csv", {"csv", "json"});
    }

    int run(std::ostream& out) const {
        struct Cell {
            const SchedulerProfile* profile;
            const BenchmarkPreset* preset;
            std::uint64_t bundle_size;
        };
        std::vector<Cell> cells;
        for (const auto& p : profiles) {
            const auto& prof = builtin_profile(p);
            for (const auto& name : presets) {
                const auto& pre = preset(name);
                for (auto b : bundle_sizes) {
                    if (b < 1) throw UsageError("bundle sizes must be >= 1");
                    cells.push_back({&prof, &pre, b});
                }
            }
        }
        ClusterSpec cluster{processors};
        cluster.validate();

        // Results land in cross-product order whatever the execution order.
        std::vector<BundleComparisonRow> results(cells.size());
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        auto worker = [&] {
            for (std::size_t i = next++; i < cells.size(); i = next++) {
                try {
                    const std::uint64_t b[] = {cells[i].bundle_size};
                    results[i] = compare(*cells[i].profile, cells[i].preset->spec(), cluster, b).front();
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        };
        unsigned threads = jobs ? jobs : std::max(1u, std::thread::hardware_concurrency());
        threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, cells.size())));
        {
            std::vector<std::jthread> pool;
            for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
            worker();
        }
        if (failure) std::rethrow_exception(failure);

        Table table;
        table.columns = {"scheduler", "preset", "bundle_size", "launches_per_proc", "T_total_s",
                         "delta_t_s", "utilization_makespan", "utilization_paper"};
        for (std::size_t i = 0; i < cells.size(); ++i) {
            const auto& r = results[i];
            table.rows.push_back({cells[i].profile->name, std::string(cells[i].preset->name),
                                  static_cast<std::int64_t>(r.bundle_size),
                                  static_cast<std::int64_t>(r.launches_per_proc), r.T_total, r.delta_t,
                                  r.utilization_makespan, r.utilization_paper});
        }
        std::ostringstream text;
        emit(table, parse_emit_format(output.format), text);
        deliver(text.str(), output.out_path, out);
        return kExitOk;
    }
};

// ---------------------------------------------------------------- bundle-compare

struct BundleCompareCmd {
    ProfileArgs profile;
    TaskSetArgs taskset;
    std::vector<std::uint64_t> bundle_sizes{1, 2, 4, 8, 48, 240};
    std::uint64_t processors = 1408;
    std::string mode = "mimo";
    double overhead = 0.0;
    OutputArgs output;

    void add_to(CLI::App* app) {
        profile.add_to(app);
        taskset.add_to(app);
        app->add_option("--bundle-sizes", bundle_sizes, "Bundle sizes")->delimiter(',')->capture_default_str();
        app->add_option("-P,--processors", processors, "Cluster processors P")->capture_default_str();
        app->add_option("--mode", mode, "siso | mimo")->capture_default_str();
        app->add_option("--overhead", overhead, "Per-member overhead inside a bundle (seconds)");
        output.add_to(app, "csv", {"csv", "json"});
    }

    int run(std::ostream& out) const {
        const auto prof = profile.resolve();
        const auto spec = taskset.resolve();
        ClusterSpec cluster{processors};
        BundlePolicy policy{1, overhead, parse_bundle_mode(mode)};
        const auto rows = compare(prof, spec, cluster, bundle_sizes, policy);

        std::ostringstream text;
        if (output.format == "csv") {
            write_compare_csv(rows, text);
        } else {
            ordered_json j;
            j["profile"] = {{"name", prof.name}, {"t_s", num(prof.t_s)}, {"alpha_s", num(prof.alpha_s)}};
            j["task_time_s"] = num(spec.t);
            j["tasks_per_proc"] = spec.n;
            j["processors"] = processors;
            j["mode"] = to_string(policy.mode);
            auto arr = ordered_json::array();
            for (const auto& r : rows) {
                arr.push_back({{"bundle_size", r.bundle_size},
                               {"launches_per_proc", r.launches_per_proc},
                               {"delta_t_s", num(r.delta_t)},
                               {"T_total_s", num(r.T_total)},
                               {"utilization_makespan", num(r.utilization_makespan)},
                               {"utilization_paper", num(r.utilization_paper)}});
            }
            j["rows"] = std::move(arr);
            if (!bundle_sizes.empty()) {
                const auto b = *std::max_element(bundle_sizes.begin(), bundle_sizes.end());
                const auto s = reduction_summary(prof, spec.n, policy.mode == BundleMode::siso ? 1 : b);
                ordered_json red{{"bundle_size", s.bundle_size},
                                 {"delta_t_unbundled_s", num(s.delta_t_unbundled)},
                                 {"delta_t_bundled_s", num(s.delta_t_bundled)},
                                 {"model_reduction", num(s.model_reduction)}};
                if (s.measured) {
                    red["measured_reduction"] = num(s.measured->reduction_factor);
                    red["measured_delta_t_cap_s"] = num(s.measured->delta_t_cap);
                }
                j["reduction"] = std::move(red);
            }
            text << j.dump(2) << '\n';
        }
        deliver(text.str(), output.out_path, out);
        return kExitOk;
    }
};

// ---------------------------------------------------------------- curves

struct CurvesCmd {
    std::string kind = "utilization";
    std::vector<std::string> profiles;
    std::optional<double> t_s;
    std::optional<double> alpha;
    std::vector<double> task_times{1, 5, 30, 60};
    std::string n_rule = "fixed-work:240";
    std::string variant = "both";
    std::string input;
    std::vector<std::string> schedulers;
    std::uint64_t min_n = kReproductionMinN;
    OutputArgs output;

    void add_to(CLI::App* app) {
        app->add_option("--kind", kind, "utilization | latency")
            ->check(CLI::IsMember({"utilization", "latency"}))
            ->capture_default_str();
        app->add_option("--profile", profiles, "Built-in profiles (utilization; default: all)")->delimiter(',');
        app->add_option("--ts", t_s, "Explicit t_s (utilization)");
        app->add_option("--alpha", alpha, "Explicit alpha_s (utilization)");
        app->add_option("--task-times", task_times, "Task times (utilization)")->delimiter(',')->capture_default_str();
        app->add_option("--n-rule", n_rule, "fixed-work[:W] | constant:N (utilization)")->capture_default_str();
        app->add_option("--variant", variant, "exact | approx | both (utilization)")
            ->check(CLI::IsMember({"exact", "approx", "both"}))
            ->capture_default_str();
        app->add_option("--input", input, "Observation CSV (latency; default: shipped runtimes)");
        app->add_option("--scheduler", schedulers, "Schedulers to include (latency)")->delimiter(',');
        app->add_option("--min-n", min_n, "Fit cutoff (latency)")->capture_default_str();
        output.add_to(app, "csv", {"csv", "json", "gnuplot"});
    }

    NRule parse_n_rule() const {
        const auto colon = n_rule.find(':');
        const std::string head = n_rule.substr(0, colon);
        const std::string arg = colon == std::string::npos ? "" : n_rule.substr(colon + 1);
        try {
            if (head == "fixed-work") return NRule::fixed_work(arg.empty() ? 240.0 : std::stod(arg));
            if (head == "constant" && !arg.empty()) return NRule::constant(std::stoull(arg));
        } catch (const std::logic_error&) {
        }
        throw UsageError("--n-rule must be fixed-work[:W] or constant:N, got '" + n_rule + "'");
    }

    int run(std::ostream& out, std::ostream& err) const {
        std::vector<CurveSeries> series;
        if (kind == "utilization") {
            std::vector<SchedulerProfile> profs;
            if (t_s || alpha) {
                if (!profiles.empty()) throw UsageError("give either --profile or --ts/--alpha, not both");
                profs.push_back(ProfileArgs{"", t_s, alpha}.resolve());
            } else if (profiles.empty()) {
                const auto all = builtin_profiles();
                profs.assign(all.begin(), all.end());
            } else {
                for (const auto& p : profiles) profs.push_back(builtin_profile(p));
            }
            const auto rule = parse_n_rule();
            for (const auto& p : profs) {
                auto curves = utilization_curve(p, task_times, rule);
                if (variant != "approx") series.push_back(std::move(curves.exact));
                if (variant != "exact") series.push_back(std::move(curves.approx));
            }
        } else {
            const auto runs = runs_from(input);
            for (const auto& name : selected_schedulers(runs, schedulers)) {
                const auto obs = observations_for(runs, name);
                LatencyScaling scaling;
                try {
                    scaling = latency_scaling_table(obs, name, FitOptions{min_n});
                } catch (const FitInfeasibleError& e) {
                    throw FitInfeasibleError(name + ": " + e.what());
                }
                for (const auto& w : scaling.fit.warnings) err << "warning: " << name << ": " << w << '\n';
                series.push_back(std::move(scaling.observed));
                series.push_back(std::move(scaling.overlay));
            }
        }
        std::ostringstream text;
        emit(series, parse_emit_format(output.format), text);
        deliver(text.str(), output.out_path, out);
        return kExitOk;
    }
};

// ---------------------------------------------------------------- catalog

struct CatalogCmd {
    std::string catalog_path;
    std::string query_key;
    std::vector<std::string> compare_names;
    OutputArgs output;
    CLI::App* query_app = nullptr;
    CLI::App* compare_app = nullptr;
    CLI::App* keys_app = nullptr;

    void add_to(CLI::App* app) {
        app->add_option("--catalog", catalog_path, "Catalog JSON (default: shipped catalog)");
        output.add_to(app, "text", {"text", "csv", "json"});
        app->require_subcommand(1);
        query_app = app->add_subcommand("query", "List every scheduler's value for one feature");
        query_app->add_option("key", query_key, "Feature key, e.g. backfilling")->required();
        compare_app = app->add_subcommand("compare", "Side-by-side feature table");
        compare_app->add_option("names", compare_names, "Scheduler names")->required();
        keys_app = app->add_subcommand("keys", "List feature keys by table");
        for (auto* sub : {query_app, compare_app, keys_app}) sub->fallthrough();
    }

    int run(std::ostream& out) const {
        const Catalog loaded = catalog_path.empty() ? Catalog({}, {}) : load_catalog(catalog_path);
        const Catalog& cat = catalog_path.empty() ? default_catalog() : loaded;

        Table table;
        std::ostringstream text;
        if (query_app->parsed()) {
            const auto rows = query(cat, query_key);
            if (output.format == "text") {
                for (const auto& r : rows) text << r.name << ": " << r.value.display() << '\n';
            }
            table.columns = {"scheduler", query_key};
            for (const auto& r : rows) table.rows.push_back({r.name, r.value.display()});
        } else if (compare_app->parsed()) {
            const auto cmp = compare(cat, compare_names);
            table.columns = {"feature"};
            table.columns.insert(table.columns.end(), cmp.names.begin(), cmp.names.end());
            for (const auto& row : cmp.rows) {
                std::vector<Table::Cell> cells{row.key};
                for (const auto& v : row.values) cells.push_back(v.display());
                table.rows.push_back(std::move(cells));
            }
            if (output.format == "text") {
                std::size_t width = 7;
                for (const auto& row : cmp.rows) width = std::max(width, row.key.size());
                text << "feature" << std::string(width - 7, ' ');
                for (const auto& n : cmp.names) text << "  " << n;
                text << '\n';
                for (const auto& row : cmp.rows) {
                    text << row.key << std::string(width - row.key.size(), ' ');
                    for (const auto& v : row.values) text << "  " << v.display();
                    text << '\n';
                }
            }
        } else {
            table.columns = {"table", "key", "label"};
            for (const auto& f : cat.features()) table.rows.push_back({f.table_id, f.key, f.label});
            if (output.format == "text") {
                for (const auto& t : cat.tables()) {
                    text << t.title << " (" << t.id << ")\n";
                    for (const auto& f : t.features) text << "  " << f.key << "  " << f.label << '\n';
                }
            }
        }
        if (output.format != "text") emit(table, parse_emit_format(output.format), text);
        deliver(text.str(), output.out_path, out);
        return kExitOk;
    }
};

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const std::optional<std::string>& seed_env) {
    CLI::App app{"Scheduler latency modeling toolkit", "schedlat"};
    app.require_subcommand(1);

    SimulateCmd simulate_cmd;
    FitCmd fit_cmd;
    PredictCmd predict_cmd;
    SweepCmd sweep_cmd;
    BundleCompareCmd bundle_cmd;
    CurvesCmd curves_cmd;
    CatalogCmd catalog_cmd;

    auto* simulate_app = app.add_subcommand("simulate", "Simulate a workload on a P-processor cluster");
    simulate_cmd.add_to(simulate_app);
    auto* fit_app = app.add_subcommand("fit", "Fit (t_s, alpha_s) to measured runtimes");
    fit_cmd.add_to(fit_app);
    auto* predict_app = app.add_subcommand("predict", "Model runtime and utilization for a task set");
    predict_cmd.add_to(predict_app);
    auto* sweep_app = app.add_subcommand("sweep", "Profiles x presets x bundle sizes");
    sweep_cmd.add_to(sweep_app);
    auto* bundle_app = app.add_subcommand("bundle-compare", "Utilization under multilevel bundling");
    bundle_cmd.add_to(bundle_app);
    auto* curves_app = app.add_subcommand("curves", "Utilization or latency-scaling curve data");
    curves_cmd.add_to(curves_app);
    auto* catalog_app = app.add_subcommand("catalog", "Query the scheduler feature catalog");
    catalog_cmd.add_to(catalog_app);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            // --help or --version
            return app.exit(e, out, err);
        }
        err << "error: " << e.what() << "\n";
        err << "run 'schedlat --help' for usage\n";
        return kExitUsage;
    }

    try {
        if (simulate_app->parsed()) return simulate_cmd.run(out, seed_env);
        if (fit_app->parsed()) return fit_cmd.run(out, err);
        if (predict_app->parsed()) return predict_cmd.run(out);
        if (sweep_app->parsed()) return sweep_cmd.run(out);
        if (bundle_app->parsed()) return bundle_cmd.run(out);
        if (curves_app->parsed()) return curves_cmd.run(out, err);
        if (catalog_app->parsed()) return catalog_cmd.run(out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const UnknownNameError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const FitInfeasibleError& e) {
        err << "error: fit infeasible: " << e.what() << "\n";
        return kExitFitInfeasible;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}

} // namespace schedlat::cli
