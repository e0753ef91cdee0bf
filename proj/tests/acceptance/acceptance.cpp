// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <schedlat/catalog.hpp>
#include <schedlat/cli.hpp>
#include <schedlat/estimator.hpp>
#include <schedlat/model.hpp>
#include <schedlat/multilevel.hpp>
#include <schedlat/numfmt.hpp>
#include <schedlat/rng.hpp>
#include <schedlat/simengine.hpp>
#include <schedlat/workloads.hpp>

#include <oracle.hpp>

#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace schedlat;

namespace {

struct Verdict {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        if (pass) detail = why;
        pass = false;
    }
};

std::string fmt(double v) {
    return format_sig(v);
}

double mean_runtime(const std::vector<MeasuredRun>& runs, const std::string& scheduler, std::uint64_t n) {
    double sum = 0.0;
    int count = 0;
    for (const auto& r : runs) {
        if (r.scheduler == scheduler && r.tasks_per_proc == n) {
            sum += r.runtime;
            ++count;
        }
    }
    return count ? sum / count : std::nan("");
}

Verdict oracle_equivalence() {
    Verdict v;
    int points = 0;
    double worst = 0.0;
    for (double t_s : {0.5, 2.2, 33.0}) {
        for (double a : {1.0, 1.1, 1.3}) {
            for (double t : {1.0, 5.0, 30.0, 60.0}) {
                for (std::uint64_t n : {4u, 48u, 240u}) {
                    for (std::uint64_t P : {1u, 16u, 1408u}) {
                        const auto r = simulate_constant({t, n}, {P}, {"grid", t_s, a});
                        const double err = oracle::rel_diff(r.T_total, oracle::total(t_s, a, t, n));
                        worst = std::max(worst, err);
                        if (err > 1e-9) v.fail("mismatch at t_s=" + fmt(t_s) + " a=" + fmt(a));
                        ++points;
                    }
                }
            }
        }
    }
    if (points != 324) v.fail("grid has " + std::to_string(points) + " points");
    if (v.pass) v.detail = std::to_string(points) + " points, worst rel err " + fmt(worst);
    return v;
}

Verdict fit_round_trip() {
    Verdict v;
    double worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        Rng rng(seed);
        const double t_s = std::exp(rng.uniform(std::log(0.1), std::log(100.0)));
        const double a = rng.uniform(0.5, 2.0);
        std::vector<Observation> obs;
        for (std::uint64_t n : {4u, 8u, 48u, 240u}) obs.push_back({n, oracle::delta_t(t_s, a, n), "1", "rt"});
        const auto fit = fit_power_law(obs);
        const double err = std::max(oracle::rel_diff(fit.t_s_hat, t_s), oracle::rel_diff(fit.alpha_s_hat, a));
        worst = std::max(worst, err);
        if (err > 1e-6) v.fail("seed " + std::to_string(seed) + " rel err " + fmt(err));
    }
    if (v.pass) v.detail = "50 profiles, worst rel err " + fmt(worst);
    return v;
}

Verdict table4_reproduction() {
    Verdict v;
    const auto runs = builtin_runs();
    std::ostringstream d;
    d << "min_n=" << kReproductionMinN << ":";
    for (const auto& p : builtin_profiles()) {
        const auto obs = observations_for(runs, p.name);
        if (p.name == "yarn") {
            for (const auto& o : obs) {
                if (o.n == 240) v.fail("yarn data contains rapid points");
            }
        }
        const auto fit = fit_power_law(obs, {kReproductionMinN});
        d << " " << p.name << " " << fmt(fit.t_s_hat) << "/" << fmt(fit.alpha_s_hat);
        if (!(fit.t_s_hat > p.t_s / 2 && fit.t_s_hat < p.t_s * 2)) v.fail(p.name + " t_s out of range");
        if (std::abs(fit.alpha_s_hat - p.alpha_s) > 0.2) v.fail(p.name + " alpha out of range");
    }
    if (v.pass) v.detail = d.str();
    else v.detail += " (" + d.str() + ")";
    return v;
}

Verdict measured_utilization() {
    Verdict v;
    const auto runs = builtin_runs();
    const std::vector<std::tuple<std::string, std::uint64_t, double>> want{
        {"slurm", 240, 0.0862}, {"grid-engine", 240, 0.0782}, {"mesos", 240, 0.1338}, {"yarn", 48, 0.1304}};
    std::ostringstream d;
    d << "measured";
    for (const auto& [name, n, expected] : want) {
        const double u = 240.0 / mean_runtime(runs, name, n);
        d << " " << name << "=" << fmt(u);
        if (!(std::abs(u - expected) <= 1e-3)) v.fail(name + " measured U " + fmt(u));
    }
    d << "; model U_c(t=1)";
    for (const auto& p : builtin_profiles()) {
        const double u = utilization_constant(p, {1.0, 240});
        d << " " << p.name << "=" << fmt(u) << (u < 0.10 ? "(<0.10)" : "(>=0.10)");
        if (!(u < 0.15)) v.fail(p.name + " model U_c " + fmt(u));
    }
    if (v.pass) v.detail = d.str();
    return v;
}

Verdict multilevel_recovery() {
    Verdict v;
    const std::map<std::string, double> expected{{"slurm", 0.991}, {"grid-engine", 0.988}, {"mesos", 0.986}};
    const std::uint64_t sizes[] = {240};
    std::ostringstream d;
    for (const auto& [name, want] : expected) {
        const auto row = compare(builtin_profile(name), preset("rapid").spec(), {1408}, sizes).front();
        const auto cap = measured_multilevel_cap(name);
        d << name << " U=" << fmt(row.utilization_paper) << " dT=" << fmt(row.delta_t) << "<=" << fmt(cap->delta_t_cap)
          << "; ";
        for (double u : {row.utilization_makespan, row.utilization_paper}) {
            if (!(u > 0.90) || std::abs(u - want) > 1e-3) v.fail(name + " U " + fmt(u));
        }
        if (!(row.delta_t <= cap->delta_t_cap)) v.fail(name + " dT above measured cap");
    }
    const auto yarn = compare(builtin_profile("yarn"), preset("rapid").spec(), {1408}, sizes).front();
    d << "yarn U=" << fmt(yarn.utilization_paper) << " (not in checked set)";
    if (v.pass) v.detail = d.str();
    return v;
}

Verdict variable_consistency() {
    Verdict v;
    const SchedulerProfile lin{"linear", 2.2, 1.0};
    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto w = variable_workload(LogNormalDist{1.0, 0.75}, 2000, seed);
        for (auto policy : {AssignmentPolicy::round_robin, AssignmentPolicy::greedy_earliest_finish}) {
            SimOptions opts;
            opts.assignment_policy = policy;
            opts.rng_seed = seed;
            const ClusterSpec cluster{37};
            const auto r = simulate(w, cluster, lin, opts);
            const auto u = utilization_variable(lin, assign_tasks(w, cluster, opts));
            const double err = oracle::rel_diff(r.utilization_paper, u.overall);
            worst = std::max(worst, err);
            if (err > 1e-9) v.fail("seed " + std::to_string(seed) + " rel err " + fmt(err));
        }
    }
    // brute force on small instances, any alpha
    int instances = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        Rng rng(seed);
        const std::uint64_t P = 1 + rng.next_u64() % 8;
        const std::uint64_t N = P + rng.next_u64() % (65 - P);
        const SchedulerProfile p{"small", rng.uniform(0.1, 10.0), rng.uniform(0.5, 2.0)};
        const auto w = variable_workload(UniformDist{0.1, 20.0}, N, seed);
        std::vector<std::uint64_t> n_p(P, 0);
        std::vector<double> work(P, 0.0);
        for (std::size_t i = 0; i < w.size(); ++i) {
            n_p[i % P] += 1;
            work[i % P] += w.tasks[i].duration;
        }
        const double brute = oracle::reciprocal_mean(p.t_s, p.alpha_s, n_p, work);
        const double model = utilization_variable(p, assign_tasks(w, {P})).overall;
        const double sim = simulate(w, {P}, p).utilization_paper;
        const double err = std::max(oracle::rel_diff(model, brute), oracle::rel_diff(sim, brute));
        worst = std::max(worst, err);
        if (err > 1e-9) v.fail("brute-force instance " + std::to_string(seed) + " rel err " + fmt(err));
        ++instances;
    }
    if (v.pass) v.detail = "20 seeds x 2 policies + " + std::to_string(instances) + " brute-force instances, worst " + fmt(worst);
    return v;
}

Verdict bundling_monotonicity() {
    Verdict v;
    const std::uint64_t sizes[] = {1, 2, 4, 8, 48, 240};
    const auto spec = preset("rapid").spec();
    const ClusterSpec cluster{1408};
    for (const auto& p : builtin_profiles()) {
        const auto rows = compare(p, spec, cluster, sizes);
        for (std::size_t i = 1; i < rows.size(); ++i) {
            if (rows[i].utilization_paper < rows[i - 1].utilization_paper ||
                rows[i].utilization_makespan < rows[i - 1].utilization_makespan) {
                v.fail(p.name + " U decreases at b=" + std::to_string(rows[i].bundle_size));
            }
        }
        const auto plain = constant_workload(spec.t, spec.n * cluster.processors);
        const auto bundled = bundled_constant_workload(spec, cluster, {1});
        const std::string a = to_json(simulate(plain, cluster, p), {true, &p, "rapid"});
        const std::string b = to_json(simulate(bundled, cluster, p), {true, &p, "rapid"});
        const std::string c = to_json(simulate(bundle(plain, {1}), cluster, p), {true, &p, "rapid"});
        if (a != b || a != c) v.fail(p.name + " b=1 differs from unbundled");
        const auto unb = simulate_constant(spec, cluster, p);
        if (rows[0].T_total != unb.T_total || rows[0].utilization_paper != unb.utilization_paper ||
            rows[0].utilization_makespan != unb.utilization_makespan) {
            v.fail(p.name + " compare row b=1 differs from unbundled");
        }
    }
    if (v.pass) v.detail = "4 profiles x 6 bundle sizes on rapid, b=1 byte-identical";
    return v;
}

Verdict catalog_fidelity() {
    Verdict v;
    const auto& c = default_catalog();
    std::vector<std::string> names;
    for (const auto& r : c.records()) names.push_back(r.name);
    if (names != std::vector<std::string>{"LSF", "OpenLAVA", "Slurm", "Grid Engine", "Pacora", "YARN", "Mesos",
                                          "Kubernetes"}) {
        v.fail("record list");
    }
    if (c.value("Slurm", "backfilling").kind != FeatureKind::yes) v.fail("Slurm backfilling");
    for (const auto& row : query(c, "multiple_resource_managers")) {
        const bool ok = row.name == "Mesos" ? row.value.kind == FeatureKind::yes
                                            : (row.value.kind == FeatureKind::no || row.value.kind == FeatureKind::unknown);
        if (!ok) v.fail("multiple_resource_managers " + row.name);
    }
    for (const auto& row : query(c, "data_related_job_scheduling")) {
        if ((row.value.kind == FeatureKind::yes) != (row.name == "YARN")) v.fail("data_related " + row.name);
    }
    const std::vector<std::pair<std::string, std::string>> backfill{
        {"LSF", "yes"},        {"OpenLAVA", "yes"}, {"Slurm", "yes"},     {"Grid Engine", "yes"},
        {"Pacora", "unknown"}, {"YARN", "no"},      {"Mesos", "unknown"}, {"Kubernetes", "unknown"}};
    std::vector<std::pair<std::string, std::string>> got;
    for (const auto& r : query(c, "backfilling")) got.emplace_back(r.name, r.value.display());
    if (got != backfill) v.fail("backfilling listing");
    const std::vector<std::string> one{"Slurm"};
    const auto cmp = compare(c, one);
    if (cmp.names != one) v.fail("single-column compare");
    for (const auto& r : cmp.rows) {
        if (r.values.size() != 1) v.fail("single-column compare width");
    }
    if (c.value("Slurm", "scalability_throughput").display() != "100K+" ||
        c.value("Mesos", "scalability_throughput").display() != "100K+" ||
        c.value("OpenLAVA", "scalability_throughput").display() != "1K+") {
        v.fail("scalability_throughput");
    }
    if (c.value("Mesos", "job_migration").kind != FeatureKind::unknown ||
        c.value("Kubernetes", "job_migration").kind != FeatureKind::unknown) {
        v.fail("job_migration unknowns");
    }
    if (v.pass) v.detail = "all catalog example queries match";
    return v;
}

Verdict cli_determinism() {
    Verdict v;
    const std::vector<std::vector<std::string>> commands{
        {"simulate", "--profile", "slurm", "--preset", "fast", "-P", "64", "--traces"},
        {"simulate", "--profile", "mesos", "--generate", "lognormal:1,0.5", "--tasks", "5000", "-P", "32",
         "--assign", "greedy-earliest-finish", "--noise", "0.1", "--format", "csv"},
        {"simulate", "--ts", "2", "--alpha", "1.2", "--generate", "choice:1,5,30,60", "--tasks", "1000"},
        {"fit"},
        {"fit", "--min-n", "1", "--format", "csv"},
        {"predict", "--profile", "yarn", "--preset", "medium"},
        {"sweep", "--bundle-sizes", "1,2,8,240", "-P", "128", "-j", "8"},
        {"bundle-compare", "--profile", "grid-engine", "--preset", "rapid", "-P", "16", "--format", "json"},
        {"curves", "--format", "gnuplot"},
        {"curves", "--kind", "latency", "--format", "json"},
        {"catalog", "compare", "Slurm", "YARN", "--format", "json"},
        {"catalog", "query", "checkpointing"},
        {"catalog", "keys"},
    };
    for (const auto& args : commands) {
        std::string first;
        for (int rep = 0; rep < 2; ++rep) {
            std::ostringstream out;
            std::ostringstream err;
            const int code = cli::run(args, out, err, std::string("12345"));
            if (code != 0) {
                v.fail(args.front() + " exited " + std::to_string(code) + ": " + err.str());
                break;
            }
            if (rep == 0) first = out.str();
            else if (out.str() != first) v.fail(args.front() + " output differs between runs");
        }
    }
    // concurrent sweep against a serial one
    std::ostringstream serial;
    std::ostringstream parallel;
    std::ostringstream err;
    cli::run({"sweep", "--bundle-sizes", "1,4,48", "-P", "256", "-j", "1"}, serial, err);
    cli::run({"sweep", "--bundle-sizes", "1,4,48", "-P", "256", "-j", "16"}, parallel, err);
    if (serial.str() != parallel.str() || serial.str().empty()) v.fail("sweep output depends on thread count");
    if (v.pass) v.detail = std::to_string(commands.size()) + " invocations repeated, sweep -j1 == -j16";
    return v;
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"oracle equivalence", oracle_equivalence},
        {"fit round-trip", fit_round_trip},
        {"published fit reproduction", table4_reproduction},
        {"measured utilization reproduction", measured_utilization},
        {"multilevel recovery", multilevel_recovery},
        {"variable-task consistency", variable_consistency},
        {"bundling monotonicity", bundling_monotonicity},
        {"catalog fidelity", catalog_fidelity},
        {"determinism", cli_determinism},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v.fail(std::string("exception: ") + e.what());
        }
        failures += !v.pass;
        std::printf("%s criterion %zu (%s): %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    v.detail.c_str());
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
