#include <schedlat/estimator.hpp>

#include <schedlat/embedded_data.hpp>
#include <schedlat/error.hpp>

#include "text.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace schedlat {

std::vector<Observation> derive_observations(std::span<const RunRecord> runs) {
    std::vector<Observation> out;
    out.reserve(runs.size());
    for (const auto& run : runs) {
        if (run.n == 0) {
            throw ParameterError("run '" + run.trial_id + "': tasks per processor must be >= 1");
        }
        if (!(run.job_time > 0.0)) {
            throw ParameterError("run '" + run.trial_id + "': T_job must be > 0");
        }
        out.push_back({run.n, run.total_runtime - run.job_time, run.trial_id, run.source});
    }
    return out;
}

FitResult fit_power_law(std::span<const Observation> observations, const FitOptions& options) {
    FitResult fit;
    std::vector<double> xs;
    std::vector<double> ys;
    std::size_t nonpositive = 0;
    std::size_t below_min_n = 0;
    for (const auto& obs : observations) {
        if (obs.n < options.min_n || obs.n == 0) {
            ++below_min_n;
            continue;
        }
        if (!(obs.delta_t_obs > 0.0)) {
            ++nonpositive;
            continue;
        }
        xs.push_back(std::log(static_cast<double>(obs.n)));
        ys.push_back(std::log(obs.delta_t_obs));
    }
    fit.points_used = xs.size();
    fit.points_excluded = observations.size() - xs.size();
    if (nonpositive) {
        fit.warnings.push_back(std::to_string(nonpositive) +
                               " observation(s) with non-positive latency excluded");
    }
    if (below_min_n) {
        fit.warnings.push_back(std::to_string(below_min_n) + " observation(s) with n < " +
                               std::to_string(options.min_n) + " excluded");
    }

    if (xs.size() < 2) {
        throw FitInfeasibleError("power-law fit needs at least 2 usable points, have " +
                                 std::to_string(xs.size()));
    }
    const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
    if (*lo == *hi) {
        throw FitInfeasibleError("power-law fit needs at least 2 distinct n values");
    }

    const double count = static_cast<double>(xs.size());
    double mean_x = 0.0;
    double mean_y = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mean_x += xs[i];
        mean_y += ys[i];
    }
    mean_x /= count;
    mean_y /= count;

    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mean_x;
        const double dy = ys[i] - mean_y;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    const double slope = sxy / sxx;
    const double intercept = mean_y - slope * mean_x;

    double ss_res = 0.0;
    fit.residuals.reserve(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (intercept + slope * xs[i]);
        fit.residuals.push_back(r);
        ss_res += r * r;
    }
    fit.alpha_s_hat = slope;
    fit.t_s_hat = std::exp(intercept);
    // A perfect fit (syy == 0 only when all ln dT are equal and slope is 0) counts as R^2 = 1.
    fit.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
    return fit;
}

double predict_total(const FitResult& fit, const ConstantTaskSpec& spec) {
    return job_time_constant(spec) + delta_t(fit.as_profile(), spec.n);
}

RunRecord MeasuredRun::to_record() const {
    return {tasks_per_proc, runtime, task_time * static_cast<double>(tasks_per_proc),
            scheduler + "#" + trial, scheduler};
}

std::vector<MeasuredRun> read_runs_csv(std::istream& in) {
    static constexpr std::string_view kHeader =
        "scheduler,trial,task_time_s,tasks_per_proc,processors,total_tasks,runtime_s";
    std::vector<MeasuredRun> runs;
    std::string line;
    std::size_t line_no = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        const auto text = detail::trim(line);
        if (text.empty()) continue;
        if (!saw_header) {
            if (text != kHeader) {
                throw ParseError("expected header '" + std::string(kHeader) + "'", line_no);
            }
            saw_header = true;
            continue;
        }
        const auto f = detail::split(text, ',');
        if (f.size() != 7) {
            throw ParseError("expected 7 fields, got " + std::to_string(f.size()), line_no);
        }
        MeasuredRun run;
        run.scheduler = std::string(f[0]);
        run.trial = std::string(f[1]);
        const auto t = detail::parse_double(f[2]);
        const auto n = detail::parse_u64(f[3]);
        const auto p = detail::parse_u64(f[4]);
        const auto total = detail::parse_u64(f[5]);
        const auto rt = detail::parse_double(f[6]);
        if (run.scheduler.empty()) throw ParseError("empty scheduler name", line_no);
        if (!t || !(*t > 0.0)) throw ParseError("task_time_s must be a number > 0", line_no);
        if (!n || *n == 0) throw ParseError("tasks_per_proc must be an integer >= 1", line_no);
        if (!p || *p == 0) throw ParseError("processors must be an integer >= 1", line_no);
        if (!total) throw ParseError("total_tasks must be an integer", line_no);
        if (!rt || !std::isfinite(*rt)) throw ParseError("runtime_s must be a number", line_no);
        run.task_time = *t;
        run.tasks_per_proc = *n;
        run.processors = *p;
        run.total_tasks = *total;
        run.runtime = *rt;
        runs.push_back(std::move(run));
    }
    if (!saw_header) {
        throw ParseError("empty observation file", 0);
    }
    return runs;
}

std::vector<MeasuredRun> load_runs(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "'");
    }
    return read_runs_csv(in);
}

std::vector<MeasuredRun> builtin_runs() {
    std::istringstream in{std::string(embedded::measured_runs_csv())};
    return read_runs_csv(in);
}

std::vector<Observation> observations_for(std::span<const MeasuredRun> runs,
                                          const std::string& scheduler) {
    std::vector<RunRecord> records;
    for (const auto& run : runs) {
        if (run.scheduler == scheduler) records.push_back(run.to_record());
    }
    return derive_observations(records);
}

std::vector<std::string> schedulers_in(std::span<const MeasuredRun> runs) {
    std::vector<std::string> names;
    for (const auto& run : runs) {
        if (std::find(names.begin(), names.end(), run.scheduler) == names.end()) {
            names.push_back(run.scheduler);
        }
    }
    return names;
}

} // namespace schedlat
