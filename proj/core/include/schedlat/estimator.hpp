#pragma once

// Power-law latency estimator: recovers (t_s, alpha_s) from measured runtimes
// by ordinary least squares on (ln n, ln dT).

#include <schedlat/model.hpp>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace schedlat {

/// A measured job: total runtime against its isolated execution time.
struct RunRecord {
    std::uint64_t n = 1;       // tasks per processor
    double total_runtime = 0.0;
    double job_time = 0.0;     // T_job = t * n
    std::string trial_id;
    std::string source;
};

struct Observation {
    std::uint64_t n = 1;
    double delta_t_obs = 0.0; // may be <= 0 in noisy data
    std::string trial_id;
    std::string source;
};

struct FitOptions {
    /// Observations with n below this are excluded as shot noise. 1 keeps all.
    std::uint64_t min_n = 1;
};

/// Cutoff that reproduces the published fit parameters from the shipped
/// runtime data: the n = 4 points sit in the shot-noise regime.
inline constexpr std::uint64_t kReproductionMinN = 8;

struct FitResult {
    double t_s_hat = 0.0;
    double alpha_s_hat = 0.0;
    double r_squared = 0.0;
    std::size_t points_used = 0;
    std::size_t points_excluded = 0;
    std::vector<double> residuals; // ln dT - fitted, one per used point, input order
    std::vector<std::string> warnings;

    SchedulerProfile as_profile(std::string name = "fit") const {
        return {std::move(name), t_s_hat, alpha_s_hat};
    }
};

/// delta_t_obs = total_runtime - job_time. Throws ParameterError if job_time <= 0 or n == 0.
std::vector<Observation> derive_observations(std::span<const RunRecord> runs);

/// Throws FitInfeasibleError when fewer than two usable points remain or all
/// usable points share one n.
FitResult fit_power_law(std::span<const Observation> observations, const FitOptions& options = {});

/// t n + t_s_hat n^alpha_s_hat.
double predict_total(const FitResult& fit, const ConstantTaskSpec& spec);

// Observation CSV:
//   scheduler,trial,task_time_s,tasks_per_proc,processors,total_tasks,runtime_s
// T_job is task_time_s * tasks_per_proc.
struct MeasuredRun {
    std::string scheduler;
    std::string trial;
    double task_time = 0.0;
    std::uint64_t tasks_per_proc = 0;
    std::uint64_t processors = 0;
    std::uint64_t total_tasks = 0;
    double runtime = 0.0;

    RunRecord to_record() const;
};

std::vector<MeasuredRun> read_runs_csv(std::istream& in);
std::vector<MeasuredRun> load_runs(const std::filesystem::path& path);

/// The shipped measured runtimes (all four schedulers, three trials each).
std::vector<MeasuredRun> builtin_runs();

/// Observations for one scheduler, in file order.
std::vector<Observation> observations_for(std::span<const MeasuredRun> runs,
                                          const std::string& scheduler);

/// Distinct scheduler names in first-appearance order.
std::vector<std::string> schedulers_in(std::span<const MeasuredRun> runs);

} // namespace schedlat
