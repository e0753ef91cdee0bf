#pragma once

// Closed-form latency and utilization model.
//
//   T_total = T_job + dT,   T_job = t * n,   dT = t_s * n^alpha
//   1/U_c   = 1 + t_s * n^alpha / (t * n)
//   1/U_c(t) ~ 1 + t_s / t                       (alpha ~ 1)
//   1/U_v(p) = 1 + t_s * n(p)^alpha / sum_j t_j   (variable task times)
//   1/U     ~ mean_p 1/U(p)                      (release-on-completion)
//
// All times are seconds in double precision. Every function here is pure.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace schedlat {

struct SchedulerProfile {
    std::string name;
    double t_s = 0.0;     // marginal scheduler latency, seconds
    double alpha_s = 1.0; // nonlinear exponent

    /// Throws ParameterError unless t_s >= 0 and alpha_s > 0 (both finite).
    void validate() const;
};

struct ConstantTaskSpec {
    double t = 1.0;        // task duration, seconds
    std::uint64_t n = 1;   // tasks per processor

    void validate() const;
};

struct PerProcessorLoad {
    std::size_t proc_id = 0;
    std::vector<double> task_durations;

    std::size_t n_p() const noexcept { return task_durations.size(); }
    double work() const noexcept;
    void validate() const;
};

struct VariableUtilization {
    std::vector<double> per_proc;
    double overall = 1.0;
};

/// Published fit parameters: slurm (2.2, 1.3), grid-engine (2.8, 1.3),
/// mesos (3.4, 1.1), yarn (33, 1.0).
std::span<const SchedulerProfile> builtin_profiles();

/// Throws UnknownNameError listing the valid names.
const SchedulerProfile& builtin_profile(std::string_view name);

/// t_s * n^alpha_s; zero for n == 0 or t_s == 0.
double delta_t(const SchedulerProfile& profile, std::uint64_t n);

double job_time_constant(const ConstantTaskSpec& spec);

/// (t n) / (t n + t_s n^alpha).
double utilization_constant(const SchedulerProfile& profile, const ConstantTaskSpec& spec);

/// t / (t + t_s). Independent of n.
double utilization_approx(const SchedulerProfile& profile, double t);

/// Exact U_v(p) per load; overall is the reciprocal of the mean reciprocal.
/// Throws NoWorkError for an empty list or a load with no tasks.
VariableUtilization utilization_variable(const SchedulerProfile& profile,
                                         std::span<const PerProcessorLoad> loads);

/// Latency charged to the k-th dispatch on a processor: t_s * (k^alpha - (k-1)^alpha).
/// Increments 1..n telescope to delta_t(profile, n).
double marginal_increment(const SchedulerProfile& profile, std::uint64_t k);

} // namespace schedlat
