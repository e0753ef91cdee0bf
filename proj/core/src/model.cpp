#include <schedlat/model.hpp>

#include <schedlat/error.hpp>

#include "compensated_sum.hpp"

#include <cmath>
#include <numeric>

namespace schedlat {

void SchedulerProfile::validate() const {
    if (!std::isfinite(t_s) || t_s < 0.0) {
        throw ParameterError("scheduler profile '" + name + "': t_s must be finite and >= 0");
    }
    if (!std::isfinite(alpha_s) || alpha_s <= 0.0) {
        throw ParameterError("scheduler profile '" + name + "': alpha_s must be finite and > 0");
    }
}

void ConstantTaskSpec::validate() const {
    if (!std::isfinite(t) || t <= 0.0) {
        throw ParameterError("task time must be finite and > 0");
    }
    if (n < 1) {
        throw ParameterError("tasks per processor must be >= 1");
    }
}

double PerProcessorLoad::work() const noexcept {
    return std::accumulate(task_durations.begin(), task_durations.end(), 0.0);
}

void PerProcessorLoad::validate() const {
    if (task_durations.empty()) {
        throw NoWorkError("processor " + std::to_string(proc_id) + " has no tasks");
    }
    for (double d : task_durations) {
        if (!std::isfinite(d) || d <= 0.0) {
            throw ParameterError("processor " + std::to_string(proc_id) +
                                 ": task durations must be > 0");
        }
    }
}

std::span<const SchedulerProfile> builtin_profiles() {
    static const std::vector<SchedulerProfile> profiles{
        {"slurm", 2.2, 1.3},
        {"grid-engine", 2.8, 1.3},
        {"mesos", 3.4, 1.1},
        {"yarn", 33.0, 1.0},
    };
    return profiles;
}

const SchedulerProfile& builtin_profile(std::string_view name) {
    for (const auto& p : builtin_profiles()) {
        if (p.name == name) return p;
    }
    throw UnknownNameError("unknown scheduler profile '" + std::string(name) +
                           "' (valid: slurm, grid-engine, mesos, yarn)");
}

double delta_t(const SchedulerProfile& profile, std::uint64_t n) {
    if (n == 0 || profile.t_s == 0.0) {
        return 0.0;
    }
    return profile.t_s * std::pow(static_cast<double>(n), profile.alpha_s);
}

double job_time_constant(const ConstantTaskSpec& spec) {
    return spec.t * static_cast<double>(spec.n);
}

double utilization_constant(const SchedulerProfile& profile, const ConstantTaskSpec& spec) {
    if (profile.alpha_s == 1.0) {
        // n cancels exactly in the linear model.
        return utilization_approx(profile, spec.t);
    }
    const double work = job_time_constant(spec);
    return work / (work + delta_t(profile, spec.n));
}

double utilization_approx(const SchedulerProfile& profile, double t) {
    return t / (t + profile.t_s);
}

VariableUtilization utilization_variable(const SchedulerProfile& profile,
                                         std::span<const PerProcessorLoad> loads) {
    if (loads.empty()) {
        throw NoWorkError("utilization_variable: no processor loads");
    }
    VariableUtilization out;
    out.per_proc.reserve(loads.size());
    detail::CompensatedSum reciprocal_sum;
    for (const auto& load : loads) {
        load.validate();
        const double work = load.work();
        const double claimed = work + delta_t(profile, load.n_p());
        out.per_proc.push_back(work / claimed);
        reciprocal_sum.add(claimed / work);
    }
    out.overall = static_cast<double>(loads.size()) / reciprocal_sum.value();
    return out;
}

double marginal_increment(const SchedulerProfile& profile, std::uint64_t k) {
    if (k == 0 || profile.t_s == 0.0) {
        return 0.0;
    }
    if (k == 1 || profile.alpha_s == 1.0) {
        return profile.t_s;
    }
    // k^a - (k-1)^a = k^a * (1 - (1 - 1/k)^a), evaluated without cancellation.
    const double kd = static_cast<double>(k);
    const double tail = -std::expm1(profile.alpha_s * std::log1p(-1.0 / kd));
    return profile.t_s * std::pow(kd, profile.alpha_s) * tail;
}

} // namespace schedlat
