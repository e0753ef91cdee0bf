#include <schedlat/simengine.hpp>

#include <schedlat/error.hpp>
#include <schedlat/numfmt.hpp>

#include "compensated_sum.hpp"
#include "json_util.hpp"

#include <algorithm>
#include <functional>
#include <ostream>
#include <queue>

namespace schedlat {

namespace {

using detail::CompensatedSum;

template <typename Sink>
void for_each_assignment(const Workload& workload, const ClusterSpec& cluster,
                         const SimOptions& options, Sink&& sink) {
    const auto procs = cluster.processors;
    if (options.assignment_policy == AssignmentPolicy::round_robin) {
        for (std::size_t i = 0; i < workload.tasks.size(); ++i) {
            sink(static_cast<std::size_t>(i % procs), workload.tasks[i]);
        }
        return;
    }
    // Least accumulated work first, ties to the lowest processor index.
    using Slot = std::pair<double, std::size_t>;
    std::priority_queue<Slot, std::vector<Slot>, std::greater<>> heap;
    for (std::size_t p = 0; p < procs; ++p) heap.emplace(0.0, p);
    for (const auto& task : workload.tasks) {
        auto [work, p] = heap.top();
        heap.pop();
        sink(p, task);
        heap.emplace(work + task.duration, p);
    }
}

} // namespace

void ClusterSpec::validate() const {
    if (processors < 1) {
        throw ParameterError("cluster must have at least one processor");
    }
}

std::string_view to_string(ReleaseMode mode) {
    return mode == ReleaseMode::release_on_completion ? "release-on-completion"
                                                      : "hold-until-job-end";
}

std::string_view to_string(AssignmentPolicy policy) {
    return policy == AssignmentPolicy::round_robin ? "round-robin" : "greedy-earliest-finish";
}

ReleaseMode parse_release_mode(std::string_view text) {
    if (text == "release-on-completion") return ReleaseMode::release_on_completion;
    if (text == "hold-until-job-end") return ReleaseMode::hold_until_job_end;
    throw UnknownNameError("unknown release mode '" + std::string(text) +
                           "' (valid: release-on-completion, hold-until-job-end)");
}

AssignmentPolicy parse_assignment_policy(std::string_view text) {
    if (text == "round-robin") return AssignmentPolicy::round_robin;
    if (text == "greedy-earliest-finish") return AssignmentPolicy::greedy_earliest_finish;
    throw UnknownNameError("unknown assignment policy '" + std::string(text) +
                           "' (valid: round-robin, greedy-earliest-finish)");
}

std::vector<PerProcessorLoad> assign_tasks(const Workload& workload, const ClusterSpec& cluster,
                                           const SimOptions& options) {
    cluster.validate();
    std::vector<PerProcessorLoad> loads(cluster.processors);
    for (std::size_t p = 0; p < loads.size(); ++p) loads[p].proc_id = p;
    for_each_assignment(workload, cluster, options, [&](std::size_t p, const TaskSpec& task) {
        loads[p].task_durations.push_back(task.duration);
    });
    return loads;
}

std::vector<std::vector<std::uint64_t>> assign_task_ids(const Workload& workload,
                                                        const ClusterSpec& cluster,
                                                        const SimOptions& options) {
    cluster.validate();
    std::vector<std::vector<std::uint64_t>> ids(cluster.processors);
    for_each_assignment(workload, cluster, options, [&](std::size_t p, const TaskSpec& task) {
        ids[p].push_back(task.task_id);
    });
    return ids;
}

SimResult simulate(const Workload& workload, const ClusterSpec& cluster,
                   const SchedulerProfile& profile, const SimOptions& options) {
    cluster.validate();
    profile.validate();
    workload.validate();

    SimResult result;
    result.traces.resize(cluster.processors);
    std::vector<CompensatedSum> work(cluster.processors);
    for (std::size_t p = 0; p < result.traces.size(); ++p) result.traces[p].proc_id = p;
    for_each_assignment(workload, cluster, options, [&](std::size_t p, const TaskSpec& task) {
        result.traces[p].dispatched_tasks.push_back(task.task_id);
        work[p].add(task.duration);
    });

    // Cumulative dispatch latency after k dispatches; shared by all processors.
    std::size_t max_n = 0;
    for (const auto& tr : result.traces) max_n = std::max(max_n, tr.dispatched_tasks.size());
    std::vector<double> latency_prefix(max_n + 1, 0.0);
    CompensatedSum latency;
    for (std::size_t k = 1; k <= max_n; ++k) {
        latency.add(marginal_increment(profile, k));
        latency_prefix[k] = latency.value();
    }

    CompensatedSum total_work;
    double max_work = -1.0;
    for (std::size_t p = 0; p < result.traces.size(); ++p) {
        auto& tr = result.traces[p];
        tr.n_p = tr.dispatched_tasks.size();
        tr.work_time = work[p].value();
        tr.latency_time = latency_prefix[tr.n_p];
        tr.finish_time = tr.work_time + tr.latency_time;
        tr.mean_task_time = tr.n_p ? tr.work_time / static_cast<double>(tr.n_p) : 0.0;
        total_work.add(tr.work_time);
        result.T_total = std::max(result.T_total, tr.finish_time);
        if (tr.work_time > max_work) max_work = tr.work_time;
    }
    result.T_job_total = total_work.value();
    result.delta_T_max = result.T_total - max_work;
    result.utilization_makespan =
        result.T_job_total / (static_cast<double>(cluster.processors) * result.T_total);

    // Idle processors carry no work and are left out of the reciprocal mean.
    CompensatedSum reciprocal_sum;
    std::size_t busy = 0;
    for (const auto& tr : result.traces) {
        if (tr.n_p == 0) continue;
        const double claimed = options.release_mode == ReleaseMode::release_on_completion
                                   ? tr.finish_time
                                   : result.T_total;
        reciprocal_sum.add(claimed / tr.work_time);
        ++busy;
    }
    result.utilization_paper = static_cast<double>(busy) / reciprocal_sum.value();
    return result;
}

SimResult simulate_constant(const ConstantTaskSpec& spec, const ClusterSpec& cluster,
                            const SchedulerProfile& profile) {
    spec.validate();
    cluster.validate();
    auto workload = constant_workload(spec.t, spec.n * cluster.processors);
    return simulate(workload, cluster, profile, SimOptions{});
}

std::string to_json(const SimResult& result, const SimJsonOptions& options) {
    using detail::num;
    detail::ordered_json j;
    if (options.profile) {
        j["profile"] = {{"name", options.profile->name},
                        {"t_s", num(options.profile->t_s)},
                        {"alpha_s", num(options.profile->alpha_s)}};
    }
    if (!options.workload_label.empty()) j["workload"] = options.workload_label;
    j["processors"] = result.traces.size();
    j["T_total"] = num(result.T_total);
    j["T_job_total"] = num(result.T_job_total);
    j["delta_T_max"] = num(result.delta_T_max);
    j["utilization_makespan"] = num(result.utilization_makespan);
    j["utilization_paper"] = num(result.utilization_paper);
    if (options.include_traces) {
        auto traces = detail::ordered_json::array();
        for (const auto& tr : result.traces) {
            traces.push_back({{"proc_id", tr.proc_id},
                              {"n_p", tr.n_p},
                              {"work_time", num(tr.work_time)},
                              {"latency_time", num(tr.latency_time)},
                              {"finish_time", num(tr.finish_time)},
                              {"mean_task_time", num(tr.mean_task_time)},
                              {"dispatched_tasks", tr.dispatched_tasks}});
        }
        j["traces"] = std::move(traces);
    }
    return j.dump(2) + "\n";
}

void write_traces_csv(const SimResult& result, std::ostream& out) {
    out << "proc_id,n_p,work_time_s,latency_time_s,finish_time_s,mean_task_time_s\n";
    for (const auto& tr : result.traces) {
        out << tr.proc_id << ',' << tr.n_p << ',' << format_sig(tr.work_time) << ','
            << format_sig(tr.latency_time) << ',' << format_sig(tr.finish_time) << ','
            << format_sig(tr.mean_task_time) << '\n';
    }
}

} // namespace schedlat
