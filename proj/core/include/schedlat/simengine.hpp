#pragma once

// Deterministic dispatch simulation of a P-processor cluster.
//
// Each processor dispatches its assigned tasks in order. The k-th dispatch on
// a processor first waits marginal_increment(profile, k), then runs the task.
// There is no cross-processor interaction, so the event sequence of every
// processor reduces to a running sum and is evaluated directly.

#include <schedlat/model.hpp>
#include <schedlat/workloads.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace schedlat {

struct ClusterSpec {
    std::uint64_t processors = 1;

    void validate() const;
};

enum class ReleaseMode {
    release_on_completion, // a processor is released as soon as its work finishes
    hold_until_job_end,    // every processor is held until the makespan
};

enum class AssignmentPolicy {
    round_robin,             // deal tasks in input order
    greedy_earliest_finish,  // each task goes to the processor with least accumulated work
};

struct SimOptions {
    ReleaseMode release_mode = ReleaseMode::release_on_completion;
    AssignmentPolicy assignment_policy = AssignmentPolicy::round_robin;
    std::uint64_t rng_seed = 0; // carried with the run; the dispatch model itself draws nothing
};

std::string_view to_string(ReleaseMode mode);
std::string_view to_string(AssignmentPolicy policy);
ReleaseMode parse_release_mode(std::string_view text);
AssignmentPolicy parse_assignment_policy(std::string_view text);

struct ProcessorTrace {
    std::size_t proc_id = 0;
    std::vector<std::uint64_t> dispatched_tasks;
    std::size_t n_p = 0;
    double work_time = 0.0;    // sum of task durations
    double latency_time = 0.0; // sum of dispatch increments
    double finish_time = 0.0;  // work_time + latency_time
    double mean_task_time = 0.0;
};

struct SimResult {
    std::vector<ProcessorTrace> traces;
    double T_total = 0.0;        // makespan
    double T_job_total = 0.0;    // task work summed over all processors
    double delta_T_max = 0.0;    // T_total minus the work of the most loaded processor
    double utilization_makespan = 0.0; // T_job_total / (P * T_total)
    double utilization_paper = 0.0;    // reciprocal mean of per-processor utilization
};

/// Per-processor task lists. Every task lands on exactly one processor;
/// processors beyond the task count receive empty loads.
std::vector<PerProcessorLoad> assign_tasks(const Workload& workload, const ClusterSpec& cluster,
                                           const SimOptions& options = {});

/// Task ids per processor, in the same assignment as assign_tasks.
std::vector<std::vector<std::uint64_t>> assign_task_ids(const Workload& workload,
                                                        const ClusterSpec& cluster,
                                                        const SimOptions& options = {});

/// Throws NoWorkError for an empty workload.
SimResult simulate(const Workload& workload, const ClusterSpec& cluster,
                   const SchedulerProfile& profile, const SimOptions& options = {});

/// Homogeneous workload of spec.n * P tasks of duration spec.t, round-robin.
SimResult simulate_constant(const ConstantTaskSpec& spec, const ClusterSpec& cluster,
                            const SchedulerProfile& profile);

struct SimJsonOptions {
    bool include_traces = false;
    const SchedulerProfile* profile = nullptr; // echoed when set
    std::string workload_label;                // echoed when non-empty
};

/// Aggregate fields and, when include_traces, one object per processor.
/// Numbers carry kSignificantDigits significant digits.
std::string to_json(const SimResult& result, const SimJsonOptions& options = {});

/// Header "proc_id,n_p,work_time_s,latency_time_s,finish_time_s,mean_task_time_s"
/// and one row per processor.
void write_traces_csv(const SimResult& result, std::ostream& out);

} // namespace schedlat
