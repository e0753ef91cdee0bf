#pragma once

// Multilevel scheduling: an aggregation layer above the cluster scheduler
// groups tasks into bundles, and the scheduler dispatches each bundle as one
// opaque task.

#include <schedlat/model.hpp>
#include <schedlat/simengine.hpp>
#include <schedlat/workloads.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace schedlat {

enum class BundleMode {
    siso, // single input/output: the application starts once per task, so one launch per task
    mimo, // multiple input/output: one launch processes a whole bundle
};

std::string_view to_string(BundleMode mode);
BundleMode parse_bundle_mode(std::string_view text);

struct BundlePolicy {
    std::uint64_t bundle_size = 1;
    double per_task_overhead = 0.0; // seconds added per bundle member
    BundleMode mode = BundleMode::mimo;

    void validate() const;
    /// Bundle size the scheduler actually sees: 1 under siso.
    std::uint64_t effective_size() const noexcept;
};

/// ceil(N / b) bundles in input order. Bundle duration is the sum of member
/// durations plus per_task_overhead per member; bundle ids are 0..K-1.
Workload bundle(const Workload& workload, const BundlePolicy& policy);

/// Constant workload of spec.n tasks per processor, bundled within each
/// processor's share so that every processor launches ceil(n / b) bundles.
/// Tasks are laid out so that round-robin assignment restores the per-processor
/// grouping; with b == 1 and no overhead this equals constant_workload(t, n * P).
Workload bundled_constant_workload(const ConstantTaskSpec& spec, const ClusterSpec& cluster,
                                   const BundlePolicy& policy);

struct BundleComparisonRow {
    std::uint64_t bundle_size = 1;
    std::uint64_t launches_per_proc = 0;
    double delta_t = 0.0;          // model latency at the launch count
    double T_total = 0.0;
    double utilization_makespan = 0.0;
    double utilization_paper = 0.0;
};

/// One simulated row per bundle size, in the given order. Throws
/// ParameterError for a bundle size of 0.
std::vector<BundleComparisonRow> compare(const SchedulerProfile& profile,
                                         const ConstantTaskSpec& spec,
                                         const ClusterSpec& cluster,
                                         std::span<const std::uint64_t> bundle_sizes,
                                         const BundlePolicy& base_policy = {});

/// Header "bundle_size,launches_per_proc,delta_t_s,utilization_makespan,utilization_paper".
void write_compare_csv(std::span<const BundleComparisonRow> rows, std::ostream& out);

/// Measured multilevel outcomes reported for a scheduler: the largest observed
/// reduction of dT and the ceiling dT stayed under at every n.
struct MeasuredMultilevelCap {
    std::string_view scheduler;
    double reduction_factor = 0.0;
    double delta_t_cap = 0.0; // seconds
};

std::span<const MeasuredMultilevelCap> measured_multilevel_caps() noexcept;
std::optional<MeasuredMultilevelCap> measured_multilevel_cap(std::string_view scheduler);

struct ReductionSummary {
    std::uint64_t n = 0;
    std::uint64_t bundle_size = 0;
    double delta_t_unbundled = 0.0;
    double delta_t_bundled = 0.0;
    double model_reduction = 0.0; // delta_t_unbundled / delta_t_bundled
    std::optional<MeasuredMultilevelCap> measured;
};

ReductionSummary reduction_summary(const SchedulerProfile& profile, std::uint64_t n,
                                   std::uint64_t bundle_size);

} // namespace schedlat
