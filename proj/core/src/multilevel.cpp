#include <schedlat/multilevel.hpp>

#include <schedlat/error.hpp>
#include <schedlat/numfmt.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <ostream>

namespace schedlat {

namespace {

constexpr std::array<MeasuredMultilevelCap, 3> kMeasuredCaps{{
    {"slurm", 30.0, 100.0},
    {"grid-engine", 40.0, 40.0},
    {"mesos", 100.0, 20.0},
}};

double bundle_duration(std::span<const double> members, double per_task_overhead) {
    double d = 0.0;
    for (double m : members) d += m;
    return d + per_task_overhead * static_cast<double>(members.size());
}

} // namespace

std::string_view to_string(BundleMode mode) {
    return mode == BundleMode::siso ? "siso" : "mimo";
}

BundleMode parse_bundle_mode(std::string_view text) {
    if (text == "siso") return BundleMode::siso;
    if (text == "mimo") return BundleMode::mimo;
    throw UnknownNameError("unknown bundle mode '" + std::string(text) + "' (valid: siso, mimo)");
}

void BundlePolicy::validate() const {
    if (bundle_size < 1) {
        throw ParameterError("bundle size must be >= 1");
    }
    if (!std::isfinite(per_task_overhead) || per_task_overhead < 0.0) {
        throw ParameterError("per-task overhead must be >= 0");
    }
}

std::uint64_t BundlePolicy::effective_size() const noexcept {
    return mode == BundleMode::siso ? 1 : bundle_size;
}

Workload bundle(const Workload& workload, const BundlePolicy& policy) {
    policy.validate();
    const std::size_t b = policy.effective_size();
    Workload out;
    out.label = workload.label.empty() ? "bundled" : workload.label + "+bundled";
    out.tasks.reserve((workload.tasks.size() + b - 1) / b);
    std::vector<double> members;
    members.reserve(b);
    for (std::size_t start = 0; start < workload.tasks.size(); start += b) {
        const std::size_t end = std::min(start + b, workload.tasks.size());
        members.clear();
        for (std::size_t i = start; i < end; ++i) members.push_back(workload.tasks[i].duration);
        out.tasks.push_back({out.tasks.size(), bundle_duration(members, policy.per_task_overhead)});
    }
    return out;
}

Workload bundled_constant_workload(const ConstantTaskSpec& spec, const ClusterSpec& cluster,
                                   const BundlePolicy& policy) {
    spec.validate();
    cluster.validate();
    policy.validate();
    const std::uint64_t b = policy.effective_size();

    // One processor's share, bundled.
    std::vector<double> share_bundles;
    std::vector<double> members;
    for (std::uint64_t start = 0; start < spec.n; start += b) {
        members.assign(std::min(b, spec.n - start), spec.t);
        share_bundles.push_back(bundle_duration(members, policy.per_task_overhead));
    }

    const std::uint64_t procs = cluster.processors;
    Workload w;
    w.label = "constant+bundled";
    w.tasks.resize(share_bundles.size() * procs);
    for (std::size_t j = 0; j < share_bundles.size(); ++j) {
        for (std::uint64_t p = 0; p < procs; ++p) {
            const std::uint64_t id = j * procs + p;
            w.tasks[id] = {id, share_bundles[j]};
        }
    }
    return w;
}

std::vector<BundleComparisonRow> compare(const SchedulerProfile& profile,
                                         const ConstantTaskSpec& spec,
                                         const ClusterSpec& cluster,
                                         std::span<const std::uint64_t> bundle_sizes,
                                         const BundlePolicy& base_policy) {
    std::vector<BundleComparisonRow> rows;
    rows.reserve(bundle_sizes.size());
    for (auto b : bundle_sizes) {
        BundlePolicy policy = base_policy;
        policy.bundle_size = b;
        const auto workload = bundled_constant_workload(spec, cluster, policy);
        const auto sim = simulate(workload, cluster, profile, SimOptions{});

        BundleComparisonRow row;
        row.bundle_size = b;
        for (const auto& tr : sim.traces) {
            row.launches_per_proc = std::max<std::uint64_t>(row.launches_per_proc, tr.n_p);
        }
        row.delta_t = delta_t(profile, row.launches_per_proc);
        row.T_total = sim.T_total;
        row.utilization_makespan = sim.utilization_makespan;
        row.utilization_paper = sim.utilization_paper;
        rows.push_back(row);
    }
    return rows;
}

void write_compare_csv(std::span<const BundleComparisonRow> rows, std::ostream& out) {
    out << "bundle_size,launches_per_proc,delta_t_s,utilization_makespan,utilization_paper\n";
    for (const auto& r : rows) {
        out << r.bundle_size << ',' << r.launches_per_proc << ',' << format_sig(r.delta_t) << ','
            << format_sig(r.utilization_makespan) << ',' << format_sig(r.utilization_paper) << '\n';
    }
}

std::span<const MeasuredMultilevelCap> measured_multilevel_caps() noexcept {
    return kMeasuredCaps;
}

std::optional<MeasuredMultilevelCap> measured_multilevel_cap(std::string_view scheduler) {
    for (const auto& cap : kMeasuredCaps) {
        if (cap.scheduler == scheduler) return cap;
    }
    return std::nullopt;
}

ReductionSummary reduction_summary(const SchedulerProfile& profile, std::uint64_t n,
                                   std::uint64_t bundle_size) {
    if (bundle_size < 1 || n < 1) {
        throw ParameterError("reduction_summary: n and bundle size must be >= 1");
    }
    ReductionSummary s;
    s.n = n;
    s.bundle_size = bundle_size;
    s.delta_t_unbundled = delta_t(profile, n);
    s.delta_t_bundled = delta_t(profile, (n + bundle_size - 1) / bundle_size);
    s.model_reduction = s.delta_t_bundled > 0.0 ? s.delta_t_unbundled / s.delta_t_bundled : 1.0;
    s.measured = measured_multilevel_cap(profile.name);
    return s;
}

} // namespace schedlat
