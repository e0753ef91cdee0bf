#pragma once

#include <schedlat/model.hpp>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace schedlat {

struct TaskSpec {
    std::uint64_t task_id = 0;
    double duration = 0.0; // seconds, > 0

    bool operator==(const TaskSpec&) const = default;
};

struct Workload {
    std::vector<TaskSpec> tasks;
    std::string label;

    std::size_t size() const noexcept { return tasks.size(); }
    bool empty() const noexcept { return tasks.empty(); }
    double total_work() const noexcept;

    /// Throws NoWorkError when empty, ParameterError on a non-positive duration
    /// or a repeated task id.
    void validate() const;
};

/// One column of the published benchmark parameter table. t * n == 240 s.
struct BenchmarkPreset {
    std::string_view name;
    double t = 0.0;
    std::uint64_t n = 0;
    std::uint64_t processors = 0;
    std::uint64_t total_tasks = 0;
    double job_time_per_proc = 0.0;

    ConstantTaskSpec spec() const { return {t, n}; }
};

/// rapid, fast, medium, long in that order.
std::span<const BenchmarkPreset> all_presets() noexcept;

/// Throws UnknownNameError listing the valid names.
const BenchmarkPreset& preset(std::string_view name);

/// N tasks of duration t, ids 0..N-1.
Workload constant_workload(double t, std::uint64_t total_tasks);

struct UniformDist {
    double lo = 0.0;
    double hi = 0.0;
};

struct LogNormalDist {
    double mu = 0.0;
    double sigma = 1.0;
};

struct ChoiceDist {
    std::vector<double> values;
    std::vector<double> weights; // empty means equal weights
};

using Distribution = std::variant<UniformDist, LogNormalDist, ChoiceDist>;

/// Parses "uniform:LO,HI", "lognormal:MU,SIGMA", "choice:V1,V2,...[/W1,W2,...]".
Distribution parse_distribution(std::string_view text);
std::string describe(const Distribution& dist);

/// Throws ParameterError for lo > hi, lo <= 0, sigma <= 0, empty or
/// non-positive choice values, or mismatched/invalid weights.
void validate(const Distribution& dist);

/// Seeded durations drawn with Rng (see rng.hpp). Draws are rounded to
/// kSignificantDigits so that the workload CSV round-trips exactly.
/// uniform(a, a) yields the constant a.
Workload variable_workload(const Distribution& dist, std::uint64_t total_tasks,
                           std::uint64_t seed);

/// Multiplies each duration by exp(sigma * z), z ~ N(0, 1). sigma == 0 is the identity.
Workload apply_duration_noise(const Workload& workload, double sigma, std::uint64_t seed);

// Workload CSV: header "task_id,duration_s", one LF-terminated row per task.
void write_workload_csv(const Workload& workload, std::ostream& out);
Workload read_workload_csv(std::istream& in, std::string label = {});

void save_workload(const Workload& workload, const std::filesystem::path& path);
Workload load_workload(const std::filesystem::path& path);

} // namespace schedlat
