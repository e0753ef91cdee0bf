#pragma once

// Analysis artifacts: utilization-vs-task-time curves, latency-vs-n scaling
// tables with a fitted overlay, and deterministic CSV/JSON/gnuplot emitters.

#include <schedlat/estimator.hpp>
#include <schedlat/model.hpp>
#include <schedlat/multilevel.hpp>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace schedlat {

enum class AxisSemantics { latency_vs_n_loglog, utilization_vs_tasktime };

std::string_view to_string(AxisSemantics axis);
AxisSemantics parse_axis_semantics(std::string_view text);

struct CurvePoint {
    double x = 0.0;
    double y = 0.0;

    bool operator==(const CurvePoint&) const = default;
};

struct CurveSeries {
    std::string label;
    std::vector<CurvePoint> points;
    AxisSemantics axis = AxisSemantics::utilization_vs_tasktime;

    bool operator==(const CurveSeries&) const = default;

    /// Utilization curves need strictly increasing x. Latency scatter series
    /// hold several trials per n, so x only has to be non-decreasing there.
    void validate() const;
};

/// Maps a task time to tasks per processor.
struct NRule {
    enum class Kind { fixed_work, constant_n };

    Kind kind = Kind::fixed_work;
    double work_per_proc = 240.0; // fixed_work: n = max(1, round(work / t))
    std::uint64_t n = 1;          // constant_n

    std::uint64_t n_for(double t) const;

    static NRule fixed_work(double work = 240.0) { return {Kind::fixed_work, work, 1}; }
    static NRule constant(std::uint64_t n) { return {Kind::constant_n, 0.0, n}; }
};

struct UtilizationCurves {
    CurveSeries exact;  // U_c with n from the rule
    CurveSeries approx; // t / (t + t_s)
};

/// Task times are sorted and deduplicated. Throws ParameterError on a
/// non-positive task time or an empty list.
UtilizationCurves utilization_curve(const SchedulerProfile& profile,
                                    std::span<const double> task_times,
                                    const NRule& rule = NRule::fixed_work());

struct LatencyScaling {
    CurveSeries observed; // (n, dT) for every positive observation, sorted by n
    CurveSeries overlay;  // fitted t_s n^alpha at each distinct observed n
    FitResult fit;
};

/// Propagates FitInfeasibleError from fit_power_law.
LatencyScaling latency_scaling_table(std::span<const Observation> observations,
                                     const std::string& label, const FitOptions& options = {});

enum class EmitFormat { csv, json, gnuplot };

std::string_view to_string(EmitFormat format);
EmitFormat parse_emit_format(std::string_view text);

// Series output:
//   csv      header "series,axis,x,y", one row per point
//   json     {"series":[{"label":..,"axis":..,"points":[[x,y],..]}]}
//   gnuplot  "# series: LABEL (AXIS)" and "# x y" per block, blocks separated by two blank lines
// Numbers carry kSignificantDigits significant digits throughout.
void emit(std::span<const CurveSeries> series, EmitFormat format, std::ostream& out);
void emit(std::span<const CurveSeries> series, EmitFormat format,
          const std::filesystem::path& path);

/// Inverse of the json series format.
std::vector<CurveSeries> parse_series_json(std::string_view text);

/// A rectangular result table with typed cells.
struct Table {
    using Cell = std::variant<std::string, double, std::int64_t>;

    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

// Table output:
//   csv      header row then data rows
//   json     array of objects keyed by column name
//   gnuplot  "# col1 col2 ..." then whitespace-separated rows
void emit(const Table& table, EmitFormat format, std::ostream& out);
void emit(const Table& table, EmitFormat format, const std::filesystem::path& path);

Table to_table(std::span<const BundleComparisonRow> rows);

} // namespace schedlat
