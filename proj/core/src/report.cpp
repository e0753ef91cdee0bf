#include <schedlat/report.hpp>

#include <schedlat/error.hpp>
#include <schedlat/numfmt.hpp>

#include "json_util.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>

namespace schedlat {

namespace {

std::string csv_field(std::string_view s) {
    if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string cell_text(const Table::Cell& cell) {
    struct Visitor {
        std::string operator()(const std::string& s) const { return s; }
        std::string operator()(double d) const { return format_sig(d); }
        std::string operator()(std::int64_t i) const { return std::to_string(i); }
    };
    return std::visit(Visitor{}, cell);
}

detail::ordered_json cell_json(const Table::Cell& cell) {
    struct Visitor {
        detail::ordered_json operator()(const std::string& s) const { return s; }
        detail::ordered_json operator()(double d) const { return detail::num(d); }
        detail::ordered_json operator()(std::int64_t i) const { return i; }
    };
    return std::visit(Visitor{}, cell);
}

template <typename Fn>
void write_file(const std::filesystem::path& path, Fn&& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    body(out);
    out.flush();
    if (!out) {
        throw IoError("write to '" + path.string() + "' failed");
    }
}

} // namespace

std::string_view to_string(AxisSemantics axis) {
    return axis == AxisSemantics::latency_vs_n_loglog ? "latency_vs_n_loglog"
                                                      : "utilization_vs_tasktime";
}

AxisSemantics parse_axis_semantics(std::string_view text) {
    if (text == "latency_vs_n_loglog") return AxisSemantics::latency_vs_n_loglog;
    if (text == "utilization_vs_tasktime") return AxisSemantics::utilization_vs_tasktime;
    throw UnknownNameError("unknown axis semantics '" + std::string(text) + "'");
}

void CurveSeries::validate() const {
    for (std::size_t i = 1; i < points.size(); ++i) {
        const bool ok = axis == AxisSemantics::utilization_vs_tasktime
                            ? points[i].x > points[i - 1].x
                            : points[i].x >= points[i - 1].x;
        if (!ok) {
            throw ParameterError("series '" + label + "': x values out of order at point " +
                                 std::to_string(i));
        }
    }
}

std::uint64_t NRule::n_for(double t) const {
    if (kind == Kind::constant_n) return n;
    const double raw = std::round(work_per_proc / t);
    return raw < 1.0 ? 1 : static_cast<std::uint64_t>(raw);
}

UtilizationCurves utilization_curve(const SchedulerProfile& profile,
                                    std::span<const double> task_times, const NRule& rule) {
    profile.validate();
    if (task_times.empty()) {
        throw ParameterError("utilization_curve: no task times");
    }
    std::vector<double> times(task_times.begin(), task_times.end());
    for (double t : times) {
        if (!std::isfinite(t) || t <= 0.0) {
            throw ParameterError("utilization_curve: task times must be > 0");
        }
    }
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());

    UtilizationCurves curves;
    curves.exact.label = profile.name + " exact";
    curves.approx.label = profile.name + " approx";
    for (double t : times) {
        curves.exact.points.push_back({t, utilization_constant(profile, {t, rule.n_for(t)})});
        curves.approx.points.push_back({t, utilization_approx(profile, t)});
    }
    return curves;
}

LatencyScaling latency_scaling_table(std::span<const Observation> observations,
                                     const std::string& label, const FitOptions& options) {
    LatencyScaling out;
    out.fit = fit_power_law(observations, options);

    out.observed.label = label + " observed";
    out.observed.axis = AxisSemantics::latency_vs_n_loglog;
    for (const auto& obs : observations) {
        if (obs.delta_t_obs > 0.0) {
            out.observed.points.push_back({static_cast<double>(obs.n), obs.delta_t_obs});
        }
    }
    std::stable_sort(out.observed.points.begin(), out.observed.points.end(),
                     [](const CurvePoint& a, const CurvePoint& b) { return a.x < b.x; });

    out.overlay.label = label + " fit";
    out.overlay.axis = AxisSemantics::latency_vs_n_loglog;
    const auto fitted = out.fit.as_profile(label);
    for (const auto& p : out.observed.points) {
        if (!out.overlay.points.empty() && out.overlay.points.back().x == p.x) continue;
        out.overlay.points.push_back(
            {p.x, delta_t(fitted, static_cast<std::uint64_t>(p.x))});
    }
    return out;
}

std::string_view to_string(EmitFormat format) {
    switch (format) {
    case EmitFormat::csv: return "csv";
    case EmitFormat::json: return "json";
    case EmitFormat::gnuplot: return "gnuplot";
    }
    return "csv";
}

EmitFormat parse_emit_format(std::string_view text) {
    if (text == "csv") return EmitFormat::csv;
    if (text == "json") return EmitFormat::json;
    if (text == "gnuplot" || text == "gnuplot-data") return EmitFormat::gnuplot;
    throw UnknownNameError("unknown format '" + std::string(text) + "' (valid: csv, json, gnuplot)");
}

void emit(std::span<const CurveSeries> series, EmitFormat format, std::ostream& out) {
    switch (format) {
    case EmitFormat::csv:
        out << "series,axis,x,y\n";
        for (const auto& s : series) {
            for (const auto& p : s.points) {
                out << csv_field(s.label) << ',' << to_string(s.axis) << ',' << format_sig(p.x)
                    << ',' << format_sig(p.y) << '\n';
            }
        }
        break;
    case EmitFormat::json: {
        auto arr = detail::ordered_json::array();
        for (const auto& s : series) {
            auto pts = detail::ordered_json::array();
            for (const auto& p : s.points) pts.push_back({detail::num(p.x), detail::num(p.y)});
            arr.push_back({{"label", s.label}, {"axis", to_string(s.axis)}, {"points", pts}});
        }
        detail::ordered_json doc;
        doc["series"] = std::move(arr);
        out << doc.dump(2) << '\n';
        break;
    }
    case EmitFormat::gnuplot:
        for (std::size_t i = 0; i < series.size(); ++i) {
            const auto& s = series[i];
            if (i) out << "\n\n";
            out << "# series: " << s.label << " (" << to_string(s.axis) << ")\n# x y\n";
            for (const auto& p : s.points) {
                out << format_sig(p.x) << ' ' << format_sig(p.y) << '\n';
            }
        }
        break;
    }
}

void emit(std::span<const CurveSeries> series, EmitFormat format,
          const std::filesystem::path& path) {
    write_file(path, [&](std::ostream& out) { emit(series, format, out); });
}

std::vector<CurveSeries> parse_series_json(std::string_view text) {
    std::vector<CurveSeries> out;
    try {
        const auto doc = detail::ordered_json::parse(text);
        for (const auto& s : doc.at("series")) {
            CurveSeries series;
            series.label = s.at("label").get<std::string>();
            series.axis = parse_axis_semantics(s.at("axis").get<std::string>());
            for (const auto& p : s.at("points")) {
                series.points.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
            }
            out.push_back(std::move(series));
        }
    } catch (const detail::ordered_json::exception& e) {
        throw ParseError(std::string("series json: ") + e.what(), 0);
    }
    return out;
}

void emit(const Table& table, EmitFormat format, std::ostream& out) {
    switch (format) {
    case EmitFormat::csv:
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            out << (c ? "," : "") << csv_field(table.columns[c]);
        }
        out << '\n';
        for (const auto& row : table.rows) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                out << (c ? "," : "") << csv_field(cell_text(row[c]));
            }
            out << '\n';
        }
        break;
    case EmitFormat::json: {
        auto arr = detail::ordered_json::array();
        for (const auto& row : table.rows) {
            detail::ordered_json obj = detail::ordered_json::object();
            for (std::size_t c = 0; c < row.size() && c < table.columns.size(); ++c) {
                obj[table.columns[c]] = cell_json(row[c]);
            }
            arr.push_back(std::move(obj));
        }
        out << arr.dump(2) << '\n';
        break;
    }
    case EmitFormat::gnuplot:
        out << '#';
        for (const auto& col : table.columns) out << ' ' << col;
        out << '\n';
        for (const auto& row : table.rows) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                auto text = cell_text(row[c]);
                if (std::holds_alternative<std::string>(row[c])) {
                    text = "\"" + text + "\"";
                }
                out << (c ? " " : "") << text;
            }
            out << '\n';
        }
        break;
    }
}

void emit(const Table& table, EmitFormat format, const std::filesystem::path& path) {
    write_file(path, [&](std::ostream& out) { emit(table, format, out); });
}

Table to_table(std::span<const BundleComparisonRow> rows) {
    Table t;
    t.columns = {"bundle_size", "launches_per_proc", "delta_t_s", "utilization_makespan",
                 "utilization_paper"};
    for (const auto& r : rows) {
        t.rows.push_back({static_cast<std::int64_t>(r.bundle_size),
                          static_cast<std::int64_t>(r.launches_per_proc), r.delta_t,
                          r.utilization_makespan, r.utilization_paper});
    }
    return t;
}

} // namespace schedlat
