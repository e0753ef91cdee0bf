#include <schedlat/workloads.hpp>

#include <schedlat/error.hpp>
#include <schedlat/numfmt.hpp>
#include <schedlat/rng.hpp>

#include "text.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_set>

namespace schedlat {

namespace {

constexpr std::uint64_t kPresetProcessors = 1408;

constexpr std::array<BenchmarkPreset, 4> kPresets{{
    {"rapid", 1.0, 240, kPresetProcessors, 240 * kPresetProcessors, 240.0},
    {"fast", 5.0, 48, kPresetProcessors, 48 * kPresetProcessors, 240.0},
    {"medium", 30.0, 8, kPresetProcessors, 8 * kPresetProcessors, 240.0},
    {"long", 60.0, 4, kPresetProcessors, 4 * kPresetProcessors, 240.0},
}};

std::vector<double> parse_number_list(std::string_view text, std::string_view what) {
    std::vector<double> out;
    for (auto item : detail::split(text, ',')) {
        auto v = detail::parse_double(item);
        if (!v) {
            throw ParameterError("invalid number '" + std::string(item) + "' in " + std::string(what));
        }
        out.push_back(*v);
    }
    return out;
}

double quantize(double d) {
    return round_sig(d);
}

} // namespace

double Workload::total_work() const noexcept {
    return std::accumulate(tasks.begin(), tasks.end(), 0.0,
                           [](double acc, const TaskSpec& t) { return acc + t.duration; });
}

void Workload::validate() const {
    if (tasks.empty()) {
        throw NoWorkError("workload '" + label + "' has no tasks");
    }
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(tasks.size());
    for (const auto& task : tasks) {
        if (!std::isfinite(task.duration) || task.duration <= 0.0) {
            throw ParameterError("task " + std::to_string(task.task_id) + ": duration must be > 0");
        }
        if (!seen.insert(task.task_id).second) {
            throw ParameterError("duplicate task id " + std::to_string(task.task_id));
        }
    }
}

std::span<const BenchmarkPreset> all_presets() noexcept {
    return kPresets;
}

const BenchmarkPreset& preset(std::string_view name) {
    for (const auto& p : kPresets) {
        if (p.name == name) return p;
    }
    throw UnknownNameError("unknown preset '" + std::string(name) +
                           "' (valid: rapid, fast, medium, long)");
}

Workload constant_workload(double t, std::uint64_t total_tasks) {
    if (!std::isfinite(t) || t <= 0.0) {
        throw ParameterError("constant_workload: task time must be > 0");
    }
    if (total_tasks == 0) {
        throw ParameterError("constant_workload: task count must be >= 1");
    }
    Workload w;
    w.label = "constant";
    w.tasks.resize(total_tasks);
    for (std::uint64_t i = 0; i < total_tasks; ++i) {
        w.tasks[i] = {i, t};
    }
    return w;
}

Distribution parse_distribution(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) {
        throw ParameterError("distribution '" + std::string(text) +
                             "' must look like uniform:LO,HI, lognormal:MU,SIGMA or choice:V1,V2[/W1,W2]");
    }
    const auto kind = detail::trim(text.substr(0, colon));
    const auto args = text.substr(colon + 1);
    Distribution dist;
    if (kind == "uniform" || kind == "lognormal") {
        auto nums = parse_number_list(args, kind);
        if (nums.size() != 2) {
            throw ParameterError(std::string(kind) + " takes exactly two parameters");
        }
        if (kind == "uniform") {
            dist = UniformDist{nums[0], nums[1]};
        } else {
            dist = LogNormalDist{nums[0], nums[1]};
        }
    } else if (kind == "choice") {
        ChoiceDist c;
        const auto slash = args.find('/');
        c.values = parse_number_list(args.substr(0, slash), "choice values");
        if (slash != std::string_view::npos) {
            c.weights = parse_number_list(args.substr(slash + 1), "choice weights");
        }
        dist = std::move(c);
    } else {
        throw ParameterError("unknown distribution '" + std::string(kind) +
                             "' (valid: uniform, lognormal, choice)");
    }
    validate(dist);
    return dist;
}

std::string describe(const Distribution& dist) {
    struct Visitor {
        std::string operator()(const UniformDist& d) const {
            return "uniform:" + format_sig(d.lo) + "," + format_sig(d.hi);
        }
        std::string operator()(const LogNormalDist& d) const {
            return "lognormal:" + format_sig(d.mu) + "," + format_sig(d.sigma);
        }
        std::string operator()(const ChoiceDist& d) const {
            std::string s = "choice:";
            for (std::size_t i = 0; i < d.values.size(); ++i) {
                s += (i ? "," : "") + format_sig(d.values[i]);
            }
            if (!d.weights.empty()) {
                s += "/";
                for (std::size_t i = 0; i < d.weights.size(); ++i) {
                    s += (i ? "," : "") + format_sig(d.weights[i]);
                }
            }
            return s;
        }
    };
    return std::visit(Visitor{}, dist);
}

void validate(const Distribution& dist) {
    struct Visitor {
        void operator()(const UniformDist& d) const {
            if (!std::isfinite(d.lo) || !std::isfinite(d.hi) || d.lo <= 0.0) {
                throw ParameterError("uniform: bounds must be finite with lo > 0");
            }
            if (d.lo > d.hi) {
                throw ParameterError("uniform: lo must not exceed hi");
            }
        }
        void operator()(const LogNormalDist& d) const {
            if (!std::isfinite(d.mu) || !std::isfinite(d.sigma) || d.sigma <= 0.0) {
                throw ParameterError("lognormal: sigma must be > 0");
            }
        }
        void operator()(const ChoiceDist& d) const {
            if (d.values.empty()) {
                throw ParameterError("choice: empty value set");
            }
            for (double v : d.values) {
                if (!std::isfinite(v) || v <= 0.0) {
                    throw ParameterError("choice: values must be > 0");
                }
            }
            if (d.weights.empty()) return;
            if (d.weights.size() != d.values.size()) {
                throw ParameterError("choice: weight count must match value count");
            }
            double total = 0.0;
            for (double w : d.weights) {
                if (!std::isfinite(w) || w < 0.0) {
                    throw ParameterError("choice: weights must be >= 0");
                }
                total += w;
            }
            if (total <= 0.0) {
                throw ParameterError("choice: weights must not all be zero");
            }
        }
    };
    std::visit(Visitor{}, dist);
}

Workload variable_workload(const Distribution& dist, std::uint64_t total_tasks,
                           std::uint64_t seed) {
    validate(dist);
    if (total_tasks == 0) {
        throw ParameterError("variable_workload: task count must be >= 1");
    }
    Rng rng(seed);
    Workload w;
    w.label = describe(dist);
    w.tasks.reserve(total_tasks);

    struct Draw {
        Rng& rng;
        std::vector<double> cumulative;

        double operator()(const UniformDist& d) {
            if (d.lo == d.hi) return d.lo;
            return rng.uniform(d.lo, d.hi);
        }
        double operator()(const LogNormalDist& d) {
            return std::exp(d.mu + d.sigma * rng.normal());
        }
        double operator()(const ChoiceDist& d) {
            // first index whose cumulative weight exceeds u * total
            const double target = rng.uniform01() * cumulative.back();
            std::size_t i = 0;
            while (i + 1 < cumulative.size() && cumulative[i] <= target) ++i;
            return d.values[i];
        }
    };

    Draw draw{rng, {}};
    if (const auto* c = std::get_if<ChoiceDist>(&dist)) {
        double acc = 0.0;
        for (std::size_t i = 0; i < c->values.size(); ++i) {
            acc += c->weights.empty() ? 1.0 : c->weights[i];
            draw.cumulative.push_back(acc);
        }
    }
    for (std::uint64_t i = 0; i < total_tasks; ++i) {
        double d = quantize(std::visit(draw, dist));
        if (d <= 0.0) {
            d = std::numeric_limits<double>::min();
        }
        w.tasks.push_back({i, d});
    }
    return w;
}

Workload apply_duration_noise(const Workload& workload, double sigma, std::uint64_t seed) {
    if (!std::isfinite(sigma) || sigma < 0.0) {
        throw ParameterError("noise sigma must be >= 0");
    }
    Workload out = workload;
    if (sigma == 0.0) return out;
    Rng rng(seed);
    for (auto& task : out.tasks) {
        task.duration = quantize(task.duration * std::exp(sigma * rng.normal()));
    }
    return out;
}

void write_workload_csv(const Workload& workload, std::ostream& out) {
    out << "task_id,duration_s\n";
    for (const auto& task : workload.tasks) {
        out << task.task_id << ',' << format_sig(task.duration) << '\n';
    }
}

Workload read_workload_csv(std::istream& in, std::string label) {
    Workload w;
    w.label = std::move(label);
    std::unordered_set<std::uint64_t> seen;
    std::string line;
    std::size_t line_no = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        const auto text = detail::trim(line);
        if (text.empty()) continue;
        if (!saw_header) {
            if (text != "task_id,duration_s") {
                throw ParseError("expected header 'task_id,duration_s'", line_no);
            }
            saw_header = true;
            continue;
        }
        const auto fields = detail::split(text, ',');
        if (fields.size() != 2) {
            throw ParseError("expected 2 fields, got " + std::to_string(fields.size()), line_no);
        }
        const auto id = detail::parse_u64(fields[0]);
        if (!id) {
            throw ParseError("invalid task_id '" + std::string(fields[0]) + "'", line_no);
        }
        const auto duration = detail::parse_double(fields[1]);
        if (!duration) {
            throw ParseError("invalid duration_s '" + std::string(fields[1]) + "'", line_no);
        }
        if (!std::isfinite(*duration) || *duration <= 0.0) {
            throw ParseError("duration_s must be > 0, got " + std::string(fields[1]), line_no);
        }
        if (!seen.insert(*id).second) {
            throw ParseError("duplicate task_id " + std::to_string(*id), line_no);
        }
        w.tasks.push_back({*id, *duration});
    }
    if (w.tasks.empty()) {
        throw NoWorkError("workload file contains no tasks");
    }
    return w;
}

void save_workload(const Workload& workload, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    write_workload_csv(workload, out);
    if (!out) {
        throw IoError("write to '" + path.string() + "' failed");
    }
}

Workload load_workload(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "'");
    }
    return read_workload_csv(in, path.stem().string());
}

} // namespace schedlat
