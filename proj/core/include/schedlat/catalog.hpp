#pragma once

// Static scheduler feature catalog: eight representative schedulers scored
// across seven feature tables. Data only; nothing here schedules anything.

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace schedlat {

enum class SchedulerFamily {
    traditional_hpc,
    new_hpc,
    commercial_big_data,
    open_source_big_data,
    research,
};

std::string_view to_string(SchedulerFamily family);

/// "-" and "?" cells are unknown, which is distinct from no.
enum class FeatureKind { yes, no, unknown, text };

struct FeatureValue {
    FeatureKind kind = FeatureKind::unknown;
    std::string text; // kind == text
    std::string note; // footnote, may be empty

    /// "yes", "no", "unknown" or the text; a footnote is appended as " [note]".
    std::string display() const;

    bool operator==(const FeatureValue&) const = default;
};

struct FeatureInfo {
    std::string key;
    std::string label;
    std::string table_id;
};

struct FeatureTable {
    std::string id;
    std::string title;
    std::vector<FeatureInfo> features;
};

struct SchedulerRecord {
    std::string name;
    SchedulerFamily family = SchedulerFamily::research;
    std::vector<FeatureValue> values; // parallel to Catalog::features()
};

class Catalog {
public:
    Catalog(std::vector<FeatureTable> tables, std::vector<SchedulerRecord> records);

    std::span<const FeatureTable> tables() const noexcept { return tables_; }
    std::span<const FeatureInfo> features() const noexcept { return features_; }
    std::span<const SchedulerRecord> records() const noexcept { return records_; }

    /// Throws UnknownNameError listing the valid keys.
    std::size_t feature_index(std::string_view key) const;
    /// Case-insensitive. Throws UnknownNameError listing the valid names.
    const SchedulerRecord& record(std::string_view name) const;
    const FeatureValue& value(std::string_view name, std::string_view key) const;

private:
    std::vector<FeatureTable> tables_;
    std::vector<FeatureInfo> features_;
    std::vector<SchedulerRecord> records_;
};

/// Throws ParseError naming the record and key on a schema violation.
Catalog parse_catalog(std::string_view json_text);
Catalog load_catalog(const std::filesystem::path& path);
/// The catalog compiled into the library.
const Catalog& default_catalog();

struct QueryRow {
    std::string name;
    FeatureValue value;
};

/// One row per record, catalog order.
std::vector<QueryRow> query(const Catalog& catalog, std::string_view feature_key);

struct ComparisonTable {
    std::vector<std::string> names;
    struct Row {
        std::string key;
        std::string label;
        std::vector<FeatureValue> values; // parallel to names
    };
    std::vector<Row> rows; // every feature, catalog order
};

/// Columns follow catalog order, not argument order.
ComparisonTable compare(const Catalog& catalog, std::span<const std::string> names);

} // namespace schedlat
