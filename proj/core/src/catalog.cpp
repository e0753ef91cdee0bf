#include <schedlat/catalog.hpp>

#include <schedlat/embedded_data.hpp>
#include <schedlat/error.hpp>

#include "json_util.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <sstream>

namespace schedlat {

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

SchedulerFamily parse_family(std::string_view text, const std::string& record) {
    if (text == "traditional-HPC") return SchedulerFamily::traditional_hpc;
    if (text == "new-HPC") return SchedulerFamily::new_hpc;
    if (text == "commercial-big-data") return SchedulerFamily::commercial_big_data;
    if (text == "open-source-big-data") return SchedulerFamily::open_source_big_data;
    if (text == "research") return SchedulerFamily::research;
    throw ParseError("record '" + record + "': unknown family '" + std::string(text) + "'", 0);
}

FeatureKind parse_kind(std::string_view text, const std::string& where) {
    if (text == "yes") return FeatureKind::yes;
    if (text == "no") return FeatureKind::no;
    if (text == "unknown") return FeatureKind::unknown;
    if (text == "text") return FeatureKind::text;
    throw ParseError(where + ": unknown value kind '" + std::string(text) + "'", 0);
}

FeatureValue parse_value(const detail::ordered_json& cell, const std::string& where) {
    FeatureValue v;
    if (cell.is_string()) {
        v.kind = parse_kind(cell.get<std::string>(), where);
        if (v.kind == FeatureKind::text) {
            throw ParseError(where + ": text values need an object with a 'text' field", 0);
        }
        return v;
    }
    if (!cell.is_object() || !cell.contains("kind") || !cell["kind"].is_string()) {
        throw ParseError(where + ": value must be a kind string or an object with 'kind'", 0);
    }
    v.kind = parse_kind(cell["kind"].get<std::string>(), where);
    if (v.kind == FeatureKind::text) {
        if (!cell.contains("text") || !cell["text"].is_string()) {
            throw ParseError(where + ": text value without 'text'", 0);
        }
        v.text = cell["text"].get<std::string>();
    }
    if (cell.contains("note")) {
        if (!cell["note"].is_string()) throw ParseError(where + ": 'note' must be a string", 0);
        v.note = cell["note"].get<std::string>();
    }
    return v;
}

} // namespace

std::string_view to_string(SchedulerFamily family) {
    switch (family) {
    case SchedulerFamily::traditional_hpc: return "traditional-HPC";
    case SchedulerFamily::new_hpc: return "new-HPC";
    case SchedulerFamily::commercial_big_data: return "commercial-big-data";
    case SchedulerFamily::open_source_big_data: return "open-source-big-data";
    case SchedulerFamily::research: return "research";
    }
    return "research";
}

std::string FeatureValue::display() const {
    std::string s;
    switch (kind) {
    case FeatureKind::yes: s = "yes"; break;
    case FeatureKind::no: s = "no"; break;
    case FeatureKind::unknown: s = "unknown"; break;
    case FeatureKind::text: s = text; break;
    }
    if (!note.empty()) s += " [" + note + "]";
    return s;
}

Catalog::Catalog(std::vector<FeatureTable> tables, std::vector<SchedulerRecord> records)
    : tables_(std::move(tables))
    , records_(std::move(records)) {
    for (const auto& table : tables_) {
        for (const auto& f : table.features) features_.push_back(f);
    }
}

std::size_t Catalog::feature_index(std::string_view key) const {
    for (std::size_t i = 0; i < features_.size(); ++i) {
        if (features_[i].key == key) return i;
    }
    std::string valid;
    for (const auto& f : features_) valid += (valid.empty() ? "" : ", ") + f.key;
    throw UnknownNameError("unknown feature key '" + std::string(key) + "' (valid: " + valid + ")");
}

const SchedulerRecord& Catalog::record(std::string_view name) const {
    const auto wanted = lower(name);
    for (const auto& r : records_) {
        if (lower(r.name) == wanted) return r;
    }
    std::string valid;
    for (const auto& r : records_) valid += (valid.empty() ? "" : ", ") + r.name;
    throw UnknownNameError("unknown scheduler '" + std::string(name) + "' (valid: " + valid + ")");
}

const FeatureValue& Catalog::value(std::string_view name, std::string_view key) const {
    const auto idx = feature_index(key);
    return record(name).values[idx];
}

Catalog parse_catalog(std::string_view json_text) {
    detail::ordered_json doc;
    try {
        doc = detail::ordered_json::parse(json_text);
    } catch (const detail::ordered_json::parse_error& e) {
        throw ParseError(std::string("catalog: ") + e.what(), 0);
    }
    if (!doc.is_object() || !doc.contains("tables") || !doc.contains("records") ||
        !doc["tables"].is_array() || !doc["records"].is_array()) {
        throw ParseError("catalog: top level needs 'tables' and 'records' arrays", 0);
    }

    std::vector<FeatureTable> tables;
    std::vector<std::string> keys;
    for (const auto& t : doc["tables"]) {
        FeatureTable table;
        table.id = t.value("id", "");
        table.title = t.value("title", "");
        if (table.id.empty() || !t.contains("features") || !t["features"].is_array()) {
            throw ParseError("catalog: every table needs an 'id' and a 'features' array", 0);
        }
        for (const auto& f : t["features"]) {
            FeatureInfo info{f.value("key", ""), f.value("label", ""), table.id};
            if (info.key.empty()) {
                throw ParseError("catalog: table '" + table.id + "' has a feature without 'key'", 0);
            }
            if (std::find(keys.begin(), keys.end(), info.key) != keys.end()) {
                throw ParseError("catalog: duplicate feature key '" + info.key + "'", 0);
            }
            keys.push_back(info.key);
            table.features.push_back(std::move(info));
        }
        tables.push_back(std::move(table));
    }

    std::vector<SchedulerRecord> records;
    for (const auto& r : doc["records"]) {
        SchedulerRecord rec;
        rec.name = r.value("name", "");
        if (rec.name.empty()) throw ParseError("catalog: record without 'name'", 0);
        rec.family = parse_family(r.value("family", ""), rec.name);
        if (!r.contains("features") || !r["features"].is_object()) {
            throw ParseError("record '" + rec.name + "': missing 'features' object", 0);
        }
        const auto& features = r["features"];
        for (const auto& [key, _] : features.items()) {
            if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
                throw ParseError("record '" + rec.name + "', key '" + key + "': not a catalog feature", 0);
            }
        }
        for (const auto& key : keys) {
            const std::string where = "record '" + rec.name + "', key '" + key + "'";
            if (!features.contains(key)) {
                throw ParseError(where + ": missing (use \"unknown\" for absent data)", 0);
            }
            rec.values.push_back(parse_value(features[key], where));
        }
        records.push_back(std::move(rec));
    }
    return Catalog(std::move(tables), std::move(records));
}

Catalog load_catalog(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_catalog(buf.str());
}

const Catalog& default_catalog() {
    static const Catalog catalog = parse_catalog(embedded::catalog_json());
    return catalog;
}

std::vector<QueryRow> query(const Catalog& catalog, std::string_view feature_key) {
    const auto idx = catalog.feature_index(feature_key);
    std::vector<QueryRow> rows;
    for (const auto& r : catalog.records()) rows.push_back({r.name, r.values[idx]});
    return rows;
}

ComparisonTable compare(const Catalog& catalog, std::span<const std::string> names) {
    std::vector<const SchedulerRecord*> picked;
    for (const auto& name : names) {
        const auto* rec = &catalog.record(name);
        if (std::find(picked.begin(), picked.end(), rec) == picked.end()) picked.push_back(rec);
    }
    // records() is contiguous, so address order is catalog order.
    std::sort(picked.begin(), picked.end(), std::less<const SchedulerRecord*>{});

    ComparisonTable table;
    for (const auto* rec : picked) table.names.push_back(rec->name);
    const auto features = catalog.features();
    for (std::size_t i = 0; i < features.size(); ++i) {
        ComparisonTable::Row row{features[i].key, features[i].label, {}};
        for (const auto* rec : picked) row.values.push_back(rec->values[i]);
        table.rows.push_back(std::move(row));
    }
    return table;
}

} // namespace schedlat
