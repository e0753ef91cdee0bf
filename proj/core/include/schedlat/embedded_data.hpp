#pragma once

#include <string_view>

namespace schedlat::embedded {

/// Default scheduler feature catalog (core/data/catalog.json).
std::string_view catalog_json() noexcept;

/// Measured benchmark runtimes, observation CSV schema (core/data/measured_runs.csv).
std::string_view measured_runs_csv() noexcept;

} // namespace schedlat::embedded
