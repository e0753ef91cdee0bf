#pragma once

// Internal JSON helpers. nlohmann::json stays out of the public headers.

#include <schedlat/numfmt.hpp>

#include <json.hpp>

namespace schedlat::detail {

using ordered_json = nlohmann::ordered_json;

/// Rounded so that the shortest round-trip form printed by dump() has at most
/// kSignificantDigits digits.
inline ordered_json num(double v) {
    return round_sig(v);
}

} // namespace schedlat::detail
