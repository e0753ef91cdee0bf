#pragma once

#include <string>

namespace schedlat {

/// Number of significant digits used in every numeric text output.
inline constexpr int kSignificantDigits = 9;

/// printf("%.9g").
std::string format_sig(double value);

/// The double nearest to format_sig(value). Idempotent.
double round_sig(double value);

} // namespace schedlat
