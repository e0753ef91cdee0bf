#include <schedlat/numfmt.hpp>

#include <cstdio>
#include <cstdlib>

namespace schedlat {

std::string format_sig(double value) {
    char buf[32];
    const int len = std::snprintf(buf, sizeof buf, "%.*g", kSignificantDigits, value);
    return std::string(buf, static_cast<std::size_t>(len));
}

double round_sig(double value) {
    return std::strtod(format_sig(value).c_str(), nullptr);
}

} // namespace schedlat
