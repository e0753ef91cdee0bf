#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace schedlat::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitFitInfeasible = 3;

/// Runs one command line. args excludes the program name. seed_env is the
/// value of SCHEDLAT_SEED, used when --seed is absent.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const std::optional<std::string>& seed_env = std::nullopt);

} // namespace schedlat::cli
