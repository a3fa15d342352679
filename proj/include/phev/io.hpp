#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "phev/profile.hpp"

namespace phev::io {

/// Header of every profile CSV.
inline constexpr std::string_view kCsvHeader = "t_start_h,t_end_h,expected_kw,stderr_kw";

/// One row per bin; numbers carry 17 significant digits so parsing
/// restores the values bit-exactly. The stderr column is empty for
/// analytic profiles.
std::string profile_to_csv(const DemandProfile& profile);

/// Inverse of profile_to_csv (values, grid and standard errors). Throws
/// IoError on malformed input.
DemandProfile profile_from_csv(std::string_view text);

struct LabeledProfile {
    std::string label;
    const DemandProfile* profile;
};

/// Standalone SVG line chart: hours on x, kW on y, one polyline and one
/// legend entry per profile. Throws InvalidParameter for an empty list and
/// GridMismatch when grids differ.
std::string profiles_to_svg(std::span<const LabeledProfile> profiles,
                            std::string_view title = {});

void emit_svg(std::span<const LabeledProfile> profiles, const std::filesystem::path& path,
              std::string_view title = {});

/// Writes a whole file, creating parent directories. Throws IoError.
void write_text(const std::filesystem::path& path, std::string_view text);

std::string read_text(const std::filesystem::path& path);

/// Shortest-form-safe decimal with 17 significant digits.
std::string format_number(double v);

}  // namespace phev::io
