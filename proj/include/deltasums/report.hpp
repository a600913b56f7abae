#pragma once

// Check reports and the fixed-precision text formats used in CSV output.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace deltasums {

// 15 significant digits, '.' separator, no locale.
std::string format_double(double v);

// 64-bit FNV-1a of the text, as 16 hex digits.
std::string config_digest(std::string_view text);

struct CheckReport {
    std::string name;
    std::string config;  // canonical key=value;... description
    double lhs_abs = 0.0;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    // Additional diagnostics, not part of the report line.
    std::vector<std::pair<std::string, double>> details;
};

// check_name,config_digest,lhs_abs,residual,tolerance,pass
std::string report_line(const CheckReport& report);
inline constexpr std::string_view kReportHeader = "check_name,config_digest,lhs_abs,residual,tolerance,pass";

void write_report(std::ostream& out, const std::vector<CheckReport>& reports);

// Builds a report with pass = residual < tolerance (NaN fails).
CheckReport make_check(std::string name, std::string config, double lhs_abs, double residual, double tolerance);

}  // namespace deltasums
