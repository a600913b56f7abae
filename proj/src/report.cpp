#include "deltasums/report.hpp"

#include <fmt/format.h>

#include <cmath>
#include <ostream>

namespace deltasums {

std::string format_double(double v) {
    if (v == 0.0) return "0";  // also folds -0
    return fmt::format("{:.15g}", v);
}

std::string config_digest(std::string_view text) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return fmt::format("{:016x}", h);
}

std::string report_line(const CheckReport& r) {
    return fmt::format("{},{},{},{},{},{}", r.name, config_digest(r.config), format_double(r.lhs_abs),
                       format_double(r.residual), format_double(r.tolerance), r.pass ? "pass" : "fail");
}

void write_report(std::ostream& out, const std::vector<CheckReport>& reports) {
    out << kReportHeader << '\n';
    for (const auto& r : reports) out << report_line(r) << '\n';
}

CheckReport make_check(std::string name, std::string config, double lhs_abs, double residual, double tolerance) {
    CheckReport r;
    r.name = std::move(name);
    r.config = std::move(config);
    r.lhs_abs = lhs_abs;
    r.residual = residual;
    r.tolerance = tolerance;
    r.pass = residual < tolerance;
    return r;
}

}  // namespace deltasums
