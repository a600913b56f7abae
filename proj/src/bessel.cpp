#include "deltasums/bessel.hpp"

#include <fmt/format.h>

#include <boost/math/special_functions/bessel.hpp>

#include "deltasums/error.hpp"

namespace deltasums {

std::string_view to_string(BesselKind kind) {
    switch (kind) {
        case BesselKind::J: return "J";
        case BesselKind::Y: return "Y";
        case BesselKind::K: return "K";
    }
    return "?";
}

double bessel_j(int order, double x) {
    if (order < 0) throw InvalidArgument(fmt::format("bessel_j: negative order {}", order));
    if (x < 0.0) return (order % 2 == 0 ? 1.0 : -1.0) * boost::math::cyl_bessel_j(order, -x);
    return boost::math::cyl_bessel_j(order, x);
}

double bessel_y0(double x) {
    if (!(x > 0.0)) throw DomainError(fmt::format("bessel_y0: argument {} <= 0", x));
    return boost::math::cyl_neumann(0, x);
}

double bessel_k0(double x) {
    if (!(x > 0.0)) throw DomainError(fmt::format("bessel_k0: argument {} <= 0", x));
    return boost::math::cyl_bessel_k(0, x);
}

double bessel_eval(const BesselKernel& kernel, double x) {
    switch (kernel.kind) {
        case BesselKind::J: return bessel_j(kernel.order, x);
        case BesselKind::Y:
            if (kernel.order != 0) throw InvalidArgument("bessel_eval: only Y_0 is supported");
            return bessel_y0(x);
        case BesselKind::K:
            if (kernel.order != 0) throw InvalidArgument("bessel_eval: only K_0 is supported");
            return bessel_k0(x);
    }
    throw InvalidArgument("bessel_eval: unknown kernel kind");
}

}  // namespace deltasums
