#include "olab/spectral.hpp"

#include "olab/error.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

namespace olab {

double trace_to_length(long t) {
    if (std::labs(t) <= 2)
        throw DomainError("trace " + std::to_string(t) + " is not hyperbolic");
    return 2.0 * std::acosh(static_cast<double>(std::labs(t)) / 2.0);
}

double buser_bound(long k) {
    if (k < 1)
        throw DomainError("Buser bound needs k >= 1");
    const double a = std::acosh(17.0);
    const double pi = std::numbers::pi;
    const double kd = static_cast<double>(k);
    return (5.0 * a * a / (9.0 * kd * pi * pi) + 2.0 * a / (3.0 * pi)) / (2.0 * kd);
}

} // namespace olab
