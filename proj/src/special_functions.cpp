#include "ncf/special_functions.hpp"

#include <cmath>
#include <stdexcept>

namespace ncf {

namespace {

constexpr double kShiftThreshold = 64.0;

void require_positive(double y) {
    if (!(y > 0.0)) throw std::domain_error("tail sum argument must be positive");
}

}  // namespace

double digamma(double y) {
    require_positive(y);
    double acc = 0.0;
    while (y < kShiftThreshold) {
        acc -= 1.0 / y;
        y += 1.0;
    }
    // psi(y) ~ ln y - 1/(2y) - 1/(12y^2) + 1/(120y^4) - 1/(252y^6) + 1/(240y^8),
    // remainder below 1/(132 y^10).
    const double w = 1.0 / (y * y);
    double s = std::log(y) - 0.5 / y;
    s -= w * (1.0 / 12.0 - w * (1.0 / 120.0 - w * (1.0 / 252.0 - w / 240.0)));
    return acc + s;
}

double tail_sum_square(double y) {
    require_positive(y);
    double acc = 0.0;
    while (y < kShiftThreshold) {
        acc += 1.0 / (y * y);
        y += 1.0;
    }
    // psi'(y) ~ 1/y + 1/(2y^2) + 1/(6y^3) - 1/(30y^5) + 1/(42y^7),
    // remainder below 1/(30 y^9).
    const double w = 1.0 / (y * y);
    double s = 1.0 / y + 0.5 * w;
    s += (1.0 / y) * w * (1.0 / 6.0 - w * (1.0 / 30.0 - w / 42.0));
    return acc + s;
}

double tail_sum_cube(double y) {
    require_positive(y);
    double acc = 0.0;
    while (y < kShiftThreshold) {
        acc += 1.0 / (y * y * y);
        y += 1.0;
    }
    // S_3(y) ~ 1/(2y^2) + 1/(2y^3) + 1/(4y^4) - 1/(12y^6) + 1/(12y^8),
    // remainder below (3/20) y^-10.
    const double w = 1.0 / (y * y);
    double s = 0.5 * w + 0.5 * w / y + 0.25 * w * w;
    s -= w * w * w * (1.0 / 12.0 - w / 12.0);
    return acc + s;
}

double tail_sum_quartic(double y) {
    require_positive(y);
    double acc = 0.0;
    while (y < kShiftThreshold) {
        const double w = 1.0 / (y * y);
        acc += w * w;
        y += 1.0;
    }
    // S_4(y) ~ 1/(3y^3) + 1/(2y^4) + 1/(3y^5) - 1/(6y^7),
    // remainder below (1/2) y^-9.
    const double w = 1.0 / (y * y);
    const double v = 1.0 / y;
    double s = w * v * (1.0 / 3.0 + 0.5 * v + w / 3.0);
    s -= w * w * w * v * (1.0 / 6.0);
    return acc + s;
}

}  // namespace ncf
