#include "hwm/maxdist.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hwm/special.hpp"

namespace hwm {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

/// e^{2 mu h / v^2} erfc((h + mu T)/sqrt(2 v^2 T)), computed through the
/// exactly-cancelled exponent 2 mu h/v^2 - z^2 = -(h - mu T)^2/(2 v^2 T)
/// when z >= 0, so the huge-times-tiny product never forms.
double image_tail(double h, const MaxDistParams& p) {
    const double T = p.horizon_T;
    const double z = (h + p.mu * T) / std::sqrt(2.0 * p.v * p.v * T);
    if (z >= 0.0) {
        const double hm = h - p.mu * T;
        return std::exp(-hm * hm / (2.0 * p.v * p.v * T)) * erfcx(z);
    }
    return std::exp(2.0 * p.mu * h / (p.v * p.v)) * std::erfc(z);
}

}  // namespace

BarrierSolution BarrierSolution::for_barrier(double h, const MaxDistParams& p) {
    require(h > 0.0, "barrier h must be positive");
    require(p.v > 0.0, "volatility must be positive");
    return {std::exp(2.0 * p.mu * h / (p.v * p.v)), 2.0 * h, h};
}

double free_density(double x, double t, const MaxDistParams& p) {
    require(t > 0.0, "free_density requires t > 0");
    require(p.v > 0.0, "volatility must be positive");
    const double var = p.v * p.v * t;
    const double u = x - p.mu * t;
    return std::exp(-u * u / (2.0 * var)) / std::sqrt(2.0 * std::numbers::pi * var);
}

double barrier_density(double x, double h, double t, const MaxDistParams& p) {
    require(t > 0.0, "barrier_density requires t > 0");
    require(h > 0.0, "barrier h must be positive");
    require(x <= h, "barrier_density requires x <= h");
    // Image ratio collapses to exp(2h(x-h)/(v^2 t)): the drift cancels, and
    // at x == h the exponent is exactly 0, so the wall condition holds to
    // the last bit.
    const double log_ratio = 2.0 * h * (x - h) / (p.v * p.v * t);
    return free_density(x, t, p) * -std::expm1(log_ratio);
}

double max_cdf(double h, const MaxDistParams& p) {
    require(p.v > 0.0 && p.horizon_T > 0.0, "invalid MaxDistParams");
    if (h <= 0.0) return 0.0;
    const double T = p.horizon_T;
    const double denom = std::sqrt(2.0 * p.v * p.v * T);
    const double c = 0.5 * (1.0 + std::erf((h - p.mu * T) / denom) - image_tail(h, p));
    return std::clamp(c, 0.0, 1.0);
}

double max_pdf(double h, const MaxDistParams& p) {
    require(p.v > 0.0 && p.horizon_T > 0.0, "invalid MaxDistParams");
    if (h < 0.0) return 0.0;
    const double d = 2.0 * free_density(h, p.horizon_T, p) -
                     p.mu / (p.v * p.v) * image_tail(h, p);
    return d > 0.0 ? d : 0.0;
}

}  // namespace hwm
