#pragma once
/**
 * @file maxdist.hpp
 * @brief Distribution of the running maximum of drifted Brownian motion.
 *
 * For x(t) with dx = mu dt + v dW, x(0) = 0, the density of paths that have
 * not crossed a barrier at h > 0 is the method-of-images solution
 *
 *     P(x,t,h) = P0(x,t) - e^{2 mu h / v^2} P0(x - 2h, t),
 *
 * where P0 is the free Gaussian kernel. Integrating it over x <= h gives the
 * CDF of the running maximum on [0,T],
 *
 *     F(h) = 1/2 [ 1 + erf((h - mu T)/sqrt(2 v^2 T))
 *                    - e^{2 mu h / v^2} erfc((h + mu T)/sqrt(2 v^2 T)) ],
 *
 * and d/dh F gives the density. The image term is evaluated through its
 * exactly-cancelled exponent, never as the raw product.
 */

#include "hwm/types.hpp"

namespace hwm {

/// Constants of the image ansatz P0(x,t) - A*P0(x - x0, t) at barrier h.
struct BarrierSolution {
    double image_coefficient_A = 0.0;  ///< e^{2 mu h / v^2}
    double image_shift_x0 = 0.0;       ///< 2h
    double barrier_h = 0.0;

    static BarrierSolution for_barrier(double h, const MaxDistParams& p);
};

/// Free Gaussian kernel: density of x(t), mean mu*t, variance v^2*t.
/// Requires t > 0.
double free_density(double x, double t, const MaxDistParams& p);

/// Density at x of paths that have stayed below h up to time t.
/// Requires t > 0, h > 0, x <= h; exactly 0 at x = h.
double barrier_density(double x, double h, double t, const MaxDistParams& p);

/// P(max_{[0,T]} x <= h). Returns 0 for h <= 0; horizon is p.horizon_T.
double max_cdf(double h, const MaxDistParams& p);

/// Density of the running maximum on [0, horizon_T]; 0 for h < 0.
///
/// Implemented as the symbolic derivative of max_cdf:
///     2 * P0(h,T) - (mu/v^2) e^{2 mu h/v^2} erfc((h + mu T)/sqrt(2 v^2 T)),
/// which also equals the printed form of the distribution.
double max_pdf(double h, const MaxDistParams& p);

}  // namespace hwm
