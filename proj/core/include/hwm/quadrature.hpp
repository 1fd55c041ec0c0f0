#pragma once
/**
 * @file quadrature.hpp
 * @brief Independent pricing route: adaptive integration of the payoff
 *        against the running-maximum density. Arbiter for the closed form.
 */

#include <functional>

#include "hwm/types.hpp"

namespace hwm {

/// Tolerances and limits for the adaptive integrator.
struct QuadratureSpec {
    double rel_tol = 1e-10;        ///< >= 1e-12
    double abs_tol = 1e-12;
    int max_subdivisions = 2000;
    double upper_cutoff_h = 0.0;   ///< 0 = auto from the density tail bound
};

/// Result of one adaptive integration.
struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int subdivisions = 0;
};

/// Adaptive Gauss-Kronrod 7/15 on [a, b]; bisects the worst interval until
/// sum of error estimates <= max(abs_tol, rel_tol*|value|).
/// Throws NonConvergence when max_subdivisions is exhausted.
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a,
                              double b, const QuadratureSpec& q);

/// E[(S e^H - X)^+] where H is the running max with distribution p.
/// Lower limit is max(0, ln(X/S)); the upper cutoff comes from the Gaussian
/// envelope of e^h * max_pdf(h) (see expected_excess_cutoff).
double expected_excess(double S, double X, const MaxDistParams& p,
                       const QuadratureSpec& q);

/// Cutoff H* with truncated tail mass < abs_tol/10: the integrand's envelope
/// is a Gaussian centered at (mu + v^2) T with width v sqrt(T); 20 widths out
/// the tail is ~erfc(14) ~ 1e-88 of the mass scale.
double expected_excess_cutoff(double lower, const MaxDistParams& p,
                              const QuadratureSpec& q);

/// Observation-grid handling for the oracle.
enum class Monitoring { Continuous, Discrete };

/// Contract value by direct integration:
///   notional * e^{(gamma-r)T} [ X + e^{-eps} * E[(S e^H - Xe^{eps})^+] ]
/// with eps = v sqrt(2 dt / pi) when mode is Discrete, 0 when Continuous.
/// Regular at r = y + gamma (no closed-form denominator).
PriceResult oracle_price(const ContractState& state, const MarketParams& market,
                         const ContractTerms& terms, const QuadratureSpec& q,
                         Monitoring mode = Monitoring::Discrete);

}  // namespace hwm
