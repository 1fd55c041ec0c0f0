#pragma once
/**
 * @file analytic.hpp
 * @brief Closed-form contract values: continuous monitoring and the
 *        finite-observation-interval correction.
 *
 * Everything is driven by one internal drift, mu = r - y - gamma - v^2/2,
 * the log drift of the tilted process S~(t) = S(t) e^{-gamma t}. With
 * X the accrued high-water strike (clamped to X >= S) and
 * d = ln(X/S), the continuous-monitoring value per unit notional is
 *
 *   V = e^{gamma T} [ X e^{-rT} + 2 Call(S, X, v, r, y+gamma, T) + e^{-rT} B ]
 *
 *   B = X/2 (1 + erf((mu T - d)/sqrt(2 v^2 T)))
 *       - S/(v^2 + 2 mu) [ mu (1 + erf(((v^2+mu) T - d)/sqrt(2 v^2 T))) e^{(mu+v^2/2) T}
 *                          + v^2/2 (X/S)^{1 + 2 mu/v^2} erfc((mu T + d)/sqrt(2 v^2 T)) ],
 *
 * which matches the quadrature oracle to machine precision. Discrete
 * observation shifts the strike to X e^{eps} inside the call/bracket and
 * multiplies that part by e^{-eps}; the guaranteed floor X e^{(gamma-r)T}
 * is never shifted. The closed form divides by v^2 + 2 mu = 2(r - y - gamma),
 * hence the singular guard and the quadrature fallback.
 */

#include "hwm/quadrature.hpp"
#include "hwm/types.hpp"

namespace hwm {

/// Which continuity-correction constant multiplies v*sqrt(dt).
/// Sqrt2OverPi = sqrt(2/pi) ~ 0.7979 (expected max over a centered window);
/// BroadieGlassermanKou = -zeta(1/2)/sqrt(2 pi) ~ 0.5826 (asymptotic
/// discrete-monitoring constant), exposed for comparison.
enum class CorrectionKind { Sqrt2OverPi, BroadieGlassermanKou };

/// Log-shift approximating the value lost to discrete observation.
struct CorrectionParams {
    double epsilon = 0.0;  ///< v*sqrt(2*delta_t/pi) for the default kind
    double delta_t = 0.0;
};

/// epsilon = v*sqrt(2*delta_t/pi) (or the BGK variant). delta_t >= 0, v > 0.
CorrectionParams correction_epsilon(double v, double delta_t,
                                    CorrectionKind kind = CorrectionKind::Sqrt2OverPi);

/// Rate gamma_c with e^{gamma_c (T - t_n)} = (1 + gamma dt)^{N-n}; identity
/// mapping for Continuous compounding.
double continuous_equivalent_gamma(const ContractTerms& terms);

/// Black-Scholes call with continuous dividend yield; t = 0 (or v = 0)
/// degenerates to the discounted forward intrinsic value.
double bs_call(double S, double X, double v, double r, double y, double t);

/// Raw normalized closed form (S(0)=1, unit notional), X pre-clamped >= S.
/// eps >= 0 is the discrete-observation log shift (0 = continuous).
/// Throws SingularParameterization when |r - y - gamma| <= 1e-8.
double closed_form_value(double S, double X, const MarketParams& market,
                         double gamma, double T, double eps);

inline constexpr double kSingularTol = 1e-8;   ///< hard guard in closed_form_value
inline constexpr double kFallbackTol = 1e-4;   ///< public pricers delegate below this

/// Continuous-monitoring value. Near the singular parameterization
/// |r - y - gamma| <= 1e-4 it silently delegates to the quadrature oracle
/// and tags the result Method::Quadrature.
PriceResult continuous_price(const ContractState& state, const MarketParams& market,
                             const ContractTerms& terms);

/// Value with N = terms.n_observations observation dates, via the eps-shift.
/// Always <= continuous_price; increases with N. Simple compounding is mapped
/// exactly onto the continuous machinery via gamma_c = ln(1+gamma dt)/dt.
PriceResult discrete_price(const ContractState& state, const MarketParams& market,
                           const ContractTerms& terms,
                           CorrectionKind kind = CorrectionKind::Sqrt2OverPi);

/// Issue-date value: discrete_price at S = S_H = S0, t_h = 0.
PriceResult initial_price(const MarketParams& market, const ContractTerms& terms,
                          CorrectionKind kind = CorrectionKind::Sqrt2OverPi);

}  // namespace hwm
