#include "hwm/analytic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hwm/special.hpp"

namespace hwm {

namespace {

// -zeta(1/2)/sqrt(2 pi), the discrete-monitoring correction constant.
constexpr double kBgkBeta = 0.5826;

// Quadrature route with the same strike clamp and eps handling as the
// closed form; used below the fallback tolerance.
PriceResult quadrature_fallback(const ContractState& state, const MarketParams& market,
                                const ContractTerms& terms, double gamma_eff, double eps) {
    const double T = terms.maturity_T;
    const double s = state.spot_S / state.issue_spot_S0;
    const double x_eff =
        std::max(state.effective_strike(terms.gamma) / state.issue_spot_S0, s);
    const MaxDistParams p = MaxDistParams::from_market(market, gamma_eff, T);
    QuadratureSpec q;
    const double excess = expected_excess(s, x_eff * std::exp(eps), p, q);
    PriceResult res;
    res.value = terms.notional * std::exp((gamma_eff - market.r) * T) *
                (x_eff + std::exp(-eps) * excess);
    res.method = Method::Quadrature;
    res.epsilon_used = eps;
    return res;
}

}  // namespace

double continuous_equivalent_gamma(const ContractTerms& terms) {
    if (terms.compounding == Compounding::Continuous) return terms.gamma;
    // (1 + gamma dt)^{N-n} = e^{gamma_c (T - t_n)} exactly.
    const double dt = terms.delta_t();
    return std::log1p(terms.gamma * dt) / dt;
}

CorrectionParams correction_epsilon(double v, double delta_t, CorrectionKind kind) {
    if (!(v > 0.0)) throw std::invalid_argument("correction_epsilon: v must be positive");
    if (delta_t < 0.0) throw std::invalid_argument("correction_epsilon: delta_t must be >= 0");
    const double eps = kind == CorrectionKind::Sqrt2OverPi
                           ? v * std::sqrt(2.0 * delta_t / std::numbers::pi)
                           : kBgkBeta * v * std::sqrt(delta_t);
    return {eps, delta_t};
}

double bs_call(double S, double X, double v, double r, double y, double t) {
    if (!(S > 0.0 && X > 0.0)) throw std::invalid_argument("bs_call: S, X must be positive");
    if (t < 0.0 || v < 0.0) throw std::invalid_argument("bs_call: negative v or t");
    if (t == 0.0) return std::max(S - X, 0.0);
    if (v == 0.0) {
        const double fwd = S * std::exp((r - y) * t);
        return std::exp(-r * t) * std::max(fwd - X, 0.0);
    }
    const double st = v * std::sqrt(t);
    const double d1 = (std::log(S / X) + (r - y + 0.5 * v * v) * t) / st;
    const double d2 = d1 - st;
    return S * std::exp(-y * t) * norm_cdf(d1) - X * std::exp(-r * t) * norm_cdf(d2);
}

double closed_form_value(double S, double X, const MarketParams& market,
                         double gamma, double T, double eps) {
    const double v = market.v;
    const double mu = market.r - market.y - gamma - 0.5 * v * v;  // tilted log drift
    const double mu4 = market.r - market.y - gamma;               // = mu + v^2/2
    if (std::abs(mu4) <= kSingularTol)
        throw SingularParameterization("closed form singular at r - y - gamma ~ 0");
    if (!(X >= S))
        throw std::invalid_argument("closed_form_value requires clamped strike X >= S");

    const double Xt = X * std::exp(eps);
    const double d = std::log(Xt / S);
    const double denom = v * std::sqrt(2.0 * T);

    // Bracket of the closed form; 1 + erf(w) written as erfc(-w), and the
    // power-times-erfc term evaluated through its cancelled exponent.
    const double b1 = 0.5 * Xt * std::erfc((d - mu * T) / denom);
    const double b2 = mu / (2.0 * mu4) * std::exp(mu4 * T) *
                      std::erfc((d - (v * v + mu) * T) / denom);
    const double p2 = 1.0 + 2.0 * mu / (v * v);  // = 2 mu4 / v^2
    const double b3 = v * v / (4.0 * mu4) * exp_erfc(p2 * d, (d + mu * T) / denom);
    const double bracket = b1 - S * (b2 + b3);

    const double call = bs_call(S, Xt, v, market.r, market.y + gamma, T);
    const double disc = std::exp(-market.r * T);
    return std::exp(gamma * T) *
           (X * disc + std::exp(-eps) * (2.0 * call + disc * bracket));
}

PriceResult continuous_price(const ContractState& state, const MarketParams& market,
                             const ContractTerms& terms) {
    validate(market, terms, state);
    const double g = terms.gamma;  // Delta t -> 0: compounding conventions coincide
    if (std::abs(market.r - market.y - g) <= kFallbackTol)
        return quadrature_fallback(state, market, terms, g, 0.0);

    const double s = state.spot_S / state.issue_spot_S0;
    const double x_eff = std::max(state.effective_strike(g) / state.issue_spot_S0, s);
    PriceResult res;
    res.value =
        terms.notional * closed_form_value(s, x_eff, market, g, terms.maturity_T, 0.0);
    res.method = Method::AnalyticContinuous;
    return res;
}

PriceResult discrete_price(const ContractState& state, const MarketParams& market,
                           const ContractTerms& terms, CorrectionKind kind) {
    validate(market, terms, state);
    const double g = continuous_equivalent_gamma(terms);
    const double eps = correction_epsilon(market.v, terms.delta_t(), kind).epsilon;
    if (std::abs(market.r - market.y - g) <= kFallbackTol)
        return quadrature_fallback(state, market, terms, g, eps);

    const double s = state.spot_S / state.issue_spot_S0;
    // The accrued strike keeps the spec's nominal e^{gamma t_h} convention.
    const double x_eff =
        std::max(state.effective_strike(terms.gamma) / state.issue_spot_S0, s);
    PriceResult res;
    res.value =
        terms.notional * closed_form_value(s, x_eff, market, g, terms.maturity_T, eps);
    res.method = Method::AnalyticDiscrete;
    res.epsilon_used = eps;
    return res;
}

PriceResult initial_price(const MarketParams& market, const ContractTerms& terms,
                          CorrectionKind kind) {
    return discrete_price(ContractState::issue(), market, terms, kind);
}

}  // namespace hwm
