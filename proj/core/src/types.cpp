#include "hwm/types.hpp"

#include <cmath>

namespace hwm {

const char* to_string(Method m) {
    switch (m) {
        case Method::AnalyticContinuous: return "analytic-continuous";
        case Method::AnalyticDiscrete: return "analytic-discrete";
        case Method::Quadrature: return "quadrature";
        case Method::MonteCarlo: return "monte-carlo";
    }
    return "?";
}

double ContractState::effective_strike(double gamma) const {
    return high_water_S_H * std::exp(gamma * accrual_time_t_h);
}

std::vector<ValidationIssue> check(const MarketParams& market,
                                   const ContractTerms& terms,
                                   const ContractState& state) {
    std::vector<ValidationIssue> out;
    auto bad = [&out](const char* field, const char* message) {
        out.push_back({field, message});
    };

    // MarketParams: v > 0, sanity-bounded; rates finite and within [-1, 1].
    if (!(market.v > 0.0)) bad("market.v", "volatility must be positive");
    else if (!(market.v <= 5.0)) bad("market.v", "volatility above sanity bound 5");
    if (!std::isfinite(market.r) || std::abs(market.r) > 1.0)
        bad("market.r", "rate must be finite in [-1, 1]");
    if (!std::isfinite(market.y) || std::abs(market.y) > 1.0)
        bad("market.y", "dividend yield must be finite in [-1, 1]");

    // ContractTerms
    if (!std::isfinite(terms.gamma) || terms.gamma < 0.0 || terms.gamma > 1.0)
        bad("terms.gamma", "guarantee rate must be in [0, 1]");
    if (!(terms.maturity_T > 0.0) || !std::isfinite(terms.maturity_T))
        bad("terms.maturity_T", "maturity must be positive");
    if (terms.n_observations < 1)
        bad("terms.n_observations", "observation count must be at least 1");
    if (!(terms.notional > 0.0) || !std::isfinite(terms.notional))
        bad("terms.notional", "notional must be positive");

    // ContractState
    if (!(state.spot_S > 0.0) || !std::isfinite(state.spot_S))
        bad("state.spot_S", "spot must be positive");
    if (!(state.issue_spot_S0 > 0.0) || !std::isfinite(state.issue_spot_S0))
        bad("state.issue_spot_S0", "issue spot must be positive");
    else if (!(state.high_water_S_H >= state.issue_spot_S0))
        bad("state.high_water_S_H", "high-water mark below issue spot");
    if (!(state.accrual_time_t_h >= 0.0) || !std::isfinite(state.accrual_time_t_h))
        bad("state.accrual_time_t_h", "accrual time must be nonnegative");

    return out;
}

PricingInputs validate(const MarketParams& market, const ContractTerms& terms,
                       const ContractState& state) {
    auto issues = check(market, terms, state);
    if (!issues.empty()) throw ValidationError(std::move(issues));
    return {market, terms, state};
}

}  // namespace hwm
