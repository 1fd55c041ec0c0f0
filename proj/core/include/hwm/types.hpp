#pragma once
/**
 * @file types.hpp
 * @brief Domain types shared by all pricing modules, with validation.
 *
 * Conventions: rates are continuously compounded decimals per year,
 * volatility is per sqrt(year), times are year fractions. Prices are
 * normalized to S(0)=1 and unit notional inside the pricers; notional
 * is applied only at the output boundary.
 */

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hwm {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

/// One violated invariant: which field and which bound.
struct ValidationIssue {
    std::string field;
    std::string message;
};

/// Aggregate of every violated invariant found by validate().
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::vector<ValidationIssue> issues)
        : std::runtime_error(format(issues)), issues_(std::move(issues)) {}

    ValidationError(std::string field, std::string message)
        : ValidationError(std::vector<ValidationIssue>{
              {std::move(field), std::move(message)}}) {}

    const std::vector<ValidationIssue>& issues() const { return issues_; }

private:
    static std::string format(const std::vector<ValidationIssue>& issues) {
        std::string s = "validation failed:";
        for (const auto& i : issues) s += "\n  " + i.field + ": " + i.message;
        return s;
    }
    std::vector<ValidationIssue> issues_;
};

/// Base for runtime numerical failures (CLI maps these to exit code 3).
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The closed form divides by 2(r - y - gamma); thrown when that is ~0.
struct SingularParameterization : NumericalError {
    using NumericalError::NumericalError;
};

/// Adaptive quadrature ran out of subdivisions before reaching tolerance.
struct NonConvergence : NumericalError {
    using NumericalError::NumericalError;
};

/// Requested simulation exceeds the configured draw budget.
struct BudgetExceeded : NumericalError {
    using NumericalError::NumericalError;
};

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

/// Flat market environment: short rate r, dividend yield y, volatility v.
struct MarketParams {
    double r = 0.0;  ///< risk-free rate per year
    double y = 0.0;  ///< dividend yield per year
    double v = 0.0;  ///< volatility per sqrt(year)
};

/// Guarantee accrual convention between observation dates.
enum class Compounding { Continuous, Simple };

/// Contract economics: guarantee rate, maturity, notional, observation grid.
struct ContractTerms {
    double gamma = 0.0;            ///< guaranteed minimum payoff rate per year
    double maturity_T = 0.0;       ///< years to expiry
    double notional = 1.0;         ///< currency units
    std::uint32_t n_observations = 1;  ///< N; observation dates t_n = n*T/N
    Compounding compounding = Compounding::Continuous;

    /// dt between observations; derived, never stored independently.
    double delta_t() const { return maturity_T / static_cast<double>(n_observations); }
};

/// Valuation-date state. Issue-date contracts are S_H = S = S0, t_h = 0.
struct ContractState {
    double spot_S = 1.0;           ///< current underlying price
    double high_water_S_H = 1.0;   ///< maximal observed price since issue
    double accrual_time_t_h = 0.0; ///< years since the observation achieving S_H's best accrual
    double issue_spot_S0 = 1.0;    ///< normalization base S(0)

    static ContractState issue(double s0 = 1.0) { return {s0, s0, 0.0, s0}; }

    /// Accrued high-water strike X = S_H * e^{gamma * t_h} (not stored).
    double effective_strike(double gamma) const;
};

/// Parameters of the running-maximum distribution of the tilted log return.
struct MaxDistParams {
    double mu = 0.0;       ///< drift per year of x(t) = ln(S~(t)/S(0))
    double v = 0.0;        ///< volatility per sqrt(year)
    double horizon_T = 0.0;

    /// Tilted drift mu = r - y - gamma - v^2/2, evaluated exactly in this order.
    static MaxDistParams from_market(const MarketParams& m, double gamma, double horizon) {
        return {m.r - m.y - gamma - 0.5 * m.v * m.v, m.v, horizon};
    }
};

/// Which route produced a price.
enum class Method { AnalyticContinuous, AnalyticDiscrete, Quadrature, MonteCarlo };

const char* to_string(Method m);

/// A priced value plus provenance. std_error is present iff Monte Carlo.
struct PriceResult {
    double value = 0.0;
    Method method = Method::AnalyticContinuous;
    std::optional<double> std_error;
    std::optional<double> epsilon_used;
};

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

/// Inputs that passed validate(); downstream preconditions hold.
struct PricingInputs {
    MarketParams market;
    ContractTerms terms;
    ContractState state;
};

/// Collects every invariant violation at once (empty means valid).
/// Pure and idempotent.
std::vector<ValidationIssue> check(const MarketParams& market,
                                   const ContractTerms& terms,
                                   const ContractState& state);

/// Returns the validated bundle or throws ValidationError with all issues.
PricingInputs validate(const MarketParams& market,
                       const ContractTerms& terms,
                       const ContractState& state);

}  // namespace hwm
